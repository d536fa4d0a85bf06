#pragma once

#include <optional>
#include <utility>

#include "pginv/maps.hpp"
#include "pginv/report.hpp"

namespace pginv {

// Matrix JB*-triples: either a finite-dimensional C*-algebra with
// {x,y,z} = (x y* z + z y* x)/2, or the rectangular triple of p x q
// matrices with the same product. Elements are block lists; the C* case
// has square blocks, the rectangular case a single p x q block.
enum class TripleKind { cstar, rectangular };

struct TripleSystem {
  TripleKind kind = TripleKind::cstar;
  AlgebraSpec algebra;  // cstar only
  int p = 0, q = 0;     // rectangular only

  static TripleSystem cstar(AlgebraSpec spec);
  static TripleSystem rectangular(int p, int q);

  std::vector<std::pair<int, int>> block_shapes() const;
  int complex_dim() const;
  int real_dim() const { return 2 * complex_dim(); }

  bool operator==(const TripleSystem& other) const = default;
};

using TripleElement = std::vector<CMatrix>;

TripleElement tzero(const TripleSystem& sys);
void check_element(const TripleSystem& sys, const TripleElement& x, const char* op);
TripleElement telem_of(const TripleSystem& sys, const AlgebraElement& x);
AlgebraElement algebra_elem_of(const TripleSystem& sys, const TripleElement& x);

TripleElement tadd(const TripleElement& x, const TripleElement& y);
TripleElement tsub(const TripleElement& x, const TripleElement& y);
TripleElement tscale(Complex c, const TripleElement& x);
double tnorm(const TripleSystem& sys, const TripleElement& x);
double tdistance(const TripleSystem& sys, const TripleElement& x, const TripleElement& y);

CVector tvectorize(const TripleSystem& sys, const TripleElement& x);
TripleElement tdevectorize(const TripleSystem& sys, const CVector& v);
TripleElement tbasis_element(const TripleSystem& sys, int flat);

TripleElement random_triple_element(const TripleSystem& sys, std::uint64_t seed);

// {x,y,z} = (x y* z + z y* x)/2, blockwise.
TripleElement triple_product(const TripleSystem& sys, const TripleElement& x,
                             const TripleElement& y, const TripleElement& z);

// L(a,b): z -> {a,b,z}, complex-linear, on vectorized coordinates.
CMatrix l_operator(const TripleSystem& sys, const TripleElement& a, const TripleElement& b);

// Q(a): x -> {a,x,a}, conjugate-linear; represented on the realified space
// [Re v; Im v] of dimension 2 * complex_dim.
RMatrix q_operator(const TripleSystem& sys, const TripleElement& a);

// Realification helpers: complex-linear v -> M v, or conjugate-linear
// v -> M conj(v), as real matrices acting on [Re v; Im v].
RMatrix realify_linear(const CMatrix& m);
RMatrix realify_antilinear(const CMatrix& m);
RVector realify_vector(const CVector& v);
CVector unrealify_vector(const RVector& v);

double tripotent_residual(const TripleSystem& sys, const TripleElement& e);

struct Tripotent {
  TripleElement element;
  double residual = 0.0;
};

// Fails (nullopt) when |{e,e,e} - e| > tol.
std::optional<Tripotent> is_tripotent(const TripleSystem& sys, const TripleElement& e,
                                      double tol);

// Spectral projections of L(e,e) at the eigenvalue clusters {1, 1/2, 0},
// acting on vectorized coordinates. Every eigenvalue must fall within the
// cluster gap of one of the three values; a stray eigenvalue raises
// StructureError (it diagnoses a non-tripotent).
struct PeirceDecomposition {
  Tripotent e;
  CMatrix p2, p1, p0;
};

PeirceDecomposition peirce(const TripleSystem& sys, const Tripotent& e);

// Closure of the Peirce-2 space under x o_e y = {x,e,y} and x# = {e,x,e},
// and e acting as the unit of (E2, o_e).
CheckReport peirce2_jordan_structure(const TripleSystem& sys, const Tripotent& e, double tol);

// Triple von Neumann regularity: the unique wedge with Q(a)(w) = a,
// Q(w)(a) = w, [Q(a), Q(w)] = 0. For matrix triples the closed form is the
// adjoint of the Moore-Penrose inverse; the Q-conditions are verified
// post hoc and reported.
struct VnRegularResult {
  TripleElement wedge;
  std::array<double, 3> residuals{};  // Q(a)w - a, Q(w)a - w, |[Q(a),Q(w)]|
  double max_residual() const { return std::max({residuals[0], residuals[1], residuals[2]}); }
};

VnRegularResult vn_regular(const TripleSystem& sys, const TripleElement& a);

// Complex-linear map between triple systems on vectorized coordinates.
struct TripleMap {
  TripleSystem domain;
  TripleSystem codomain;
  CMatrix matrix;

  TripleMap() = default;
  TripleMap(TripleSystem dom, TripleSystem cod, CMatrix m);
  static TripleMap from_linmap(const LinMap& f);
};

TripleElement tapply(const TripleMap& f, const TripleElement& x);

// max over basis triples, middle slot ranging over basis and i*basis, of
// |Phi{a,b,c} - {Phi(a), Psi(b), Phi(c)}|.
double check_triple_pg(const TripleMap& phi, const TripleMap& psi);

struct TripleSolveResult {
  TripleMap psi;
  double residual = 0.0;         // check_triple_pg of the returned candidate
  double system_residual = 0.0;  // Frobenius residual of the assembled system
  int system_rows = 0;
  int system_cols = 0;
  Verdict verdict = Verdict::fail;
};

// Least-squares solve for a pg-inverse in the triple sense. The identity is
// conjugate-linear in the unknown, so the assembled system is real-linear
// on the realified unknown.
TripleSolveResult solve_triple_pg(const TripleMap& phi, double exists_tol = kDefaultTol);

// Contractivity/equality suite for a triple-multiplicative pair: if certified
// norm lower bounds of both maps stay <= 1 + tol, asserts Phi = Psi and that
// Phi is a triple homomorphism, and verifies on sampled tripotents e that
// P2(Phi(e))(Psi(e)) = Phi(e) and Psi(e) - Phi(e) lies in Peirce-0 of Phi(e).
CheckReport triple_contractivity_suite(const TripleMap& phi, const TripleMap& psi,
                                       double tol, int tripotent_samples,
                                       std::uint64_t seed);

// For an idempotent e (|e^2 - e| <= 1e-9): if |e| <= 1 + tol then e must be
// self-adjoint within 10*tol; otherwise the hypothesis is not met and
// nothing is asserted.
CheckReport norm_one_idempotent_check(const AlgebraElement& e, double tol);

// Seeded tripotent: mixes matrix units, random partial isometries and (for
// square shapes) unitaries.
TripleElement random_tripotent(const TripleSystem& sys, std::uint64_t seed);

// Triple homomorphism x -> u x w* with seeded unitaries u, w (blockwise).
TripleMap random_triple_hom(const TripleSystem& sys, std::uint64_t seed);

double triple_map_norm_lower_bound(const TripleMap& f, int samples, std::uint64_t seed);

}  // namespace pginv
