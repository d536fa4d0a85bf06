#pragma once

#include <optional>
#include <utility>

#include "pginv/maps.hpp"
#include "pginv/regularity.hpp"
#include "pginv/report.hpp"

namespace pginv {

// Psi is a pointwise-generalized-inverse (pg-inverse) of Phi when
// Phi(aba) = Phi(a) Psi(b) Phi(a) for all a, b; equivalently, polarized,
// Phi(abc + cba) = Phi(a) Psi(b) Phi(c) + Phi(c) Psi(b) Phi(a).
// A pair where each map is a pg-inverse of the other is Jordan-triple
// multiplicative; Psi is then a normalized-pg-inverse of Phi.

struct PgPair {
  LinMap phi;
  LinMap psi;
  double residual_phi = 0.0;  // Psi as pg-inverse of Phi
  double residual_psi = 0.0;  // Phi as pg-inverse of Psi

  double max_residual() const { return std::max(residual_phi, residual_psi); }
};

// max over all basis triples (b_i, b_j, b_k) of
// |Phi(b_i b_j b_k + b_k b_j b_i) - Phi(b_i) Psi(b_j) Phi(b_k) - Phi(b_k) Psi(b_j) Phi(b_i)|.
// The identity is trilinear, so the basis check is exhaustive: the residual
// is 0 exactly iff Psi is a pg-inverse of Phi.
double check_pg(const LinMap& phi, const LinMap& psi);

// Runs check_pg both ways.
PgPair check_pair(const LinMap& phi, const LinMap& psi);

bool is_normalized(const PgPair& pair, double tol);

struct SolveResult {
  LinMap psi;
  double residual = 0.0;         // check_pg(phi, psi) of the candidate
  double system_residual = 0.0;  // Frobenius residual of the least-squares system
  int system_rows = 0;
  int system_cols = 0;
  Verdict verdict = Verdict::fail;  // pass = exists, indeterminate, fail = no pg-inverse
};

// Least-squares solve for a pg-inverse of phi. The polarized identity is
// complex-linear in Psi for fixed Phi, and the system decouples over the
// middle basis slot, so one coefficient block serves every right-hand side.
// Existence threshold: residual <= exists_tol * (1 + |phi|) declares
// existence; up to 1e-4 * (1 + |phi|) the verdict is indeterminate.
SolveResult solve_pg(const LinMap& phi, double exists_tol = kDefaultTol);

// Normalization: with z the MP inverse of Phi(1), the map
// Theta(x) = z Phi(x) z is a normalized-pg-inverse of Phi whenever Phi has
// any pg-inverse at all. `psi` certifies that hypothesis; if
// check_pg(phi, psi) > tol the precondition fails.
LinMap normalize_pg(const LinMap& phi, const LinMap& psi, double tol = kDefaultTol);

// The unit identities of a Jordan-triple multiplicative pair with unital
// domain, evaluated on all basis elements/pairs:
//   unit_absorb_left      Phi(a) = (Phi(1) Psi(1)) Phi(a)
//   unit_absorb_right     Phi(a) = Phi(a) (Psi(1) Phi(1))
//   unit_swap_left        Psi(1) Phi(a) = Psi(a) Phi(1)
//   unit_swap_right       Phi(a) Psi(1) = Phi(1) Psi(a)
//   product_sandwich      Phi(a) Psi(b) = Phi(1) Psi(a) Phi(b) Psi(1)
//   product_sandwich_rev  Psi(1) Phi(a) Psi(b) Phi(1) = Psi(a) Phi(b)
CheckReport verify_pair_identities(const PgPair& pair, double tol);

// Factorization through a Jordan homomorphism. For side = left,
// T = L_{Phi(1)} o Psi is a Jordan homomorphism with Phi = R_{Phi(1)} o T
// and Phi(1) B = T(1) B; the connecting element solves T(1) = Phi(1) c.
// Side = right mirrors everything: S = R_{Phi(1)} o Psi, Phi = L_{Phi(1)} o S,
// B Phi(1) = B S(1), S(1) = c Phi(1).
struct FactorResult {
  LinMap jordan_map;
  Side side = Side::left;
  AlgebraElement connecting_element;
  std::map<std::string, double> residuals;  // jordan_identity, reconstruction,
                                            // idempotent, connecting
  bool range_ok = true;                     // rank equality of the ideal comparison
};

FactorResult extract_factor(const PgPair& pair, Side side, double tol);

// Inverse direction: given a Jordan homomorphism T and the prescribed
// value phi1 = Phi(1), builds Phi = R_{phi1} o T and Psi = L_c o T where c
// solves T(1) = phi1 c. Infeasible c (least-squares residual > tol) means
// the range condition phi1 B = T(1) B fails and no pair exists.
std::pair<LinMap, LinMap> reconstruct_from_factor(const LinMap& t, const AlgebraElement& phi1,
                                                  double tol = kDefaultTol);

// The weak-preserver counterexample: T : C^2 -> M_3,
// T(l, m) = (l + m)/2 E21 + (l - m)/2 E31. Every image is MP-invertible
// (weak preservation), but T strongly fails MP-preservation and admits no
// pg-inverse.
LinMap weak_preserver_counterexample();

// Support/reciprocal structure of a normalized pair between diagonal
// algebras: supports of Phi(e_i) are pairwise disjoint, Psi(e_i) carries
// the reciprocal coefficients on the same support, and
// psi_bound = max_i |Psi(e_i)|.
struct DiagonalStructure {
  std::vector<std::vector<int>> supports;
  std::vector<std::vector<Complex>> coefficients;
  double psi_bound = 0.0;
  bool valid = false;
  std::optional<std::pair<int, int>> overlap_witness;     // domain indices with support overlap
  std::optional<std::pair<int, int>> reciprocal_witness;  // (domain index, codomain index)
};

DiagonalStructure analyze_diagonal(const PgPair& pair, double tol = kDefaultTol);

// For projections p, q with p q = 0 and a normalized pair: the factor maps
// satisfy T(p) T(q) = S(p) S(q) = 0. Also replays the derivation chain
// Phi(p)Psi(q)Phi(q) = -Phi(q)Psi(q)Phi(p) and Psi(q)Phi(p)Psi(q) = Psi(qpq).
CheckReport orthogonal_projection_annihilation(const PgPair& pair, const AlgebraElement& p,
                                               const AlgebraElement& q, double tol);

// Equivalence suite for a normalized pair:
//   (a) Phi and Psi are contractive      (certified lower bounds only)
//   (b) Psi(a) = Phi(a*)* for all a      (exact, basis and i*basis)
//   (c) Phi and Psi are triple homomorphisms
// Consistency asserted: (b) => (c); (c) => norm lower bounds <= 1 + tol;
// lower bound > 1 + 1e-6 => (b) residual > 1e-6.
CheckReport contractivity_suite(const PgPair& pair, double tol, int norm_samples = 24,
                                std::uint64_t seed = 1);

}  // namespace pginv
