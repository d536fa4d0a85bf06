#pragma once

#include <functional>

#include "pginv/algebra.hpp"
#include "pginv/report.hpp"

namespace pginv {

// A complex-linear map between algebras, stored as a dense matrix acting on
// vectorized elements in the canonical (block, row, col) coordinates.
struct LinMap {
  AlgebraSpec domain;
  AlgebraSpec codomain;
  CMatrix matrix;  // codomain.dim() x domain.dim()

  LinMap() = default;
  LinMap(AlgebraSpec dom, AlgebraSpec cod, CMatrix m);

  static LinMap identity(const AlgebraSpec& a);
  static LinMap zero(const AlgebraSpec& dom, const AlgebraSpec& cod);
  // Builds the matrix column-by-column from the action on the canonical basis.
  static LinMap from_action(const AlgebraSpec& dom, const AlgebraSpec& cod,
                            const std::function<AlgebraElement(const AlgebraElement&)>& action);
};

AlgebraElement apply(const LinMap& f, const AlgebraElement& x);
LinMap compose(const LinMap& g, const LinMap& f);
LinMap map_scale(Complex c, const LinMap& f);
LinMap map_add(const LinMap& f, const LinMap& g);
double map_distance(const LinMap& f, const LinMap& g);

enum class Side { left, right };

// L_a : x -> a x  (left) or R_a : x -> x a (right).
LinMap mult_op(Side side, const AlgebraElement& a);

// Certified lower bound for the C*-operator norm of a map, from seeded
// unit-norm samples plus perturb-and-renormalize hill climbing. Only a
// lower bound: exact bi-norm computation is out of scope.
struct NormEstimate {
  double lower_bound = 0.0;
  AlgebraElement witness;
  int samples = 0;
  int ascent_iterations = 0;
};

NormEstimate estimate_norm(const LinMap& f, int samples, std::uint64_t seed);

// max over basis pairs of |T(b_i o b_j) - T(b_i) o T(b_j)|; bilinearity
// makes the basis check equivalent to the universal statement.
CheckReport is_jordan_hom(const LinMap& t, double tol);

// Conjugate-linear identities are evaluated on basis and i*basis.
CheckReport is_star_map(const LinMap& t, double tol);

// {a,b,c} = (a b* c + c b* a)/2 preserved; middle slot also checked i-scaled.
CheckReport is_triple_hom(const LinMap& t, double tol);

// Images of the canonical basis (the matrix columns, devectorized).
std::vector<AlgebraElement> basis_images(const LinMap& f);

}  // namespace pginv
