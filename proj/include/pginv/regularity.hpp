#pragma once

#include <array>

#include "pginv/maps.hpp"

namespace pginv {

// Moore-Penrose inverse of an algebra element, with the residuals of the
// four Penrose conditions: aba = a, bab = b, (ab)* = ab, (ba)* = ba.
struct MPResult {
  AlgebraElement input;
  AlgebraElement mp;
  std::array<double, 4> penrose_residuals{};

  double max_residual() const {
    double m = 0.0;
    for (double r : penrose_residuals) m = std::max(m, r);
    return m;
  }
};

// Blockwise pseudoinverse via SVD; every element of a finite-dimensional
// C*-algebra is regular, so this never fails. Rank decisions use the shared
// rank tolerance against the element's global largest singular value.
MPResult mp_inverse(const AlgebraElement& a);

// Residual of aba = a, and of bab = b when `normalized` is set.
CheckReport is_generalized_inverse(const AlgebraElement& a, const AlgebraElement& b,
                                   bool normalized, double tol);

// max over sampled elements of |F(a^mp) - F(a)^mp|. Samples always include
// the basis matrix units and seeded rank-deficient elements: generic
// elements are invertible and would hide MP-specific failures.
CheckReport strong_preserver_check(const LinMap& f, int samples, std::uint64_t seed,
                                   double tol);

}  // namespace pginv
