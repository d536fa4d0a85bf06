#pragma once

#include <cstdint>
#include <vector>

#include "pginv/linalg.hpp"

namespace pginv {

// A finite-dimensional C*-algebra presented as a direct sum of full matrix
// blocks M_{n1} + ... + M_{nk}. The vectorized dimension is sum of n_i^2.
struct AlgebraSpec {
  std::vector<int> block_sizes;

  AlgebraSpec() = default;
  explicit AlgebraSpec(std::vector<int> sizes);

  int block_count() const { return static_cast<int>(block_sizes.size()); }
  int dim() const;
  // Offset of block b's first coordinate in the vectorized order.
  int block_offset(int b) const;
  bool is_diagonal() const;  // all blocks of size 1

  static AlgebraSpec diagonal(int n);

  bool operator==(const AlgebraSpec& other) const = default;
};

// Canonical coordinate of a matrix unit: lexicographic (block, row, col)
// defines the basis ordering shared by every vectorized object in the repo.
struct VecIndex {
  int block = 0;
  int row = 0;
  int col = 0;
  bool operator==(const VecIndex&) const = default;
};

VecIndex vec_index_of(const AlgebraSpec& spec, int flat);
int flat_index_of(const AlgebraSpec& spec, const VecIndex& idx);

struct AlgebraElement {
  AlgebraSpec algebra;
  std::vector<CMatrix> blocks;

  AlgebraElement() = default;
  AlgebraElement(AlgebraSpec spec, std::vector<CMatrix> blks);
};

AlgebraElement zero_element(const AlgebraSpec& spec);
AlgebraElement unit(const AlgebraSpec& spec);

AlgebraElement product(const AlgebraElement& x, const AlgebraElement& y);
// x o y = (xy + yx) / 2
AlgebraElement jordan_product(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement involution(const AlgebraElement& x);
// C*-norm of a direct sum: max over blocks of the operator norm.
double norm(const AlgebraElement& x);

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(Complex c, const AlgebraElement& x);

inline AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) { return add(x, y); }
inline AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) { return sub(x, y); }
inline AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) { return product(x, y); }
inline AlgebraElement operator*(Complex c, const AlgebraElement& x) { return scale(c, x); }
inline AlgebraElement operator*(double c, const AlgebraElement& x) { return scale(Complex(c, 0.0), x); }

double distance(const AlgebraElement& x, const AlgebraElement& y);

// Matrix units in VecIndex order.
std::vector<AlgebraElement> basis(const AlgebraSpec& spec);
AlgebraElement basis_element(const AlgebraSpec& spec, int flat);

CVector vectorize(const AlgebraElement& x);
AlgebraElement devectorize(const AlgebraSpec& spec, const CVector& v);

AlgebraElement random_element(const AlgebraSpec& spec, std::uint64_t seed);

// U diag(1..1,0..0) U* with U from QR of a seeded Gaussian block; exactly
// idempotent and self-adjoint up to roundoff. rank_profile gives the rank
// per block.
AlgebraElement random_projection(const AlgebraSpec& spec,
                                 const std::vector<int>& rank_profile,
                                 std::uint64_t seed);

// U (truncated identity) W* from the SVD of a seeded Gaussian block, so
// v v* v = v holds by construction. Ranks are chosen per seed.
AlgebraElement random_partial_isometry(const AlgebraSpec& spec, std::uint64_t seed);

// Seeded unitary (QR of a Gaussian block, phases normalized).
AlgebraElement random_unitary(const AlgebraSpec& spec, std::uint64_t seed);

// Seeded invertible element with singular values in [0.5, 2].
AlgebraElement random_well_conditioned(const AlgebraSpec& spec, std::uint64_t seed);

}  // namespace pginv
