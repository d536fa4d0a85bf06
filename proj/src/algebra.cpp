#include "pginv/algebra.hpp"

#include <Eigen/QR>
#include <sstream>

#include "pginv/rng.hpp"

namespace pginv {

AlgebraSpec::AlgebraSpec(std::vector<int> sizes) : block_sizes(std::move(sizes)) {
  if (block_sizes.empty()) throw ArgumentError("AlgebraSpec: need at least one block");
  for (int n : block_sizes) {
    if (n < 1) throw ArgumentError("AlgebraSpec: block sizes must be positive");
  }
}

int AlgebraSpec::dim() const {
  int d = 0;
  for (int n : block_sizes) d += n * n;
  return d;
}

int AlgebraSpec::block_offset(int b) const {
  int off = 0;
  for (int i = 0; i < b; ++i) off += block_sizes[i] * block_sizes[i];
  return off;
}

bool AlgebraSpec::is_diagonal() const {
  for (int n : block_sizes) {
    if (n != 1) return false;
  }
  return true;
}

AlgebraSpec AlgebraSpec::diagonal(int n) {
  if (n < 1) throw ArgumentError("AlgebraSpec::diagonal: n must be positive");
  return AlgebraSpec(std::vector<int>(static_cast<std::size_t>(n), 1));
}

VecIndex vec_index_of(const AlgebraSpec& spec, int flat) {
  if (flat < 0 || flat >= spec.dim()) throw ArgumentError("vec_index_of: index out of range");
  for (int b = 0; b < spec.block_count(); ++b) {
    const int n = spec.block_sizes[b];
    if (flat < n * n) return VecIndex{b, flat / n, flat % n};
    flat -= n * n;
  }
  throw ArgumentError("vec_index_of: unreachable");
}

int flat_index_of(const AlgebraSpec& spec, const VecIndex& idx) {
  if (idx.block < 0 || idx.block >= spec.block_count()) {
    throw ArgumentError("flat_index_of: block out of range");
  }
  const int n = spec.block_sizes[idx.block];
  if (idx.row < 0 || idx.row >= n || idx.col < 0 || idx.col >= n) {
    throw ArgumentError("flat_index_of: row/col out of range");
  }
  return spec.block_offset(idx.block) + idx.row * n + idx.col;
}

AlgebraElement::AlgebraElement(AlgebraSpec spec, std::vector<CMatrix> blks)
    : algebra(std::move(spec)), blocks(std::move(blks)) {
  if (static_cast<int>(blocks.size()) != algebra.block_count()) {
    throw ShapeError("AlgebraElement: block count does not match the spec");
  }
  for (int b = 0; b < algebra.block_count(); ++b) {
    const int n = algebra.block_sizes[b];
    if (blocks[b].rows() != n || blocks[b].cols() != n) {
      std::ostringstream os;
      os << "AlgebraElement: block " << b << " is " << blocks[b].rows() << "x"
         << blocks[b].cols() << ", expected " << n << "x" << n;
      throw ShapeError(os.str());
    }
  }
}

AlgebraElement zero_element(const AlgebraSpec& spec) {
  std::vector<CMatrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (int n : spec.block_sizes) blocks.push_back(CMatrix::Zero(n, n));
  return AlgebraElement(spec, std::move(blocks));
}

AlgebraElement unit(const AlgebraSpec& spec) {
  std::vector<CMatrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (int n : spec.block_sizes) blocks.push_back(CMatrix::Identity(n, n));
  return AlgebraElement(spec, std::move(blocks));
}

namespace {
void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y, const char* op) {
  if (!(x.algebra == y.algebra)) {
    throw ShapeError(std::string(op) + ": elements of different algebras");
  }
}
}  // namespace

AlgebraElement product(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y, "product");
  std::vector<CMatrix> blocks;
  blocks.reserve(x.blocks.size());
  for (std::size_t b = 0; b < x.blocks.size(); ++b) blocks.push_back(x.blocks[b] * y.blocks[b]);
  return AlgebraElement(x.algebra, std::move(blocks));
}

AlgebraElement jordan_product(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y, "jordan_product");
  std::vector<CMatrix> blocks;
  blocks.reserve(x.blocks.size());
  for (std::size_t b = 0; b < x.blocks.size(); ++b) {
    blocks.push_back(0.5 * (x.blocks[b] * y.blocks[b] + y.blocks[b] * x.blocks[b]));
  }
  return AlgebraElement(x.algebra, std::move(blocks));
}

AlgebraElement involution(const AlgebraElement& x) {
  std::vector<CMatrix> blocks;
  blocks.reserve(x.blocks.size());
  for (const CMatrix& m : x.blocks) blocks.push_back(m.adjoint());
  return AlgebraElement(x.algebra, std::move(blocks));
}

double norm(const AlgebraElement& x) {
  double m = 0.0;
  for (const CMatrix& b : x.blocks) m = std::max(m, op_norm(b));
  return m;
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y, "add");
  std::vector<CMatrix> blocks;
  blocks.reserve(x.blocks.size());
  for (std::size_t b = 0; b < x.blocks.size(); ++b) blocks.push_back(x.blocks[b] + y.blocks[b]);
  return AlgebraElement(x.algebra, std::move(blocks));
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y, "sub");
  std::vector<CMatrix> blocks;
  blocks.reserve(x.blocks.size());
  for (std::size_t b = 0; b < x.blocks.size(); ++b) blocks.push_back(x.blocks[b] - y.blocks[b]);
  return AlgebraElement(x.algebra, std::move(blocks));
}

AlgebraElement scale(Complex c, const AlgebraElement& x) {
  std::vector<CMatrix> blocks;
  blocks.reserve(x.blocks.size());
  for (const CMatrix& m : x.blocks) blocks.push_back(c * m);
  return AlgebraElement(x.algebra, std::move(blocks));
}

double distance(const AlgebraElement& x, const AlgebraElement& y) {
  return norm(sub(x, y));
}

std::vector<AlgebraElement> basis(const AlgebraSpec& spec) {
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(spec.dim()));
  for (int i = 0; i < spec.dim(); ++i) out.push_back(basis_element(spec, i));
  return out;
}

AlgebraElement basis_element(const AlgebraSpec& spec, int flat) {
  const VecIndex idx = vec_index_of(spec, flat);
  AlgebraElement e = zero_element(spec);
  e.blocks[idx.block](idx.row, idx.col) = Complex(1.0, 0.0);
  return e;
}

CVector vectorize(const AlgebraElement& x) {
  CVector v(x.algebra.dim());
  int k = 0;
  for (const CMatrix& b : x.blocks) {
    for (int r = 0; r < b.rows(); ++r) {
      for (int c = 0; c < b.cols(); ++c) v(k++) = b(r, c);
    }
  }
  return v;
}

AlgebraElement devectorize(const AlgebraSpec& spec, const CVector& v) {
  if (v.size() != spec.dim()) throw ShapeError("devectorize: wrong vector length");
  AlgebraElement x = zero_element(spec);
  int k = 0;
  for (CMatrix& b : x.blocks) {
    for (int r = 0; r < b.rows(); ++r) {
      for (int c = 0; c < b.cols(); ++c) b(r, c) = v(k++);
    }
  }
  return x;
}

namespace {

CMatrix gaussian_matrix(Rng& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.cgaussian();
  }
  return m;
}

// Unitary from the QR of a Gaussian matrix, with the R diagonal phases
// folded into Q so the distribution does not depend on the QR convention.
CMatrix haar_unitary(Rng& rng, int n) {
  if (n == 0) return CMatrix(0, 0);
  const CMatrix g = gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0.0 ? d / a : Complex(1.0, 0.0));
  }
  return q;
}

}  // namespace

AlgebraElement random_element(const AlgebraSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (int n : spec.block_sizes) blocks.push_back(gaussian_matrix(rng, n, n));
  return AlgebraElement(spec, std::move(blocks));
}

AlgebraElement random_projection(const AlgebraSpec& spec,
                                 const std::vector<int>& rank_profile,
                                 std::uint64_t seed) {
  if (static_cast<int>(rank_profile.size()) != spec.block_count()) {
    throw ArgumentError("random_projection: rank profile length must match block count");
  }
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (int b = 0; b < spec.block_count(); ++b) {
    const int n = spec.block_sizes[b];
    const int r = rank_profile[b];
    if (r < 0 || r > n) throw ArgumentError("random_projection: infeasible rank profile");
    const CMatrix u = haar_unitary(rng, n);
    CMatrix d = CMatrix::Zero(n, n);
    for (int i = 0; i < r; ++i) d(i, i) = 1.0;
    blocks.push_back(u * d * u.adjoint());
  }
  return AlgebraElement(spec, std::move(blocks));
}

AlgebraElement random_partial_isometry(const AlgebraSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (int n : spec.block_sizes) {
    const int r = rng.uniform_int(0, n);
    const SvdResult s = svd(gaussian_matrix(rng, n, n));
    CMatrix d = CMatrix::Zero(n, n);
    for (int i = 0; i < r; ++i) d(i, i) = 1.0;
    blocks.push_back(s.u * d * s.v.adjoint());
  }
  return AlgebraElement(spec, std::move(blocks));
}

AlgebraElement random_unitary(const AlgebraSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (int n : spec.block_sizes) blocks.push_back(haar_unitary(rng, n));
  return AlgebraElement(spec, std::move(blocks));
}

AlgebraElement random_well_conditioned(const AlgebraSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  blocks.reserve(spec.block_sizes.size());
  for (int n : spec.block_sizes) {
    const CMatrix u = haar_unitary(rng, n);
    const CMatrix w = haar_unitary(rng, n);
    CMatrix d = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = rng.uniform(0.5, 2.0);
    blocks.push_back(u * d * w.adjoint());
  }
  return AlgebraElement(spec, std::move(blocks));
}

}  // namespace pginv
