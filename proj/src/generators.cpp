#include "pginv/generators.hpp"

#include <numeric>

#include "pginv/rng.hpp"

namespace pginv {

namespace {

CMatrix gaussian_matrix(Rng& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.cgaussian();
  }
  return m;
}

CMatrix haar_unitary(Rng& rng, int n) {
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

CMatrix well_conditioned(Rng& rng, int n) {
  const CMatrix u = haar_unitary(rng, n);
  const CMatrix w = haar_unitary(rng, n);
  CMatrix d = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = rng.uniform(0.5, 2.0);
  return u * d * w.adjoint();
}

// Permutation of blocks that only exchanges blocks of equal size.
std::vector<int> size_preserving_permutation(Rng& rng, const std::vector<int>& sizes) {
  std::vector<int> perm(sizes.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    for (std::size_t j = i + 1; j < sizes.size(); ++j) {
      if (sizes[i] == sizes[j] && rng.uniform() < 0.5) std::swap(perm[i], perm[j]);
    }
  }
  return perm;
}

}  // namespace

GeneratedHom generate_jordan_hom(const AlgebraSpec& domain, HomKind kind, std::uint64_t seed) {
  Rng rng(seed);
  GeneratedHom out;

  if (kind == HomKind::corner_star) {
    // Embed each block into the top-left corner of an enlarged block, then
    // conjugate the whole codomain by a unitary.
    std::vector<int> grow(domain.block_sizes);
    for (int& n : grow) n += rng.uniform_int(1, 2);
    const AlgebraSpec codomain(grow);
    const AlgebraElement u = random_unitary(codomain, rng.next_u64());
    out.map = LinMap::from_action(domain, codomain, [&](const AlgebraElement& x) {
      AlgebraElement y = zero_element(codomain);
      for (int b = 0; b < domain.block_count(); ++b) {
        y.blocks[b].topLeftCorner(domain.block_sizes[b], domain.block_sizes[b]) = x.blocks[b];
      }
      return product(product(u, y), involution(u));
    });
    out.star = true;
    out.unital = false;
    return out;
  }

  const bool star = kind == HomKind::star_auto;
  const std::vector<int> perm = size_preserving_permutation(rng, domain.block_sizes);
  std::vector<CMatrix> g, ginv;
  std::vector<bool> transpose_flag;
  for (int n : domain.block_sizes) {
    const CMatrix m = star ? haar_unitary(rng, n) : well_conditioned(rng, n);
    g.push_back(m);
    ginv.push_back(star ? CMatrix(m.adjoint()) : CMatrix(m.inverse()));
    transpose_flag.push_back(rng.uniform() < 0.5);
  }
  const AlgebraElement outer =
      star ? random_unitary(domain, rng.next_u64()) : unit(domain);

  out.map = LinMap::from_action(domain, domain, [&](const AlgebraElement& x) {
    AlgebraElement y = zero_element(domain);
    for (int b = 0; b < domain.block_count(); ++b) {
      const CMatrix xb =
          transpose_flag[b] ? CMatrix(x.blocks[b].transpose()) : x.blocks[b];
      y.blocks[perm[b]] = g[b] * xb * ginv[b];
    }
    return product(product(outer, y), involution(outer));
  });
  out.star = star;
  out.unital = true;
  return out;
}

GeneratedHom generate_jordan_hom(const AlgebraSpec& domain, std::uint64_t seed) {
  switch (seed % 3) {
    case 0: return generate_jordan_hom(domain, HomKind::star_auto, seed);
    case 1: return generate_jordan_hom(domain, HomKind::similarity, seed);
    default: return generate_jordan_hom(domain, HomKind::corner_star, seed);
  }
}

PgPair generate_normalized_pair(const AlgebraSpec& domain, PairKind kind, std::uint64_t seed) {
  Rng rng(seed);

  if (kind == PairKind::scaled) {
    const GeneratedHom j = generate_jordan_hom(domain, HomKind::star_auto, rng.next_u64());
    PgPair pair;
    pair.phi = map_scale(Complex(2.0, 0.0), j.map);
    pair.psi = map_scale(Complex(0.5, 0.0), j.map);
    pair.residual_phi = check_pg(pair.phi, pair.psi);
    pair.residual_psi = check_pg(pair.psi, pair.phi);
    return pair;
  }

  GeneratedHom j;
  AlgebraElement phi1 = unit(domain);
  switch (kind) {
    case PairKind::star: {
      j = generate_jordan_hom(domain, rng.uniform() < 0.5 ? HomKind::star_auto
                                                          : HomKind::corner_star,
                              rng.next_u64());
      phi1 = apply(j.map, unit(domain));  // T(1) itself: the pair is (J, J)
      break;
    }
    case PairKind::invertible_unit: {
      j = generate_jordan_hom(domain, HomKind::similarity, rng.next_u64());
      const AlgebraElement g = random_well_conditioned(j.map.codomain, rng.next_u64());
      AlgebraElement ginv = g;
      for (CMatrix& b : ginv.blocks) b = b.inverse().eval();
      phi1 = ginv;  // T(1) = 1, so phi1 = g^-1 is invertible and feasible
      break;
    }
    case PairKind::corner: {
      j = generate_jordan_hom(domain, HomKind::corner_star, rng.next_u64());
      const AlgebraElement p = apply(j.map, unit(domain));  // proper projection
      const AlgebraElement u = random_unitary(j.map.codomain, rng.next_u64());
      phi1 = product(p, u);  // proper partial isometry with phi1 phi1* = p
      break;
    }
    case PairKind::general: {
      j = generate_jordan_hom(domain, rng.next_u64());
      const AlgebraElement t1 = apply(j.map, unit(domain));
      const AlgebraElement g = random_well_conditioned(j.map.codomain, rng.next_u64());
      AlgebraElement ginv = g;
      for (CMatrix& b : ginv.blocks) b = b.inverse().eval();
      phi1 = product(t1, ginv);  // T(1) = phi1 g stays feasible
      break;
    }
    case PairKind::scaled: break;  // handled above
  }

  auto [phi, psi] = reconstruct_from_factor(j.map, phi1, 1e-7);
  PgPair pair;
  pair.phi = std::move(phi);
  pair.psi = std::move(psi);
  pair.residual_phi = check_pg(pair.phi, pair.psi);
  pair.residual_psi = check_pg(pair.psi, pair.phi);
  return pair;
}

PgPair generate_diagonal_pair(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ArgumentError("generate_diagonal_pair: dimensions must be positive");
  Rng rng(seed);
  const AlgebraSpec dom = AlgebraSpec::diagonal(n);
  const AlgebraSpec cod = AlgebraSpec::diagonal(m);

  // Hand out disjoint codomain indices: support size 0, 1 or 2 per domain
  // index, as capacity allows.
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  for (int i = m - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);

  CMatrix phi_m = CMatrix::Zero(m, n);
  CMatrix psi_m = CMatrix::Zero(m, n);
  std::size_t next = 0;
  for (int i = 0; i < n; ++i) {
    const int want = rng.uniform_int(0, 2);
    for (int s = 0; s < want && next < order.size(); ++s) {
      const int row = order[next++];
      // Nonzero coefficient with magnitude in [0.5, 2].
      const double mag = rng.uniform(0.5, 2.0);
      const double arg = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
      const Complex lambda = std::polar(mag, arg);
      phi_m(row, i) = lambda;
      psi_m(row, i) = 1.0 / lambda;
    }
  }

  PgPair pair;
  pair.phi = LinMap(dom, cod, std::move(phi_m));
  pair.psi = LinMap(dom, cod, std::move(psi_m));
  pair.residual_phi = check_pg(pair.phi, pair.psi);
  pair.residual_psi = check_pg(pair.psi, pair.phi);
  return pair;
}

AlgebraElement generate_idempotent_m4(std::uint64_t seed) {
  const AlgebraSpec m4({4});
  Rng rng(seed);
  const int rank = rng.uniform_int(1, 3);
  CMatrix d = CMatrix::Zero(4, 4);
  for (int i = 0; i < rank; ++i) d(i, i) = 1.0;
  if (seed % 10 == 0) {
    const CMatrix u = haar_unitary(rng, 4);
    return AlgebraElement(m4, {u * d * u.adjoint()});
  }
  const CMatrix s = well_conditioned(rng, 4);
  return AlgebraElement(m4, {s * d * s.inverse()});
}

}  // namespace pginv
