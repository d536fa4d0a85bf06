#include "pginv/regularity.hpp"

#include "pginv/rng.hpp"
#include "pginv/serialize.hpp"

namespace pginv {

MPResult mp_inverse(const AlgebraElement& a) {
  const double scale = norm(a);  // global largest singular value across blocks
  std::vector<CMatrix> blocks;
  blocks.reserve(a.blocks.size());
  for (const CMatrix& m : a.blocks) blocks.push_back(pinv(m, scale));
  MPResult res;
  res.input = a;
  res.mp = AlgebraElement(a.algebra, std::move(blocks));

  const AlgebraElement ab = product(a, res.mp);
  const AlgebraElement ba = product(res.mp, a);
  res.penrose_residuals[0] = distance(product(ab, a), a);
  res.penrose_residuals[1] = distance(product(ba, res.mp), res.mp);
  res.penrose_residuals[2] = distance(involution(ab), ab);
  res.penrose_residuals[3] = distance(involution(ba), ba);
  return res;
}

CheckReport is_generalized_inverse(const AlgebraElement& a, const AlgebraElement& b,
                                   bool normalized, double tol) {
  if (!(a.algebra == b.algebra)) {
    throw ShapeError("is_generalized_inverse: elements of different algebras");
  }
  CheckReport rep;
  rep.check_name = "is_generalized_inverse";
  rep.rule = normalized ? "a b a = a and b a b = b" : "a b a = a";
  rep.residuals["aba_minus_a"] = distance(product(product(a, b), a), a);
  if (normalized) {
    rep.residuals["bab_minus_b"] = distance(product(product(b, a), b), b);
  }
  rep.verdict = rep.max_residual() <= tol ? Verdict::pass : Verdict::fail;
  return rep;
}

CheckReport strong_preserver_check(const LinMap& f, int samples, std::uint64_t seed,
                                   double tol) {
  if (samples < 1) throw ArgumentError("strong_preserver_check: samples must be >= 1");
  CheckReport rep;
  rep.check_name = "strong_preserver_check";
  rep.rule = "F(a^mp) = F(a)^mp for every regular a";
  rep.seed = static_cast<std::int64_t>(seed);
  Rng rng(seed);

  double worst = 0.0;
  AlgebraElement witness = zero_element(f.domain);

  const auto consider = [&](const AlgebraElement& a) {
    const AlgebraElement lhs = apply(f, mp_inverse(a).mp);
    const AlgebraElement rhs = mp_inverse(apply(f, a)).mp;
    const double r = distance(lhs, rhs);
    if (r > worst) {
      worst = r;
      witness = a;
    }
  };

  for (int j = 0; j < f.domain.dim(); ++j) consider(basis_element(f.domain, j));
  for (int s = 0; s < samples; ++s) {
    consider(random_element(f.domain, rng.next_u64()));
    // Rank-deficient witness: multiply by a random proper projection.
    std::vector<int> profile;
    for (int n : f.domain.block_sizes) {
      profile.push_back(n > 1 ? rng.uniform_int(1, n - 1) : rng.uniform_int(0, 1));
    }
    const AlgebraElement p = random_projection(f.domain, profile, rng.next_u64());
    consider(product(p, random_element(f.domain, rng.next_u64())));
  }

  rep.residuals["mp_commutation"] = worst;
  rep.verdict = worst <= tol ? Verdict::pass : Verdict::fail;
  if (rep.verdict == Verdict::fail) rep.witnesses["element"] = to_json(witness);
  return rep;
}

}  // namespace pginv
