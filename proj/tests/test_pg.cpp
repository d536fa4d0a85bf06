#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pginv/generators.hpp"
#include "pginv/pg.hpp"
#include "pginv/rng.hpp"

using namespace pginv;

namespace {

LinMap transpose_map(const AlgebraSpec& spec) {
  return LinMap::from_action(spec, spec, [](const AlgebraElement& x) {
    AlgebraElement y = x;
    for (CMatrix& b : y.blocks) b = b.transpose().eval();
    return y;
  });
}

LinMap star_hom_m2(std::uint64_t seed) {
  const AlgebraSpec m2({2});
  const AlgebraElement u = random_unitary(m2, seed);
  return LinMap::from_action(m2, m2, [u](const AlgebraElement& x) {
    return product(product(u, x), involution(u));
  });
}

PgPair make_pair(const LinMap& phi, const LinMap& psi) {
  return check_pair(phi, psi);
}

AlgebraElement diag_m2(double a, double b) {
  AlgebraElement z = zero_element(AlgebraSpec({2}));
  z.blocks[0](0, 0) = a;
  z.blocks[0](1, 1) = b;
  return z;
}

}  // namespace

TEST_CASE("check_pg: homomorphisms and anti-homomorphisms are their own pg-inverses") {
  const AlgebraSpec m2({2});
  CHECK(check_pg(LinMap::identity(m2), LinMap::identity(m2)) == 0.0);

  const LinMap t = transpose_map(m2);
  CHECK(check_pg(t, t) == 0.0);

  const LinMap pi = star_hom_m2(3);
  const PgPair pair = make_pair(pi, pi);
  CHECK(pair.residual_phi <= 1e-14);
  CHECK(pair.residual_psi <= 1e-14);

  CHECK_THROWS_AS(check_pg(LinMap::identity(m2), LinMap::identity(AlgebraSpec({3}))),
                  ShapeError);
}

TEST_CASE("check_pg matches the defining identity on random triples") {
  const AlgebraSpec spec({2, 1});
  const PgPair pair = generate_normalized_pair(spec, PairKind::general, 71);
  REQUIRE(pair.max_residual() <= 1e-10);
  Rng rng(72);
  for (int t = 0; t < 100; ++t) {
    const AlgebraElement a = random_element(spec, rng.next_u64());
    const AlgebraElement b = random_element(spec, rng.next_u64());
    const AlgebraElement c = random_element(spec, rng.next_u64());
    const AlgebraElement lhs = apply(pair.phi, add(product(product(a, b), c),
                                                   product(product(c, b), a)));
    const AlgebraElement rhs =
        add(product(product(apply(pair.phi, a), apply(pair.psi, b)), apply(pair.phi, c)),
            product(product(apply(pair.phi, c), apply(pair.psi, b)), apply(pair.phi, a)));
    const double scale_abc = norm(a) * norm(b) * norm(c);
    CHECK(distance(lhs, rhs) <= 1e-10 * (1.0 + scale_abc));
  }
}

TEST_CASE("check_pair: unital hom against a skewed left multiple") {
  const AlgebraSpec m2({2});
  const LinMap phi = LinMap::identity(m2);
  const AlgebraElement c = diag_m2(3.0, 0.5);
  const LinMap psi = compose(mult_op(Side::left, c), phi);
  const PgPair pair = make_pair(phi, psi);
  CHECK(pair.residual_phi > 0.01);
  CHECK(pair.residual_psi > 0.01);
}

TEST_CASE("solve_pg: identity on the two-point algebra") {
  const AlgebraSpec c2 = AlgebraSpec::diagonal(2);
  const SolveResult sol = solve_pg(LinMap::identity(c2));
  CHECK(sol.verdict == Verdict::pass);
  CHECK(check_pg(LinMap::identity(c2), sol.psi) <= 1e-10);
}

TEST_CASE("solve_pg: invertible similarity admits a pg-inverse") {
  const AlgebraSpec m2({2});
  const AlgebraElement z = diag_m2(2.0, 1.0);
  AlgebraElement zinv = z;
  zinv.blocks[0] = zinv.blocks[0].inverse().eval();
  const LinMap conj = compose(mult_op(Side::left, z), mult_op(Side::right, zinv));
  const SolveResult sol = solve_pg(conj);
  CHECK(sol.verdict == Verdict::pass);
  CHECK(sol.residual <= 1e-9);
  // Phi(1) = 1, so the pg-inverse is unique and equals the map itself.
  CHECK(map_distance(sol.psi, conj) <= 1e-8);
}

TEST_CASE("solve_pg soundness and completeness on feasible seeded instances") {
  for (int t = 0; t < 6; ++t) {
    const AlgebraSpec dom = t % 2 == 0 ? AlgebraSpec({2}) : AlgebraSpec({2, 1});
    const PairKind kind = t % 3 == 0 ? PairKind::general : PairKind::star;
    const PgPair pair = generate_normalized_pair(dom, kind, 800 + t);
    const SolveResult sol = solve_pg(pair.phi);
    CHECK(sol.verdict == Verdict::pass);
    CHECK(sol.residual <= 1e-9 * (1.0 + op_norm(pair.phi.matrix)));
    CHECK(check_pg(pair.phi, sol.psi) <= 1e-9 * (1.0 + op_norm(pair.phi.matrix)));
  }
}

TEST_CASE("normalize_pg: star homomorphism is fixed") {
  const LinMap pi = star_hom_m2(81);
  const LinMap theta = normalize_pg(pi, pi);
  CHECK(map_distance(theta, pi) <= 1e-12);
}

TEST_CASE("normalize_pg: invertible unit gives the closed form") {
  const PgPair pair = generate_normalized_pair(AlgebraSpec({2, 1}), PairKind::invertible_unit, 82);
  const AlgebraElement phi1 = apply(pair.phi, unit(pair.phi.domain));
  AlgebraElement phi1_inv = phi1;
  for (CMatrix& b : phi1_inv.blocks) b = b.inverse().eval();
  const LinMap closed = compose(mult_op(Side::left, phi1_inv),
                                compose(mult_op(Side::right, phi1_inv), pair.phi));
  const LinMap theta = normalize_pg(pair.phi, pair.psi);
  CHECK(map_distance(theta, closed) <= 1e-9);
}

TEST_CASE("normalize_pg: seeded factor instances normalize cleanly") {
  for (int t = 0; t < 4; ++t) {
    const PgPair pair = generate_normalized_pair(AlgebraSpec({2, 2}), PairKind::general, 90 + t);
    const LinMap theta = normalize_pg(pair.phi, pair.psi);
    const PgPair norm_pair = check_pair(pair.phi, theta);
    const double scale3 = 1.0 + std::pow(op_norm(pair.phi.matrix), 3);
    CHECK(norm_pair.max_residual() <= 1e-9 * scale3);
  }
}

TEST_CASE("normalize_pg: rejects a non-pg-inverse") {
  const AlgebraSpec m2({2});
  const LinMap phi = LinMap::identity(m2);
  const LinMap bad = map_scale(3.0, LinMap::identity(m2));
  CHECK_THROWS_AS(normalize_pg(phi, bad, 1e-8), PreconditionError);
}

TEST_CASE("verify_pair_identities: exact pairs, corrupted psi, precondition") {
  const LinMap pi = star_hom_m2(101);
  const PgPair pair = make_pair(pi, pi);
  const CheckReport rep = verify_pair_identities(pair, 1e-9);
  CHECK(rep.passed());
  CHECK(rep.max_residual() <= 1e-13);

  PgPair corrupted = pair;
  corrupted.psi.matrix(1, 2) += 0.1;
  corrupted.residual_phi = check_pg(corrupted.phi, corrupted.psi);
  corrupted.residual_psi = check_pg(corrupted.psi, corrupted.phi);
  // Large tolerance lets the precondition pass so the identities themselves
  // are evaluated; at least one residual must blow up.
  const CheckReport bad = verify_pair_identities(corrupted, 10.0);
  CHECK(bad.max_residual() >= 1e-3);

  CHECK_THROWS_AS(verify_pair_identities(corrupted, 1e-9), PreconditionError);
}

TEST_CASE("extract_factor: star pair recovers the homomorphism") {
  const LinMap pi = star_hom_m2(111);
  const PgPair pair = make_pair(pi, pi);
  const FactorResult f = extract_factor(pair, Side::left, 1e-9);
  CHECK(f.residuals.at("jordan_identity") <= 1e-10);
  CHECK(f.residuals.at("reconstruction") <= 1e-10);
  CHECK(f.residuals.at("idempotent") <= 1e-10);
  CHECK(f.residuals.at("connecting") <= 1e-10);
  CHECK(f.range_ok);
  CHECK(map_distance(f.jordan_map, pi) <= 1e-10);
  // c = pi(1) reconstructs T(1) = Phi(1) c.
  const AlgebraElement t1 = apply(f.jordan_map, unit(pair.phi.domain));
  const AlgebraElement phi1 = apply(pair.phi, unit(pair.phi.domain));
  CHECK(distance(product(phi1, f.connecting_element), t1) <= 1e-10);
}

TEST_CASE("extract_factor: proper partial isometry unit image") {
  const PgPair pair = generate_normalized_pair(AlgebraSpec({2}), PairKind::corner, 112);
  const AlgebraElement phi1 = apply(pair.phi, unit(pair.phi.domain));
  // The unit image is a proper partial isometry: v v* v = v, v not unitary.
  CHECK(distance(product(product(phi1, involution(phi1)), phi1), phi1) <= 1e-10);
  CHECK(norm(sub(product(phi1, involution(phi1)), unit(pair.phi.codomain))) > 0.5);

  for (const Side side : {Side::left, Side::right}) {
    const FactorResult f = extract_factor(pair, side, 1e-9);
    CHECK(f.residuals.at("jordan_identity") <= 1e-9);
    CHECK(f.residuals.at("idempotent") <= 1e-9);
    CHECK(f.range_ok);
  }
}

TEST_CASE("extract_factor: range failure is reported, not thrown") {
  const AlgebraSpec m2({2});
  PgPair fake;
  fake.phi = mult_op(Side::left, basis_element(m2, 0));
  fake.psi = LinMap::zero(m2, m2);
  fake.residual_phi = 0.0;  // deliberately lying: exercises the structured failure path
  fake.residual_psi = 0.0;
  const FactorResult f = extract_factor(fake, Side::left, 1e-9);
  CHECK_FALSE(f.range_ok);
}

TEST_CASE("reconstruct_from_factor: identity factors") {
  const AlgebraSpec m2({2});
  const auto [phi_a, psi_a] = reconstruct_from_factor(LinMap::identity(m2), unit(m2));
  CHECK(map_distance(phi_a, LinMap::identity(m2)) <= 1e-12);
  CHECK(map_distance(psi_a, LinMap::identity(m2)) <= 1e-12);

  const AlgebraElement d = diag_m2(2.0, 1.0);
  const auto [phi_b, psi_b] = reconstruct_from_factor(LinMap::identity(m2), d);
  CHECK(map_distance(phi_b, mult_op(Side::right, d)) <= 1e-12);
  AlgebraElement dinv = d;
  dinv.blocks[0] = dinv.blocks[0].inverse().eval();
  CHECK(map_distance(psi_b, mult_op(Side::left, dinv)) <= 1e-10);
  CHECK(check_pg(phi_b, psi_b) <= 1e-10);
}

TEST_CASE("reconstruct_from_factor: infeasible range condition") {
  const AlgebraSpec dom({1});
  const AlgebraSpec m2({2});
  // T(l) = l E11 is a homomorphism with T(1) = E11; E22 c = E11 is insolvable.
  const LinMap t = LinMap::from_action(dom, m2, [&](const AlgebraElement& x) {
    return scale(x.blocks[0](0, 0), basis_element(m2, 0));
  });
  const AlgebraElement e22 = basis_element(m2, 3);
  CHECK_THROWS_AS(reconstruct_from_factor(t, e22), PreconditionError);

  // A non-Jordan map is rejected up front.
  LinMap broken = LinMap::identity(m2);
  broken.matrix(0, 3) += 0.5;
  CHECK_THROWS_AS(reconstruct_from_factor(broken, unit(m2)), PreconditionError);
}

TEST_CASE("extract then reconstruct round-trips the pair") {
  for (int t = 0; t < 4; ++t) {
    const PairKind kind = t % 2 == 0 ? PairKind::general : PairKind::corner;
    const PgPair pair = generate_normalized_pair(AlgebraSpec({2, 1}), kind, 120 + t);
    const FactorResult f = extract_factor(pair, Side::left, 1e-9);
    const AlgebraElement phi1 = apply(pair.phi, unit(pair.phi.domain));
    const auto [phi2, psi2] = reconstruct_from_factor(f.jordan_map, phi1, 1e-7);
    CHECK(map_distance(phi2, pair.phi) <= 1e-8);
    CHECK(check_pg(phi2, psi2) <= 1e-8);
  }
}

TEST_CASE("weak preserver counterexample: fixed images and infeasibility") {
  const LinMap t = weak_preserver_counterexample();
  const AlgebraSpec m3({3});

  // T(1,1) = E21.
  const AlgebraElement one = unit(t.domain);
  const AlgebraElement v = basis_element(m3, flat_index_of(m3, VecIndex{0, 1, 0}));
  CHECK(distance(apply(t, one), v) == 0.0);

  // T(1,0)* T(1,0) = E11 / 2.
  const AlgebraElement t10 = apply(t, basis_element(t.domain, 0));
  const AlgebraElement gram = product(involution(t10), t10);
  CHECK(distance(gram, scale(0.5, basis_element(m3, 0))) <= 1e-15);

  const SolveResult sol = solve_pg(t);
  CHECK(sol.verdict == Verdict::fail);
  CHECK(sol.residual >= 0.05);
  // Frozen solver fixture: the best least-squares candidate misses the
  // identity by exactly 2 sqrt(2) / 5.
  CHECK(sol.residual == doctest::Approx(2.0 * std::sqrt(2.0) / 5.0).epsilon(1e-9));
  CHECK(check_pg(t, sol.psi) == doctest::Approx(sol.residual).epsilon(1e-12));
}

TEST_CASE("analyze_diagonal: reciprocal structure and bounds") {
  const AlgebraSpec c2 = AlgebraSpec::diagonal(2);
  CMatrix phi_m = CMatrix::Zero(2, 2);
  phi_m(0, 0) = 2.0;
  phi_m(1, 1) = 3.0;
  CMatrix psi_m = CMatrix::Zero(2, 2);
  psi_m(0, 0) = 0.5;
  psi_m(1, 1) = 1.0 / 3.0;
  const PgPair pair = make_pair(LinMap(c2, c2, phi_m), LinMap(c2, c2, psi_m));
  REQUIRE(pair.max_residual() <= 1e-15);
  const DiagonalStructure ds = analyze_diagonal(pair);
  CHECK(ds.valid);
  CHECK(ds.supports[0] == std::vector<int>{0});
  CHECK(ds.supports[1] == std::vector<int>{1});
  CHECK(ds.psi_bound == doctest::Approx(0.5));
}

TEST_CASE("analyze_diagonal: multi-point supports from the generator") {
  for (int t = 0; t < 5; ++t) {
    const PgPair pair = generate_diagonal_pair(4, 7, 130 + t);
    CHECK(pair.max_residual() <= 1e-12);
    const DiagonalStructure ds = analyze_diagonal(pair, 1e-10);
    CHECK(ds.valid);
    double expected_bound = 0.0;
    for (int i = 0; i < 4; ++i) {
      expected_bound = std::max(expected_bound, norm(apply(pair.psi, basis_element(pair.psi.domain, i))));
    }
    CHECK(ds.psi_bound == doctest::Approx(expected_bound).epsilon(1e-12));
  }
}

TEST_CASE("analyze_diagonal: overlapping supports rejected with witness") {
  const AlgebraSpec c2 = AlgebraSpec::diagonal(2);
  CMatrix overlap = CMatrix::Zero(2, 2);
  overlap(0, 0) = 1.0;
  overlap(0, 1) = 1.0;
  const PgPair bad = make_pair(LinMap(c2, c2, overlap), LinMap(c2, c2, overlap));
  CHECK(bad.max_residual() > 1e-3);  // already fails as a pair
  const DiagonalStructure ds = analyze_diagonal(bad);
  CHECK_FALSE(ds.valid);
  REQUIRE(ds.overlap_witness.has_value());
  CHECK(ds.overlap_witness->first == 0);
  CHECK(ds.overlap_witness->second == 1);

  const AlgebraSpec m2({2});
  const PgPair nondiag = make_pair(LinMap::identity(m2), LinMap::identity(m2));
  CHECK_THROWS_AS(analyze_diagonal(nondiag), ArgumentError);
}

TEST_CASE("orthogonal projection annihilation") {
  const LinMap pi = star_hom_m2(141);
  const PgPair pair = make_pair(pi, pi);
  const AlgebraSpec m2({2});
  const AlgebraElement p = basis_element(m2, 0);
  const AlgebraElement q = basis_element(m2, 3);
  const CheckReport rep = orthogonal_projection_annihilation(pair, p, q, 1e-10);
  CHECK(rep.passed());
  CHECK(rep.max_residual() <= 1e-13);

  // Seeded diagonal pair with disjoint basis projections.
  const PgPair dpair = generate_diagonal_pair(4, 6, 142);
  const AlgebraSpec d4 = dpair.phi.domain;
  const CheckReport drep = orthogonal_projection_annihilation(
      dpair, basis_element(d4, 0), basis_element(d4, 2), 1e-10);
  CHECK(drep.passed());

  // p = q is not an orthogonal pair.
  CHECK_THROWS_AS(orthogonal_projection_annihilation(pair, p, p, 1e-10), PreconditionError);
}

TEST_CASE("contractivity suite: star, scaled and similarity pairs") {
  const LinMap pi = star_hom_m2(151);
  const PgPair star_pair = make_pair(pi, pi);
  const CheckReport star_rep = contractivity_suite(star_pair, 1e-9, 16, 152);
  CHECK(star_rep.passed());
  CHECK(star_rep.residuals.at("b_identity") <= 1e-12);
  CHECK(star_rep.residuals.at("norm_lb_phi") <= 1.0 + 1e-9);

  const PgPair scaled = generate_normalized_pair(AlgebraSpec({2}), PairKind::scaled, 153);
  REQUIRE(scaled.max_residual() <= 1e-12);
  const CheckReport scaled_rep = contractivity_suite(scaled, 1e-9, 16, 154);
  CHECK(scaled_rep.passed());  // consistent: (b) fails and the bound exceeds 1
  CHECK(scaled_rep.residuals.at("b_identity") > 1e-6);
  CHECK(scaled_rep.residuals.at("norm_lb_phi") >= 2.0 - 1e-9);

  // z x z^-1 with its unique pg-inverse (itself): not symmetric, not
  // contractive, still consistent.
  const AlgebraSpec m2({2});
  const AlgebraElement z = diag_m2(2.0, 1.0);
  AlgebraElement zinv = z;
  zinv.blocks[0] = zinv.blocks[0].inverse().eval();
  const LinMap conj = compose(mult_op(Side::left, z), mult_op(Side::right, zinv));
  const SolveResult sol = solve_pg(conj);
  REQUIRE(sol.verdict == Verdict::pass);
  const PgPair conj_pair = make_pair(conj, sol.psi);
  REQUIRE(conj_pair.max_residual() <= 1e-9);
  const CheckReport conj_rep = contractivity_suite(conj_pair, 1e-9, 16, 155);
  CHECK(conj_rep.passed());
  CHECK(conj_rep.residuals.at("b_identity") > 1e-6);
  CHECK(conj_rep.residuals.at("norm_lb_phi") >= 2.0 - 1e-9);
}

TEST_CASE("generated Jordan homomorphisms are their own pg-inverses") {
  for (int t = 0; t < 9; ++t) {
    const AlgebraSpec dom = t % 2 == 0 ? AlgebraSpec({2, 1}) : AlgebraSpec({2, 2});
    const GeneratedHom j = generate_jordan_hom(dom, 160 + t);
    CHECK(is_jordan_hom(j.map, 1e-9).passed());
    CHECK(check_pg(j.map, j.map) <= 1e-10);
  }
}

TEST_CASE("generated pairs are normalized for every kind") {
  const PairKind kinds[5] = {PairKind::star, PairKind::invertible_unit, PairKind::corner,
                             PairKind::general, PairKind::scaled};
  int i = 0;
  for (const PairKind kind : kinds) {
    const PgPair pair = generate_normalized_pair(AlgebraSpec({2, 1}), kind, 170 + i++);
    CHECK(pair.max_residual() <= 1e-9);
  }
}
