#include "pginv/pg.hpp"

#include <algorithm>
#include <sstream>

namespace pginv {

namespace {

// Index of the matrix-unit product b_i b_j in the canonical basis, or
// nullopt when the product vanishes: E_rc E_r'c' = delta(c, r') E_rc'.
std::optional<int> unit_product_index(const AlgebraSpec& spec, int i, int j) {
  const VecIndex a = vec_index_of(spec, i);
  const VecIndex b = vec_index_of(spec, j);
  if (a.block != b.block || a.col != b.row) return std::nullopt;
  return flat_index_of(spec, VecIndex{a.block, a.row, b.col});
}

std::optional<int> unit_triple_index(const AlgebraSpec& spec, int i, int j, int k) {
  const auto ij = unit_product_index(spec, i, j);
  if (!ij) return std::nullopt;
  return unit_product_index(spec, *ij, k);
}

double frob_distance(const AlgebraElement& x, const AlgebraElement& y) {
  double s = 0.0;
  for (std::size_t b = 0; b < x.blocks.size(); ++b) s += (x.blocks[b] - y.blocks[b]).squaredNorm();
  return std::sqrt(s);
}

// C*-norm distance, skipping the SVD when the (larger) Frobenius distance
// cannot beat the current maximum.
double pruned_distance(const AlgebraElement& x, const AlgebraElement& y, double current_max) {
  if (frob_distance(x, y) <= current_max) return current_max;
  return std::max(current_max, distance(x, y));
}

int rank_of(const CMatrix& m, double sigma_scale) {
  const SvdResult s = svd(m);
  const double tol = rank_tolerance(sigma_scale);
  int r = 0;
  for (int i = 0; i < s.singular_values.size(); ++i) {
    if (s.singular_values(i) > tol) ++r;
  }
  return r;
}

void require_same_algebras(const LinMap& phi, const LinMap& psi, const char* op) {
  if (!(phi.domain == psi.domain) || !(phi.codomain == psi.codomain)) {
    throw ShapeError(std::string(op) + ": maps between different algebra pairs");
  }
}

}  // namespace

double check_pg(const LinMap& phi, const LinMap& psi) {
  require_same_algebras(phi, psi, "check_pg");
  const AlgebraSpec& dom = phi.domain;
  const AlgebraSpec& cod = phi.codomain;
  const int d = dom.dim();
  const std::vector<AlgebraElement> phi_img = basis_images(phi);
  const std::vector<AlgebraElement> psi_img = basis_images(psi);

  // psi_phi[j][k] = Psi(b_j) Phi(b_k)
  std::vector<std::vector<AlgebraElement>> psi_phi(d);
  for (int j = 0; j < d; ++j) {
    psi_phi[j].reserve(d);
    for (int k = 0; k < d; ++k) psi_phi[j].push_back(product(psi_img[j], phi_img[k]));
  }

  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = i; k < d; ++k) {
        CVector lhs = CVector::Zero(cod.dim());
        if (const auto t1 = unit_triple_index(dom, i, j, k)) lhs += phi.matrix.col(*t1);
        if (const auto t2 = unit_triple_index(dom, k, j, i)) lhs += phi.matrix.col(*t2);
        const AlgebraElement rhs =
            add(product(phi_img[i], psi_phi[j][k]), product(phi_img[k], psi_phi[j][i]));
        worst = pruned_distance(devectorize(cod, lhs), rhs, worst);
      }
    }
  }
  return worst;
}

PgPair check_pair(const LinMap& phi, const LinMap& psi) {
  PgPair pair;
  pair.phi = phi;
  pair.psi = psi;
  pair.residual_phi = check_pg(phi, psi);
  pair.residual_psi = check_pg(psi, phi);
  return pair;
}

bool is_normalized(const PgPair& pair, double tol) {
  return pair.max_residual() <= tol;
}

SolveResult solve_pg(const LinMap& phi, double exists_tol) {
  const AlgebraSpec& dom = phi.domain;
  const AlgebraSpec& cod = phi.codomain;
  const int d = dom.dim();
  const int df = cod.dim();
  const std::vector<AlgebraElement> phi_img = basis_images(phi);
  const std::vector<AlgebraElement> cod_basis = basis(cod);

  // One equation per ordered pair (i <= k) and middle index j:
  //   Phi(b_i b_j b_k + b_k b_j b_i) = (L_i R_k + L_k R_i)(Psi(b_j)),
  // where L_i R_k : x -> Phi(b_i) x Phi(b_k). The coefficient block is the
  // same for every j, so the system is solved once and applied to all d
  // right-hand sides.
  const int pairs = d * (d + 1) / 2;
  CMatrix coeff(pairs * df, df);
  CMatrix rhs = CMatrix::Zero(pairs * df, d);
  int row = 0;
  for (int i = 0; i < d; ++i) {
    for (int k = i; k < d; ++k) {
      for (int c = 0; c < df; ++c) {
        const AlgebraElement img = add(product(product(phi_img[i], cod_basis[c]), phi_img[k]),
                                       product(product(phi_img[k], cod_basis[c]), phi_img[i]));
        coeff.block(row, c, df, 1) = vectorize(img);
      }
      for (int j = 0; j < d; ++j) {
        CVector b = CVector::Zero(df);
        if (const auto t1 = unit_triple_index(dom, i, j, k)) b += phi.matrix.col(*t1);
        if (const auto t2 = unit_triple_index(dom, k, j, i)) b += phi.matrix.col(*t2);
        rhs.block(row, j, df, 1) = b;
      }
      row += df;
    }
  }

  const CMatrix psi_matrix = pinv(coeff) * rhs;  // minimum-norm least squares
  SolveResult out;
  out.psi = LinMap(dom, cod, psi_matrix);
  out.system_residual = frob_norm(coeff * psi_matrix - rhs);
  out.system_rows = pairs * df * d;
  out.system_cols = df * d;
  out.residual = check_pg(phi, out.psi);

  const double scale = 1.0 + op_norm(phi.matrix);
  if (out.residual <= exists_tol * scale) {
    out.verdict = Verdict::pass;
  } else if (out.residual <= 1e-4 * scale) {
    out.verdict = Verdict::indeterminate;
  } else {
    out.verdict = Verdict::fail;
  }
  return out;
}

LinMap normalize_pg(const LinMap& phi, const LinMap& psi, double tol) {
  const double pre = check_pg(phi, psi);
  if (pre > tol) {
    std::ostringstream os;
    os << "normalize_pg: psi is not a pg-inverse of phi (residual " << pre << " > " << tol << ")";
    throw PreconditionError(os.str());
  }
  const AlgebraElement phi1 = apply(phi, unit(phi.domain));
  const AlgebraElement z = mp_inverse(phi1).mp;
  return compose(mult_op(Side::left, z), compose(mult_op(Side::right, z), phi));
}

CheckReport verify_pair_identities(const PgPair& pair, double tol) {
  if (!is_normalized(pair, tol)) {
    std::ostringstream os;
    os << "verify_pair_identities: pair is not normalized (residuals " << pair.residual_phi
       << ", " << pair.residual_psi << ")";
    throw PreconditionError(os.str());
  }
  CheckReport rep;
  rep.check_name = "pair_identities";
  rep.rule =
      "unit identities of a Jordan-triple multiplicative pair: Phi = Phi(1)Psi(1)Phi(.) = "
      "Phi(.)Psi(1)Phi(1); Psi(1)Phi(a) = Psi(a)Phi(1); Phi(a)Psi(1) = Phi(1)Psi(a); "
      "Phi(a)Psi(b) = Phi(1)Psi(a)Phi(b)Psi(1) and its mirror";

  const LinMap& phi = pair.phi;
  const LinMap& psi = pair.psi;
  const AlgebraElement one = unit(phi.domain);
  const AlgebraElement f1 = apply(phi, one);
  const AlgebraElement g1 = apply(psi, one);
  const std::vector<AlgebraElement> phi_img = basis_images(phi);
  const std::vector<AlgebraElement> psi_img = basis_images(psi);
  const int d = phi.domain.dim();

  double absorb_l = 0.0, absorb_r = 0.0, swap_l = 0.0, swap_r = 0.0;
  const AlgebraElement f1g1 = product(f1, g1);
  const AlgebraElement g1f1 = product(g1, f1);
  for (int a = 0; a < d; ++a) {
    absorb_l = std::max(absorb_l, distance(phi_img[a], product(f1g1, phi_img[a])));
    absorb_r = std::max(absorb_r, distance(phi_img[a], product(phi_img[a], g1f1)));
    swap_l = std::max(swap_l, distance(product(g1, phi_img[a]), product(psi_img[a], f1)));
    swap_r = std::max(swap_r, distance(product(phi_img[a], g1), product(f1, psi_img[a])));
  }
  double sandwich = 0.0, sandwich_rev = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const AlgebraElement lhs = product(phi_img[a], psi_img[b]);
      const AlgebraElement rhs = product(product(f1, psi_img[a]), product(phi_img[b], g1));
      sandwich = std::max(sandwich, distance(lhs, rhs));
      const AlgebraElement lhs2 = product(product(g1, phi_img[a]), product(psi_img[b], f1));
      const AlgebraElement rhs2 = product(psi_img[a], phi_img[b]);
      sandwich_rev = std::max(sandwich_rev, distance(lhs2, rhs2));
    }
  }

  rep.residuals["unit_absorb_left"] = absorb_l;
  rep.residuals["unit_absorb_right"] = absorb_r;
  rep.residuals["unit_swap_left"] = swap_l;
  rep.residuals["unit_swap_right"] = swap_r;
  rep.residuals["product_sandwich"] = sandwich;
  rep.residuals["product_sandwich_rev"] = sandwich_rev;
  rep.verdict = rep.max_residual() <= tol ? Verdict::pass : Verdict::fail;
  return rep;
}

FactorResult extract_factor(const PgPair& pair, Side side, double tol) {
  if (!is_normalized(pair, tol)) {
    throw PreconditionError("extract_factor: pair is not normalized");
  }
  const LinMap& phi = pair.phi;
  const LinMap& psi = pair.psi;
  const AlgebraElement one = unit(phi.domain);
  const AlgebraElement phi1 = apply(phi, one);

  FactorResult out;
  out.side = side;
  if (side == Side::left) {
    out.jordan_map = compose(mult_op(Side::left, phi1), psi);
  } else {
    out.jordan_map = compose(mult_op(Side::right, phi1), psi);
  }

  out.residuals["jordan_identity"] = is_jordan_hom(out.jordan_map, tol).max_residual();

  const std::vector<AlgebraElement> t_img = basis_images(out.jordan_map);
  const std::vector<AlgebraElement> phi_img = basis_images(phi);
  double recon = 0.0;
  for (int a = 0; a < phi.domain.dim(); ++a) {
    const AlgebraElement back = side == Side::left ? product(t_img[a], phi1)
                                                   : product(phi1, t_img[a]);
    recon = std::max(recon, distance(back, phi_img[a]));
  }
  out.residuals["reconstruction"] = recon;

  const AlgebraElement t1 = apply(out.jordan_map, one);
  out.residuals["idempotent"] = distance(product(t1, t1), t1);

  // Range condition: Phi(1) B = T(1) B (left) or B Phi(1) = B S(1) (right).
  // Right/left ideals are the column spaces of the corresponding
  // multiplication-operator matrices.
  const Side ideal_side = side == Side::left ? Side::left : Side::right;
  const CMatrix m_phi1 = mult_op(ideal_side, phi1).matrix;
  const CMatrix m_t1 = mult_op(ideal_side, t1).matrix;
  CMatrix stacked(m_phi1.rows(), m_phi1.cols() + m_t1.cols());
  stacked << m_phi1, m_t1;
  const double scale = std::max(op_norm(m_phi1), op_norm(m_t1));
  const int r_phi = rank_of(m_phi1, scale);
  const int r_t = rank_of(m_t1, scale);
  const int r_both = rank_of(stacked, scale);
  out.range_ok = (r_phi == r_t) && (r_t == r_both);

  // Connecting element: T(1) = Phi(1) c (left) or S(1) = c Phi(1) (right).
  const LstsqResult sol = lstsq(m_phi1, vectorize(t1));
  out.connecting_element = devectorize(phi.codomain, sol.x.col(0));
  out.residuals["connecting"] = sol.residual;
  return out;
}

std::pair<LinMap, LinMap> reconstruct_from_factor(const LinMap& t, const AlgebraElement& phi1,
                                                  double tol) {
  if (!(phi1.algebra == t.codomain)) {
    throw ShapeError("reconstruct_from_factor: phi1 not in the codomain algebra");
  }
  const CheckReport jh = is_jordan_hom(t, tol);
  if (!jh.passed()) {
    std::ostringstream os;
    os << "reconstruct_from_factor: map is not a Jordan homomorphism (residual "
       << jh.max_residual() << ")";
    throw PreconditionError(os.str());
  }
  const AlgebraElement t1 = apply(t, unit(t.domain));
  const LstsqResult sol = lstsq(mult_op(Side::left, phi1).matrix, vectorize(t1));
  if (sol.residual > tol * (1.0 + norm(t1))) {
    std::ostringstream os;
    os << "reconstruct_from_factor: range condition fails, T(1) is not in phi1 * B "
       << "(least-squares residual " << sol.residual << ")";
    throw PreconditionError(os.str());
  }
  const AlgebraElement c = devectorize(t.codomain, sol.x.col(0));
  LinMap phi = compose(mult_op(Side::right, phi1), t);
  LinMap psi = compose(mult_op(Side::left, c), t);
  return {std::move(phi), std::move(psi)};
}

LinMap weak_preserver_counterexample() {
  const AlgebraSpec dom({1, 1});
  const AlgebraSpec cod({3});
  // v = E21, w = E31: images T(l, m) = (l+m)/2 v + (l-m)/2 w.
  CMatrix m = CMatrix::Zero(cod.dim(), dom.dim());
  const int v_idx = 3;  // (row 1, col 0) in the 3x3 block
  const int w_idx = 6;  // (row 2, col 0)
  m(v_idx, 0) = 0.5;
  m(w_idx, 0) = 0.5;
  m(v_idx, 1) = 0.5;
  m(w_idx, 1) = -0.5;
  return LinMap(dom, cod, std::move(m));
}

DiagonalStructure analyze_diagonal(const PgPair& pair, double tol) {
  const LinMap& phi = pair.phi;
  const LinMap& psi = pair.psi;
  if (!phi.domain.is_diagonal() || !phi.codomain.is_diagonal()) {
    throw ArgumentError("analyze_diagonal: both algebras must be diagonal (all blocks size 1)");
  }
  const int n = phi.domain.dim();
  const int m = phi.codomain.dim();
  const double support_tol = kRankRelTol * (1.0 + op_norm(phi.matrix));

  DiagonalStructure out;
  out.supports.resize(n);
  out.coefficients.resize(n);
  out.valid = true;

  std::vector<int> owner(m, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const Complex lambda = phi.matrix(j, i);
      if (std::abs(lambda) <= support_tol) continue;
      out.supports[i].push_back(j);
      out.coefficients[i].push_back(lambda);
      if (owner[j] >= 0 && !out.overlap_witness) {
        out.overlap_witness = std::make_pair(owner[j], i);
        out.valid = false;
      }
      owner[j] = i;
    }
  }

  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const Complex mu = psi.matrix(j, i);
      const bool in_support =
          std::find(out.supports[i].begin(), out.supports[i].end(), j) != out.supports[i].end();
      if (in_support) {
        const Complex lambda = phi.matrix(j, i);
        if (std::abs(mu - 1.0 / lambda) > tol && !out.reciprocal_witness) {
          out.reciprocal_witness = std::make_pair(i, j);
          out.valid = false;
        }
      } else if (std::abs(mu) > tol && !out.reciprocal_witness) {
        out.reciprocal_witness = std::make_pair(i, j);
        out.valid = false;
      }
      bound = std::max(bound, std::abs(mu));
    }
  }
  // psi_bound = max_i |Psi(e_i)|; for diagonal algebras that is the largest
  // entry magnitude over all columns.
  out.psi_bound = bound;
  return out;
}

CheckReport orthogonal_projection_annihilation(const PgPair& pair, const AlgebraElement& p,
                                               const AlgebraElement& q, double tol) {
  if (!is_normalized(pair, tol)) {
    throw PreconditionError("orthogonal_projection_annihilation: pair is not normalized");
  }
  const auto check_projection = [](const AlgebraElement& r, const char* name) {
    if (distance(product(r, r), r) > 1e-9 || distance(involution(r), r) > 1e-9) {
      throw PreconditionError(std::string("orthogonal_projection_annihilation: ") + name +
                              " is not a projection");
    }
  };
  check_projection(p, "p");
  check_projection(q, "q");
  if (norm(product(p, q)) > 1e-10) {
    throw PreconditionError("orthogonal_projection_annihilation: projections are not orthogonal");
  }

  const LinMap& phi = pair.phi;
  const LinMap& psi = pair.psi;
  const AlgebraElement phi1 = apply(phi, unit(phi.domain));
  const LinMap t = compose(mult_op(Side::left, phi1), psi);
  const LinMap s = compose(mult_op(Side::right, phi1), psi);

  CheckReport rep;
  rep.check_name = "orthogonal_projection_annihilation";
  rep.rule = "p q = 0 for projections implies T(p)T(q) = S(p)S(q) = 0";

  rep.residuals["t_annihilation"] = norm(product(apply(t, p), apply(t, q)));
  rep.residuals["s_annihilation"] = norm(product(apply(s, p), apply(s, q)));

  // Derivation chain: Phi(p)Psi(q)Phi(q) + Phi(q)Psi(q)Phi(p) = Phi(pqq + qqp) = 0,
  // Psi(q)Phi(p)Psi(q) = Psi(qpq), and qpq = 0, so T(p)T(q) = -Phi(q)Psi(qpq) = 0.
  const AlgebraElement fp = apply(phi, p), fq = apply(phi, q);
  const AlgebraElement gp = apply(psi, p), gq = apply(psi, q);
  rep.residuals["chain_polarized"] =
      norm(add(product(product(fp, gq), fq), product(product(fq, gq), fp)));
  const AlgebraElement qpq = product(product(q, p), q);
  rep.residuals["chain_middle"] = distance(product(product(gq, fp), gq), apply(psi, qpq));
  rep.residuals["chain_final"] = norm(product(fq, apply(psi, qpq)));

  rep.verdict = rep.max_residual() <= tol ? Verdict::pass : Verdict::fail;
  return rep;
}

CheckReport contractivity_suite(const PgPair& pair, double tol, int norm_samples,
                                std::uint64_t seed) {
  CheckReport rep;
  rep.check_name = "contractivity_suite";
  rep.rule =
      "for a Jordan-triple multiplicative pair: Psi(a) = Phi(a*)* implies both maps are "
      "triple homomorphisms, triple homomorphisms are contractive, and a norm lower bound "
      "above 1 rules the symmetry identity out";
  rep.seed = static_cast<std::int64_t>(seed);

  const LinMap& phi = pair.phi;
  const LinMap& psi = pair.psi;

  double residual_b = 0.0;
  for (int j = 0; j < phi.domain.dim(); ++j) {
    for (const Complex s : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      const AlgebraElement a = scale(s, basis_element(phi.domain, j));
      residual_b =
          std::max(residual_b, distance(apply(psi, a), involution(apply(phi, involution(a)))));
    }
  }
  const double tri_phi = is_triple_hom(phi, tol).max_residual();
  const double tri_psi = is_triple_hom(psi, tol).max_residual();
  const double nb_phi = estimate_norm(phi, norm_samples, seed).lower_bound;
  const double nb_psi = estimate_norm(psi, norm_samples, seed + 1).lower_bound;

  rep.residuals["b_identity"] = residual_b;
  rep.residuals["triple_hom_phi"] = tri_phi;
  rep.residuals["triple_hom_psi"] = tri_psi;
  rep.residuals["norm_lb_phi"] = nb_phi;
  rep.residuals["norm_lb_psi"] = nb_psi;

  const bool b_holds = residual_b <= tol;
  const bool c_holds = std::max(tri_phi, tri_psi) <= tol;
  const double nb_max = std::max(nb_phi, nb_psi);

  nlohmann::json violations = nlohmann::json::array();
  if (b_holds && !c_holds) violations.push_back("symmetry holds but triple identity fails");
  if (c_holds && nb_max > 1.0 + tol) {
    violations.push_back("triple homomorphism with norm lower bound above 1");
  }
  if (nb_max > 1.0 + 1e-6 && residual_b <= 1e-6) {
    violations.push_back("non-contractive pair satisfies the symmetry identity");
  }
  if (!violations.empty()) rep.witnesses["violations"] = violations;
  rep.verdict = violations.empty() ? Verdict::pass : Verdict::fail;
  return rep;
}

}  // namespace pginv
