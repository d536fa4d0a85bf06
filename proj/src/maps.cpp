#include "pginv/maps.hpp"

#include <array>
#include <sstream>

#include "pginv/rng.hpp"

namespace pginv {

LinMap::LinMap(AlgebraSpec dom, AlgebraSpec cod, CMatrix m)
    : domain(std::move(dom)), codomain(std::move(cod)), matrix(std::move(m)) {
  if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim()) {
    std::ostringstream os;
    os << "LinMap: matrix is " << matrix.rows() << "x" << matrix.cols()
       << ", expected " << codomain.dim() << "x" << domain.dim();
    throw ShapeError(os.str());
  }
}

LinMap LinMap::identity(const AlgebraSpec& a) {
  return LinMap(a, a, CMatrix::Identity(a.dim(), a.dim()));
}

LinMap LinMap::zero(const AlgebraSpec& dom, const AlgebraSpec& cod) {
  return LinMap(dom, cod, CMatrix::Zero(cod.dim(), dom.dim()));
}

LinMap LinMap::from_action(const AlgebraSpec& dom, const AlgebraSpec& cod,
                           const std::function<AlgebraElement(const AlgebraElement&)>& action) {
  CMatrix m(cod.dim(), dom.dim());
  for (int j = 0; j < dom.dim(); ++j) {
    m.col(j) = vectorize(action(basis_element(dom, j)));
  }
  return LinMap(dom, cod, std::move(m));
}

AlgebraElement apply(const LinMap& f, const AlgebraElement& x) {
  if (!(x.algebra == f.domain)) throw ShapeError("apply: element not in the map's domain");
  return devectorize(f.codomain, f.matrix * vectorize(x));
}

LinMap compose(const LinMap& g, const LinMap& f) {
  if (!(f.codomain == g.domain)) throw ShapeError("compose: codomain/domain mismatch");
  return LinMap(f.domain, g.codomain, g.matrix * f.matrix);
}

LinMap map_scale(Complex c, const LinMap& f) {
  return LinMap(f.domain, f.codomain, c * f.matrix);
}

LinMap map_add(const LinMap& f, const LinMap& g) {
  if (!(f.domain == g.domain) || !(f.codomain == g.codomain)) {
    throw ShapeError("map_add: shape mismatch");
  }
  return LinMap(f.domain, f.codomain, f.matrix + g.matrix);
}

double map_distance(const LinMap& f, const LinMap& g) {
  if (!(f.domain == g.domain) || !(f.codomain == g.codomain)) {
    throw ShapeError("map_distance: shape mismatch");
  }
  return op_norm(f.matrix - g.matrix);
}

LinMap mult_op(Side side, const AlgebraElement& a) {
  const AlgebraSpec& spec = a.algebra;
  return LinMap::from_action(spec, spec, [&](const AlgebraElement& x) {
    return side == Side::left ? product(a, x) : product(x, a);
  });
}

std::vector<AlgebraElement> basis_images(const LinMap& f) {
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(f.domain.dim()));
  for (int j = 0; j < f.domain.dim(); ++j) {
    out.push_back(devectorize(f.codomain, f.matrix.col(j)));
  }
  return out;
}

NormEstimate estimate_norm(const LinMap& f, int samples, std::uint64_t seed) {
  if (samples < 1) throw ArgumentError("estimate_norm: samples must be >= 1");
  Rng rng(seed);

  double best = -1.0;
  AlgebraElement witness = unit(f.domain);

  const auto consider = [&](const AlgebraElement& cand) {
    const double n = norm(cand);
    if (n <= 0.0) return;
    const AlgebraElement unit_cand = scale(Complex(1.0 / n, 0.0), cand);
    const double value = norm(apply(f, unit_cand));
    if (value > best) {
      best = value;
      witness = unit_cand;
    }
  };

  // Matrix units first: structured maps often attain their norm on them.
  for (int j = 0; j < f.domain.dim(); ++j) consider(basis_element(f.domain, j));
  for (int s = 0; s < samples; ++s) consider(random_element(f.domain, rng.next_u64()));

  // Local ascent from the best sample.
  constexpr int kAscentSteps = 50;
  double step = 0.25;
  for (int it = 0; it < kAscentSteps; ++it) {
    const AlgebraElement delta = random_element(f.domain, rng.next_u64());
    const AlgebraElement cand = add(witness, scale(Complex(step, 0.0), delta));
    const double n = norm(cand);
    if (n <= 0.0) continue;
    const AlgebraElement unit_cand = scale(Complex(1.0 / n, 0.0), cand);
    const double value = norm(apply(f, unit_cand));
    if (value > best) {
      best = value;
      witness = unit_cand;
    } else {
      step *= 0.7;
    }
  }

  NormEstimate est;
  est.lower_bound = std::max(best, 0.0);
  est.witness = witness;
  est.samples = samples;
  est.ascent_iterations = kAscentSteps;
  return est;
}

CheckReport is_jordan_hom(const LinMap& t, double tol) {
  CheckReport rep;
  rep.check_name = "is_jordan_hom";
  rep.rule = "T(a o b) = T(a) o T(b) on all basis pairs";
  const std::vector<AlgebraElement> dom_basis = basis(t.domain);
  const std::vector<AlgebraElement> images = basis_images(t);
  double worst = 0.0;
  int wi = -1, wj = -1;
  for (int i = 0; i < t.domain.dim(); ++i) {
    for (int j = 0; j < t.domain.dim(); ++j) {
      const AlgebraElement lhs = apply(t, jordan_product(dom_basis[i], dom_basis[j]));
      const AlgebraElement rhs = jordan_product(images[i], images[j]);
      const double r = distance(lhs, rhs);
      if (r > worst) {
        worst = r;
        wi = i;
        wj = j;
      }
    }
  }
  rep.residuals["jordan_identity"] = worst;
  rep.verdict = worst <= tol ? Verdict::pass : Verdict::fail;
  if (rep.verdict == Verdict::fail) {
    rep.witnesses["basis_pair"] = nlohmann::json::array({wi, wj});
  }
  return rep;
}

CheckReport is_star_map(const LinMap& t, double tol) {
  CheckReport rep;
  rep.check_name = "is_star_map";
  rep.rule = "T(x*) = T(x)* on basis and i*basis";
  double worst = 0.0;
  int wj = -1;
  for (int j = 0; j < t.domain.dim(); ++j) {
    const AlgebraElement b = basis_element(t.domain, j);
    for (const Complex s : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      const AlgebraElement x = scale(s, b);
      const double r = distance(apply(t, involution(x)), involution(apply(t, x)));
      if (r > worst) {
        worst = r;
        wj = j;
      }
    }
  }
  rep.residuals["star_identity"] = worst;
  rep.verdict = worst <= tol ? Verdict::pass : Verdict::fail;
  if (rep.verdict == Verdict::fail) rep.witnesses["basis_index"] = wj;
  return rep;
}

namespace {
AlgebraElement triple_prod_c(const AlgebraElement& a, const AlgebraElement& b,
                             const AlgebraElement& c) {
  const AlgebraElement bs = involution(b);
  return scale(Complex(0.5, 0.0), add(product(product(a, bs), c), product(product(c, bs), a)));
}
}  // namespace

CheckReport is_triple_hom(const LinMap& t, double tol) {
  CheckReport rep;
  rep.check_name = "is_triple_hom";
  rep.rule = "T{a,b,c} = {T(a),T(b),T(c)} with {a,b,c} = (a b* c + c b* a)/2";
  const std::vector<AlgebraElement> dom_basis = basis(t.domain);
  const std::vector<AlgebraElement> images = basis_images(t);
  const int d = t.domain.dim();
  double worst = 0.0;
  std::array<int, 3> widx{-1, -1, -1};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (const Complex s : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        const AlgebraElement mid = scale(s, dom_basis[j]);
        const AlgebraElement mid_img = scale(s, images[j]);
        for (int k = i; k < d; ++k) {
          const AlgebraElement lhs = apply(t, triple_prod_c(dom_basis[i], mid, dom_basis[k]));
          const AlgebraElement rhs = triple_prod_c(images[i], mid_img, images[k]);
          const double r = distance(lhs, rhs);
          if (r > worst) {
            worst = r;
            widx = {i, j, k};
          }
        }
      }
    }
  }
  rep.residuals["triple_identity"] = worst;
  rep.verdict = worst <= tol ? Verdict::pass : Verdict::fail;
  if (rep.verdict == Verdict::fail) {
    rep.witnesses["basis_triple"] = nlohmann::json::array({widx[0], widx[1], widx[2]});
  }
  return rep;
}

}  // namespace pginv
