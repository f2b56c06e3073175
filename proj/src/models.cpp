#include "isl/models.hpp"

#include <cmath>

namespace isl {

OrthonormalBasis model_basis(Algebra alg, int n) {
  if (alg == Algebra::sl2r) return basis_sl2r();
  return basis_su(n);
}

namespace {

Jet monomial(const Jet& x, const Jet& y, int px, int py) {
  Jet r = jet_constant(cd(1.0), x.order());
  for (int a = 0; a < px; ++a) r = r * x;
  for (int b = 0; b < py; ++b) r = r * y;
  return r;
}

struct RandomPoly {
  std::vector<std::pair<int, int>> powers;
  std::vector<Mat> mats;
};

Coefficient random_coefficient(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  RandomPoly p;
  for (int d = 0; d <= 2; ++d)
    for (int b = 0; b <= d; ++b) {
      p.powers.emplace_back(d - b, b);
      p.mats.push_back(random_su(rng, n));
    }
  const double a = U(rng);
  const Mat B = random_su(rng, n);
  return [p, a, B, n](double x, double y, int order, const FormContext& ctx) {
    const Jet jx = jet_x(x, order), jy = jet_y(y, order);
    MatJet r = zero_jet(n, n, order);
    for (size_t k = 0; k < p.powers.size(); ++k)
      r += monomial(jx, jy, p.powers[k].first, p.powers[k].second) * jet_constant(p.mats[k], order);
    if (ctx.field && ctx.field->rows() == n) {
      const MatJet u = ctx.field->jet(x, y, order);
      r += a * u + (u * B - B * u);
    }
    return r;
  };
}

}  // namespace

GForm polynomial_zero_form(const std::vector<PolyTerm>& terms, Algebra alg, int n) {
  const OrthonormalBasis basis = model_basis(alg, n);
  for (const auto& t : terms)
    if (t.basis < 1 || t.basis > basis.size() || t.px < 0 || t.py < 0)
      fail(ErrorKind::config, "polynomial term out of range (basis index 1.." + std::to_string(basis.size()) + ")");
  return GForm::zero_form(alg, n, [terms, basis, n](double x, double y, int order, const FormContext&) {
    const Jet jx = jet_x(x, order), jy = jet_y(y, order);
    MatJet r = zero_jet(n, n, order);
    for (const auto& t : terms)
      r += (t.coeff * monomial(jx, jy, t.px, t.py)) * jet_constant(basis[t.basis - 1], order);
    return r;
  });
}

std::vector<PolyTerm> random_poly_terms(std::mt19937_64& rng, int dim, int count) {
  std::uniform_int_distribution<int> B(1, dim), P(0, 2);
  std::uniform_real_distribution<double> C(-1.0, 1.0);
  std::vector<PolyTerm> t;
  for (int k = 0; k < count; ++k) {
    PolyTerm p;
    p.basis = B(rng);
    p.px = P(rng);
    p.py = std::min(P(rng), 2 - p.px);
    p.coeff = C(rng);
    t.push_back(p);
  }
  return t;
}

Mat random_su(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> N01;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cd(N01(rng), N01(rng));
  Mat s = 0.5 * (a - a.adjoint());
  s -= identity(n) * (s.trace() / static_cast<double>(n));
  return s;
}

GForm random_form(std::mt19937_64& rng, int degree, int n) {
  if (degree == 0) return GForm::zero_form(Algebra::su, n, random_coefficient(rng, n));
  if (degree == 1) {
    Coefficient fx = random_coefficient(rng, n);
    Coefficient fy = random_coefficient(rng, n);
    return GForm::one_form(Algebra::su, n, fx, fy);
  }
  if (degree == 2) return GForm::two_form(Algebra::su, n, random_coefficient(rng, n));
  fail(ErrorKind::type, "random forms have degree 0, 1 or 2");
}

TwoChartSurface two_chart_X(const CPModel& model, int k) {
  const CPModel inv = model.on_chart(ChartId::inverse);
  TwoChartSurface s;
  s.main = veronese_X(model, k);
  s.inverse = veronese_X(inv, k);
  s.P_main = [model, k](double x, double y, int order) { return model.P(k, x, y, order); };
  s.P_inverse = [inv, k](double x, double y, int order) { return inv.P(k, x, y, order); };
  return s;
}

std::vector<ClaimedValue> claimed_invariants(int k) {
  if (k == 0)
    return {{"K", 2.0, "stated Gaussian curvature"},
            {"|H|^2", 16.0, "stated norm of the mean curvature vector"},
            {"W", 2.0 * kPi, "stated Willmore functional"},
            {"chi", 2.0, "stated Euler-Poincare characteristic"},
            {"Q", 2.0, "stated as the winding number bound (label conflated with W)"}};
  if (k == 1)
    return {{"K", 1.0, "metric stated to be the sphere metric 4(1+x^2+y^2)^-2"},
            {"|H|^2", 4.0, "stated <H, H>"},
            {"W", 2.0 * kPi, "stated Willmore functional"},
            {"chi", 2.0, "sphere topology"},
            {"Q", 0.0, "stated topological charge"}};
  return {{"chi", 2.0, "sphere topology"}};
}

WaveFamily SampleModel::integrated(const IntegrateOptions& opt) const {
  const LaxPair l = lax;
  const Chart c = chart;
  const int a = i0, b = j0;
  const auto p0 = phi0;
  return [l, c, a, b, p0, opt](const SolutionField& v, cd lambda) {
    return integrate_wavefunction(l, v, lambda, a, b, p0(lambda), c, opt);
  };
}

Chart default_chart(const std::string& id) {
  Chart c;
  if (id == "potential1d") {
    c = Potential1dParams{}.chart;
  } else {
    c.x_min = c.y_min = -1.0;
    c.x_max = c.y_max = 1.0;
  }
  c.nx = c.ny = 64;
  return c;
}

SampleModel build_model(const ModelSpec& spec, const std::optional<Chart>& chart) {
  SampleModel m;
  m.id = spec.id;
  m.chart = chart ? *chart : default_chart(spec.id);
  m.chart.validate();
  if (spec.id == "potential1d") {
    Potential1dParams p = spec.p1d;
    p.chart = m.chart;
    m.p1d = p;
    m.field = potential1d_field(p);
    m.lax = potential1d_lax(p);
    m.phi0 = [](cd) { return identity(2); };
    m.i0 = 0;
    m.j0 = 0;
  } else if (spec.id == "cp2-veronese" || spec.id == "cp1" || spec.id == "cpn" || spec.id == "grid") {
    CPPotential variant = parse_cp_potential(spec.potential);
    int N = spec.N;
    if (spec.id == "cp2-veronese") {
      m.cp = CPModel::veronese();
      N = 3;
    } else if (spec.id == "cp1") {
      m.cp = CPModel::cp1();
      N = 2;
    } else if (spec.id == "cpn") {
      if (static_cast<int>(spec.f0.size()) != N) fail(ErrorKind::config, "model.f0 must list N coefficient vectors");
      m.cp = CPModel(N, spec.f0);
    }
    if (spec.k < 0 || spec.k >= N) fail(ErrorKind::config, "model.k must lie in 0..N-1");
    m.level = spec.k;
    m.lax = lax_potentials_cpn(N, variant);
    if (spec.id == "grid") {
      if (spec.grid_path.empty()) fail(ErrorKind::config, "grid model needs model.grid_path");
      m.field = read_grid_csv(spec.grid_path, N, N, Algebra::su);
    } else {
      m.field = m.cp->theta_field(spec.k);
    }
    if (spec.perturb != 0.0) m.field = perturbed(m.field, spec.perturb);
    if (spec.id != "grid" && spec.perturb == 0.0) {
      if (variant == CPPotential::integrable) m.closed = phi_k_family(N, spec.k);
      else if (variant == CPPotential::cp1 && spec.k == 0) m.closed = [](const SolutionField& u, cd l) { return phi_cp1(u, l); };
    }
    m.i0 = m.chart.nx / 2;
    m.j0 = m.chart.ny / 2;
    const WaveFamily closed = m.closed;
    const SolutionField u = m.field;
    const double x0 = m.chart.x(m.i0), y0 = m.chart.y(m.j0);
    m.phi0 = [closed, u, x0, y0, N](cd l) { return closed ? closed(u, l).value(x0, y0) : identity(N); };
  } else {
    fail(ErrorKind::config, "unknown model id '" + spec.id + "' (cp2-veronese, cp1, cpn, potential1d, grid)");
  }
  return m;
}

Characteristic builtin_characteristic(const std::string& id, const std::vector<double>& f, const std::vector<double>& g,
                                      const SampleModel& model) {
  if (id == "zero") return zero_characteristic();
  if (id == "translation_x") return translation(0);
  if (id == "translation_y") return translation(1);
  if (id == "conformal") {
    const std::vector<cd> fc(f.begin(), f.end()), gc(g.begin(), g.end());
    const Univariate fu = [fc](const Jet& s) { return fc.empty() ? jet_constant(cd(0.0), s.order()) : polynomial(fc, s); };
    const Univariate gu = [gc](const Jet& s) { return gc.empty() ? jet_constant(cd(0.0), s.order()) : polynomial(gc, s); };
    return conformal(fu, gu);
  }
  if (id == "q1") return potential1d_q1();
  if (id == "q2") {
    if (!model.p1d) fail(ErrorKind::config, "characteristic q2 belongs to the potential1d model");
    return potential1d_q2(*model.p1d, model.chart.x_min);
  }
  fail(ErrorKind::config, "unknown characteristic '" + id + "' (zero, translation_x, translation_y, conformal, q1, q2)");
}

}  // namespace isl
