#include "isl/potential1d.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace isl {

namespace {

std::vector<cd> complexify(const std::vector<double>& c) { return {c.begin(), c.end()}; }

std::vector<cd> derivative_coeffs(const std::vector<double>& c) {
  std::vector<cd> d;
  for (size_t n = 1; n < c.size(); ++n) d.emplace_back(static_cast<double>(n) * c[n], 0.0);
  if (d.empty()) d.emplace_back(0.0, 0.0);
  return d;
}

MatJet assemble2(const Jet& a, const Jet& b, const Jet& c, const Jet& d) {
  MatJet r(std::min({a.order(), b.order(), c.order(), d.order()}), Mat::Zero(2, 2));
  for (size_t k = 0; k < r.coeffs().size(); ++k) {
    Mat& m = r.coeffs()[k];
    m(0, 0) = a.coeffs()[k];
    m(0, 1) = b.coeffs()[k];
    m(1, 0) = c.coeffs()[k];
    m(1, 1) = d.coeffs()[k];
  }
  return r;
}

// Gauss-Legendre rule on [a, b], split into panels of length <= 0.25.
void gauss_rule(double a, double b, std::vector<double>& s, std::vector<double>& w) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  s.clear();
  w.clear();
  if (a == b) return;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / 0.25)));
  const double len = (b - a) / panels;
  const auto& x = Rule::abscissa();
  const auto& wt = Rule::weights();
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * len;
    for (size_t k = 0; k < x.size(); ++k) {
      s.push_back(c + 0.5 * len * x[k]);
      w.push_back(0.5 * len * wt[k]);
      if (x[k] != 0.0) {
        s.push_back(c - 0.5 * len * x[k]);
        w.push_back(0.5 * len * wt[k]);
      }
    }
  }
}

}  // namespace

SolutionField potential1d_field(const Potential1dParams& p) {
  const double a = p.a;
  SolutionField u(
      "potential1d", [a](double x, double, int order) { return as_matrix(a * exp(jet_x(x, order))); },
      ProviderKind::analytic, 1, 1, Algebra::gl);
  u.magnitude = std::abs(a) * std::exp(std::max(std::abs(p.chart.x_min), std::abs(p.chart.x_max)));
  return u;
}

LaxPair potential1d_lax(const Potential1dParams& p) {
  const auto f = complexify(p.f);
  const auto df = derivative_coeffs(p.f);
  const auto g = complexify(p.g);
  auto pot = [f, df, g](double x, double y, int order, const SolutionField& u, cd lambda) {
    const Jet uj = entry(u.jet(x, y, order + 1), 0, 0);
    const Jet ux = uj.dx();
    const Jet u0 = uj.truncated(order);
    const Jet den = u0 + lambda;
    if (std::abs(den.value()) < 1e-8) {
      std::ostringstream os;
      os << "pole u + lambda = 0 at (" << x << ", " << y << ")";
      fail(ErrorKind::domain, os.str());
    }
    const Jet fu = polynomial(f, u0);
    const Jet dfu = polynomial(df, u0);
    const cd gl = polynomial(g, jet_constant(-lambda, 0)).value();
    const Jet rden = reciprocal(den);
    const Jet num = fu + (-gl);
    const Jet zero = jet_constant(0.0, order);
    const Jet one = jet_constant(1.0, order);
    const MatJet L = 0.5 * assemble2(zero, dfu * rden - num * rden * rden, one, zero);
    const MatJet M = 0.5 * assemble2(ux, -(num * rden), den, -ux);
    return std::array<MatJet, 2>{L, M};
  };
  LambdaDomain dom;
  dom.kind = LambdaKind::real_line;
  return LaxPair("potential1d", pot, dom, Algebra::sl2r, 2, Group::SL2R);
}

Characteristic potential1d_q1() {
  Characteristic c = translation(0);
  return Characteristic("Q1", [c](const SolutionField& u, double x, double y, int order) { return c(u, x, y, order); });
}

Characteristic potential1d_q2(const Potential1dParams& p, double x_origin) {
  const auto f = complexify(p.f);
  auto fn = [f, x_origin](const SolutionField& u, double x, double y, int order) {
    // h(s, y) = f(u(s, y))^{-3/2}
    auto h = [&](double s, int k) {
      const Jet fu = polynomial(f, entry(u.jet(s, y, k), 0, 0));
      if (!(fu.value().real() > 0.0)) fail(ErrorKind::domain, "Q2 needs f(u) > 0 along the accumulation path");
      return pow(fu, -1.5);
    };
    std::vector<double> s, w;
    gauss_rule(x_origin, x, s, w);
    Jet I(order, cd(0.0));
    // y-derivatives: integrate the y-jets of h along the x-path.
    for (size_t k = 0; k < s.size(); ++k) {
      const Jet hk = h(s[k], order);
      for (int b = 0; b <= order; ++b) I(0, b) += w[k] * hk(0, b);
    }
    // x-derivatives come from the integrand at the evaluation point.
    if (order >= 1) {
      const Jet hx = h(x, order - 1);
      for (int d = 1; d <= order; ++d)
        for (int b = 0; b + 1 <= d; ++b) {
          const int a = d - b;
          I(a, b) = hx(a - 1, b) / static_cast<double>(a);
        }
    }
    const MatJet uj = u.jet(x, y, order + 1);
    return uj.dx() * I;
  };
  return Characteristic("Q2", fn, Locality::nonlocal_x, x_origin);
}

std::array<double, 2> potential1d_residuals(const Potential1dParams& p, const SolutionField& u, double x, double y) {
  const Jet uj = entry(u.jet(x, y, 2), 0, 0);
  const Jet u0 = jet_constant(uj.value(), 0);
  const cd fu = polynomial(complexify(p.f), u0).value();
  const cd dfu = polynomial(derivative_coeffs(p.f), u0).value();
  const cd ux = uj(1, 0), uxx = 2.0 * uj(2, 0);
  return {std::abs(uxx - 0.5 * dfu), std::abs(ux * ux - fu)};
}

}  // namespace isl
