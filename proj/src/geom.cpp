#include "isl/geom.hpp"

#include <cmath>
#include <sstream>

#include "isl/liealg.hpp"
#include "isl/parallel.hpp"

namespace isl {

namespace {

Taylor2<double> inner_jet(const MatJet& a, const MatJet& b) {
  return (a * b).map([](const Mat& m) { return -0.5 * m.trace().real(); });
}

MetricJet metric_from(const MatJet& J) {
  const MatJet fx = J.dx(), fy = J.dy();
  return {inner_jet(fx, fx), inner_jet(fx, fy), inner_jet(fy, fy)};
}

double det3(const Eigen::Matrix3d& m) { return m.determinant(); }

struct PointGeometry {
  double E = 0, F = 0, G = 0;
  double K = 0;
  double H2 = 0;
  double leakage = 0;
  bool degenerate = false;
};

MeanCurvature mean_from(const MatJet& J, double E, double F, double G) {
  const Mat fx = J(1, 0), fy = J(0, 1);
  const Mat lap = 2.0 * (J(2, 0) + J(0, 2));
  const Mat V = lap / (2.0 * E);
  // Tangential part through the Gram system of (F_x, F_y).
  const double vx = inner(V, fx), vy = inner(V, fy);
  const double det = E * G - F * F;
  const double a = (G * vx - F * vy) / det;
  const double b = (E * vy - F * vx) / det;
  const Mat T = a * fx + b * fy;
  MeanCurvature m;
  m.H = V - T;
  m.norm2 = inner(m.H, m.H);
  const double hn = m.H.norm();
  m.leakage = hn > 0.0 ? T.norm() / hn : T.norm();
  return m;
}

PointGeometry geometry_from(const MatJet& J3, double eps_degenerate) {
  PointGeometry p;
  const MetricJet m = metric_from(J3);
  p.E = m.E.value();
  p.F = m.F.value();
  p.G = m.G.value();
  if (!(p.E * p.G - p.F * p.F > eps_degenerate)) {
    p.degenerate = true;
    return p;
  }
  p.K = gaussian_curvature(m);
  if (std::abs(p.E - p.G) + std::abs(p.F) <= 1e-4) {
    const MeanCurvature h = mean_from(J3, p.E, p.F, p.G);
    p.H2 = h.norm2;
    p.leakage = h.leakage;
  } else {
    p.H2 = std::numeric_limits<double>::quiet_NaN();
  }
  return p;
}

// Polar product rule on the unit disk of one chart: node (ir, ip) has r = ir/nr, phi = 2 pi ip/nphi.
struct PolarRule {
  int nr, nphi;
  double r(int ir) const { return static_cast<double>(ir) / nr; }
  double phi(int ip) const { return 2.0 * kPi * ip / nphi; }
  // Simpson weight in r for a rule with `stride` (1 fine, 2 coarse), times r.
  double wr(int ir, int stride) const {
    const int n = nr / stride;
    const int k = ir / stride;
    const double h = static_cast<double>(stride) / nr;
    const double s = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0 * r(ir);
  }
  double wphi(int stride) const { return 2.0 * kPi * stride / nphi; }
};

void validate(const SphereQuadrature& q) {
  if (q.nr < 8 || q.nr % 4 != 0 || q.nphi < 8 || q.nphi % 2 != 0)
    fail(ErrorKind::config, "sphere quadrature needs nr divisible by 4 and even nphi (>= 8)");
}

// Weighted sums of per-sample values over both charts, for the fine and the coarse rule.
template <class S, class V>
std::pair<double, double> integrate(const std::array<std::vector<S>, 2>& samples, const PolarRule& rule, V&& value) {
  double fine = 0.0, coarse = 0.0;
  for (int c = 0; c < 2; ++c) {
    std::vector<double> f(static_cast<size_t>(rule.nr + 1), 0.0), g(static_cast<size_t>(rule.nr + 1), 0.0);
    for (int ir = 1; ir <= rule.nr; ++ir) {
      double sf = 0.0, sg = 0.0;
      for (int ip = 0; ip < rule.nphi; ++ip) {
        const double v = value(samples[static_cast<size_t>(c)][static_cast<size_t>(ir * rule.nphi + ip)]);
        sf += v;
        if (ip % 2 == 0) sg += v;
      }
      f[static_cast<size_t>(ir)] = sf * rule.wr(ir, 1) * rule.wphi(1);
      if (ir % 2 == 0) g[static_cast<size_t>(ir)] = sg * rule.wr(ir, 2) * rule.wphi(2);
    }
    fine += pairwise_sum(f);
    coarse += pairwise_sum(g);
  }
  return {fine, coarse};
}

template <class S, class Fn>
std::array<std::vector<S>, 2> sample_disks(const PolarRule& rule, Fn&& fn) {
  std::array<std::vector<S>, 2> out;
  for (int c = 0; c < 2; ++c) {
    auto& v = out[static_cast<size_t>(c)];
    v.assign(static_cast<size_t>((rule.nr + 1) * rule.nphi), S{});
    const ChartId id = c == 0 ? ChartId::main : ChartId::inverse;
    parallel_for(rule.nr, [&](int k) {
      const int ir = k + 1;
      for (int ip = 0; ip < rule.nphi; ++ip) {
        const double r = rule.r(ir), p = rule.phi(ip);
        v[static_cast<size_t>(ir * rule.nphi + ip)] = fn(id, r * std::cos(p), r * std::sin(p));
      }
    });
  }
  return out;
}

void check_convergence(double fine, double coarse, const SphereQuadrature& q, const std::string& what) {
  if (!std::isfinite(fine) || std::abs(fine - coarse) > q.divergence_tol * std::max(1.0, std::abs(fine))) {
    std::ostringstream os;
    os << "non-integrable density (" << what << "): " << coarse << " at nr/2 vs " << fine << " at nr";
    fail(ErrorKind::numeric, os.str());
  }
}

double fs_density(const MatJet& P) {
  const Mat px = P(1, 0), py = P(0, 1);
  return (kI * (P.value() * commutator(px, py)).trace()).real();
}

MatJet cp1_projector(ChartId c, double x, double y, int order) {
  // f = (1, xi) on the main chart, (xi', 1) on the inverse chart.
  const Jet z = jet_x(x, order) + kI * jet_y(y, order);
  const Jet zb = jet_x(x, order) - kI * jet_y(y, order);
  const Jet one = jet_constant(cd(1.0), order);
  const Jet a = c == ChartId::main ? one : z;
  const Jet b = c == ChartId::main ? z : one;
  const Jet ab = c == ChartId::main ? one : zb;
  const Jet bb = c == ChartId::main ? zb : one;
  const Jet inv = reciprocal(a * ab + b * bb);
  MatJet P(order, Mat::Zero(2, 2));
  const Jet e00 = a * ab * inv, e01 = a * bb * inv, e10 = b * ab * inv, e11 = b * bb * inv;
  for (size_t k = 0; k < P.coeffs().size(); ++k) {
    P.coeffs()[k](0, 0) = e00.coeffs()[k];
    P.coeffs()[k](0, 1) = e01.coeffs()[k];
    P.coeffs()[k](1, 0) = e10.coeffs()[k];
    P.coeffs()[k](1, 1) = e11.coeffs()[k];
  }
  return P;
}

}  // namespace

MetricSample fundamental_form(const ImmersionSurface& s, double x, double y, double eps_degenerate) {
  const MatJet J = s.jet(x, y, 1);
  MetricSample m;
  m.E = inner(J(1, 0), J(1, 0));
  m.F = inner(J(1, 0), J(0, 1));
  m.G = inner(J(0, 1), J(0, 1));
  m.degenerate = !(m.det() > eps_degenerate);
  return m;
}

MetricJet metric_jet(const ImmersionSurface& s, double x, double y, int order) {
  return metric_from(s.jet(x, y, order + 1));
}

double gaussian_curvature(const MetricJet& m) {
  const double E = m.E.value(), F = m.F.value(), G = m.G.value();
  const double det = E * G - F * F;
  if (!(det > 0.0)) fail(ErrorKind::numeric, "degenerate metric");
  const double Ex = m.E(1, 0), Ey = m.E(0, 1), Exx = 2 * m.E(2, 0), Eyy = 2 * m.E(0, 2);
  const double Gx = m.G(1, 0), Gy = m.G(0, 1), Gxx = 2 * m.G(2, 0);
  if (std::abs(E - G) + std::abs(F) <= 1e-6) {
    const double lap = (Exx + Eyy) / E - (Ex * Ex + Ey * Ey) / (E * E);
    return -lap / (2.0 * E);
  }
  const double Fx = m.F(1, 0), Fy = m.F(0, 1), Fxy = m.F(1, 1);
  Eigen::Matrix3d A, B;
  A << -0.5 * Eyy + Fxy - 0.5 * Gxx, 0.5 * Ex, Fx - 0.5 * Ey, Fy - 0.5 * Gx, E, F, 0.5 * Gy, F, G;
  B << 0.0, 0.5 * Ey, 0.5 * Gx, 0.5 * Ey, E, F, 0.5 * Gx, F, G;
  return (det3(A) - det3(B)) / (det * det);
}

double gaussian_curvature(const ImmersionSurface& s, double x, double y) {
  return gaussian_curvature(metric_jet(s, x, y, 2));
}

MeanCurvature mean_curvature(const ImmersionSurface& s, double x, double y) {
  const MatJet J = s.jet(x, y, 2);
  const double E = inner(J(1, 0), J(1, 0)), F = inner(J(1, 0), J(0, 1)), G = inner(J(0, 1), J(0, 1));
  if (std::abs(E - G) + std::abs(F) > 1e-4) {
    std::ostringstream os;
    os << "mean curvature needs a conformal point; defect " << std::abs(E - G) + std::abs(F) << " at (" << x << ", " << y
       << "), use the general (Brioschi-type) path";
    fail(ErrorKind::numeric, os.str());
  }
  if (!(E * G - F * F > 0.0)) fail(ErrorKind::numeric, "degenerate immersion point");
  return mean_from(J, E, F, G);
}

SphereIntegral sphere_integral(const ChartDensity& density, const SphereQuadrature& q) {
  validate(q);
  const PolarRule rule{q.nr, q.nphi};
  const auto samples = sample_disks<double>(rule, [&](ChartId c, double x, double y) { return density(c, x, y); });
  const auto [fine, coarse] = integrate(samples, rule, [](double v) { return v; });
  check_convergence(fine, coarse, q, "sphere integral");
  return {fine, coarse};
}

double fubini_study_calibration(const SphereQuadrature& q) {
  const SphereIntegral s =
      sphere_integral([](ChartId c, double x, double y) { return fs_density(cp1_projector(c, x, y, 1)); }, q);
  return s.value / (2.0 * kPi);
}

InvariantReport invariant_report(const TwoChartSurface& s, const std::vector<ClaimedValue>& claimed,
                                 const SphereQuadrature& q) {
  validate(q);
  struct Sample {
    PointGeometry g;
    double q = 0.0;
  };
  const PolarRule rule{q.nr, q.nphi};
  const bool has_P = static_cast<bool>(s.P_main) && static_cast<bool>(s.P_inverse);
  const auto samples = sample_disks<Sample>(rule, [&](ChartId c, double x, double y) {
    const ImmersionSurface& f = c == ChartId::main ? s.main : s.inverse;
    Sample out;
    out.g = geometry_from(f.jet(x, y, 3), 1e-14);
    if (has_P) out.q = fs_density(c == ChartId::main ? s.P_main(x, y, 1) : s.P_inverse(x, y, 1));
    return out;
  });

  InvariantReport r;
  r.surface = s.main.provenance;
  // Constancy over all samples.
  std::vector<double> K, H2;
  for (const auto& chart : samples)
    for (size_t k = static_cast<size_t>(rule.nphi); k < chart.size(); ++k) {
      const PointGeometry& g = chart[k].g;
      if (g.degenerate) {
        ++r.degenerate_points;
        continue;
      }
      K.push_back(g.K);
      if (std::isfinite(g.H2)) H2.push_back(g.H2);
      r.conformality_defect = std::max(r.conformality_defect, std::abs(g.E - g.G) + std::abs(g.F));
      r.leakage = std::max(r.leakage, g.leakage);
    }
  auto stats = [](const std::vector<double>& v) {
    ConstancyStats st;
    if (v.empty()) return st;
    st.mean = pairwise_sum(v) / static_cast<double>(v.size());
    std::vector<double> d(v.size());
    for (size_t k = 0; k < v.size(); ++k) d[k] = (v[k] - st.mean) * (v[k] - st.mean);
    st.std = std::sqrt(pairwise_sum(d) / static_cast<double>(v.size()));
    return st;
  };
  r.K = stats(K);
  r.H2 = stats(H2);

  auto dA = [](const PointGeometry& g) { return g.degenerate ? 0.0 : std::sqrt(g.E * g.G - g.F * g.F); };
  const auto area = integrate(samples, rule, [&](const Sample& p) { return dA(p.g); });
  check_convergence(area.first, area.second, q, "area");
  r.area = area.first;
  const auto gb = integrate(samples, rule, [&](const Sample& p) { return p.g.degenerate ? 0.0 : p.g.K * dA(p.g); });
  check_convergence(gb.first, gb.second, q, "Gauss-Bonnet");
  r.chi = gb.first / (2.0 * kPi);
  if (H2.size() == K.size()) {
    const auto w = integrate(samples, rule, [&](const Sample& p) { return p.g.degenerate ? 0.0 : p.g.H2 * dA(p.g); });
    check_convergence(w.first, w.second, q, "Willmore");
    r.W = 0.25 * w.first;
  } else {
    r.W = std::numeric_limits<double>::quiet_NaN();
    r.notes.push_back("surface is not conformal everywhere; |H|^2 and W not computed at non-conformal points");
  }
  r.notes.push_back("W = (1/4) int |H|^2 dA with |H|^2 = <H, H>, <A,B> = -Re Tr(AB)/2");
  if (has_P) {
    r.c_fs = fubini_study_calibration(q);
    const auto qi = integrate(samples, rule, [](const Sample& p) { return p.q; });
    check_convergence(qi.first, qi.second, q, "charge");
    r.Q = qi.first / (2.0 * kPi * r.c_fs);
    r.notes.push_back("Q = (1/(2 pi c)) int i Tr(P [P_x, P_y]) dx dy, c calibrated so that f = (1, xi) has Q = 1");
  }

  for (const auto& c : claimed) {
    Comparison cmp;
    cmp.quantity = c.quantity;
    cmp.claimed = c.value;
    cmp.note = c.note;
    if (c.quantity == "K") cmp.computed = r.K.mean;
    else if (c.quantity == "|H|^2") cmp.computed = r.H2.mean;
    else if (c.quantity == "W") cmp.computed = r.W;
    else if (c.quantity == "chi") cmp.computed = r.chi;
    else if (c.quantity == "area") cmp.computed = r.area;
    else if (c.quantity == "Q") cmp.computed = r.Q.value_or(std::numeric_limits<double>::quiet_NaN());
    else fail(ErrorKind::config, "unknown invariant '" + c.quantity + "'");
    cmp.rel_dev = c.value != 0.0 ? std::abs(cmp.computed - c.value) / std::abs(c.value) : std::abs(cmp.computed);
    cmp.agrees = cmp.rel_dev <= 0.05;
    r.comparisons.push_back(cmp);
  }
  return r;
}

}  // namespace isl
