#include "isl/laxpair.hpp"

#include <cmath>
#include <sstream>

#include "isl/parallel.hpp"

namespace isl {

std::string to_string(LambdaKind k) {
  switch (k) {
    case LambdaKind::real_line: return "real-line";
    case LambdaKind::imaginary_line: return "imaginary-line";
    case LambdaKind::complex_open: return "complex-open-set";
  }
  return "?";
}

cd LambdaDomain::at(double t) const {
  switch (kind) {
    case LambdaKind::imaginary_line: return kI * t;
    default: return cd(t, 0.0);
  }
}

bool LambdaDomain::contains(cd lambda) const {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) return false;
  if (kind == LambdaKind::real_line && std::abs(lambda.imag()) > 1e-14) return false;
  if (kind == LambdaKind::imaginary_line && std::abs(lambda.real()) > 1e-14) return false;
  for (const cd& p : poles)
    if (std::abs(lambda - p) < guard) return false;
  return true;
}

void LambdaDomain::check(cd lambda) const {
  std::ostringstream os;
  for (const cd& p : poles)
    if (std::abs(lambda - p) < guard) {
      os << "spectral parameter lambda = " << lambda << " hits the pole lambda = " << p;
      fail(ErrorKind::domain, os.str());
    }
  if (!contains(lambda)) {
    os << "spectral parameter lambda = " << lambda << " is not on the " << to_string(kind);
    fail(ErrorKind::domain, os.str());
  }
}

LaxPair::LaxPair(std::string name, Potential p, LambdaDomain domain, Algebra alg, int n, Group group)
    : name_(std::move(name)), p_(std::move(p)), domain_(std::move(domain)), alg_(alg), n_(n), group_(group) {}

std::array<MatJet, 2> LaxPair::potentials(double x, double y, int order, const SolutionField& u, cd lambda) const {
  domain_.check(lambda);
  return p_(x, y, order, u, lambda);
}

std::array<Mat, 2> LaxPair::values(double x, double y, const SolutionField& u, cd lambda) const {
  const auto p = potentials(x, y, 0, u, lambda);
  return {p[0].value(), p[1].value()};
}

GForm LaxPair::omega() const {
  auto self = *this;
  auto comp = [self](int a) {
    return [self, a](double x, double y, int order, const FormContext& ctx) {
      if (!ctx.field) fail(ErrorKind::config, "Lax form evaluated without a field");
      return self.potentials(x, y, order, *ctx.field, ctx.lambda)[static_cast<size_t>(a)];
    };
  };
  return GForm::one_form(alg_, n_, comp(0), comp(1));
}

GridReport zcc_residual(const LaxPair& lax, const SolutionField& u, cd lambda, const Chart& chart, int margin) {
  lax.domain().check(lambda);
  return sweep(
      chart,
      [&](int i, int j) {
        const auto p = lax.potentials(chart.x(i), chart.y(j), 1, u, lambda);
        const Mat r = p[0](0, 1) - p[1](1, 0) + commutator(p[0].value(), p[1].value());
        return r.norm();
      },
      margin);
}

double potential_membership(const LaxPair& lax, const SolutionField& u, cd lambda, const Chart& chart) {
  const GridReport r = sweep(
      chart,
      [&](int i, int j) {
        const auto v = lax.values(chart.x(i), chart.y(j), u, lambda);
        return std::max(membership_residual(v[0], lax.algebra()), membership_residual(v[1], lax.algebra()));
      },
      0);
  return r.sup;
}

std::string to_string(WaveProvenance p) { return p == WaveProvenance::integrated ? "integrated" : "closed-form"; }

Wavefunction Wavefunction::closed_form(std::string name, ClosedFn fn, Group g, int n, cd lambda) {
  Wavefunction w;
  w.name_ = std::move(name);
  w.prov_ = WaveProvenance::closed_form;
  w.group_ = g;
  w.n_ = n;
  w.lambda_ = lambda;
  w.fn_ = std::move(fn);
  return w;
}

Wavefunction Wavefunction::integrated(std::string name, NodeValues<Mat> values, Group g, cd lambda, int i0, int j0) {
  Wavefunction w;
  w.name_ = std::move(name);
  w.prov_ = WaveProvenance::integrated;
  w.group_ = g;
  w.n_ = static_cast<int>(values.data.front().rows());
  w.lambda_ = lambda;
  w.grid_ = GridMatrixField(std::move(values));
  w.i0 = i0;
  w.j0 = j0;
  return w;
}

MatJet Wavefunction::jet(double x, double y, int order) const {
  if (prov_ == WaveProvenance::closed_form) return fn_(x, y, order);
  return grid_.jet(x, y, order);
}

NodeValues<Mat> Wavefunction::sample(const Chart& chart) const {
  if (prov_ == WaveProvenance::integrated) {
    const Chart& c = grid_.chart();
    if (c.nx != chart.nx || c.ny != chart.ny || c.x_min != chart.x_min || c.y_min != chart.y_min ||
        c.x_max != chart.x_max || c.y_max != chart.y_max)
      fail(ErrorKind::domain, "integrated wavefunction sampled on a different chart");
    return grid_.values();
  }
  NodeValues<Mat> v(chart, Mat::Zero(n_, n_));
  parallel_for(chart.ny, [&](int j) {
    for (int i = 0; i < chart.nx; ++i) v.at(i, j) = fn_(chart.x(i), chart.y(j), 0).value();
  });
  return v;
}

double Wavefunction::membership(const Chart& chart) const {
  const NodeValues<Mat> v = sample(chart);
  double r = 0.0;
  for (const Mat& m : v.data) r = std::max(r, membership_residual(m, group_));
  return r;
}

namespace {

struct Stats {
  double max_drift = 0.0;
  double total = 0.0;
};

// RK4 along one leg; un are node potentials in path order, um the midpoint potentials, h the signed step.
std::vector<Mat> leg(const std::vector<Mat>& un, const std::vector<Mat>& um, double h, const Mat& start, Group g,
                     cd det0, const IntegrateOptions& opt, Stats& st) {
  std::vector<Mat> out(un.size());
  out[0] = start;
  for (size_t k = 0; k + 1 < un.size(); ++k) {
    const Mat& p = out[k];
    const Mat k1 = un[k] * p;
    const Mat k2 = um[k] * (p + (0.5 * h) * k1);
    const Mat k3 = um[k] * (p + (0.5 * h) * k2);
    const Mat k4 = un[k + 1] * (p + h * k3);
    Mat q = p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (opt.project && g != Group::GL) {
      const Mat r = project_to_group(q, g, det0);
      const double d = (q - r).norm();
      if (!(d <= opt.drift_max)) {
        std::ostringstream os;
        os << "integration drift " << d << " exceeds " << opt.drift_max << " in one step (step " << h << ")";
        fail(ErrorKind::step_size, os.str());
      }
      st.max_drift = std::max(st.max_drift, d);
      st.total += d;
      q = r;
    }
    out[k + 1] = q;
  }
  return out;
}

// Cubic Lagrange value at the midpoint between nodes k and k+1 of a node sequence.
Mat cubic_mid(const std::vector<Mat>& v, size_t k) {
  const size_t n = v.size();
  if (n < 4) return 0.5 * (v[k] + v[k + 1]);
  size_t lo = k >= 1 ? k - 1 : 0;
  if (lo + 3 >= n) lo = n - 4;
  // Nodes lo..lo+3, evaluation at k + 1/2.
  const double t = static_cast<double>(k) + 0.5;
  Mat r = Mat::Zero(v[k].rows(), v[k].cols());
  for (size_t a = 0; a < 4; ++a) {
    double w = 1.0;
    for (size_t b = 0; b < 4; ++b)
      if (b != a) w *= (t - static_cast<double>(lo + b)) / static_cast<double>(static_cast<long>(a) - static_cast<long>(b));
    r += w * v[lo + a];
  }
  return r;
}

}  // namespace

Wavefunction integrate_wavefunction(const LaxPair& lax, const SolutionField& u, cd lambda, int i0, int j0,
                                    const Mat& phi0, const Chart& chart, const IntegrateOptions& opt) {
  chart.validate();
  lax.domain().check(lambda);
  if (i0 < 0 || j0 < 0 || i0 >= chart.nx || j0 >= chart.ny)
    fail(ErrorKind::domain, "integration basepoint outside the chart");
  const Group g = lax.group();
  {
    const double r = membership_residual(phi0, g);
    if (!(r <= 1e-8)) fail(ErrorKind::type, "initial value not in " + to_string(g));
  }
  std::vector<std::string> warnings;
  double zcc = 0.0;
  if (opt.check_zcc) {
    zcc = zcc_residual(lax, u, lambda, chart).sup;
    if (!(zcc <= opt.tol_zcc)) {
      std::ostringstream os;
      os << "integrating off-shell: ZCC residual " << zcc << " > " << opt.tol_zcc;
      warnings.push_back(os.str());
    }
  }
  const int nx = chart.nx, ny = chart.ny;
  const double hx = chart.hx(), hy = chart.hy();
  const Mat Z = Mat::Zero(lax.dim(), lax.dim());

  NodeValues<Mat> ux(chart, Z), uy(chart, Z);
  parallel_for(ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      const auto v = lax.values(chart.x(i), chart.y(j), u, lambda);
      ux.at(i, j) = v[0];
      uy.at(i, j) = v[1];
    }
  });
  const bool exact_mid = u.off_node();

  auto row_nodes = [&](int j) {
    std::vector<Mat> r(static_cast<size_t>(nx));
    for (int i = 0; i < nx; ++i) r[static_cast<size_t>(i)] = ux.at(i, j);
    return r;
  };
  auto col_nodes = [&](int i) {
    std::vector<Mat> c(static_cast<size_t>(ny));
    for (int j = 0; j < ny; ++j) c[static_cast<size_t>(j)] = uy.at(i, j);
    return c;
  };
  // Midpoint potentials along a row (U_x) or column (U_y), in increasing index order.
  auto row_mids = [&](int j, const std::vector<Mat>& nodes) {
    std::vector<Mat> m(static_cast<size_t>(nx - 1));
    for (int i = 0; i + 1 < nx; ++i)
      m[static_cast<size_t>(i)] = exact_mid ? lax.values(chart.x(i) + 0.5 * hx, chart.y(j), u, lambda)[0]
                                            : cubic_mid(nodes, static_cast<size_t>(i));
    return m;
  };
  auto col_mids = [&](int i, const std::vector<Mat>& nodes) {
    std::vector<Mat> m(static_cast<size_t>(ny - 1));
    for (int j = 0; j + 1 < ny; ++j)
      m[static_cast<size_t>(j)] = exact_mid ? lax.values(chart.x(i), chart.y(j) + 0.5 * hy, u, lambda)[1]
                                            : cubic_mid(nodes, static_cast<size_t>(j));
    return m;
  };
  const cd det0 = phi0.determinant();

  // Integrates a full line of nodes outward from index s (both directions).
  auto line = [&](const std::vector<Mat>& nodes, const std::vector<Mat>& mids, int s, double h, const Mat& start,
                  Stats& st) {
    const int n = static_cast<int>(nodes.size());
    std::vector<Mat> out(static_cast<size_t>(n));
    std::vector<Mat> fn(nodes.begin() + s, nodes.end()), fm(mids.begin() + s, mids.end());
    const auto fwd = leg(fn, fm, h, start, g, det0, opt, st);
    for (int k = s; k < n; ++k) out[static_cast<size_t>(k)] = fwd[static_cast<size_t>(k - s)];
    std::vector<Mat> bn, bm;
    for (int k = s; k >= 0; --k) bn.push_back(nodes[static_cast<size_t>(k)]);
    for (int k = s - 1; k >= 0; --k) bm.push_back(mids[static_cast<size_t>(k)]);
    const auto bwd = leg(bn, bm, -h, start, g, det0, opt, st);
    for (int k = s; k >= 0; --k) out[static_cast<size_t>(k)] = bwd[static_cast<size_t>(s - k)];
    return out;
  };

  Stats base;
  const auto rn = row_nodes(j0);
  const std::vector<Mat> axis = line(rn, row_mids(j0, rn), i0, hx, phi0, base);
  NodeValues<Mat> phi(chart, Z);
  std::vector<Stats> cstats(static_cast<size_t>(nx));
  parallel_for(nx, [&](int i) {
    const auto cn = col_nodes(i);
    const auto c = line(cn, col_mids(i, cn), j0, hy, axis[static_cast<size_t>(i)], cstats[static_cast<size_t>(i)]);
    for (int j = 0; j < ny; ++j) phi.at(i, j) = c[static_cast<size_t>(j)];
  });
  Stats total = base;
  for (const auto& s : cstats) {
    total.max_drift = std::max(total.max_drift, s.max_drift);
    total.total += s.total;
  }

  double path = 0.0;
  if (opt.both_paths) {
    Stats b2;
    const auto cn = col_nodes(i0);
    const std::vector<Mat> yaxis = line(cn, col_mids(i0, cn), j0, hy, phi0, b2);
    std::vector<double> rowmax(static_cast<size_t>(ny), 0.0);
    std::vector<Stats> rstats(static_cast<size_t>(ny));
    parallel_for(ny, [&](int j) {
      const auto rn2 = row_nodes(j);
      const auto r = line(rn2, row_mids(j, rn2), i0, hx, yaxis[static_cast<size_t>(j)], rstats[static_cast<size_t>(j)]);
      double m = 0.0;
      for (int i = 0; i < nx; ++i) m = std::max(m, (r[static_cast<size_t>(i)] - phi.at(i, j)).norm());
      rowmax[static_cast<size_t>(j)] = m;
    });
    for (double m : rowmax) path = std::max(path, m);
  }

  Wavefunction w = Wavefunction::integrated(lax.name() + ":integrated", std::move(phi), g, lambda, i0, j0);
  w.max_drift = total.max_drift;
  w.total_drift = total.total;
  w.path_residual = path;
  w.zcc = zcc;
  w.warnings = std::move(warnings);
  return w;
}

GForm lambda_derivative(const LaxPair& lax, const LambdaDerivOptions& opt) {
  auto comp = [lax, opt](int a) {
    return [lax, opt, a](double x, double y, int order, const FormContext& ctx) {
      if (!ctx.field) fail(ErrorKind::config, "Lax form evaluated without a field");
      return lambda_derivative(
          [&](cd l) { return lax.potentials(x, y, order, *ctx.field, l)[static_cast<size_t>(a)]; }, lax.domain(),
          ctx.lambda, opt);
    };
  };
  return GForm::one_form(Algebra::gl, lax.dim(), comp(0), comp(1));
}

}  // namespace isl
