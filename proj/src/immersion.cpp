#include "isl/immersion.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "isl/parallel.hpp"

namespace isl {

namespace {

Algebra st_algebra(const LaxPair& lax, cd b) {
  const bool imag_line = lax.domain().kind == LambdaKind::imaginary_line;
  if (imag_line && b.real() == 0.0 && (lax.algebra() == Algebra::su || lax.algebra() == Algebra::u)) return Algebra::u;
  if (lax.domain().kind == LambdaKind::real_line && b.imag() == 0.0) return lax.algebra();
  return Algebra::gl;
}

ImmersionSurface grid_surface(std::string prov, Algebra alg, int n, NodeValues<Mat> values) {
  auto g = std::make_shared<GridMatrixField>(std::move(values));
  ImmersionSurface s;
  s.provenance = std::move(prov);
  s.algebra = alg;
  s.n = n;
  s.node_only = true;
  s.F = [g](double x, double y, int order) { return g->jet(x, y, order); };
  return s;
}

NodeValues<Mat> left_quotient(const NodeValues<Mat>& phi, const NodeValues<Mat>& g, cd scale = 1.0) {
  NodeValues<Mat> r = g;
  for (size_t k = 0; k < g.data.size(); ++k) r.data[k] = scale * (phi.data[k].inverse() * g.data[k]);
  return r;
}

// d_y U_x - d_x U_y + [U_x, U_y] at a point.
Mat zcc_defect(const LaxPair& lax, const SolutionField& u, cd lambda, double x, double y) {
  const auto U = lax.potentials(x, y, 1, u, lambda);
  return U[0](0, 1) - U[1](1, 0) + commutator(U[0].value(), U[1].value());
}

// Linearized zero-curvature defect along R on a coarse interior sample.
double linearized_defect(const LaxPair& lax, const SolutionField& u, cd lambda, const Characteristic& R,
                         const Chart& chart, const GateauxOptions& g) {
  const int m = 8;
  std::vector<std::pair<double, double>> pts;
  for (int a = 1; a < m; ++a)
    for (int b = 1; b < m; ++b)
      pts.emplace_back(chart.x_min + (chart.x_max - chart.x_min) * a / m, chart.y_min + (chart.y_max - chart.y_min) * b / m);
  if (!u.off_node()) return 0.0;
  const std::vector<Mat> d = gateaux(
      [&](const SolutionField& v) {
        std::vector<Mat> r;
        for (const auto& [x, y] : pts) r.push_back(zcc_defect(lax, v, lambda, x, y));
        return r;
      },
      u, R, g);
  double s = 0.0;
  for (const Mat& m2 : d) s = std::max(s, m2.norm());
  return s;
}

GateauxOptions scaled_gateaux(const FGOptions& opt, const SolutionField& u) {
  GateauxOptions g = opt.gateaux;
  g.scale *= std::max(u.magnitude, 1e-300);
  return g;
}

GForm fg_form(const LaxPair& lax, const Characteristic& R, const GateauxOptions& g) {
  auto comp = [lax, R, g](int a) {
    return [lax, R, g, a](double x, double y, int order, const FormContext& ctx) {
      if (!ctx.field) fail(ErrorKind::config, "FG form evaluated without a field");
      return gateaux([&](const SolutionField& v) { return lax.potentials(x, y, order, v, ctx.lambda)[static_cast<size_t>(a)]; },
                     *ctx.field, R, g);
    };
  };
  return GForm::one_form(lax.algebra(), lax.dim(), comp(0), comp(1));
}

ImmersionResult fg_common(const WaveFamily& family, const LaxPair& lax, const Characteristic& R, const SolutionField& u,
                          cd lambda, const Chart& chart, const FGOptions& opt, const std::string& prov) {
  lax.domain().check(lambda);
  const GateauxOptions g = scaled_gateaux(opt, u);
  ImmersionResult r;
  const Wavefunction phi = family(u, lambda);
  if (phi.off_node()) {
    r.surface.F = [family, u, lambda, R, g](double x, double y, int order) {
      const MatJet p = family(u, lambda).jet(x, y, order);
      const MatJet d = gateaux([&](const SolutionField& v) { return family(v, lambda).jet(x, y, order); }, u, R, g);
      return inverse(p) * d;
    };
  } else {
    const NodeValues<Mat> d = gateaux([&](const SolutionField& v) { return family(v, lambda).sample(chart); }, u, R, g);
    r.surface = grid_surface(prov, lax.algebra(), lax.dim(), left_quotient(phi.sample(chart), d));
    r.surface.notes.push_back("deformed wavefunctions re-integrated with the basepoint value frozen");
  }
  r.surface.provenance = prov;
  r.surface.algebra = lax.algebra();
  r.surface.n = lax.dim();
  r.form.provenance = prov;
  r.form.upsilon = fg_form(lax, R, g);
  if (opt.check_symmetry) {
    const double s = linearized_defect(lax, u, lambda, R, chart, g);
    if (s > opt.tol_sym) {
      std::ostringstream os;
      os << "characteristic " << R.name() << " is not a verified symmetry: linearized zero-curvature defect " << s;
      r.form.notes.push_back(os.str());
    }
  }
  return r;
}

}  // namespace

ImmersionResult st_surface(const WaveFamily& family, const LaxPair& lax, const SolutionField& u, cd lambda,
                           const Beta& beta, const Chart& chart, const LambdaDerivOptions& opt) {
  const LambdaDomain dom = lax.domain();
  dom.check(lambda);
  const cd b = beta ? beta(lambda) : cd(1.0);
  ImmersionResult r;
  const Wavefunction phi = family(u, lambda);
  const Algebra alg = st_algebra(lax, b);
  if (phi.off_node()) {
    r.surface.F = [family, u, lambda, b, dom, opt](double x, double y, int order) {
      const MatJet p = family(u, lambda).jet(x, y, order);
      const MatJet d = lambda_derivative([&](cd l) { return family(u, l).jet(x, y, order); }, dom, lambda, opt);
      return b * (inverse(p) * d);
    };
  } else {
    const NodeValues<Mat> d = lambda_derivative([&](cd l) { return family(u, l).sample(chart); }, dom, lambda, opt);
    r.surface = grid_surface("ST", alg, lax.dim(), left_quotient(phi.sample(chart), d, b));
  }
  r.surface.provenance = "ST";
  r.surface.algebra = alg;
  r.surface.n = lax.dim();
  r.form.provenance = "ST";
  r.form.upsilon = lambda_derivative(lax, opt).scaled(b).with_algebra(alg);
  return r;
}

ImmersionResult cd_surface(const Wavefunction& phi, const GForm& S, const LaxPair& lax, const SolutionField& u) {
  if (S.degree() != 0) fail(ErrorKind::type, "CD potential must be a 0-form");
  ImmersionResult r;
  r.surface.provenance = "CD";
  r.surface.algebra = S.algebra();
  r.surface.n = lax.dim();
  r.surface.node_only = S.node_only || !phi.off_node();
  r.surface.F = [phi, S, u](double x, double y, int order) {
    const FormContext ctx{&u, phi.lambda()};
    const MatJet p = phi.jet(x, y, order);
    return inverse(p) * S.coefficient(0, x, y, order, ctx) * p;
  };
  r.form.provenance = "CD";
  r.form.upsilon = covariant_d(S, lax.omega(), 1.0);
  return r;
}

ImmersionResult fg_surface(const WaveFamily& family, const LaxPair& lax, const Characteristic& R,
                           const SolutionField& u, cd lambda, const Chart& chart, const FGOptions& opt) {
  return fg_common(family, lax, R, u, lambda, chart, opt, "FG");
}

ImmersionResult modfg_surface(const WaveFamily& family, const LaxPair& lax, const Characteristic& R,
                              const SolutionField& u, cd lambda, const Chart& chart, const FGOptions& opt) {
  ImmersionResult r = fg_common(family, lax, R, u, lambda, chart, opt, "FG'");
  const GateauxOptions g = scaled_gateaux(opt, u);
  const Wavefunction phi = family(u, lambda);
  const int n = lax.dim();
  if (phi.off_node()) {
    // Defect jets D_a Phi - U_a Phi of the closed-form family.
    auto defect = [family, lax, lambda](const SolutionField& v, double x, double y, int order, int a) {
      const MatJet p = family(v, lambda).jet(x, y, order + 1);
      const auto U = lax.potentials(x, y, order, v, lambda);
      const MatJet d = a == 0 ? p.dx() : p.dy();
      return d - U[static_cast<size_t>(a)] * p.truncated(order);
    };
    auto comp = [family, lambda, defect, R, g](int a) {
      return [family, lambda, defect, R, g, a](double x, double y, int order, const FormContext& ctx) {
        const MatJet pinv = inverse(family(*ctx.field, lambda).jet(x, y, order));
        const MatJet d = gateaux([&](const SolutionField& v) { return defect(v, x, y, order, a); }, *ctx.field, R, g);
        return d * pinv;
      };
    };
    const GForm corr = GForm::one_form(Algebra::gl, n, comp(0), comp(1));
    const FormContext ctx{&u, lambda};
    r.correction_sup = sweep(chart, [&](int i, int j) { return corr.norm(chart.x(i), chart.y(j), ctx); }, 0).sup;
    r.form.upsilon = (r.form.upsilon + corr).with_algebra(lax.algebra());
  } else {
    const size_t nodes = static_cast<size_t>(chart.size());
    const std::vector<Mat> d = gateaux(
        [&](const SolutionField& v) {
          const Wavefunction pv = family(v, lambda);
          std::vector<Mat> out(2 * nodes);
          parallel_for(chart.ny, [&](int j) {
            for (int i = 0; i < chart.nx; ++i) {
              const double x = chart.x(i), y = chart.y(j);
              const MatJet p = pv.jet(x, y, 1);
              const auto U = lax.values(x, y, v, lambda);
              const size_t k = static_cast<size_t>(chart.index(i, j));
              out[k] = p(1, 0) - U[0] * p.value();
              out[nodes + k] = p(0, 1) - U[1] * p.value();
            }
          });
          return out;
        },
        u, R, g);
    const NodeValues<Mat> pv = phi.sample(chart);
    NodeValues<Mat> cx(chart, Mat::Zero(n, n)), cy(chart, Mat::Zero(n, n));
    double sup = 0.0;
    for (size_t k = 0; k < nodes; ++k) {
      const Mat pinv = pv.data[k].inverse();
      cx.data[k] = d[k] * pinv;
      cy.data[k] = d[nodes + k] * pinv;
      sup = std::max(sup, std::sqrt(cx.data[k].squaredNorm() + cy.data[k].squaredNorm()));
    }
    r.correction_sup = sup;
    const GForm corr = grid_one_form(GridMatrixField(cx), GridMatrixField(cy), Algebra::gl);
    r.form.upsilon = (r.form.upsilon + corr).with_algebra(lax.algebra());
  }
  return r;
}

GridReport verify_immersion(const ImmersionSurface& F, const DeformationForm& ups, const Wavefunction& phi,
                            const SolutionField& u, const Chart& chart, int margin) {
  const FormContext ctx{&u, phi.lambda()};
  return sweep(
      chart,
      [&](int i, int j) {
        const double x = chart.x(i), y = chart.y(j);
        const MatJet f = F.jet(x, y, 1);
        const Mat p = phi.value(x, y);
        const Mat pinv = p.inverse();
        const std::vector<Mat> v = ups.upsilon.values(x, y, ctx);
        return std::max((f(1, 0) - pinv * v[0] * p).norm(), (f(0, 1) - pinv * v[1] * p).norm());
      },
      margin);
}

PotentialResult surface_of_form(const GForm& ups, const Wavefunction& phi, const SolutionField& u, int i0, int j0,
                                const Chart& chart, const RecoverOptions& opt) {
  if (ups.degree() != 1) fail(ErrorKind::type, "surface recovery needs a 1-form");
  if (!phi.off_node() || ups.node_only)
    fail(ErrorKind::domain, "surface recovery needs a wavefunction and form evaluable between nodes");
  auto comp = [ups, phi](int a) {
    return [ups, phi, a](double x, double y, int order, const FormContext& ctx) {
      const MatJet p = phi.jet(x, y, order);
      return inverse(p) * ups.coefficient(a, x, y, order, ctx) * p;
    };
  };
  const GForm eta = GForm::one_form(ups.algebra(), ups.dim(), comp(0), comp(1));
  const FormContext ctx{&u, phi.lambda()};
  return recover_0form_potential(eta, i0, j0, ctx, chart, opt);
}

RecoveredS recover_potential_S(const DeformationForm& ups, const Wavefunction& phi, const LaxPair& lax,
                               const SolutionField& u, int i0, int j0, const Chart& chart, const RecoverSOptions& opt) {
  RecoveredS r;
  const FormContext ctx{&u, phi.lambda()};
  const GForm omega = lax.omega();
  const double closed = closedness_residual(ups.upsilon, ClosedOp::d_2omega, &omega, ctx, chart, 1).sup;
  r.surface = surface_of_form(ups.upsilon, phi, u, i0, j0, chart, opt.recover);
  if (r.surface.residual > opt.tol_path) {
    std::ostringstream os;
    os << "path-independence residual " << r.surface.residual << " exceeds " << opt.tol_path
       << ": the form is not d_{2 omega}-closed";
    fail(ErrorKind::non_closed, os.str());
  }
  const int K = opt.recover.jet_order;
  NodeValues<MatJet> sj(chart, MatJet());
  parallel_for(chart.ny, [&](int j) {
    for (int i = 0; i < chart.nx; ++i) {
      const MatJet p = phi.jet(chart.x(i), chart.y(j), K);
      sj.at(i, j) = p * r.surface.jets.at(i, j) * inverse(p);
    }
  });
  r.S = node_zero_form(JetGrid(std::move(sj)), ups.upsilon.algebra());
  const GForm diff = covariant_d(r.S, omega, 1.0) - ups.upsilon;
  r.residual = sweep(chart, [&](int i, int j) { return diff.norm(chart.x(i), chart.y(j), ctx); }, 1).sup;
  r.warnings = r.surface.warnings;
  if (closed > opt.recover.tol_closed) {
    std::ostringstream os;
    os << "input form is not d_{2 omega}-closed: residual " << closed;
    r.warnings.push_back(os.str());
  }
  return r;
}

GaugeMap gauge_between(const NodeValues<Mat>& S1, const NodeValues<Mat>& S2, double eps_inv) {
  const Chart& c = S1.chart;
  if (S2.chart.size() != c.size()) fail(ErrorKind::type, "gauge map between potentials on different grids");
  const int n = static_cast<int>(S1.data.front().rows());
  GaugeMap g;
  g.Fg = NodeValues<Mat>(c, Mat::Zero(n, n));
  g.condition = NodeValues<double>(c, std::numeric_limits<double>::infinity());
  g.masked = NodeValues<char>(c, 0);
  size_t masked = 0;
  for (size_t k = 0; k < S1.data.size(); ++k) {
    const Mat& a = S1.data[k];
    if (std::abs(a.determinant()) < eps_inv) {
      g.masked.data[k] = 1;
      ++masked;
      continue;
    }
    const Mat f = S2.data[k] * a.inverse();
    g.Fg.data[k] = f;
    const Eigen::JacobiSVD<Mat> svd(a);
    const auto& s = svd.singularValues();
    g.condition.data[k] = s(0) / s(s.size() - 1);
    g.identity_residual = std::max(g.identity_residual, (f * a - S2.data[k]).norm());
    if (std::abs(f.determinant()) >= eps_inv)
      g.conjugation_residual = std::max(g.conjugation_residual, (f * a * f.inverse() - S2.data[k]).norm());
  }
  g.masked_fraction = static_cast<double>(masked) / static_cast<double>(S1.data.size());
  return g;
}

NodeValues<Mat> sample_zero_form(const GForm& S, const FormContext& ctx, const Chart& chart) {
  if (S.degree() != 0) fail(ErrorKind::type, "sampling needs a 0-form");
  NodeValues<Mat> v(chart, Mat::Zero(S.dim(), S.dim()));
  parallel_for(chart.ny, [&](int j) {
    for (int i = 0; i < chart.nx; ++i) v.at(i, j) = S.coefficient(0, chart.x(i), chart.y(j), 0, ctx).value();
  });
  return v;
}

}  // namespace isl
