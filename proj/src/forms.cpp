#include "isl/forms.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "isl/parallel.hpp"

namespace isl {

namespace {

int components_of(int degree) {
  switch (degree) {
    case 0: return 1;
    case 1: return 2;
    case 2: return 1;
    default: return 0;
  }
}

}  // namespace

GForm::GForm(int degree, Algebra alg, int n, std::vector<Coefficient> c)
    : degree_(degree), alg_(alg), n_(n), c_(std::move(c)) {
  if (degree < 0 || degree > 3) fail(ErrorKind::type, "form degree must be 0..3");
  if (static_cast<int>(c_.size()) != components_of(degree))
    fail(ErrorKind::type, "wrong number of coefficients for a degree-" + std::to_string(degree) + " form");
}

GForm GForm::zero(int degree, Algebra alg, int n) {
  return GForm(degree, alg, n, std::vector<Coefficient>(static_cast<size_t>(components_of(degree))));
}

GForm GForm::zero_form(Algebra alg, int n, Coefficient f) { return GForm(0, alg, n, {std::move(f)}); }

GForm GForm::one_form(Algebra alg, int n, Coefficient fx, Coefficient fy) {
  return GForm(1, alg, n, {std::move(fx), std::move(fy)});
}

GForm GForm::two_form(Algebra alg, int n, Coefficient fxy) { return GForm(2, alg, n, {std::move(fxy)}); }

MatJet GForm::coefficient(int k, double x, double y, int order, const FormContext& ctx) const {
  const auto& f = c_.at(static_cast<size_t>(k));
  if (!f) return zero_jet(n_, n_, order);
  return f(x, y, order, ctx);
}

std::vector<Mat> GForm::values(double x, double y, const FormContext& ctx) const {
  std::vector<Mat> v;
  for (int k = 0; k < components(); ++k) v.push_back(coefficient(k, x, y, 0, ctx).value());
  return v;
}

double GForm::norm(double x, double y, const FormContext& ctx) const {
  double s = 0.0;
  for (const auto& m : values(x, y, ctx)) s += m.squaredNorm();
  return std::sqrt(s);
}

namespace {

Coefficient add_coeff(const Coefficient& a, const Coefficient& b, cd sb) {
  if (!a && !b) return {};
  if (!b) return a;
  if (!a) return [b, sb](double x, double y, int order, const FormContext& ctx) { return sb * b(x, y, order, ctx); };
  return [a, b, sb](double x, double y, int order, const FormContext& ctx) {
    return a(x, y, order, ctx) + sb * b(x, y, order, ctx);
  };
}

void check_compatible(const GForm& a, const GForm& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::type, "forms of different matrix size");
}

}  // namespace

GForm GForm::operator+(const GForm& o) const {
  check_compatible(*this, o);
  if (degree_ != o.degree_) fail(ErrorKind::type, "sum of forms of different degree");
  std::vector<Coefficient> c;
  for (size_t k = 0; k < c_.size(); ++k) c.push_back(add_coeff(c_[k], o.c_[k], 1.0));
  GForm r(degree_, join(alg_, o.alg_), n_, c);
  r.node_only = node_only || o.node_only;
  return r;
}

GForm GForm::operator-(const GForm& o) const {
  check_compatible(*this, o);
  if (degree_ != o.degree_) fail(ErrorKind::type, "difference of forms of different degree");
  std::vector<Coefficient> c;
  for (size_t k = 0; k < c_.size(); ++k) c.push_back(add_coeff(c_[k], o.c_[k], -1.0));
  GForm r(degree_, join(alg_, o.alg_), n_, c);
  r.node_only = node_only || o.node_only;
  return r;
}

GForm GForm::scaled(cd s) const {
  std::vector<Coefficient> c;
  for (const auto& f : c_) c.push_back(add_coeff({}, f, s));
  Algebra a = alg_;
  if (s.imag() != 0.0 && (a == Algebra::su || a == Algebra::u || a == Algebra::sl2r)) a = Algebra::gl;
  GForm r(degree_, a, n_, c);
  r.node_only = node_only;
  return r;
}

GForm GForm::with_algebra(Algebra a) const {
  GForm r(degree_, a, n_, c_);
  r.node_only = node_only;
  return r;
}

namespace {

// [a, b] of two coefficients, either possibly zero.
Coefficient bracket_coeff(const Coefficient& a, const Coefficient& b) {
  if (!a || !b) return {};
  return [a, b](double x, double y, int order, const FormContext& ctx) {
    return commutator(a(x, y, order, ctx), b(x, y, order, ctx));
  };
}

}  // namespace

GForm wedge_bracket(const GForm& a, const GForm& b) {
  check_compatible(a, b);
  const int k = a.degree(), l = b.degree();
  if (k + l > 2) fail(ErrorKind::type, "wedge bracket degree overflow (" + std::to_string(k + l) + " > 2)");
  const Algebra t = join(a.algebra(), b.algebra());
  const int n = a.dim();
  GForm r;
  auto ca = [&](int i) { return a.component_is_zero(i) ? Coefficient{} : Coefficient(
      [a, i](double x, double y, int o, const FormContext& c) { return a.coefficient(i, x, y, o, c); }); };
  auto cb = [&](int i) { return b.component_is_zero(i) ? Coefficient{} : Coefficient(
      [b, i](double x, double y, int o, const FormContext& c) { return b.coefficient(i, x, y, o, c); }); };
  if (k == 0 && l == 0) {
    r = GForm::zero_form(t, n, bracket_coeff(ca(0), cb(0)));
  } else if (k == 0 && l == 1) {
    r = GForm::one_form(t, n, bracket_coeff(ca(0), cb(0)), bracket_coeff(ca(0), cb(1)));
  } else if (k == 1 && l == 0) {
    r = GForm::one_form(t, n, bracket_coeff(ca(0), cb(0)), bracket_coeff(ca(1), cb(0)));
  } else if (k == 1 && l == 1) {
    // (a_x dx + a_y dy) ^ (b_x dx + b_y dy) = ([a_x, b_y] - [a_y, b_x]) dx^dy
    Coefficient p = bracket_coeff(ca(0), cb(1));
    Coefficient q = bracket_coeff(ca(1), cb(0));
    r = GForm::two_form(t, n, add_coeff(p, q, -1.0));
  } else if (k == 0 && l == 2) {
    r = GForm::two_form(t, n, bracket_coeff(ca(0), cb(0)));
  } else {
    r = GForm::two_form(t, n, bracket_coeff(ca(0), cb(0)));
  }
  r.node_only = a.node_only || b.node_only;
  return r;
}

namespace {

Coefficient partial(const GForm& v, int comp, int axis, DerivativeMode mode, double h) {
  if (v.component_is_zero(comp)) return {};
  if (mode == DerivativeMode::chain_rule) {
    return [v, comp, axis](double x, double y, int order, const FormContext& ctx) {
      const MatJet j = v.coefficient(comp, x, y, order + 1, ctx);
      return axis == 0 ? j.dx() : j.dy();
    };
  }
  return [v, comp, axis, h](double x, double y, int order, const FormContext& ctx) {
    const double ex = axis == 0 ? h : 0.0, ey = axis == 1 ? h : 0.0;
    return (0.5 / h) * (v.coefficient(comp, x + ex, y + ey, order, ctx) - v.coefficient(comp, x - ex, y - ey, order, ctx));
  };
}

Coefficient located(Coefficient f, const std::string& what) {
  if (!f) return f;
  return [f, what](double x, double y, int order, const FormContext& ctx) {
    try {
      return f(x, y, order, ctx);
    } catch (const Error& e) {
      std::ostringstream os;
      os << what << " at (" << x << ", " << y << "): " << e.what();
      throw Error(e.kind(), os.str());
    }
  };
}

}  // namespace

GForm exterior_d(const GForm& v, DerivativeMode mode, double h) {
  const Algebra t = v.algebra();
  const int n = v.dim();
  GForm r;
  switch (v.degree()) {
    case 0:
      r = GForm::one_form(t, n, located(partial(v, 0, 0, mode, h), "exterior derivative"),
                          located(partial(v, 0, 1, mode, h), "exterior derivative"));
      break;
    case 1:
      r = GForm::two_form(
          t, n, located(add_coeff(partial(v, 1, 0, mode, h), partial(v, 0, 1, mode, h), -1.0), "exterior derivative"));
      break;
    default: r = GForm::zero(3, t, n); break;
  }
  r.node_only = v.node_only;
  return r;
}

GForm covariant_d(const GForm& v, const GForm& omega, double c, DerivativeMode mode) {
  if (omega.degree() != 1) fail(ErrorKind::type, "covariant differential needs a 1-form connection");
  if (v.degree() >= 2) return GForm::zero(3, join(v.algebra(), omega.algebra()), v.dim());
  const GForm dv = exterior_d(v, mode);
  const GForm w = wedge_bracket(omega, v);
  return dv - w.scaled(c);
}

GridReport closedness_residual(const GForm& v, ClosedOp op, const GForm* omega, const FormContext& ctx,
                               const Chart& chart, int margin) {
  GForm r;
  switch (op) {
    case ClosedOp::d: r = exterior_d(v); break;
    case ClosedOp::d_omega:
    case ClosedOp::d_2omega:
      if (!omega) fail(ErrorKind::config, "closedness residual: connection form required");
      r = covariant_d(v, *omega, op == ClosedOp::d_omega ? 0.5 : 1.0);
      break;
  }
  return sweep(chart, [&](int i, int j) { return r.norm(chart.x(i), chart.y(j), ctx); }, margin);
}

GForm node_zero_form(const JetGrid& jets, Algebra alg) {
  auto g = std::make_shared<JetGrid>(jets);
  const int n = static_cast<int>(jets.at(0, 0).value().rows());
  GForm f = GForm::zero_form(alg, n, [g](double x, double y, int order, const FormContext&) { return g->jet(x, y, order); });
  f.node_only = true;
  return f;
}

GForm grid_zero_form(const GridMatrixField& grid, Algebra alg) {
  auto g = std::make_shared<GridMatrixField>(grid);
  const int n = static_cast<int>(grid.at(0, 0).rows());
  GForm f = GForm::zero_form(alg, n, [g](double x, double y, int order, const FormContext&) { return g->jet(x, y, order); });
  f.node_only = true;
  return f;
}

GForm grid_one_form(const GridMatrixField& gx, const GridMatrixField& gy, Algebra alg) {
  auto px = std::make_shared<GridMatrixField>(gx);
  auto py = std::make_shared<GridMatrixField>(gy);
  const int n = static_cast<int>(gx.at(0, 0).rows());
  GForm f = GForm::one_form(
      alg, n, [px](double x, double y, int order, const FormContext&) { return px->jet(x, y, order); },
      [py](double x, double y, int order, const FormContext&) { return py->jet(x, y, order); });
  f.node_only = true;
  return f;
}

PotentialResult recover_0form_potential(const GForm& eta, int i0, int j0, const FormContext& ctx, const Chart& chart,
                                        const RecoverOptions& opt) {
  if (eta.degree() != 1) fail(ErrorKind::type, "potential recovery needs a 1-form");
  if (eta.node_only) fail(ErrorKind::domain, "potential recovery needs a form evaluable between grid nodes");
  if (i0 < 0 || j0 < 0 || i0 >= chart.nx || j0 >= chart.ny)
    fail(ErrorKind::domain, "basepoint outside the chart: staircase path would leave the chart");
  const int K = opt.jet_order;
  const int n = eta.dim();
  const int nx = chart.nx, ny = chart.ny;
  const double hx = chart.hx(), hy = chart.hy();
  const Mat Z = Mat::Zero(n, n);

  PotentialResult res;
  res.i0 = i0;
  res.j0 = j0;
  res.x0 = chart.x(i0);
  res.y0 = chart.y(j0);

  if (opt.check_closed) {
    res.closedness = closedness_residual(eta, ClosedOp::d, nullptr, ctx, chart, 0).sup;
    if (res.closedness > opt.tol_closed) {
      std::ostringstream os;
      os << "integrand is not d-closed: residual " << res.closedness << " > " << opt.tol_closed;
      res.warnings.push_back(os.str());
    }
  }

  if (opt.substeps < 1) fail(ErrorKind::config, "potential recovery needs at least one Simpson panel per cell");
  const int m2 = 2 * opt.substeps;
  // Composite Simpson weights over one cell split into 2 * substeps intervals.
  std::vector<double> w(static_cast<size_t>(m2 + 1));
  for (int k = 0; k <= m2; ++k) w[static_cast<size_t>(k)] = (k == 0 || k == m2) ? 1.0 : (k % 2 ? 4.0 : 2.0);
  const double wx = hx / (3.0 * m2), wy = hy / (3.0 * m2);

  // Integrand jets at nodes (order K).
  NodeValues<MatJet> ex(chart, MatJet()), ey(chart, MatJet());
  parallel_for(ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      ex.at(i, j) = eta.coefficient(0, chart.x(i), chart.y(j), K, ctx);
      ey.at(i, j) = eta.coefficient(1, chart.x(i), chart.y(j), K, ctx);
    }
  });
  // Interior Simpson points of the cell above node (i, j): y-component jets of order K.
  NodeValues<std::vector<MatJet>> eyin(chart, {});
  parallel_for(ny - 1, [&](int j) {
    for (int i = 0; i < nx; ++i)
      for (int k = 1; k < m2; ++k)
        eyin.at(i, j).push_back(eta.coefficient(1, chart.x(i), chart.y(j) + k * hy / m2, K, ctx));
  });
  // Interior Simpson points of the cell right of node (i, j): x-component values.
  NodeValues<std::vector<Mat>> exin(chart, {});
  parallel_for(ny, [&](int j) {
    for (int i = 0; i + 1 < nx; ++i)
      for (int k = 1; k < m2; ++k)
        exin.at(i, j).push_back(eta.coefficient(0, chart.x(i) + k * hx / m2, chart.y(j), 0, ctx).value());
  });
  auto xcell = [&](int i, int j) {
    Mat s = ex.at(i, j).value() + ex.at(i + 1, j).value();
    for (int k = 1; k < m2; ++k) s += w[static_cast<size_t>(k)] * exin.at(i, j)[static_cast<size_t>(k - 1)];
    return Mat(wx * s);
  };
  auto ycell = [&](int i, int j, int a) {
    Mat s = ey.at(i, j)(a, 0) + ey.at(i, j + 1)(a, 0);
    for (int k = 1; k < m2; ++k) s += w[static_cast<size_t>(k)] * eyin.at(i, j)[static_cast<size_t>(k - 1)](a, 0);
    return Mat(wy * s);
  };

  // Cumulative integral of eta_x along row j from column i0.
  auto row_integral = [&](int j) {
    std::vector<Mat> acc(static_cast<size_t>(nx), Z);
    for (int i = i0 + 1; i < nx; ++i) acc[static_cast<size_t>(i)] = acc[static_cast<size_t>(i - 1)] + xcell(i - 1, j);
    for (int i = i0 - 1; i >= 0; --i) acc[static_cast<size_t>(i)] = acc[static_cast<size_t>(i + 1)] - xcell(i, j);
    return acc;
  };

  const std::vector<Mat> A = row_integral(j0);

  // Path 1: jets of F at every node.
  NodeValues<MatJet> F(chart, MatJet(K, Z));
  parallel_for(nx, [&](int i) {
    // Cumulative y-integral of the (a,0) coefficients of eta_y along column i.
    std::vector<std::vector<Mat>> B(static_cast<size_t>(ny), std::vector<Mat>(static_cast<size_t>(K + 1), Z));
    auto cell = [&](int jl, int a) { return ycell(i, jl, a); };
    for (int j = j0 + 1; j < ny; ++j)
      for (int a = 0; a <= K; ++a)
        B[static_cast<size_t>(j)][static_cast<size_t>(a)] = B[static_cast<size_t>(j - 1)][static_cast<size_t>(a)] + cell(j - 1, a);
    for (int j = j0 - 1; j >= 0; --j)
      for (int a = 0; a <= K; ++a)
        B[static_cast<size_t>(j)][static_cast<size_t>(a)] = B[static_cast<size_t>(j + 1)][static_cast<size_t>(a)] - cell(j, a);
    for (int j = 0; j < ny; ++j) {
      MatJet f(K, Z);
      for (int a = 0; a <= K; ++a) {
        Mat base = a == 0 ? A[static_cast<size_t>(i)] : Mat(ex.at(i, j0)(a - 1, 0) / double(a));
        f(a, 0) = base + B[static_cast<size_t>(j)][static_cast<size_t>(a)];
      }
      for (int d = 1; d <= K; ++d)
        for (int b = 1; b <= d; ++b) f(d - b, b) = ey.at(i, j)(d - b, b - 1) / double(b);
      F.at(i, j) = f;
    }
  });

  // Path 2: y-leg along column i0, then x-leg along each row.
  std::vector<Mat> C(static_cast<size_t>(ny), Z);
  for (int j = j0 + 1; j < ny; ++j)
    C[static_cast<size_t>(j)] = C[static_cast<size_t>(j - 1)] + ycell(i0, j - 1, 0);
  for (int j = j0 - 1; j >= 0; --j)
    C[static_cast<size_t>(j)] = C[static_cast<size_t>(j + 1)] - ycell(i0, j, 0);
  res.path2 = NodeValues<Mat>(chart, Z);
  parallel_for(ny, [&](int j) {
    const std::vector<Mat> row = row_integral(j);
    for (int i = 0; i < nx; ++i) res.path2.at(i, j) = C[static_cast<size_t>(j)] + row[static_cast<size_t>(i)];
  });

  double r = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) r = std::max(r, (F.at(i, j).value() - res.path2.at(i, j)).norm());
  res.residual = r;
  res.jets = JetGrid(F);
  res.F = node_zero_form(res.jets, eta.algebra());
  return res;
}

}  // namespace isl
