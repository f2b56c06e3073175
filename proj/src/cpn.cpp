#include "isl/cpn.hpp"

#include <cmath>
#include <sstream>

#include "isl/parallel.hpp"

namespace isl {

namespace {

Jet xi_jet(double x, double y, int order) { return jet_x(x, order) + kI * jet_y(y, order); }

Jet norm2(const MatJet& f) { return entry(adjoint(f) * f, 0, 0); }

std::string at_point(double x, double y) {
  std::ostringstream os;
  os << " at (" << x << ", " << y << ")";
  return os.str();
}

}  // namespace

double projector_defect(const Mat& p) {
  return std::max({(p * p - p).norm(), (p - p.adjoint()).norm(), std::abs(p.trace() - 1.0)});
}

VecJetFn polynomial_vector(std::vector<std::vector<cd>> coeffs) {
  return [coeffs](double x, double y, int order) {
    const Jet z = xi_jet(x, y, order);
    MatJet f(order, Mat::Zero(static_cast<int>(coeffs.size()), 1));
    for (size_t r = 0; r < coeffs.size(); ++r) {
      const Jet c = polynomial(coeffs[r], z);
      for (size_t k = 0; k < f.coeffs().size(); ++k) f.coeffs()[k](static_cast<int>(r), 0) = c.coeffs()[k];
    }
    return f;
  };
}

namespace {

MatJet projector_jet(const MatJet& f, double eps, double x, double y) {
  const Jet s = norm2(f);
  if (!(s.value().real() >= eps)) fail(ErrorKind::singular, "vanishing projector source f" + at_point(x, y));
  return (f * adjoint(f)) * reciprocal(s);
}

MatJet raise_vector(const MatJet& P, const MatJet& f, double eps, double x, double y) {
  const MatJet r = d_xi(P) * f.truncated(P.order() - 1);
  if (!(norm2(r).value().real() >= eps)) fail(ErrorKind::chain_end, "raising produced a vanishing vector" + at_point(x, y));
  return r;
}

}  // namespace

ProjectorField projector_from_f(std::string name, int n, VecJetFn f, double eps_den) {
  ProjectorField p;
  p.name = std::move(name);
  p.n = n;
  p.f = f;
  p.eps_den = eps_den;
  p.P = [f, eps_den](double x, double y, int order) { return projector_jet(f(x, y, order), eps_den, x, y); };
  return p;
}

VecJetFn raise_f(const ProjectorField& pk) {
  return [pk](double x, double y, int order) {
    const MatJet f = pk.f(x, y, order + 1);
    const MatJet P = projector_jet(f, pk.eps_den, x, y);
    return raise_vector(P, f, pk.eps_den, x, y);
  };
}

CPModel::CPModel(int N, std::vector<std::vector<cd>> f0, ChartId chart) : n_(N), f0_(std::move(f0)), chart_(chart) {
  if (N < 2 || N > kMaxN) fail(ErrorKind::config, "CP model needs 2 <= N <= " + std::to_string(kMaxN));
  if (static_cast<int>(f0_.size()) != N) fail(ErrorKind::config, "f0 must have N components");
}

CPModel CPModel::veronese() { return CPModel(3, {{1.0}, {0.0, std::sqrt(2.0)}, {0.0, 0.0, 1.0}}); }

CPModel CPModel::cp1() { return CPModel(2, {{1.0}, {0.0, 1.0}}); }

CPModel CPModel::on_chart(ChartId c) const {
  if (c == chart_) return *this;
  // xi = 1/xi': f(xi) = xi'^{-d} * reversed polynomial in xi', projectively equivalent.
  size_t d = 0;
  for (const auto& p : f0_) d = std::max(d, p.size());
  std::vector<std::vector<cd>> r;
  for (const auto& p : f0_) {
    std::vector<cd> q(d, cd(0.0));
    for (size_t k = 0; k < p.size(); ++k) q[d - 1 - k] = p[k];
    r.push_back(q);
  }
  return CPModel(n_, r, c);
}

std::vector<MatJet> CPModel::chain(double x, double y, int order) const {
  const int top = order + std::max(0, n_ - 2);
  if (top > kMaxJetOrder) fail(ErrorKind::numeric, "CP chain jets exceed the maximal jet order");
  std::vector<MatJet> P;
  MatJet f = polynomial_vector(f0_)(x, y, top);
  for (int k = 0; k + 1 < n_; ++k) {
    const MatJet p = projector_jet(f, 1e-12, x, y);
    P.push_back(p.truncated(order));
    if (k + 2 < n_) f = raise_vector(p, f, 1e-12, x, y);
  }
  MatJet last = jet_constant(identity(n_), order);
  for (const auto& p : P) last -= p;
  P.push_back(last);
  return P;
}

MatJet CPModel::f(int k, double x, double y, int order) const {
  if (k < 0 || k >= n_) fail(ErrorKind::config, "chain index out of range");
  if (order + k > kMaxJetOrder) fail(ErrorKind::numeric, "CP chain jets exceed the maximal jet order");
  MatJet f = polynomial_vector(f0_)(x, y, order + k);
  for (int j = 0; j < k; ++j) f = raise_vector(projector_jet(f, 1e-12, x, y), f, 1e-12, x, y);
  return f;
}

MatJet CPModel::P(int k, double x, double y, int order) const {
  if (k < 0 || k >= n_) fail(ErrorKind::config, "chain index out of range");
  return chain(x, y, order)[static_cast<size_t>(k)];
}

ProjectorField CPModel::projector(int k) const {
  const CPModel m = *this;
  ProjectorField p;
  p.name = "P" + std::to_string(k);
  p.n = n_;
  p.f = [m, k](double x, double y, int order) { return m.f(k, x, y, order); };
  p.P = [m, k](double x, double y, int order) { return m.P(k, x, y, order); };
  return p;
}

SolutionField CPModel::theta_field(int k) const {
  if (k < 0 || k >= n_) fail(ErrorKind::config, "chain index out of range");
  const CPModel m = *this;
  const int n = n_;
  SolutionField u(
      "cp" + std::to_string(n - 1) + "-theta" + std::to_string(k),
      [m, k, n](double x, double y, int order) {
        if (order > m.max_order()) fail(ErrorKind::numeric, "theta jets limited to order " + std::to_string(m.max_order()));
        return kI * (m.P(k, x, y, order) - identity(n) * (1.0 / n));
      },
      ProviderKind::analytic, n, n, Algebra::su);
  u.magnitude = 1.0;
  return u;
}

MatJet projector_of_theta(const SolutionField& theta, double x, double y, int order) {
  const int n = theta.rows();
  return (-kI) * theta.jet(x, y, order) + identity(n) * (1.0 / n);
}

GridReport el_residual(const SolutionField& theta, const Chart& chart, int margin) {
  return sweep(
      chart,
      [&](int i, int j) {
        const MatJet t = theta.jet(chart.x(i), chart.y(j), 2);
        const Mat lap = 2.0 * (t(2, 0) + t(0, 2));
        return commutator(lap, t.value()).norm();
      },
      margin);
}

std::string to_string(CPPotential v) {
  switch (v) {
    case CPPotential::integrable: return "integrable";
    case CPPotential::sum_difference: return "sum_difference";
    case CPPotential::cp1: return "cp1";
  }
  return "?";
}

CPPotential parse_cp_potential(const std::string& s) {
  if (s == "integrable") return CPPotential::integrable;
  if (s == "sum_difference") return CPPotential::sum_difference;
  if (s == "cp1") return CPPotential::cp1;
  fail(ErrorKind::config, "unknown potential variant '" + s + "' (integrable, sum_difference, cp1)");
}

LaxPair lax_potentials_cpn(int N, CPPotential variant) {
  auto pot = [variant](double x, double y, int order, const SolutionField& u, cd l) {
    const MatJet th = u.jet(x, y, order + 1);
    const MatJet t0 = th.truncated(order);
    const MatJet cx = commutator(th.dx(), t0);
    const MatJet cy = commutator(th.dy(), t0);
    const cd c = 1.0 / (1.0 - l * l);
    switch (variant) {
      case CPPotential::integrable:
        return std::array<MatJet, 2>{(-2.0 * c) * (cx + (kI * l) * cy), (-2.0 * c) * (cy - (kI * l) * cx)};
      case CPPotential::sum_difference:
        return std::array<MatJet, 2>{(-(1.0 + kI * l) * c) * (cx + cy), ((1.0 + kI * l) * c) * (cx - cy)};
      case CPPotential::cp1:
      default:
        return std::array<MatJet, 2>{(-2.0 * c) * (cx - (kI * l) * cy), (-2.0 * c) * ((kI * l) * cx + cy)};
    }
  };
  LambdaDomain dom;
  dom.kind = LambdaKind::imaginary_line;
  dom.poles = {cd(1.0), cd(-1.0)};
  return LaxPair("cp" + std::to_string(N - 1) + ":" + to_string(variant), pot, dom, Algebra::su, N, Group::U);
}

namespace {

MatJet ladder(const MatJet& P, bool lower) {
  const MatJet d = d_xi(P), db = d_xibar(P);
  const MatJet p = P.truncated(P.order() - 1);
  const MatJet m = lower ? db * p * d : d * p * db;
  const Jet tr = trace(m);
  if (std::abs(tr.value()) < 1e-14) fail(ErrorKind::chain_end, lower ? "lowering at the chain start" : "raising at the chain end");
  return m * reciprocal(tr);
}

}  // namespace

MatJet ladder_lower(const MatJet& P) { return ladder(P, true); }
MatJet ladder_raise(const MatJet& P) { return ladder(P, false); }

Wavefunction phi_k_closed_form(const SolutionField& theta, int N, cd lambda, int k) {
  if (std::abs(1.0 - lambda) < 1e-8) fail(ErrorKind::domain, "closed-form wavefunction has a pole at lambda = 1");
  if (k < 0 || k >= N) fail(ErrorKind::config, "wavefunction level k out of range");
  const cd a = 4.0 * lambda / ((1.0 - lambda) * (1.0 - lambda));
  const cd b = -2.0 / (1.0 - lambda);
  auto fn = [theta, N, k, a, b](double x, double y, int order) {
    const MatJet P = projector_of_theta(theta, x, y, order + k);
    MatJet sum = zero_jet(N, N, order);
    MatJet L = P;
    for (int j = 1; j <= k; ++j) {
      L = ladder_lower(L);
      sum += L.truncated(order);
    }
    return jet_constant(identity(N), order) + a * sum + b * P.truncated(order);
  };
  return Wavefunction::closed_form("Phi_" + std::to_string(k), fn, Group::U, N, lambda);
}

WaveFamily phi_k_family(int N, int k) {
  return [N, k](const SolutionField& u, cd l) { return phi_k_closed_form(u, N, l, k); };
}

Wavefunction phi_cp1(const SolutionField& theta, cd lambda) {
  if (std::abs(1.0 + lambda) < 1e-8) fail(ErrorKind::domain, "wavefunction has a pole at lambda = -1");
  const int N = theta.rows();
  const cd b = -2.0 / (1.0 + lambda);
  auto fn = [theta, N, b](double x, double y, int order) {
    return jet_constant(identity(N), order) + b * projector_of_theta(theta, x, y, order);
  };
  return Wavefunction::closed_form("Phi_cp1", fn, Group::U, N, lambda);
}

GForm weierstrass_integrand(int N, WeierstrassForm w) {
  auto comp = [w](int a) {
    return [w, a](double x, double y, int order, const FormContext& ctx) {
      if (!ctx.field) fail(ErrorKind::config, "Weierstrass integrand evaluated without a field");
      const MatJet th = ctx.field->jet(x, y, order + 1);
      const MatJet t0 = th.truncated(order);
      const MatJet cx = commutator(th.dx(), t0);
      const MatJet cy = commutator(th.dy(), t0);
      if (w == WeierstrassForm::rotated) return a == 0 ? MatJet(-cy) : cx;
      return a == 0 ? MatJet(-cx) : cy;
    };
  };
  return GForm::one_form(Algebra::su, N, comp(0), comp(1));
}

WeierstrassResult weierstrass_surface(const SolutionField& theta, int N, int i0, int j0, const Chart& chart,
                                      WeierstrassForm w) {
  const double el = el_residual(theta, chart).sup;
  WeierstrassResult r;
  FormContext ctx{&theta, 0.0};
  RecoverOptions opt;
  opt.jet_order = 3;
  r.potential = recover_0form_potential(weierstrass_integrand(N, w), i0, j0, ctx, chart, opt);
  r.surface.provenance = "W";
  r.surface.algebra = Algebra::su;
  r.surface.n = N;
  r.surface.node_only = true;
  const JetGrid jets = r.potential.jets;
  r.surface.F = [jets](double x, double y, int order) { return jets.jet(x, y, order); };
  r.surface.residual = r.potential.residual;
  if (el > 1e-6) {
    std::ostringstream os;
    os << "field is off-shell: EL residual " << el;
    r.surface.notes.push_back(os.str());
  }
  for (const auto& s : r.potential.warnings) r.surface.notes.push_back(s);
  return r;
}

namespace {

MatJet x_from_chain(const std::vector<MatJet>& P, int k, int N) {
  MatJet s = P[static_cast<size_t>(k)];
  for (int j = 0; j < k; ++j) s += 2.0 * P[static_cast<size_t>(j)];
  return (-kI) * s + identity(N) * (kI * (1.0 + 2.0 * k) / static_cast<double>(N));
}

}  // namespace

ImmersionSurface veronese_X(const CPModel& model, int k) {
  if (k < 0 || k >= model.N()) fail(ErrorKind::config, "surface index out of range");
  ImmersionSurface s;
  s.provenance = "X" + std::to_string(k);
  s.algebra = Algebra::su;
  s.n = model.N();
  s.F = [model, k](double x, double y, int order) { return x_from_chain(model.chain(x, y, order), k, model.N()); };
  return s;
}

std::vector<XIdentity> veronese_identities(const CPModel& model, const Chart& chart) {
  const int N = model.N();
  const Mat I = identity(N);
  std::vector<double> r(6, 0.0);
  std::vector<std::vector<double>> rows(static_cast<size_t>(chart.ny), std::vector<double>(6, 0.0));
  parallel_for(chart.ny, [&](int j) {
    for (int i = 0; i < chart.nx; ++i) {
      const auto P = model.chain(chart.x(i), chart.y(j), 0);
      std::vector<Mat> X;
      for (int k = 0; k < N; ++k) X.push_back(x_from_chain(P, k, N).value());
      auto& w = rows[static_cast<size_t>(j)];
      w[0] = std::max(w[0], (X[0] * X[0] + (kI / 3.0) * X[0] + (2.0 / 9.0) * I).norm());
      if (N >= 2) w[1] = std::max(w[1], (X[1] * X[1] * X[1] + X[1]).norm());
      if (N >= 3) w[2] = std::max(w[2], (X[2] - (X[1] - X[0])).norm());
      w[3] = std::max(w[3], std::abs(inner(X[0], X[0]) - 1.0 / 3.0));
      if (N >= 2) w[4] = std::max(w[4], std::abs(inner(X[1], X[1]) - 1.0));
      double mem = 0.0;
      for (const Mat& x : X) mem = std::max(mem, membership_residual(x, Algebra::su));
      w[5] = std::max(w[5], mem);
    }
  });
  for (const auto& w : rows)
    for (size_t a = 0; a < 6; ++a) r[a] = std::max(r[a], w[a]);
  return {{"X0^2 + (i/3) X0 + (2/9) Id = 0", r[0]},
          {"X1^3 + X1 = 0", r[1]},
          {"X2 = X1 - X0", r[2]},
          {"<X0, X0> = 1/3", r[3]},
          {"<X1, X1> = 1", r[4]},
          {"X_k in su(N)", r[5]}};
}

std::array<double, 9> labelled_coordinates(const Mat& X) {
  static const OrthonormalBasis b = basis_su(3);
  const RVec g = coordinates(X, b);
  std::array<double, 9> p{};
  p[1] = -g[0];
  p[2] = -g[1];
  p[3] = g[2];
  p[4] = g[7];
  p[5] = g[5];
  p[6] = g[3];
  p[7] = g[6];
  p[8] = g[4];
  return p;
}

namespace {

// Sup over chart nodes of |fn(i, j)|.
double sup_over(const Chart& c, const std::function<double(int, int)>& fn) { return sweep(c, fn, 0).sup; }

Mat rows_matrix(std::initializer_list<std::initializer_list<cd>> rows) {
  Mat m(static_cast<int>(rows.size()), static_cast<int>(rows.size()));
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (const cd& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

double lsp_residual(const Wavefunction& phi, const LaxPair& lax, const SolutionField& u, const Chart& c) {
  return sup_over(c, [&](int i, int j) {
    const double x = c.x(i), y = c.y(j);
    const MatJet p = phi.jet(x, y, 1);
    const auto U = lax.values(x, y, u, phi.lambda());
    return std::max((p(1, 0) - U[0] * p.value()).norm(), (p(0, 1) - U[1] * p.value()).norm());
  });
}

}  // namespace

std::vector<Claim> claim_registry_check(const CPModel& model, const Chart& chart) {
  if (model.N() != 3) fail(ErrorKind::config, "the claim registry covers the CP^2 case study (N = 3)");
  std::vector<Claim> out;
  auto add = [&](std::string id, std::string statement, double residual, std::string note = "", double tol = 1e-8) {
    Claim c;
    c.id = std::move(id);
    c.statement = std::move(statement);
    c.residual = residual;
    c.tol = tol;
    c.note = std::move(note);
    if (!c.verified() && c.note.empty()) c.note = "fails on evaluation; suspected typo";
    out.push_back(c);
  };
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  const int nx = chart.nx, ny = chart.ny;
  // Node data shared by the coordinate claims.
  NodeValues<std::array<double, 9>> p0(chart, {}), p1(chart, {});
  NodeValues<std::vector<MatJet>> ch(chart, {});
  parallel_for(ny, [&](int j) {
    for (int i = 0; i < nx; ++i) {
      ch.at(i, j) = model.chain(chart.x(i), chart.y(j), 1);
      p0.at(i, j) = labelled_coordinates(x_from_chain(ch.at(i, j), 0, 3).value());
      p1.at(i, j) = labelled_coordinates(x_from_chain(ch.at(i, j), 1, 3).value());
    }
  });
  auto over0 = [&](const std::function<double(const std::array<double, 9>&)>& f) {
    return sup_over(chart, [&](int i, int j) { return std::abs(f(p0.at(i, j))); });
  };
  auto over1 = [&](const std::function<double(const std::array<double, 9>&)>& f) {
    return sup_over(chart, [&](int i, int j) { return std::abs(f(p1.at(i, j))); });
  };
  const std::string relabel = "coordinates in the signed Gell-Mann relabelling";

  // Coordinate equations of X0.
  add("x0.sphere", "sum x_i^2 = 1/3", over0([](const auto& p) {
        double s = 0;
        for (int a = 1; a <= 8; ++a) s += p[a] * p[a];
        return s - 1.0 / 3.0;
      }), relabel);
  add("x0.cylinder", "(4/3)(x4 - 1/(4 sqrt3))^2 + sum_{5..8} x_i^2 = 1/4", over0([&](const auto& p) {
        double s = 0;
        for (int a = 5; a <= 8; ++a) s += p[a] * p[a];
        return 4.0 / 3.0 * std::pow(p[4] - 1.0 / (4.0 * s3), 2) + s - 0.25;
      }), relabel);
  auto hyperbola = [&](int power) {
    return [&, power](const std::array<double, 9>& p) {
      return p[1] * p[1] + p[2] * p[2] + p[3] * p[3] + std::pow(p[4], power) / 3.0 + p[6] * p[6] + p[8] * p[8] +
             p[3] / 3.0 + (6.0 * p[3] + 1.0) * p[4] / (3.0 * s3) - 2.0 / 9.0;
    };
  };
  add("x0.hyperbola", "x1^2+x2^2+x3^2 + x4^4/3 + x6^2 + x8^2 + x3/3 + (6x3+1)x4/(3 sqrt3) = 2/9", over0(hyperbola(4)));
  add("x0.hyperbola.square_reading", "same with x4^2 in place of x4^4 (suspected typo reading)", over0(hyperbola(2)),
      "holds with x4^2");
  add("x0.cubic", "-3x3^3 - 6(sqrt3 x4 + 1)x3 - 9x4^2 + 2 sqrt3 x4 + 1 = 0", over0([&](const auto& p) {
        return -3.0 * std::pow(p[3], 3) - 6.0 * (s3 * p[4] + 1.0) * p[3] - 9.0 * p[4] * p[4] + 2.0 * s3 * p[4] + 1.0;
      }));
  add("x0.offdiag_a", "-(1/3)x2(2 sqrt3 x4 + 1) - x6 x7 + x5 x8 = 0", over0([&](const auto& p) {
        return -p[2] * (2.0 * s3 * p[4] + 1.0) / 3.0 - p[6] * p[7] + p[5] * p[8];
      }), relabel);
  add("x0.offdiag_b", "(1/3)(2 sqrt2 x4 + 1)x1 - x5 x6 - x7 x8 = 0", over0([&](const auto& p) {
        return (2.0 * s2 * p[4] + 1.0) * p[1] / 3.0 - p[5] * p[6] - p[7] * p[8];
      }));
  add("x0.offdiag_b.sqrt3_reading", "same with 2 sqrt3 in place of 2 sqrt2 (suspected typo reading)",
      over0([&](const auto& p) { return (2.0 * s3 * p[4] + 1.0) * p[1] / 3.0 - p[5] * p[6] - p[7] * p[8]; }),
      "holds with 2 sqrt3");

  // Coordinate equations of X1.
  add("x1.x3_x4", "x3 = x4/sqrt3", over1([&](const auto& p) { return p[3] - p[4] / s3; }), relabel);
  add("x1.x3_x4.gell_mann_order", "x3 = x4/sqrt3 with literal Gell-Mann indices",
      over1([&](const auto& p) { return p[3] - p[6] / s3; }),
      "fails with literal Gell-Mann labels; motivates the relabelling");
  add("x1.x6", "x6 = 0", over1([](const auto& p) { return p[6]; }), relabel);
  add("x1.x8", "x8 = 0", over1([](const auto& p) { return p[8]; }), relabel);
  add("x1.x1_cubed", "x1^3 + 1 = 0", over1([](const auto& p) { return std::pow(p[1], 3) + 1.0; }),
      "fails; inconsistent with the other equations since x1 varies");
  add("x1.sphere7", "sum_{1..7} x_i^2 - x6^2 = 1", over1([](const auto& p) {
        double s = 0;
        for (int a = 1; a <= 7; ++a) s += p[a] * p[a];
        return s - p[6] * p[6] - 1.0;
      }), relabel);
  add("x1.ellipse", "x5^2 + x7^2 + (2/3)x4^2 = 1/2",
      over1([](const auto& p) { return p[5] * p[5] + p[7] * p[7] + 2.0 / 3.0 * p[4] * p[4] - 0.5; }), relabel);
  add("x1.quartic", "x1^4 - (x2^2 + (2/3)x4^2 - 1/2)^2 = 0", over1([](const auto& p) {
        return std::pow(p[1], 4) - std::pow(p[2] * p[2] + 2.0 / 3.0 * p[4] * p[4] - 0.5, 2);
      }), relabel);

  // Displayed matrices.
  const Mat I = identity(3);
  auto node = [&](int i, int j) {
    const cd z(chart.x(i), chart.y(j));
    return std::make_tuple(z, std::conj(z), std::norm(z));
  };
  add("p0.matrix", "P0 = f0 f0^dagger/(1+|xi|^2)^2 entrywise", sup_over(chart, [&](int i, int j) {
        auto [z, zb, r2] = node(i, j);
        const Mat m = rows_matrix({{1.0, s2 * zb, zb * zb}, {s2 * z, 2.0 * r2, s2 * r2 * zb}, {z * z, s2 * r2 * z, r2 * r2}}) /
                      std::pow(1.0 + r2, 2);
        return (m - ch.at(i, j)[0].value()).norm();
      }));
  add("x0.matrix", "X0 entrywise", sup_over(chart, [&](int i, int j) {
        auto [z, zb, r2] = node(i, j);
        const Mat m = kI / std::pow(1.0 + r2, 2) *
                      rows_matrix({{(r2 * r2 + 2.0 * r2 - 2.0) / 3.0, -s2 * zb, -zb * zb},
                                      {-s2 * z, (r2 * r2 - 4.0 * r2 + 1.0) / 3.0, -s2 * r2 * zb},
                                      {-z * z, -s2 * r2 * z, (1.0 - 2.0 * r2 * r2 + 2.0 * r2) / 3.0}});
        return (m - x_from_chain(ch.at(i, j), 0, 3).value()).norm();
      }));
  add("f1.vector", "f1 = (-2 xibar, sqrt2(1-|xi|^2), 2 xi)/(1+|xi|^2) spans P1", sup_over(chart, [&](int i, int j) {
        auto [z, zb, r2] = node(i, j);
        Mat f(3, 1);
        f << -2.0 * zb, s2 * (1.0 - r2), 2.0 * z;
        f /= (1.0 + r2);
        const Mat p = f * f.adjoint() / (f.adjoint() * f)(0, 0);
        return (p - ch.at(i, j)[1].value()).norm();
      }));
  add("p1.matrix", "P1 entrywise", sup_over(chart, [&](int i, int j) {
        auto [z, zb, r2] = node(i, j);
        const double q = r2 - 1.0;
        const Mat m = rows_matrix({{2.0 * r2, s2 * q * zb, -2.0 * zb * zb},
                                      {s2 * q * z, q * q, -s2 * q * zb},
                                      {-2.0 * z * z, -s2 * q * z, 2.0 * r2}}) /
                      std::pow(1.0 + r2, 2);
        return (m - ch.at(i, j)[1].value()).norm();
      }));
  add("x1.matrix", "X1 entrywise (prefactor (1+|xi|^2)^-2, +sqrt2 xibar in entry (1,2))", sup_over(chart, [&](int i, int j) {
        auto [z, zb, r2] = node(i, j);
        const Mat m = kI / std::pow(1.0 + r2, 2) *
                      rows_matrix({{r2 - 1.0, s2 * zb, 0.0}, {-s2 * z, 0.0, -s2 * zb}, {0.0, -s2 * z, -(r2 - 1.0)}});
        return (m - x_from_chain(ch.at(i, j), 1, 3).value()).norm();
      }));
  add("p2.i_identity", "P2 = i Id - P0 - P1 is a projector", sup_over(chart, [&](int i, int j) {
        return projector_defect(kI * I - ch.at(i, j)[0].value() - ch.at(i, j)[1].value());
      }), "fails; Id - P0 - P1 is used");
  add("p2.matrix", "P2 entrywise (prefactor (1+|xi|^2)^-1)", sup_over(chart, [&](int i, int j) {
        auto [z, zb, r2] = node(i, j);
        const Mat m = rows_matrix({{r2 * r2, -s2 * r2 * zb, zb * zb}, {-s2 * r2 * z, 2.0 * r2, -s2 * zb}, {z * z, -s2 * z, 1.0}}) /
                      (1.0 + r2);
        return (m - ch.at(i, j)[2].value()).norm();
      }));
  add("x2.matrix", "X2 entrywise", sup_over(chart, [&](int i, int j) {
        auto [z, zb, r2] = node(i, j);
        const Mat m = kI / std::pow(1.0 + r2, 2) *
                      rows_matrix({{-(1.0 - 2.0 * r2 * r2 + 2.0 * r2) / 3.0, -s2 * r2 * zb, zb * zb},
                                      {-s2 * r2 * z, -(1.0 + r2 * r2 - 4.0 * r2) / 3.0, -s2 * zb},
                                      {z * z, -s2 * z, -(-2.0 + r2 * r2 + 2.0 * r2) / 3.0}});
        return (m - x_from_chain(ch.at(i, j), 2, 3).value()).norm();
      }));

  // Algebraic identities.
  for (const auto& id : veronese_identities(model, chart)) add("identity", id.identity, id.residual);

  // Induced metrics.
  auto metric = [&](int k, double c) {
    return sup_over(chart, [&](int i, int j) {
      const MatJet X = x_from_chain(ch.at(i, j), k, 3);
      const double r2 = chart.x(i) * chart.x(i) + chart.y(j) * chart.y(j);
      const double E = inner(X(1, 0), X(1, 0)), G = inner(X(0, 1), X(0, 1)), F = inner(X(1, 0), X(0, 1));
      return std::abs(E - c / std::pow(1.0 + r2, 2)) + std::abs(G - E) + std::abs(F);
    });
  };
  add("x0.metric", "X0 induces 4(1+x^2+y^2)^-2 (dx^2 + dy^2)", metric(0, 4.0), "induced metric is 2(1+|xi|^2)^-2 (dx^2+dy^2)");
  add("x0.metric.conformal", "X0 is conformal with E = 2(1+|xi|^2)^-2", metric(0, 2.0));
  add("x1.metric", "X1 metric is the sphere metric 4(1+x^2+y^2)^-2 (dx^2 + dy^2)", metric(1, 4.0));

  // Field equations and potentials.
  const Chart& c = chart;
  double el = 0.0;
  for (int k = 0; k < 3; ++k) el = std::max(el, el_residual(model.theta_field(k), c, 0).sup);
  add("theta.el", "[(d_x^2 + d_y^2) theta_k, theta_k] = 0 for k = 0, 1, 2", el);
  const cd lam = kI * 0.5;
  const SolutionField th0 = model.theta_field(0);
  const LaxPair integ = lax_potentials_cpn(3, CPPotential::integrable);
  const LaxPair sd = lax_potentials_cpn(3, CPPotential::sum_difference);
  add("lax.sum_difference.zcc", "-(1+i l)/(1-l^2)[(D_x+D_y)th,th], (1+i l)/(1-l^2)[(D_x-D_y)th,th] satisfy the ZCC on theta_0",
      zcc_residual(sd, th0, lam, c, 0).sup, "fails; the integrable pair is the default");
  double z = 0.0;
  for (int k = 0; k < 3; ++k) z = std::max(z, zcc_residual(integ, model.theta_field(k), lam, c, 0).sup);
  add("lax.integrable.zcc", "integrable potentials satisfy the ZCC on theta_0, theta_1, theta_2", z);
  add("lax.su", "potentials are su(3)-valued for lambda = i/2", std::max(potential_membership(integ, th0, lam, c), potential_membership(sd, th0, lam, c)));

  // Wavefunctions.
  double lsp = 0.0, unit = 0.0, det = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Wavefunction phi = phi_k_closed_form(model.theta_field(k), 3, lam, k);
    lsp = std::max(lsp, lsp_residual(phi, integ, model.theta_field(k), c));
    const NodeValues<Mat> v = phi.sample(c);
    for (const Mat& m : v.data) {
      unit = std::max(unit, (m.adjoint() * m - I).norm());
      det = std::max(det, std::abs(m.determinant() - 1.0));
    }
  }
  add("phi_k.lsp", "Phi_k solves the linear spectral problem on theta_k (k = 0, 1, 2)", lsp);
  add("phi_k.unitary", "Phi_k is unitary for lambda = i t", unit);
  add("phi_k.special", "det Phi_k = 1 (Phi_k in SU(N))", det, "fails; det Phi_0 = -(1+l)/(1-l), Phi_k is U(N)-valued");
  {
    const double x = 0.3, y = -0.2;
    auto dev = [&](double t) { return (phi_k_closed_form(th0, 3, kI * t, 0).value(x, y) - I).norm(); };
    add("phi_k.asymptotic", "|Phi_0(i t) - Id| = O(1/t): ratio at t = 10, 100 is 10", std::abs(dev(10.0) / dev(100.0) / 10.0 - 1.0),
        "", 0.2);
  }

  // CP^1 wavefunction formulas.
  {
    const CPModel m1 = CPModel::cp1();
    const SolutionField t1 = m1.theta_field(0);
    const LaxPair cp1 = lax_potentials_cpn(2, CPPotential::cp1);
    const Mat I2 = identity(2);
    auto formula = [&](int which) {
      auto fn = [t1, lam, which, I2](double x, double y, int order) {
        const MatJet th = t1.jet(x, y, order);
        const cd l = lam;
        if (which == 0) {
          const cd a = 4.0 * l / ((1.0 - l) * (1.0 - l)) - 2.0 / (1.0 - l);
          return jet_constant(I2, order) + a * ((-kI) * th + I2 * 0.5);
        }
        return jet_constant(I2 * (l * (l + 1.0) / ((l - 1.0) * (l - 1.0))), order) +
               (-kI * (6.0 * l - 2.0) / ((1.0 - l) * (1.0 - l))) * th;
      };
      return Wavefunction::closed_form("cp1-formula", fn, Group::U, 2, lam);
    };
    add("cp1.phi.first", "Id + (4l/(1-l)^2 - 2/(1-l))(-i theta + Id/2) solves the CP^1 problem",
        lsp_residual(formula(0), cp1, t1, c));
    add("cp1.phi.second", "l(l+1)/(l-1)^2 Id - i(6l-2)/(1-l)^2 theta solves the CP^1 problem",
        lsp_residual(formula(1), cp1, t1, c));
    add("cp1.phi.replacement", "Id - 2P/(1+l) solves the CP^1 problem (replacement formula)",
        lsp_residual(phi_cp1(t1, lam), cp1, t1, c));
    add("cp1.zcc", "CP^1 potentials satisfy the ZCC", zcc_residual(cp1, t1, lam, c, 0).sup);
  }

  // Weierstrass integrands.
  {
    FormContext ctx{&th0, 0.0};
    add("weierstrass.unrotated.closed", "-[th_x,th]dx + [th_y,th]dy is d-closed on theta_0",
        closedness_residual(weierstrass_integrand(3, WeierstrassForm::unrotated), ClosedOp::d, nullptr, ctx, c, 0).sup,
        "fails; the rotated integrand -[th_y,th]dx + [th_x,th]dy is used");
    add("weierstrass.rotated.closed", "-[th_y,th]dx + [th_x,th]dy is d-closed on theta_0",
        closedness_residual(weierstrass_integrand(3, WeierstrassForm::rotated), ClosedOp::d, nullptr, ctx, c, 0).sup);
  }

  // Ladder pairing.
  add("ladder.pairing", "lower(P_k) = P_{k-1}, raise(P_k) = P_{k+1} with d = d/dxi", sup_over(c, [&](int i, int j) {
        const auto& P = ch.at(i, j);
        return std::max({(ladder_lower(P[1]).value() - P[0].value()).norm(), (ladder_raise(P[0]).value() - P[1].value()).norm(),
                         (ladder_lower(P[2]).value() - P[1].value()).norm(), (ladder_raise(P[1]).value() - P[2].value()).norm()});
      }), "pairing fixed empirically; d = (d_x + i d_y)/2 gives the opposite pairing");
  return out;
}

}  // namespace isl
