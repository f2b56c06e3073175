#include "isl/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "isl/cpn.hpp"
#include "isl/immersion.hpp"
#include "isl/models.hpp"
#include "isl/parallel.hpp"
#include "json.hpp"

namespace isl {

using ojson = nlohmann::ordered_json;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::config:
    case ErrorKind::usage:
      return 2;
    default:
      return 1;
  }
}

bool SuiteResult::pass() const {
  return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass(); });
}

namespace {

std::string fmt_g(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

ojson complex_json(cd z) { return ojson::array({z.real(), z.imag()}); }

NodeValues<Mat> sample_surface(const ImmersionSurface& s, const Chart& chart) {
  NodeValues<Mat> v(chart, Mat());
  parallel_for(chart.ny, [&](int j) {
    for (int i = 0; i < chart.nx; ++i) v.at(i, j) = s.value(chart.x(i), chart.y(j));
  });
  return v;
}

// Surfaces outside the model algebra are brought back to it for export: trace part dropped,
// Hermitian surfaces multiplied by i.
NodeValues<Mat> export_values(NodeValues<Mat> v, Algebra alg, std::vector<std::string>& notes) {
  if (alg == Algebra::su || alg == Algebra::sl2r) return v;
  double herm = 0.0, anti = 0.0, tr = 0.0;
  for (const Mat& m : v.data) {
    herm = std::max(herm, (m - m.adjoint()).norm());
    anti = std::max(anti, (m + m.adjoint()).norm());
    tr = std::max(tr, std::abs(m.trace()));
  }
  const bool hermitian = herm < anti;
  for (Mat& m : v.data) {
    const int n = static_cast<int>(m.rows());
    m -= identity(n) * (m.trace() / static_cast<double>(n));
    if (hermitian) m *= kI;
  }
  if (tr > 1e-12) notes.push_back("trace part dropped for export (sup |tr F| = " + fmt_g(tr, 3) + ")");
  if (hermitian) notes.push_back("surface is Hermitian; exported coordinates are those of i F");
  return v;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

double sup_nodes(const Chart& c, const std::function<double(int, int)>& f) { return sweep(c, f, 0).sup; }

Chart square(double a, int n) {
  Chart c;
  c.x_min = c.y_min = -a;
  c.x_max = c.y_max = a;
  c.nx = c.ny = n;
  return c;
}

WaveFamily choose_family(const SampleModel& m, const Config& cfg) {
  if (cfg.wavefunction == "integrated") return m.integrated({});
  if (!m.closed)
    fail(ErrorKind::config, "no closed-form wavefunction is known for model '" + m.id +
                                "' with these potentials; set wavefunction = integrated");
  return m.closed;
}

// ---- check suites ------------------------------------------------------------

void item(SuiteResult& r, std::string name, double v, double thr, bool lower = false, std::string note = {}) {
  r.items.push_back({std::move(name), v, thr, lower, std::move(note)});
}

SuiteResult suite_cohomology() {
  SuiteResult r{"cohomology", {}, 0.0};
  const CPModel ver = CPModel::veronese();
  const SolutionField u = ver.theta_field(0);
  const LaxPair lax = lax_potentials_cpn(3);
  const GForm omega = lax.omega();
  const FormContext ctx{&u, kI * 0.5};
  const Chart c = square(0.8, 9);
  std::mt19937_64 rng(20240611);
  std::vector<GForm> forms;
  for (int k = 0; k < 20; ++k) forms.push_back(random_form(rng, k < 12 ? 0 : 1, 3));

  double d2 = 0.0, d2w = 0.0;
  for (const auto& f : forms) {
    d2 = std::max(d2, closedness_residual(exterior_d(f), ClosedOp::d, nullptr, ctx, c).sup);
    d2w = std::max(d2w, closedness_residual(covariant_d(f, omega, 1.0), ClosedOp::d_2omega, &omega, ctx, c).sup);
  }
  double leib = 0.0;
  auto leibniz = [&](const GForm& a, const GForm& b) {
    const double sign = a.degree() % 2 == 0 ? 1.0 : -1.0;
    const GForm diff = exterior_d(wedge_bracket(a, b)) - (wedge_bracket(exterior_d(a), b) +
                                                          wedge_bracket(a, exterior_d(b)).scaled(sign));
    return sup_nodes(c, [&](int i, int j) { return diff.norm(c.x(i), c.y(j), ctx); });
  };
  for (int k = 0; k < 6; ++k) leib = std::max(leib, leibniz(forms[static_cast<size_t>(k)], forms[static_cast<size_t>(k + 6)]));
  for (int k = 0; k < 4; ++k) {
    leib = std::max(leib, leibniz(forms[static_cast<size_t>(k)], forms[static_cast<size_t>(12 + k)]));
    leib = std::max(leib, leibniz(forms[static_cast<size_t>(12 + k)], forms[static_cast<size_t>(k)]));
  }
  item(r, "d^2 = 0 on 20 random forms", d2, 1e-10);
  item(r, "graded Leibniz rule for the bracket wedge", leib, 1e-9);
  item(r, "d_{2 omega}^2 = 0 on-shell", d2w, 1e-8);

  const GForm w = weierstrass_integrand(3, WeierstrassForm::rotated);
  item(r, "Weierstrass integrand d-closed on-shell", closedness_residual(w, ClosedOp::d, nullptr, ctx, c).sup, 1e-8);
  const SolutionField off = perturbed(u, 0.1);
  const FormContext ctx_off{&off, ctx.lambda};
  item(r, "Weierstrass integrand not closed off-shell", closedness_residual(w, ClosedOp::d, nullptr, ctx_off, c).sup,
       1e-4, true);
  return r;
}

SuiteResult suite_laxpair() {
  SuiteResult r{"laxpair", {}, 0.0};
  const CPModel ver = CPModel::veronese();
  const LaxPair lax = lax_potentials_cpn(3);
  const Chart c = square(1.0, 24);
  double z = 0.0;
  for (int k = 0; k < 3; ++k)
    for (double t : {0.25, 0.5, 2.0}) z = std::max(z, zcc_residual(lax, ver.theta_field(k), lax.domain().at(t), c).sup);
  item(r, "ZCC on theta_0, theta_1, theta_2 at t = 0.25, 0.5, 2", z, 1e-8);
  const SolutionField th0 = ver.theta_field(0);
  const cd lam = lax.domain().at(0.5);
  item(r, "ZCC detects an off-shell perturbation", zcc_residual(lax, perturbed(th0, 0.1), lam, c).sup, 1e-3, true);
  item(r, "potentials are su(3)-valued", potential_membership(lax, th0, lam, c), 1e-10);

  const Chart g = square(1.0, 64);
  const Wavefunction closed = phi_k_closed_form(th0, 3, lam, 0);
  const int i0 = g.nx / 2, j0 = g.ny / 2;
  const Wavefunction integ = integrate_wavefunction(lax, th0, lam, i0, j0, closed.value(g.x(i0), g.y(j0)), g);
  item(r, "integrated Phi matches the closed form",
       sup_nodes(g, [&](int i, int j) { return (integ.value(g.x(i), g.y(j)) - closed.value(g.x(i), g.y(j))).norm(); }),
       1e-6);
  item(r, "integrated Phi is path independent", integ.path_residual, 1e-6);
  item(r, "closed-form Phi is unitary", closed.membership(g), 1e-10);

  // d/dlambda of the sum_difference prefactor -(1 + i l)/(1 - l^2) against its derivative.
  const auto pref = [](cd l) { return -(1.0 + kI * l) / (1.0 - l * l); };
  const cd exact = -(kI * (1.0 - lam * lam) + (1.0 + kI * lam) * 2.0 * lam) / ((1.0 - lam * lam) * (1.0 - lam * lam));
  item(r, "lambda derivative of the potential prefactor", std::abs(lambda_derivative(pref, lax.domain(), lam) - exact),
       1e-8);
  return r;
}

SuiteResult suite_immersion() {
  SuiteResult r{"immersion", {}, 0.0};
  const SampleModel m = build_model(ModelSpec{});
  const cd lam = m.lambda_at(0.5);
  const Wavefunction phi = m.closed(m.field, lam);
  const Chart& c = m.chart;
  std::mt19937_64 rng(7);

  const ImmersionResult st = st_surface(m.closed, m.lax, m.field, lam, [](cd) { return kI; }, c);
  item(r, "ST immersion (beta = i)", verify_immersion(st.surface, st.form, phi, m.field, c).sup, 1e-5);
  const GForm S = polynomial_zero_form(random_poly_terms(rng, 8), Algebra::su, 3);
  const ImmersionResult cdr = cd_surface(phi, S, m.lax, m.field);
  item(r, "CD immersion (random polynomial S)", verify_immersion(cdr.surface, cdr.form, phi, m.field, c).sup, 1e-5);
  const Characteristic R = builtin_characteristic("conformal", {1.0}, {}, m);
  const ImmersionResult fg = fg_surface(m.closed, m.lax, R, m.field, lam, c);
  item(r, "FG immersion (conformal R, f = 1, g = 0)", verify_immersion(fg.surface, fg.form, phi, m.field, c).sup, 1e-5);
  item(r, "FG surface equals Phi^-1 U_x Phi", sup_nodes(c, [&](int i, int j) {
         const double x = c.x(i), y = c.y(j);
         const Mat p = phi.value(x, y);
         return (fg.surface.value(x, y) - p.inverse() * m.lax.values(x, y, m.field, lam)[0] * p).norm();
       }),
       1e-5);

  // Modified FG on the scalar model.
  ModelSpec ps;
  ps.id = "potential1d";
  const SampleModel pm = build_model(ps);
  const cd pl = pm.lambda_at(pm.p1d->lambda);
  const WaveFamily fam = pm.integrated({});
  const Wavefunction pphi = fam(pm.field, pl);
  const Characteristic q2 = builtin_characteristic("q2", {}, {}, pm);
  const ImmersionResult fg2 = fg_surface(fam, pm.lax, q2, pm.field, pl, pm.chart);
  const ImmersionResult mfg2 = modfg_surface(fam, pm.lax, q2, pm.field, pl, pm.chart);
  const double r_fg = verify_immersion(fg2.surface, fg2.form, pphi, pm.field, pm.chart).sup;
  const double r_mfg = verify_immersion(mfg2.surface, mfg2.form, pphi, pm.field, pm.chart).sup;
  item(r, "modified FG residual with Q2", r_mfg, 1e-4);
  item(r, "uncorrected FG / modified FG residual with Q2", r_fg / std::max(r_mfg, 1e-300), 10.0, true);
  const ImmersionResult mfg1 = modfg_surface(fam, pm.lax, builtin_characteristic("q1", {}, {}, pm), pm.field, pl, pm.chart);
  item(r, "defect term with Q1", mfg1.correction_sup, 1e-6);

  // Potential recovery round trips.
  const FormContext ctx{&m.field, lam};
  const RecoveredS rst = recover_potential_S(st.form, phi, m.lax, m.field, m.i0, m.j0, c);
  item(r, "recovered S for Upsilon^ST", rst.residual, 1e-7);
  const GForm S0 = polynomial_zero_form(random_poly_terms(rng, 8), Algebra::su, 3);
  const DeformationForm ups{"CD", covariant_d(S0, m.lax.omega(), 1.0), {}};
  const RecoveredS rs = recover_potential_S(ups, phi, m.lax, m.field, m.i0, m.j0, c);
  item(r, "recovered S for d_{2 omega} S0", rs.residual, 1e-7);
  const NodeValues<Mat> a = sample_zero_form(rs.S, ctx, c), b = sample_zero_form(S0, ctx, c);
  NodeValues<Mat> C(c, Mat());
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const Mat p = phi.value(c.x(i), c.y(j));
      C.at(i, j) = p.inverse() * (a.at(i, j) - b.at(i, j)) * p;
    }
  item(r, "S_rec - S0 = Phi C Phi^-1 with C constant",
       sup_nodes(c, [&](int i, int j) { return (C.at(i, j) - C.at(m.i0, m.j0)).norm(); }), 1e-6);
  return r;
}

SuiteResult suite_cpn() {
  SuiteResult r{"cpn", {}, 0.0};
  const CPModel ver = CPModel::veronese();
  const Chart c = square(std::sqrt(2.0), 10);
  for (const auto& id : veronese_identities(ver, c)) item(r, id.identity, id.residual, 1e-12);
  double proj = 0.0, sum = 0.0;
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const auto P = ver.chain(c.x(i), c.y(j), 0);
      Mat s = zeros(3, 3);
      for (const auto& p : P) {
        proj = std::max(proj, projector_defect(p.value()));
        s += p.value();
      }
      sum = std::max(sum, (s - identity(3)).norm());
    }
  item(r, "chain members are rank-one Hermitian projectors", proj, 1e-12);
  item(r, "chain completes to the identity", sum, 1e-12);
  double el = 0.0;
  for (int k = 0; k < 3; ++k) el = std::max(el, el_residual(ver.theta_field(k), c).sup);
  item(r, "Euler-Lagrange equation for theta_0, theta_1, theta_2", el, 1e-8);
  const auto claims = claim_registry_check(ver, c);
  item(r, "claim registry entries", static_cast<double>(claims.size()), 1.0, true);
  for (const auto& cl : claims)
    if (cl.id == "x0.sphere" || cl.id == "x1.x3_x4" || cl.id == "x1.x6" || cl.id == "x1.x8")
      item(r, "claim " + cl.id + ": " + cl.statement, cl.residual, 1e-8);
  return r;
}

SuiteResult suite_geom(const Config& cfg) {
  SuiteResult r{"geom", {}, 0.0};
  const CPModel ver = CPModel::veronese();
  for (int k = 0; k < 2; ++k) {
    const InvariantReport rep = invariant_report(two_chart_X(ver, k), claimed_invariants(k), cfg.quadrature);
    const std::string s = "X" + std::to_string(k);
    item(r, s + " Gauss-Bonnet |chi - 2|", std::abs(rep.chi - 2.0), 0.01);
    item(r, s + " std/mean of K", rep.K.rel(), 1e-3);
    item(r, s + " std/mean of |H|^2", rep.H2.rel(), 1e-3);
    item(r, s + " conformality defect", rep.conformality_defect, 1e-8);
    const double q = rep.Q.value_or(std::nan(""));
    item(r, s + " degree |Q - " + std::to_string(k == 0 ? 2 : 0) + "|", std::abs(q - (k == 0 ? 2.0 : 0.0)), 0.05);
  }
  return r;
}

void print_suite(std::ostream& out, const SuiteResult& s) {
  out << "== " << s.suite << "\n";
  for (const auto& it : s.items) {
    out << (it.pass() ? "  PASS  " : "  FAIL  ") << it.name << ": " << fmt_g(it.value, 4) << (it.lower_bound ? " >= " : " <= ")
        << fmt_g(it.threshold, 3);
    if (!it.note.empty()) out << "  (" << it.note << ")";
    out << "\n";
  }
  out << "   " << (s.pass() ? "ok" : "FAILED") << " in " << std::fixed << std::setprecision(2) << s.seconds << " s\n"
      << std::defaultfloat;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"cohomology", "laxpair", "immersion", "cpn", "geom"};
  return names;
}

SuiteResult run_suite(const std::string& suite, const Config& cfg) {
  const Timer t;
  SuiteResult r;
  if (suite == "cohomology") r = suite_cohomology();
  else if (suite == "laxpair") r = suite_laxpair();
  else if (suite == "immersion") r = suite_immersion();
  else if (suite == "cpn") r = suite_cpn();
  else if (suite == "geom") r = suite_geom(cfg);
  else fail(ErrorKind::usage, "unknown suite '" + suite + "' (cohomology, laxpair, immersion, cpn, geom, all)");
  r.seconds = t.seconds();
  return r;
}

int cmd_check(const std::string& suite, const Config& cfg, std::ostream& out) {
  const Timer t;
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) names = {suite};
  else fail(ErrorKind::usage, "unknown suite '" + suite + "' (cohomology, laxpair, immersion, cpn, geom, all)");
  bool ok = true;
  for (const auto& n : names) {
    const SuiteResult s = run_suite(n, cfg);
    print_suite(out, s);
    ok = ok && s.pass();
  }
  out << (ok ? "all checks passed" : "checks FAILED") << " (" << std::fixed << std::setprecision(2) << t.seconds()
      << " s)\n"
      << std::defaultfloat;
  return ok ? 0 : 1;
}

// ---- zcc -----------------------------------------------------------------------

int cmd_zcc(const Config& cfg, std::ostream& out) {
  const SampleModel m = build_model(cfg.model, cfg.chart);
  bool ok = true;
  out << "model " << m.id << ", potentials " << m.lax.name() << ", chart " << m.chart.nx << "x" << m.chart.ny << "\n";
  for (double t : cfg.lambda) {
    const cd lam = m.lambda_at(t);
    const GridReport rep = zcc_residual(m.lax, m.field, lam, m.chart);
    const bool pass = rep.sup <= cfg.tol.zcc;
    ok = ok && pass;
    out << "t = " << fmt_g(t, 6) << "  lambda = (" << fmt_g(lam.real(), 6) << ", " << fmt_g(lam.imag(), 6)
        << ")  sup residual = " << fmt_g(rep.sup, 4) << "  at node (" << rep.sup_i << ", " << rep.sup_j << ")  "
        << (pass ? "ok" : "FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

// ---- mesh export ----------------------------------------------------------------

MeshExport mesh_export(const NodeValues<Mat>& values, const OrthonormalBasis& basis, const std::vector<int>& axes) {
  const Chart& c = values.chart;
  MeshExport m;
  m.dim = basis.size();
  for (int a : axes)
    if (a < 1 || a > m.dim) fail(ErrorKind::config, "projection axis " + std::to_string(a) + " outside 1.." + std::to_string(m.dim));
  m.vertices.reserve(static_cast<size_t>(c.size()));
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const RVec x = coordinates(values.at(i, j), basis);
      m.vertices.push_back({x(axes[0] - 1), x(axes[1] - 1), x(axes[2] - 1)});
      std::vector<double> row = {c.x(i), c.y(j)};
      for (int k = 0; k < m.dim; ++k) row.push_back(x(k));
      m.table.push_back(std::move(row));
    }
  for (int j = 0; j + 1 < c.ny; ++j)
    for (int i = 0; i + 1 < c.nx; ++i) {
      const int a = c.index(i, j), b = c.index(i + 1, j), d = c.index(i + 1, j + 1), e = c.index(i, j + 1);
      m.faces.push_back({a, b, d});
      m.faces.push_back({a, d, e});
    }
  return m;
}

void write_obj(std::ostream& out, const MeshExport& m) {
  for (const auto& v : m.vertices) out << "v " << fmt_g(v[0]) << " " << fmt_g(v[1]) << " " << fmt_g(v[2]) << "\n";
  for (const auto& f : m.faces) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

void write_csv(std::ostream& out, const MeshExport& m) {
  out << "x,y";
  for (int k = 1; k <= m.dim; ++k) out << ",x_" << k;
  out << "\n";
  for (const auto& row : m.table) {
    for (size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << fmt_g(row[k], 17);
    out << "\n";
  }
}

// ---- immerse ----------------------------------------------------------------------

namespace {

struct ImmerseOutcome {
  ImmersionSurface surface;
  ojson residuals = ojson::object();
  bool pass = true;
  bool degenerate = false;
  std::vector<std::string> notes;
};

ImmerseOutcome immerse_one(const SampleModel& m, const Config& cfg, cd lam) {
  ImmerseOutcome o;
  const Chart& c = m.chart;
  const int N = m.lax.dim();
  if (cfg.formula == "weierstrass") {
    if (!m.cp) fail(ErrorKind::config, "the Weierstrass formula needs a CP^{N-1} model");
    const int i0 = cfg.i0.value_or(m.i0), j0 = cfg.j0.value_or(m.j0);
    const WeierstrassResult w = weierstrass_surface(m.field, N, i0, j0, c);
    o.surface = w.surface;
    o.residuals["path_independence"] = w.potential.residual;
    o.residuals["closedness"] = w.potential.closedness;
    o.pass = w.potential.residual <= cfg.tol.path;
    return o;
  }
  const WaveFamily family = choose_family(m, cfg);
  const Wavefunction phi = family(m.field, lam);
  o.residuals["wavefunction_membership"] = phi.membership(c);
  if (phi.provenance() == WaveProvenance::integrated) o.residuals["wavefunction_path_independence"] = phi.path_residual;
  ImmersionResult res;
  if (cfg.formula == "st") {
    const cd b = parse_beta(cfg.beta);
    res = st_surface(family, m.lax, m.field, lam, [b](cd) { return b; }, c);
  } else if (cfg.formula == "cd") {
    const GForm S = polynomial_zero_form(cfg.S, m.lax.algebra(), N);
    res = cd_surface(phi, S, m.lax, m.field);
    if (cfg.S.empty() || std::all_of(cfg.S.begin(), cfg.S.end(), [](const PolyTerm& t) { return t.coeff == 0.0; })) {
      o.degenerate = true;
      o.notes.push_back("S = 0: the surface is identically zero");
    }
  } else {
    const Characteristic R = builtin_characteristic(cfg.R.id, cfg.R.f, cfg.R.g, m);
    res = cfg.formula == "fg" ? fg_surface(family, m.lax, R, m.field, lam, c)
                              : modfg_surface(family, m.lax, R, m.field, lam, c);
    if (cfg.formula == "modfg") o.residuals["correction_sup"] = res.correction_sup;
  }
  const double v = verify_immersion(res.surface, res.form, phi, m.field, c).sup;
  o.residuals["immersion"] = v;
  o.pass = v <= cfg.tol.immersion;
  o.surface = res.surface;
  o.surface.residual = v;
  for (const auto& n : res.form.notes) o.notes.push_back(n);
  return o;
}

ojson config_summary(const Config& cfg) {
  ojson j;
  j["model"] = cfg.model.id;
  j["k"] = cfg.model.k;
  j["potential"] = cfg.model.potential;
  j["perturb"] = cfg.model.perturb;
  j["formula"] = cfg.formula;
  j["beta"] = cfg.beta;
  j["wavefunction"] = cfg.wavefunction;
  j["R"] = {{"id", cfg.R.id}, {"f", cfg.R.f}, {"g", cfg.R.g}};
  ojson s = ojson::array();
  for (const auto& t : cfg.S) s.push_back({{"basis", t.basis}, {"px", t.px}, {"py", t.py}, {"coeff", t.coeff}});
  j["S"] = s;
  return j;
}

}  // namespace

int cmd_immerse(const Config& cfg, std::ostream& out) {
  // Meshes default to 128 x 128 nodes on the model's domain.
  Chart mesh_chart = default_chart(cfg.model.id);
  mesh_chart.nx = mesh_chart.ny = 128;
  const SampleModel m = build_model(cfg.model, cfg.chart ? *cfg.chart : mesh_chart);
  const Chart& c = m.chart;
  const OrthonormalBasis basis = model_basis(m.lax.algebra(), m.lax.dim());
  std::vector<int> axes = cfg.output.obj_axes;
  std::vector<std::string> global_notes;
  if (std::any_of(axes.begin(), axes.end(), [&](int a) { return a > basis.size(); })) {
    axes = {1, 2, 3};
    global_notes.push_back("projection axes exceed the algebra dimension; using 1, 2, 3");
  }
  std::filesystem::create_directories(cfg.output.dir);
  bool ok = true;
  for (size_t k = 0; k < cfg.lambda.size(); ++k) {
    const double t = cfg.lambda[k];
    const cd lam = m.lambda_at(t);
    ImmerseOutcome o = immerse_one(m, cfg, lam);
    ok = ok && o.pass;
    std::vector<std::string> notes = global_notes;
    for (const auto& n : o.surface.notes) notes.push_back(n);
    for (const auto& n : o.notes) notes.push_back(n);
    const NodeValues<Mat> vals = export_values(sample_surface(o.surface, c), o.surface.algebra, notes);
    const MeshExport mesh = mesh_export(vals, basis, axes);
    const std::string stem = cfg.output.prefix + (cfg.lambda.size() > 1 ? "_" + std::to_string(k) : "");
    const std::filesystem::path dir(cfg.output.dir);
    ojson files = ojson::object();
    if (cfg.output.obj) {
      std::ofstream f(dir / (stem + ".obj"));
      write_obj(f, mesh);
      files["obj"] = stem + ".obj";
    }
    if (cfg.output.csv) {
      std::ofstream f(dir / (stem + ".csv"));
      write_csv(f, mesh);
      files["csv"] = stem + ".csv";
    }
    ojson meta;
    meta["command"] = "immerse";
    meta["config"] = config_summary(cfg);
    meta["t"] = t;
    meta["lambda"] = complex_json(lam);
    meta["provenance"] = o.surface.provenance;
    meta["algebra"] = to_string(o.surface.algebra);
    meta["chart"] = {{"x_min", c.x_min}, {"x_max", c.x_max}, {"y_min", c.y_min}, {"y_max", c.y_max}, {"nx", c.nx}, {"ny", c.ny}};
    meta["vertices"] = mesh.vertices.size();
    meta["faces"] = mesh.faces.size();
    meta["obj_axes"] = axes;
    meta["residuals"] = o.residuals;
    meta["tolerances"] = {{"zcc", cfg.tol.zcc}, {"immersion", cfg.tol.immersion}, {"closed", cfg.tol.closed},
                          {"path", cfg.tol.path}, {"recover", cfg.tol.recover}};
    meta["degenerate"] = o.degenerate;
    meta["pass"] = o.pass;
    meta["notes"] = notes;
    meta["files"] = files;
    if (cfg.output.json) {
      std::ofstream f(dir / (stem + ".json"));
      f << meta.dump(2) << "\n";
    }
    out << stem << ": " << o.surface.provenance << " surface, " << mesh.vertices.size() << " vertices";
    for (auto it = o.residuals.begin(); it != o.residuals.end(); ++it) out << ", " << it.key() << " " << fmt_g(it.value().get<double>(), 4);
    if (o.degenerate) out << ", degenerate";
    out << (o.pass ? "  ok" : "  FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

// ---- invariants --------------------------------------------------------------------

int cmd_invariants(const Config& cfg, std::ostream& out) {
  const SampleModel m = build_model(cfg.model, cfg.chart);
  if (!m.cp) fail(ErrorKind::config, "invariants are computed for CP^{N-1} models");
  const int k = m.level;
  const InvariantReport rep = invariant_report(two_chart_X(*m.cp, k), claimed_invariants(k), cfg.quadrature);
  ojson j;
  j["command"] = "invariants";
  j["surface"] = rep.surface;
  j["model"] = m.id;
  j["k"] = k;
  j["quadrature"] = {{"nr", cfg.quadrature.nr}, {"nphi", cfg.quadrature.nphi}};
  j["K"] = {{"mean", rep.K.mean}, {"std", rep.K.std}, {"rel", rep.K.rel()}};
  j["|H|^2"] = {{"mean", rep.H2.mean}, {"std", rep.H2.std}, {"rel", rep.H2.rel()}};
  j["conformality_defect"] = rep.conformality_defect;
  j["normal_leakage"] = rep.leakage;
  j["degenerate_points"] = rep.degenerate_points;
  j["chi"] = rep.chi;
  j["area"] = rep.area;
  j["W"] = rep.W;
  j["Q"] = rep.Q ? ojson(*rep.Q) : ojson(nullptr);
  j["c_fs"] = rep.c_fs;

  ojson checks = ojson::array();
  bool ok = true;
  auto check = [&](const std::string& name, double v, double tol) {
    const bool p = std::isfinite(v) && v <= tol;
    ok = ok && p;
    checks.push_back({{"check", name}, {"value", v}, {"tol", tol}, {"pass", p}});
  };
  check("|chi - 2|", std::abs(rep.chi - 2.0), 0.01);
  check("std/mean K", rep.K.rel(), 1e-3);
  check("std/mean |H|^2", rep.H2.rel(), 1e-3);
  check("conformality defect", rep.conformality_defect, 1e-8);
  if (rep.Q) check("|Q - round(Q)|", std::abs(*rep.Q - std::round(*rep.Q)), 0.05);
  j["checks"] = checks;

  ojson cmp = ojson::array();
  for (const auto& c : rep.comparisons)
    cmp.push_back({{"quantity", c.quantity}, {"computed", c.computed}, {"stated", c.claimed}, {"rel_dev", c.rel_dev},
                   {"agrees", c.agrees}, {"note", c.note}});
  j["stated_values"] = cmp;
  j["notes"] = rep.notes;

  if (m.cp->N() == 3) {
    const auto claims = claim_registry_check(*m.cp, square(std::sqrt(2.0), 10));
    ojson reg = ojson::array();
    for (const auto& c : claims)
      reg.push_back({{"id", c.id}, {"statement", c.statement}, {"residual", c.residual}, {"tol", c.tol},
                     {"status", c.verified() ? "verified" : "failed"}, {"note", c.note}});
    j["claim_registry"] = reg;
  }
  out << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace isl
