#include <gtest/gtest.h>

#include <random>

#include "isl/cpn.hpp"
#include "isl/forms.hpp"
#include "isl/models.hpp"

using namespace isl;

namespace {

const OrthonormalBasis& su3() {
  static const OrthonormalBasis b = basis_su(3);
  return b;
}

// p(x, y) * M as a coefficient.
Coefficient poly_coeff(std::function<Jet(const Jet&, const Jet&)> p, Mat m) {
  return [p, m](double x, double y, int order, const FormContext&) {
    return p(jet_x(x, order), jet_y(y, order)) * jet_constant(m, order);
  };
}

Chart small_chart(int n = 9) {
  Chart c;
  c.x_min = c.y_min = -0.7;
  c.x_max = c.y_max = 0.8;
  c.nx = c.ny = n;
  return c;
}

double sup_norm(const GForm& f, const FormContext& ctx, const Chart& c) {
  return sweep(c, [&](int i, int j) { return f.norm(c.x(i), c.y(j), ctx); }, 0).sup;
}

}  // namespace

TEST(Forms, ExteriorDerivativeOfAZeroForm) {
  // f = x^2 y S_1 -> df = 2xy S_1 dx + x^2 S_1 dy
  const GForm f = GForm::zero_form(Algebra::su, 3, poly_coeff([](const Jet& x, const Jet& y) { return x * x * y; }, su3()[0]));
  const GForm df = exterior_d(f);
  ASSERT_EQ(df.degree(), 1);
  const auto v = df.values(0.5, -0.4, {});
  EXPECT_LT((v[0] - 2 * 0.5 * -0.4 * su3()[0]).norm(), 1e-15);
  EXPECT_LT((v[1] - 0.25 * su3()[0]).norm(), 1e-15);
  const GForm fd = exterior_d(f, DerivativeMode::finite_difference);
  EXPECT_LT((fd.values(0.5, -0.4, {})[0] - v[0]).norm(), 1e-7);
}

TEST(Forms, ExteriorDerivativeOfAOneForm) {
  // v = y^2 S_1 dx + x S_2 dy -> dv = (S_2 - 2y S_1) dx^dy
  const GForm v = GForm::one_form(Algebra::su, 3, poly_coeff([](const Jet&, const Jet& y) { return y * y; }, su3()[0]),
                                  poly_coeff([](const Jet& x, const Jet&) { return x; }, su3()[1]));
  const GForm dv = exterior_d(v);
  ASSERT_EQ(dv.degree(), 2);
  EXPECT_LT((dv.values(0.1, 0.3, {})[0] - (su3()[1] - 0.6 * su3()[0])).norm(), 1e-15);
  EXPECT_EQ(exterior_d(dv).degree(), 3);
  EXPECT_EQ(exterior_d(dv).components(), 0);
}

TEST(Forms, WedgeBracketOfOneForms) {
  const Mat A = su3()[0], B = su3()[1], C = su3()[3], D = su3()[6];
  const auto one = [](const Jet& x, const Jet&) { return jet_constant(cd(1.0), x.order()); };
  const GForm a = GForm::one_form(Algebra::su, 3, poly_coeff(one, A), poly_coeff(one, B));
  const GForm b = GForm::one_form(Algebra::su, 3, poly_coeff(one, C), poly_coeff(one, D));
  const Mat expect = commutator(A, D) - commutator(B, C);
  EXPECT_LT((wedge_bracket(a, b).values(0, 0, {})[0] - expect).norm(), 1e-15);
  // [a ^ b] = [b ^ a] for 1-forms
  EXPECT_LT((wedge_bracket(b, a).values(0, 0, {})[0] - expect).norm(), 1e-15);
  EXPECT_THROW(wedge_bracket(wedge_bracket(a, b), a), Error);
}

TEST(Forms, CovariantDerivativeOfAZeroForm) {
  const Mat A = su3()[2], B = su3()[4];
  const GForm S = GForm::zero_form(Algebra::su, 3, poly_coeff([](const Jet& x, const Jet& y) { return x * y; }, su3()[0]));
  const auto one = [](const Jet& x, const Jet&) { return jet_constant(cd(1.0), x.order()); };
  const GForm omega = GForm::one_form(Algebra::su, 3, poly_coeff(one, A), poly_coeff(one, B));
  const double x = 0.3, y = -0.5;
  const Mat s = x * y * su3()[0];
  for (double c : {0.5, 1.0}) {
    const auto v = covariant_d(S, omega, c).values(x, y, {});
    EXPECT_LT((v[0] - (y * su3()[0] - c * commutator(A, s))).norm(), 1e-15);
    EXPECT_LT((v[1] - (x * su3()[0] - c * commutator(B, s))).norm(), 1e-15);
  }
}

TEST(Forms, ComplexOnVeroneseBackground) {
  const CPModel ver = CPModel::veronese();
  const SolutionField u = ver.theta_field(0);
  const LaxPair lax = lax_potentials_cpn(3);
  const GForm omega = lax.omega();
  const FormContext ctx{&u, kI * 0.5};
  const Chart c = small_chart();
  std::mt19937_64 rng(99);
  for (int k = 0; k < 4; ++k) {
    const GForm f = random_form(rng, k % 2, 3);
    EXPECT_LT(closedness_residual(exterior_d(f), ClosedOp::d, nullptr, ctx, c).sup, 1e-10);
    EXPECT_LT(closedness_residual(covariant_d(f, omega, 1.0), ClosedOp::d_2omega, &omega, ctx, c).sup, 1e-8);
  }
  // d_omega with c = 1/2 is not a differential for this connection.
  const GForm f = random_form(rng, 0, 3);
  EXPECT_GT(closedness_residual(covariant_d(f, omega, 0.5), ClosedOp::d_omega, &omega, ctx, c).sup, 1e-3);
  EXPECT_THROW(closedness_residual(f, ClosedOp::d_2omega, nullptr, ctx, c), Error);
}

TEST(Forms, GradedLeibniz) {
  const CPModel ver = CPModel::veronese();
  const SolutionField u = ver.theta_field(1);
  const FormContext ctx{&u, kI * 0.25};
  const Chart c = small_chart();
  std::mt19937_64 rng(5);
  for (auto [k, l] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}}) {
    const GForm a = random_form(rng, k, 3), b = random_form(rng, l, 3);
    const double s = k % 2 ? -1.0 : 1.0;
    const GForm lhs = exterior_d(wedge_bracket(a, b));
    const GForm rhs = wedge_bracket(exterior_d(a), b) + wedge_bracket(a, exterior_d(b)).scaled(s);
    EXPECT_LT(sup_norm(lhs - rhs, ctx, c), 1e-9) << k << l;
  }
}

TEST(Recovery, InvertsExteriorDerivative) {
  // f = sin(x) cosh(y) S_1 + x y^2 S_5
  const Coefficient fc = [](double x, double y, int o, const FormContext&) {
    const Jet jx = jet_x(x, o), jy = jet_y(y, o);
    return sin(jx) * (0.5 * (exp(jy) + exp(-jy))) * jet_constant(su3()[0], o) + (jx * jy * jy) * jet_constant(su3()[4], o);
  };
  const GForm f = GForm::zero_form(Algebra::su, 3, fc);
  Chart c;
  c.nx = c.ny = 33;
  const PotentialResult r = recover_0form_potential(exterior_d(f), 16, 16, {}, c);
  EXPECT_TRUE(r.warnings.empty());
  EXPECT_LT(r.residual, 1e-9);
  const Mat f0 = f.values(c.x(16), c.y(16), {})[0];
  double err = 0.0, derr = 0.0;
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      const double x = c.x(i), y = c.y(j);
      err = std::max(err, (r.F.values(x, y, {})[0] - (f.values(x, y, {})[0] - f0)).norm());
      const auto dF = exterior_d(r.F).values(x, y, {});
      const auto df = exterior_d(f).values(x, y, {});
      derr = std::max(derr, (dF[0] - df[0]).norm() + (dF[1] - df[1]).norm());
    }
  EXPECT_LT(err, 1e-8);
  EXPECT_LT(derr, 1e-8);
}

TEST(Recovery, FlagsNonClosedAndNodeOnlyInput) {
  const auto one = [](const Jet& x, const Jet& y) { return x + 0.0 * y; };
  // x dy - 0 dx is not closed (d = dx^dy)
  const GForm v = GForm::one_form(Algebra::su, 3, {}, poly_coeff(one, su3()[0]));
  Chart c;
  c.nx = c.ny = 9;
  const PotentialResult r = recover_0form_potential(v, 4, 4, {}, c);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_GT(r.residual, 0.1);
  GForm n = v;
  n.node_only = true;
  EXPECT_THROW(recover_0form_potential(n, 4, 4, {}, c), Error);
  EXPECT_THROW(recover_0form_potential(v, 9, 4, {}, c), Error);
}
