#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "isl/fields.hpp"
#include "isl/potential1d.hpp"

using namespace isl;

namespace {

// u = sin(x) e^{2y} as a 1x1 field.
SolutionField scalar_field() {
  return SolutionField(
      "s", [](double x, double y, int order) { return as_matrix(sin(jet_x(x, order)) * exp(2.0 * jet_y(y, order))); },
      ProviderKind::analytic, 1, 1);
}

double u_exact(double x, double y) { return std::sin(x) * std::exp(2 * y); }

}  // namespace

TEST(Field, AnalyticDerivatives) {
  const SolutionField u = scalar_field();
  EXPECT_NEAR(u.derivative(0.3, 0.1, 1, 0)(0, 0).real(), std::cos(0.3) * std::exp(0.2), 1e-14);
  EXPECT_NEAR(u.derivative(0.3, 0.1, 1, 2)(0, 0).real(), 4 * std::cos(0.3) * std::exp(0.2), 1e-13);
  EXPECT_TRUE(u.off_node());
}

TEST(Field, FiniteDifferenceProvider) {
  const SolutionField u = finite_difference_field(
      "fd", [](double x, double y) { Mat m(1, 1); m(0, 0) = u_exact(x, y); return m; }, 1, 1, 1e-4);
  EXPECT_NEAR(u.derivative(0.3, 0.1, 1, 0)(0, 0).real(), std::cos(0.3) * std::exp(0.2), 1e-7);
  EXPECT_NEAR(u.derivative(0.3, 0.1, 0, 2)(0, 0).real(), 4 * std::sin(0.3) * std::exp(0.2), 1e-5);
  EXPECT_EQ(u.provider(), ProviderKind::finite_difference);
}

TEST(Field, GridCsvRoundTrip) {
  const std::string path = testing::TempDir() + "isl_grid_field.csv";
  {
    std::ofstream f(path);
    f << "x,y,re,im\n";
    for (int j = 0; j < 21; ++j)
      for (int i = 0; i < 21; ++i) {
        const double x = -1 + 0.1 * i, y = -1 + 0.1 * j;
        f.precision(17);
        f << x << "," << y << "," << u_exact(x, y) << ",0\n";
      }
  }
  const SolutionField g = read_grid_csv(path, 1, 1);
  EXPECT_FALSE(g.off_node());
  EXPECT_NEAR(g.value(0.0, 0.5)(0, 0).real(), u_exact(0.0, 0.5), 1e-14);
  EXPECT_NEAR(g.derivative(0.0, 0.5, 1, 0)(0, 0).real(), std::cos(0.0) * std::exp(1.0), 1e-4);
  EXPECT_THROW(g.value(0.05, 0.5), Error);
  std::remove(path.c_str());
  EXPECT_THROW(read_grid_csv(path, 1, 1), Error);
}

TEST(Field, PerturbationStaysInTheAlgebra) {
  const SolutionField z = constant_field(Mat::Zero(3, 3), Algebra::su);
  const SolutionField p = perturbed(z, 0.1);
  const Mat v = p.value(0.2, 0.1);
  EXPECT_NEAR(v.norm(), 0.1 * std::sqrt(2.0) * std::sqrt(2.0), 1e-12);  // |S_1 + S_4| = 2 (Frobenius)
  EXPECT_LT(membership_residual(v, Algebra::su), 1e-14);
}

TEST(Characteristic, TranslationAndConformal) {
  const SolutionField u = scalar_field();
  EXPECT_NEAR(translation(0)(u, 0.3, 0.1, 0).value()(0, 0).real(), std::cos(0.3) * std::exp(0.2), 1e-14);
  EXPECT_NEAR(translation(1)(u, 0.3, 0.1, 0).value()(0, 0).real(), 2 * u_exact(0.3, 0.1), 1e-14);
  // R = x u_x + 3 u_y
  const Characteristic c = conformal([](const Jet& s) { return s; },
                                     [](const Jet& s) { return jet_constant(cd(3.0), s.order()); });
  EXPECT_NEAR(c(u, 0.3, 0.1, 0).value()(0, 0).real(), 0.3 * std::cos(0.3) * std::exp(0.2) + 6 * u_exact(0.3, 0.1), 1e-14);
}

TEST(Deform, AffineForFieldIndependentCharacteristics) {
  const SolutionField u = scalar_field();
  const Characteristic r = additive("bump", [](double x, double y, int order) {
    return as_matrix(exp(-(jet_x(x, order) * jet_x(x, order) + jet_y(y, order) * jet_y(y, order))));
  });
  const SolutionField a = deform(deform(u, r, 3e-3), r, 4e-3);
  const SolutionField b = deform(u, r, 7e-3);
  EXPECT_LT((a.jet(0.2, 0.3, 2).value() - b.jet(0.2, 0.3, 2).value()).norm(), 1e-16);
  EXPECT_THROW(deform(u, r, 0.5), Error);
}

TEST(Deform, CompositionDefectForTranslation) {
  const SolutionField u = scalar_field();
  const Characteristic r = translation(0);
  const double e1 = 3e-3, e2 = 4e-3;
  const double d = (deform(deform(u, r, e1), r, e2).value(0.2, 0.3) - deform(u, r, e1 + e2).value(0.2, 0.3)).norm();
  // u + e1 u_x + e2 (u_x + e1 u_xx) - (u + (e1 + e2) u_x) = e1 e2 u_xx
  EXPECT_NEAR(d, e1 * e2 * std::abs(u_exact(0.2, 0.3)), 1e-15);
}

TEST(Gateaux, DerivativeOfASquare) {
  const SolutionField u = scalar_field();
  const auto square = [](const SolutionField& v) { return std::pow(v.value(0.4, -0.2)(0, 0).real(), 2); };
  const double expect = 2 * u_exact(0.4, -0.2) * std::cos(0.4) * std::exp(-0.4);
  EXPECT_NEAR(gateaux(square, u, translation(0)), expect, 1e-9);
  GateauxOptions o;
  o.richardson = true;
  o.eps = 1e-3;
  EXPECT_NEAR(gateaux(square, u, translation(0), o), expect, 1e-10);
}

TEST(Potential1d, BuiltinSolutionIsOnShell) {
  const Potential1dParams p;
  const SolutionField u = potential1d_field(p);
  for (double x : {0.0, 0.5, 1.0}) {
    const auto r = potential1d_residuals(p, u, x, 0.3);
    EXPECT_LT(r[0], 1e-13);
    EXPECT_LT(r[1], 1e-13);
  }
}

TEST(Potential1d, NonlocalCharacteristicAgainstClosedForm) {
  // f = u^2, u = e^x: Q2 = u_x int_0^x e^{-3s} ds = e^x (1 - e^{-3x})/3.
  const Potential1dParams p;
  const SolutionField u = potential1d_field(p);
  const Characteristic q2 = potential1d_q2(p, 0.0);
  EXPECT_EQ(q2.locality(), Locality::nonlocal_x);
  for (double x : {0.0, 0.37, 1.0}) {
    const MatJet q = q2(u, x, 0.2, 1);
    EXPECT_NEAR(q.value()(0, 0).real(), std::exp(x) * (1 - std::exp(-3 * x)) / 3, 1e-13);
    // d/dx: (e^x + 2 e^{-2x})/3
    EXPECT_NEAR(q.derivative(1, 0)(0, 0).real(), (std::exp(x) + 2 * std::exp(-2 * x)) / 3, 1e-12);
  }
  EXPECT_THROW(deform(u, q2, 1e-3).value(-0.5, 0.0), Error);
}
