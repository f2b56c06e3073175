#include <gtest/gtest.h>

#include "isl/geom.hpp"

using namespace isl;

namespace {

const OrthonormalBasis& su2() {
  static const OrthonormalBasis b = basis_su(2);
  return b;
}

ImmersionSurface surface(std::function<std::array<Jet, 3>(const Jet&, const Jet&)> X) {
  ImmersionSurface s;
  s.provenance = "test";
  s.n = 2;
  s.F = [X](double x, double y, int order) {
    const auto c = X(jet_x(x, order), jet_y(y, order));
    MatJet f = c[0] * jet_constant(su2()[0], order);
    for (int a = 1; a < 3; ++a) f = f + c[static_cast<size_t>(a)] * jet_constant(su2()[a], order);
    return f;
  };
  return s;
}

// Inverse stereographic projection onto the sphere of radius R; the inverse chart flips the y and z components.
ImmersionSurface round_sphere(double R, bool inverse) {
  const double sy = inverse ? -1.0 : 1.0;
  return surface([R, sy](const Jet& x, const Jet& y) {
    const Jet r2 = x * x + y * y;
    const Jet s = R * reciprocal(r2 + 1.0);
    return std::array<Jet, 3>{2.0 * x * s, sy * 2.0 * y * s, sy * (r2 + (-1.0)) * s};
  });
}

}  // namespace

TEST(Curvature, RoundSphere) {
  const double R = 1.7;
  const ImmersionSurface s = round_sphere(R, false);
  for (auto [x, y] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.4, -0.3}, {-0.9, 0.2}}) {
    const MetricSample m = fundamental_form(s, x, y);
    EXPECT_LT(m.defect(), 1e-13);
    const double r2 = x * x + y * y;
    EXPECT_NEAR(m.E, 4 * R * R / ((1 + r2) * (1 + r2)), 1e-12);
    EXPECT_NEAR(gaussian_curvature(s, x, y), 1 / (R * R), 1e-10);
    const MeanCurvature h = mean_curvature(s, x, y);
    EXPECT_NEAR(h.norm2, 1 / (R * R), 1e-10);
    EXPECT_LT(h.leakage, 1e-10);
  }
}

TEST(Curvature, Plane) {
  const ImmersionSurface p = surface([](const Jet& x, const Jet& y) { return std::array<Jet, 3>{x, y, 0.0 * x}; });
  EXPECT_NEAR(gaussian_curvature(p, 0.3, 0.2), 0.0, 1e-14);
  EXPECT_NEAR(mean_curvature(p, 0.3, 0.2).norm2, 0.0, 1e-14);
}

TEST(Curvature, BrioschiOnANonConformalParametrisation) {
  // Unit sphere in polar angles: E = 1, F = 0, G = sin^2 x.
  const ImmersionSurface s = surface([](const Jet& x, const Jet& y) {
    return std::array<Jet, 3>{sin(x) * cos(y), sin(x) * sin(y), cos(x)};
  });
  EXPECT_GT(fundamental_form(s, 1.0, 0.3).defect(), 0.1);
  EXPECT_NEAR(gaussian_curvature(s, 1.0, 0.3), 1.0, 1e-10);
  EXPECT_NEAR(gaussian_curvature(s, 0.6, -1.2), 1.0, 1e-10);
  try {
    mean_curvature(s, 1.0, 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::numeric);
  }
}

TEST(Quadrature, SphereArea) {
  const auto area = [](ChartId, double x, double y) {
    const double r2 = x * x + y * y;
    return 4 / ((1 + r2) * (1 + r2));
  };
  const SphereIntegral a = sphere_integral(area);
  EXPECT_NEAR(a.value, 4 * kPi, 1e-7);
  SphereQuadrature bad;
  bad.nr = 30;
  EXPECT_THROW(sphere_integral(area, bad), Error);
}

TEST(Quadrature, FubiniStudyCalibration) { EXPECT_NEAR(std::abs(fubini_study_calibration()), 1.0, 1e-6); }

TEST(Invariants, RoundSphereReport) {
  const double R = 0.8;
  TwoChartSurface t{round_sphere(R, false), round_sphere(R, true), {}, {}};
  const InvariantReport r = invariant_report(t, {{"K", 1 / (R * R), ""}, {"W", 2.0, "deliberately wrong"}});
  EXPECT_NEAR(r.K.mean, 1 / (R * R), 1e-8);
  EXPECT_LT(r.K.rel(), 1e-8);
  EXPECT_NEAR(r.H2.mean, 1 / (R * R), 1e-8);
  EXPECT_NEAR(r.chi, 2.0, 1e-6);
  EXPECT_NEAR(r.area, 4 * kPi * R * R, 1e-6);
  EXPECT_NEAR(r.W, kPi, 1e-6);
  EXPECT_LT(r.conformality_defect, 1e-10);
  EXPECT_FALSE(r.Q.has_value());
  ASSERT_EQ(r.comparisons.size(), 2u);
  EXPECT_TRUE(r.comparisons[0].agrees);
  EXPECT_FALSE(r.comparisons[1].agrees);
}
