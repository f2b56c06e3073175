#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isl/chart.hpp"
#include "isl/surface.hpp"

namespace isl {

struct MetricSample {
  double E = 0.0, F = 0.0, G = 0.0;
  bool degenerate = false;
  double defect() const { return std::abs(E - G) + std::abs(F); }
  double det() const { return E * G - F * F; }
};

/// First fundamental form under <A,B> = -Re Tr(AB)/2.
MetricSample fundamental_form(const ImmersionSurface& s, double x, double y, double eps_degenerate = 1e-14);

/// Metric coefficients as real jets (order K needs surface jets of order K+1).
struct MetricJet {
  Taylor2<double> E, F, G;
};
MetricJet metric_jet(const ImmersionSurface& s, double x, double y, int order);

/// Brioschi formula on the metric jets; the conformal shortcut -Lap(ln E)/(2E) when |E-G|+|F| <= 1e-6.
double gaussian_curvature(const ImmersionSurface& s, double x, double y);
double gaussian_curvature(const MetricJet& m);

struct MeanCurvature {
  Mat H;
  double norm2 = 0.0;
  /// |tangential part of Lap F/(2E)| / |normal part|.
  double leakage = 0.0;
};

/// H = Lap F/(2E) projected onto the normal space; numeric error at non-conformal points (defect > 1e-4).
MeanCurvature mean_curvature(const ImmersionSurface& s, double x, double y);

/// Density on a chart of the sphere, with respect to dx dy of that chart.
using ChartDensity = std::function<double(ChartId chart, double x, double y)>;

struct SphereQuadrature {
  int nr = 128;
  int nphi = 128;
  /// Relative change between the nr/2 and nr rules above which the density is declared non-integrable.
  double divergence_tol = 1e-3;
};

struct SphereIntegral {
  double value = 0.0;
  double coarse = 0.0;
};

/// Integral over |xi| <= 1 (main chart) plus |xi'| < 1 (inverse chart, xi' = 1/xi), polar product rule
/// (Simpson in r, trapezoid in phi) on each disk.
SphereIntegral sphere_integral(const ChartDensity& density, const SphereQuadrature& q = {});

/// A surface over the Riemann sphere given in both charts, with an optional projector map for the degree.
struct TwoChartSurface {
  ImmersionSurface main;
  ImmersionSurface inverse;
  std::function<MatJet(double x, double y, int order)> P_main;
  std::function<MatJet(double x, double y, int order)> P_inverse;
};

struct ConstancyStats {
  double mean = 0.0;
  double std = 0.0;
  double rel() const { return mean != 0.0 ? std / std::abs(mean) : std; }
};

struct Comparison {
  std::string quantity;
  double computed = 0.0;
  double claimed = 0.0;
  double rel_dev = 0.0;
  /// Within 5% of the claimed value.
  bool agrees = false;
  std::string note;
};

struct ClaimedValue {
  std::string quantity;  // "K", "|H|^2", "W", "chi", "Q", "area"
  double value = 0.0;
  std::string note;
};

struct InvariantReport {
  std::string surface;
  ConstancyStats K, H2;
  double conformality_defect = 0.0;
  double leakage = 0.0;
  int degenerate_points = 0;
  double chi = 0.0;
  double area = 0.0;
  double W = 0.0;
  std::optional<double> Q;
  double c_fs = 0.0;
  std::vector<Comparison> comparisons;
  std::vector<std::string> notes;
};

/// Normalization of the Fubini-Study pullback: (1/2 pi) int i Tr(P [P_x, P_y]) for the map f = (1, xi).
double fubini_study_calibration(const SphereQuadrature& q = {});

InvariantReport invariant_report(const TwoChartSurface& s, const std::vector<ClaimedValue>& claimed,
                                 const SphereQuadrature& q = {});

}  // namespace isl
