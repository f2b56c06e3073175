#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "isl/chart.hpp"
#include "isl/liealg.hpp"

namespace isl {

enum class ProviderKind { analytic, finite_difference, grid };

std::string to_string(ProviderKind k);

/// Dependent-variable field on a chart. Values are matrices (a scalar field is 1x1);
/// derivatives come as jets from the provider.
class SolutionField {
 public:
  using JetFn = std::function<MatJet(double x, double y, int order)>;

  SolutionField() = default;
  SolutionField(std::string name, JetFn fn, ProviderKind kind, int rows, int cols, Algebra tag = Algebra::gl);

  MatJet jet(double x, double y, int order) const;
  Mat value(double x, double y) const { return jet(x, y, 0).value(); }
  /// d^a_x d^b_y of the field.
  Mat derivative(double x, double y, int a, int b) const;

  const std::string& name() const { return name_; }
  ProviderKind provider() const { return kind_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Algebra algebra() const { return tag_; }
  /// Grid-backed fields cannot be evaluated between nodes.
  bool off_node() const { return kind_ != ProviderKind::grid; }
  /// Highest jet order the provider supports.
  int max_order() const { return kind_ == ProviderKind::analytic ? kMaxJetOrder : 3; }

  /// Typical magnitude of the field, used to scale Gateaux steps.
  double magnitude = 1.0;

 private:
  std::string name_;
  JetFn fn_;
  ProviderKind kind_ = ProviderKind::analytic;
  int rows_ = 1, cols_ = 1;
  Algebra tag_ = Algebra::gl;
};

SolutionField constant_field(const Mat& v, Algebra tag = Algebra::gl);

/// Field with jets from central differences of a value function: step h for |J| <= 2, 10h for |J| = 3.
SolutionField finite_difference_field(std::string name, std::function<Mat(double, double)> value, int rows, int cols,
                                      double h, Algebra tag = Algebra::gl);

/// Field backed by node values with fourth-order grid differences.
SolutionField grid_field(std::string name, const GridMatrixField& grid, Algebra tag = Algebra::gl);

/// Reads a grid field from CSV with columns x, y, then row-major entries as re,im pairs.
SolutionField read_grid_csv(const std::string& path, int rows, int cols, Algebra tag = Algebra::gl);

/// Adds a fixed non-solution bump amp * exp(-((x-x0)^2+(y-y0)^2)/s^2) * B to a field;
/// B is a fixed element of the field's algebra (S_1 + S_4 for su(3)).
SolutionField perturbed(const SolutionField& u, double amp, double x0 = 0.2, double y0 = 0.1, double s = 0.5);

enum class Locality { local, nonlocal_x };

/// Characteristic R of an evolutionary vector field: (field, point) -> tangent of the same shape.
class Characteristic {
 public:
  using Fn = std::function<MatJet(const SolutionField& u, double x, double y, int order)>;

  Characteristic() = default;
  Characteristic(std::string name, Fn fn, Locality loc = Locality::local, std::optional<double> x_origin = {});

  MatJet operator()(const SolutionField& u, double x, double y, int order) const;
  const std::string& name() const { return name_; }
  Locality locality() const { return loc_; }
  std::optional<double> x_origin() const { return x_origin_; }
  /// True when R(u) does not depend on u.
  bool field_independent = false;

 private:
  std::string name_;
  Fn fn_;
  Locality loc_ = Locality::local;
  std::optional<double> x_origin_;
};

using Univariate = std::function<Jet(const Jet&)>;

Characteristic zero_characteristic();
/// R = u_x (axis 0) or u_y (axis 1).
Characteristic translation(int axis);
/// R = f(x) u_x + g(y) u_y.
Characteristic conformal(Univariate f, Univariate g, std::string name = "conformal");
/// R independent of the field (additive deformation).
Characteristic additive(std::string name, std::function<MatJet(double x, double y, int order)> r);
/// a R1 + b R2.
Characteristic combine(double a, const Characteristic& r1, double b, const Characteristic& r2);

/// u + eps R(u), differentiated through the sum. |eps| <= eps_max.
SolutionField deform(const SolutionField& u, const Characteristic& r, double eps, double eps_max = 1e-2);

struct GateauxOptions {
  double eps = 1e-5;
  bool richardson = false;
  /// Multiplies eps; callers pass the field magnitude.
  double scale = 1.0;
};

namespace detail {
inline double lin(double a, double p, double b, double q) { return a * p + b * q; }
inline Mat lin(double a, const Mat& p, double b, const Mat& q) { return a * p + b * q; }
inline MatJet lin(double a, const MatJet& p, double b, const MatJet& q) { return a * p + b * q; }
inline std::vector<Mat> lin(double a, const std::vector<Mat>& p, double b, const std::vector<Mat>& q) {
  std::vector<Mat> r(p.size());
  for (size_t k = 0; k < p.size(); ++k) r[k] = a * p[k] + b * q[k];
  return r;
}
inline NodeValues<Mat> lin(double a, const NodeValues<Mat>& p, double b, const NodeValues<Mat>& q) {
  NodeValues<Mat> r = p;
  for (size_t k = 0; k < p.data.size(); ++k) r.data[k] = a * p.data[k] + b * q.data[k];
  return r;
}
}  // namespace detail

/// Central-difference Gateaux derivative of a field functional along R.
template <class F>
auto gateaux(F&& functional, const SolutionField& u, const Characteristic& r, const GateauxOptions& opt = {}) {
  auto central = [&](double h) {
    try {
      auto p = functional(deform(u, r, h, std::max(1e-2, 2 * h)));
      auto m = functional(deform(u, r, -h, std::max(1e-2, 2 * h)));
      return detail::lin(0.5 / h, p, -0.5 / h, m);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("gateaux along ") + r.name() + ": " + e.what());
    }
  };
  const double h = opt.eps * opt.scale;
  if (!opt.richardson) return central(h);
  return detail::lin(4.0 / 3.0, central(h / 2), -1.0 / 3.0, central(h));
}

}  // namespace isl
