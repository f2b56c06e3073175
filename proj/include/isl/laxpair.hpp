#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "isl/chart.hpp"
#include "isl/fields.hpp"
#include "isl/forms.hpp"
#include "isl/liealg.hpp"

namespace isl {

enum class LambdaKind { real_line, imaginary_line, complex_open };

std::string to_string(LambdaKind k);

/// Admissible spectral parameters. For the imaginary line lambda(t) = i t.
struct LambdaDomain {
  LambdaKind kind = LambdaKind::complex_open;
  std::vector<cd> poles;
  /// Minimal distance to a pole.
  double guard = 1e-6;

  cd at(double t) const;
  bool contains(cd lambda) const;
  /// Domain error naming the offending pole or line.
  void check(cd lambda) const;
};

/// Spectral potentials (U_x, U_y) as jets at a point.
using Potential = std::function<std::array<MatJet, 2>(double x, double y, int order, const SolutionField& u, cd lambda)>;

class LaxPair {
 public:
  LaxPair() = default;
  LaxPair(std::string name, Potential p, LambdaDomain domain, Algebra alg, int n, Group group);

  const std::string& name() const { return name_; }
  const LambdaDomain& domain() const { return domain_; }
  Algebra algebra() const { return alg_; }
  Group group() const { return group_; }
  int dim() const { return n_; }

  std::array<MatJet, 2> potentials(double x, double y, int order, const SolutionField& u, cd lambda) const;
  std::array<Mat, 2> values(double x, double y, const SolutionField& u, cd lambda) const;

  /// omega = U_x dx + U_y dy, evaluated through the form context.
  GForm omega() const;

 private:
  std::string name_;
  Potential p_;
  LambdaDomain domain_;
  Algebra alg_ = Algebra::su;
  int n_ = 0;
  Group group_ = Group::SU;
};

/// Pointwise |d_y U_x - d_x U_y + [U_x, U_y]|.
GridReport zcc_residual(const LaxPair& lax, const SolutionField& u, cd lambda, const Chart& chart, int margin = 1);

/// Sup over nodes of the algebra-membership residual of U_x and U_y.
double potential_membership(const LaxPair& lax, const SolutionField& u, cd lambda, const Chart& chart);

enum class WaveProvenance { integrated, closed_form };

std::string to_string(WaveProvenance p);

/// Group-valued field Phi for a fixed lambda. Closed-form wavefunctions carry analytic jets;
/// integrated ones live on chart nodes and are differentiated with grid stencils.
class Wavefunction {
 public:
  using ClosedFn = std::function<MatJet(double x, double y, int order)>;

  Wavefunction() = default;
  static Wavefunction closed_form(std::string name, ClosedFn fn, Group g, int n, cd lambda);
  static Wavefunction integrated(std::string name, NodeValues<Mat> values, Group g, cd lambda, int i0, int j0);

  const std::string& name() const { return name_; }
  WaveProvenance provenance() const { return prov_; }
  Group group() const { return group_; }
  cd lambda() const { return lambda_; }
  int dim() const { return n_; }
  bool off_node() const { return prov_ == WaveProvenance::closed_form; }

  MatJet jet(double x, double y, int order) const;
  Mat value(double x, double y) const { return jet(x, y, 0).value(); }
  /// Node values on a chart (the stored grid for integrated wavefunctions).
  NodeValues<Mat> sample(const Chart& chart) const;
  /// Sup of the group-membership residual over the chart nodes.
  double membership(const Chart& chart) const;

  // Integration record.
  const Chart& chart() const { return grid_.chart(); }
  int i0 = 0, j0 = 0;
  double max_drift = 0.0;
  double total_drift = 0.0;
  double path_residual = 0.0;
  double zcc = 0.0;
  std::vector<std::string> warnings;

 private:
  std::string name_;
  WaveProvenance prov_ = WaveProvenance::closed_form;
  Group group_ = Group::SU;
  int n_ = 0;
  cd lambda_ = 0.0;
  ClosedFn fn_;
  GridMatrixField grid_;
};

/// Wavefunction as a functional of the field, for a fixed lambda.
using WaveFamily = std::function<Wavefunction(const SolutionField& u, cd lambda)>;

struct IntegrateOptions {
  double tol_zcc = 1e-4;
  double drift_max = 1e-3;
  bool check_zcc = true;
  bool both_paths = true;
  /// Re-project onto the group after each step.
  bool project = true;
};

/// RK4 along the staircase from node (i0, j0): x-leg along row j0, then y-legs along every column.
/// The y-first staircase is integrated as well when both_paths is set; the sup difference is stored.
Wavefunction integrate_wavefunction(const LaxPair& lax, const SolutionField& u, cd lambda, int i0, int j0,
                                    const Mat& phi0, const Chart& chart, const IntegrateOptions& opt = {});

struct LambdaDerivOptions {
  double delta = 1e-5;
  /// Four-point stencil along lambda +- delta and lambda +- i delta (holomorphic families, O(delta^4)).
  bool complex_step = false;
};

namespace detail {
inline cd scale(cd s, cd v) { return s * v; }
inline Mat scale(cd s, const Mat& m) { return s * m; }
inline MatJet scale(cd s, const MatJet& m) { return s * m; }
inline std::vector<Mat> scale(cd s, std::vector<Mat> v) {
  for (auto& m : v) m *= s;
  return v;
}
inline NodeValues<Mat> scale(cd s, NodeValues<Mat> v) {
  for (auto& m : v.data) m *= s;
  return v;
}
inline cd lin(double a, cd p, double b, cd q) { return a * p + b * q; }
}  // namespace detail

/// d/d lambda of a lambda-family f. Real line: central difference in lambda. Imaginary line:
/// central difference in t with d/d lambda = -i d/dt. Complex open sets: central difference,
/// or the four-point complex stencil.
template <class F>
auto lambda_derivative(F&& f, const LambdaDomain& dom, cd lambda, const LambdaDerivOptions& opt = {}) {
  const double d = opt.delta;
  dom.check(lambda);
  auto probe = [&](cd l) {
    if (!dom.contains(l)) fail(ErrorKind::domain, "lambda derivative stencil leaves the spectral domain");
    return f(l);
  };
  if (dom.kind == LambdaKind::imaginary_line) {
    auto g = detail::lin(0.5 / d, probe(lambda + kI * d), -0.5 / d, probe(lambda - kI * d));
    return detail::scale(-kI, g);
  }
  if (dom.kind == LambdaKind::complex_open && opt.complex_step) {
    auto re = detail::lin(0.25 / d, probe(lambda + d), -0.25 / d, probe(lambda - d));
    auto im = detail::lin(0.25 / d, probe(lambda + kI * d), -0.25 / d, probe(lambda - kI * d));
    return detail::lin(1.0, re, 1.0, detail::scale(-kI, im));
  }
  return detail::lin(0.5 / d, probe(lambda + d), -0.5 / d, probe(lambda - d));
}

/// d_lambda omega as a 1-form (coefficients differentiated at the context's lambda).
GForm lambda_derivative(const LaxPair& lax, const LambdaDerivOptions& opt = {});

}  // namespace isl
