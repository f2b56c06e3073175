#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isl/chart.hpp"
#include "isl/fields.hpp"
#include "isl/liealg.hpp"

namespace isl {

/// Evaluation context of a parametrized form: the section u and the spectral parameter.
struct FormContext {
  const SolutionField* field = nullptr;
  cd lambda = 0.0;
};

/// Coefficient jet at (x, y); an empty function denotes the zero coefficient.
using Coefficient = std::function<MatJet(double x, double y, int order, const FormContext& ctx)>;

/// Degree-k Lie-algebra-valued form on a 2-D chart. Components are stored on increasing
/// multi-indices: {} for k=0, {x},{y} for k=1, {xy} for k=2, none for k=3 (the zero 3-form).
class GForm {
 public:
  GForm() = default;
  GForm(int degree, Algebra alg, int n, std::vector<Coefficient> c);

  static GForm zero(int degree, Algebra alg, int n);
  static GForm zero_form(Algebra alg, int n, Coefficient f);
  static GForm one_form(Algebra alg, int n, Coefficient fx, Coefficient fy);
  static GForm two_form(Algebra alg, int n, Coefficient fxy);

  int degree() const { return degree_; }
  Algebra algebra() const { return alg_; }
  int dim() const { return n_; }
  int components() const { return static_cast<int>(c_.size()); }
  bool component_is_zero(int k) const { return !c_[static_cast<size_t>(k)]; }

  MatJet coefficient(int k, double x, double y, int order, const FormContext& ctx) const;
  std::vector<Mat> values(double x, double y, const FormContext& ctx) const;
  /// Frobenius norm over all components at a point.
  double norm(double x, double y, const FormContext& ctx) const;

  GForm operator+(const GForm& o) const;
  GForm operator-(const GForm& o) const;
  GForm scaled(cd s) const;
  GForm with_algebra(Algebra a) const;

  /// Coefficients only defined on grid nodes.
  bool node_only = false;

 private:
  int degree_ = 0;
  Algebra alg_ = Algebra::su;
  int n_ = 0;
  std::vector<Coefficient> c_;
};

enum class DerivativeMode { chain_rule, finite_difference };

GForm wedge_bracket(const GForm& a, const GForm& b);
GForm exterior_d(const GForm& v, DerivativeMode mode = DerivativeMode::chain_rule, double h = 1e-4);
/// d v - c [omega ^ v]; c = 1/2 gives d_omega, c = 1 gives d_{2 omega}.
GForm covariant_d(const GForm& v, const GForm& omega, double c, DerivativeMode mode = DerivativeMode::chain_rule);

enum class ClosedOp { d, d_omega, d_2omega };

GridReport closedness_residual(const GForm& v, ClosedOp op, const GForm* omega, const FormContext& ctx,
                               const Chart& chart, int margin = 1);

/// 0-form backed by exact node jets.
GForm node_zero_form(const JetGrid& jets, Algebra alg);
/// 0-form backed by node values with grid finite differences.
GForm grid_zero_form(const GridMatrixField& g, Algebra alg);
/// 1-form backed by node values with grid finite differences.
GForm grid_one_form(const GridMatrixField& gx, const GridMatrixField& gy, Algebra alg);

struct RecoverOptions {
  int jet_order = 2;
  /// Simpson panels per grid cell on each leg.
  int substeps = 2;
  double tol_closed = 1e-6;
  bool check_closed = true;
};

struct PotentialResult {
  GForm F;
  JetGrid jets;
  NodeValues<Mat> path2;
  double residual = 0.0;
  double closedness = 0.0;
  int i0 = 0, j0 = 0;
  double x0 = 0.0, y0 = 0.0;
  std::vector<std::string> warnings;
};

/// Solves dF = eta by staircase integration from the basepoint node (i0, j0): x-leg then y-leg,
/// composite Simpson per cell. The y-then-x staircase is integrated as well; the sup of the
/// difference is the path-independence residual.
PotentialResult recover_0form_potential(const GForm& eta, int i0, int j0, const FormContext& ctx, const Chart& chart,
                                        const RecoverOptions& opt = {});

}  // namespace isl
