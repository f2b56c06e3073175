#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "isl/forms.hpp"

namespace isl {

/// Lie-algebra-valued surface F(x, y) for a fixed lambda, with jets.
struct ImmersionSurface {
  using JetFn = std::function<MatJet(double x, double y, int order)>;

  std::string provenance;
  Algebra algebra = Algebra::su;
  int n = 0;
  JetFn F;
  /// Jets only at chart nodes (grid or recovered surfaces).
  bool node_only = false;
  /// sup |dF - Ad_{Phi^-1} Upsilon|, NaN until verified.
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> notes;

  MatJet jet(double x, double y, int order) const { return F(x, y, order); }
  Mat value(double x, double y) const { return F(x, y, 0).value(); }
};

/// Deformation one-form Upsilon with its provenance (ST, CD, FG, FG', W, user).
struct DeformationForm {
  std::string provenance;
  GForm upsilon;
  std::vector<std::string> notes;
};

}  // namespace isl
