#pragma once

#include <vector>

#include "isl/fields.hpp"
#include "isl/laxpair.hpp"

namespace isl {

/// The scalar model u_xx - f'(u)/2 = 0 with the constraint u_x^2 = f(u), on a chart in (x, y).
/// f and g are real polynomials (ascending coefficients).
struct Potential1dParams {
  std::vector<double> f = {0.0, 0.0, 1.0};
  std::vector<double> g = {0.0};
  /// Amplitude of the builtin solution u = a e^x (solves u_x^2 = u^2 for f = u^2).
  double a = 1.0;
  double lambda = 0.5;
  Chart chart = [] {
    Chart c;
    c.x_min = 0.0;
    c.x_max = 1.0;
    c.y_min = 0.0;
    c.y_max = 1.0;
    return c;
  }();
};

/// u = a e^x (analytic provider).
SolutionField potential1d_field(const Potential1dParams& p);

/// L (x-part) and M (y-part) of the model, in sl(2,R); the pole u + lambda = 0 is guarded pointwise.
LaxPair potential1d_lax(const Potential1dParams& p);

/// Q_1 = u_x.
Characteristic potential1d_q1();

/// Q_2 = u_x * int_{x_origin}^x f(u(s, y))^{-3/2} ds, accumulated by Gauss-Legendre quadrature.
Characteristic potential1d_q2(const Potential1dParams& p, double x_origin);

/// Residual of u_xx - f'(u)/2 and of u_x^2 - f(u) at a point.
std::array<double, 2> potential1d_residuals(const Potential1dParams& p, const SolutionField& u, double x, double y);

}  // namespace isl
