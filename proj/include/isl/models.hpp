#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "isl/cpn.hpp"
#include "isl/fields.hpp"
#include "isl/forms.hpp"
#include "isl/geom.hpp"
#include "isl/laxpair.hpp"
#include "isl/potential1d.hpp"

namespace isl {

/// Term coeff * x^px * y^py * S_basis of a polynomial 0-form (basis index 1-based).
struct PolyTerm {
  int basis = 1;
  int px = 0, py = 0;
  double coeff = 0.0;
};

/// Basis of the algebra a model's fields and forms live in.
OrthonormalBasis model_basis(Algebra alg, int n);

GForm polynomial_zero_form(const std::vector<PolyTerm>& terms, Algebra alg, int n);

/// Random polynomial 0-form of total degree <= 2 with coefficients in [-1, 1].
std::vector<PolyTerm> random_poly_terms(std::mt19937_64& rng, int dim, int count = 6);

/// Random degree-k form (k = 0, 1) whose coefficients mix polynomials in (x, y) with
/// field-dependent terms a * u + [u, B] (u the context field).
GForm random_form(std::mt19937_64& rng, int degree, int n);

/// Random element of su(n).
Mat random_su(std::mt19937_64& rng, int n);

/// X_k in both charts, with P_k for the degree.
TwoChartSurface two_chart_X(const CPModel& model, int k);

/// Invariant values stated for X_0 and X_1 (compared, not asserted).
std::vector<ClaimedValue> claimed_invariants(int k);

struct ModelSpec {
  std::string id = "cp2-veronese";
  int N = 3;
  int k = 0;
  std::vector<std::vector<cd>> f0;
  std::string potential = "integrable";
  double perturb = 0.0;
  Potential1dParams p1d;
  std::string grid_path;
};

/// A builtin sample solution with its Lax pair and wavefunction families.
struct SampleModel {
  std::string id;
  SolutionField field;
  LaxPair lax;
  Chart chart;
  std::optional<CPModel> cp;
  int level = 0;
  std::optional<Potential1dParams> p1d;
  /// Closed-form family (empty when none is known for the model's potentials).
  WaveFamily closed;
  /// Initial value at the integration basepoint, as a function of lambda.
  std::function<Mat(cd)> phi0;
  int i0 = 0, j0 = 0;

  /// Re-integrating family; phi0(lambda) frozen at (i0, j0) for every field.
  WaveFamily integrated(const IntegrateOptions& opt) const;
  cd lambda_at(double t) const { return lax.domain().at(t); }
};

/// Default chart of a model id.
Chart default_chart(const std::string& id);

SampleModel build_model(const ModelSpec& spec, const std::optional<Chart>& chart = {});

/// Builtin characteristic by id: zero, translation_x, translation_y, conformal (f(x), g(y) polynomials), q1, q2.
Characteristic builtin_characteristic(const std::string& id, const std::vector<double>& f, const std::vector<double>& g,
                                      const SampleModel& model);

}  // namespace isl
