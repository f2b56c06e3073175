#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isl/fields.hpp"
#include "isl/forms.hpp"
#include "isl/laxpair.hpp"
#include "isl/surface.hpp"

namespace isl {

struct ImmersionResult {
  ImmersionSurface surface;
  DeformationForm form;
  /// Sup over nodes of the defect term of a modified-FG form (zero for the other formulas).
  double correction_sup = 0.0;
};

using Beta = std::function<cd(cd lambda)>;

/// F^ST = beta Phi^-1 d_lambda Phi, Upsilon^ST = beta d_lambda omega.
/// Closed-form families give analytic jets; integrated families are differentiated on the grid.
ImmersionResult st_surface(const WaveFamily& family, const LaxPair& lax, const SolutionField& u, cd lambda,
                           const Beta& beta, const Chart& chart, const LambdaDerivOptions& opt = {});

/// F^CD = Phi^-1 S Phi, Upsilon^CD = d_{2 omega} S.
ImmersionResult cd_surface(const Wavefunction& phi, const GForm& S, const LaxPair& lax, const SolutionField& u);

struct FGOptions {
  GateauxOptions gateaux;
  /// Threshold of the linearized zero-curvature defect above which R is reported as a non-symmetry.
  double tol_sym = 1e-5;
  bool check_symmetry = true;
};

/// F^FG = Phi^-1 pr X_R Phi with pr X_R Phi the Gateaux derivative of the wavefunction functional;
/// Upsilon^FG = Gateaux derivative of omega along R.
ImmersionResult fg_surface(const WaveFamily& family, const LaxPair& lax, const Characteristic& R,
                           const SolutionField& u, cd lambda, const Chart& chart, const FGOptions& opt = {});

/// FG with the defect term: Upsilon^FG' = Upsilon^FG + pr X_R (D_a Phi - U_a Phi) Phi^-1 dx^a.
/// The defect of each deformed wavefunction is measured with the same derivative rule as dF.
ImmersionResult modfg_surface(const WaveFamily& family, const LaxPair& lax, const Characteristic& R,
                              const SolutionField& u, cd lambda, const Chart& chart, const FGOptions& opt = {});

/// Pointwise |F_x - Phi^-1 Ups_x Phi| + |F_y - Phi^-1 Ups_y Phi| (max of the two); sup over the interior.
GridReport verify_immersion(const ImmersionSurface& F, const DeformationForm& ups, const Wavefunction& phi,
                            const SolutionField& u, const Chart& chart, int margin = 1);

/// The surface of Upsilon: F with dF = Ad_{Phi^-1} Upsilon, recovered by staircase integration from (i0, j0).
PotentialResult surface_of_form(const GForm& ups, const Wavefunction& phi, const SolutionField& u, int i0, int j0,
                                const Chart& chart, const RecoverOptions& opt = {});

struct RecoveredS {
  /// S at nodes (exact jets from the recovered surface and Phi).
  GForm S;
  PotentialResult surface;
  /// sup |d_{2 omega} S - Upsilon| over the interior.
  double residual = 0.0;
  std::vector<std::string> warnings;
};

struct RecoverSOptions {
  RecoverOptions recover;
  /// Path-independence residual above this is a non-closed input error.
  double tol_path = 1e-6;
};

/// S = Phi F Phi^-1 with dF = Ad_{Phi^-1} Upsilon, so that d_{2 omega} S = Upsilon.
RecoveredS recover_potential_S(const DeformationForm& ups, const Wavefunction& phi, const LaxPair& lax,
                               const SolutionField& u, int i0, int j0, const Chart& chart,
                               const RecoverSOptions& opt = {});

struct GaugeMap {
  NodeValues<Mat> Fg;
  NodeValues<double> condition;
  NodeValues<char> masked;
  double masked_fraction = 0.0;
  /// sup |F_g S1 - S2| over unmasked nodes (the enforced identity).
  double identity_residual = 0.0;
  /// sup |F_g S1 F_g^-1 - S2| over unmasked nodes (conjugation reading, reported only).
  double conjugation_residual = 0.0;
};

/// F_g = S2 S1^-1 node by node; nodes with |det S1| < eps_inv are masked.
GaugeMap gauge_between(const NodeValues<Mat>& S1, const NodeValues<Mat>& S2, double eps_inv = 1e-8);

/// Node values of a 0-form.
NodeValues<Mat> sample_zero_form(const GForm& S, const FormContext& ctx, const Chart& chart);

}  // namespace isl
