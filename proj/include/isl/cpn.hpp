#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isl/fields.hpp"
#include "isl/forms.hpp"
#include "isl/laxpair.hpp"
#include "isl/surface.hpp"

namespace isl {

using VecJetFn = std::function<MatJet(double x, double y, int order)>;

/// Rank-one projector P = f f^dagger / (f^dagger f) with its source vector, both as jets.
struct ProjectorField {
  std::string name;
  int n = 0;
  VecJetFn f;
  VecJetFn P;
  double eps_den = 1e-12;
};

/// P from a C^N-valued map; singular-input error where |f|^2 < eps_den.
ProjectorField projector_from_f(std::string name, int n, VecJetFn f, double eps_den = 1e-12);

/// f_{k+1} = (d_xi P_k) f_k; chain-end error where the result vanishes.
VecJetFn raise_f(const ProjectorField& pk);

/// Pointwise residuals of P^2 = P, P = P^dagger, tr P = 1.
double projector_defect(const Mat& p);

/// Polynomial vector f(xi) = sum_n c_n xi^n per component, xi = x + i y.
VecJetFn polynomial_vector(std::vector<std::vector<cd>> coeffs);

/// CP^{N-1} model with holomorphic data f_0 and its completed chain P_0..P_{N-1}.
class CPModel {
 public:
  CPModel() = default;
  CPModel(int N, std::vector<std::vector<cd>> f0, ChartId chart = ChartId::main);

  /// Veronese data f_0 = (1, sqrt2 xi, xi^2).
  static CPModel veronese();
  /// CP^1 data f_0 = (1, xi).
  static CPModel cp1();

  int N() const { return n_; }
  ChartId chart_id() const { return chart_; }
  const std::vector<std::vector<cd>>& f0() const { return f0_; }
  /// Same model in the coordinate xi' = 1/xi (reversed polynomials).
  CPModel on_chart(ChartId c) const;

  /// Chain P_0..P_{N-1} as jets; the last member is Id - sum of the others.
  std::vector<MatJet> chain(double x, double y, int order) const;
  /// Chain vector f_k for k < N-1 by repeated raising.
  MatJet f(int k, double x, double y, int order) const;
  MatJet P(int k, double x, double y, int order) const;
  ProjectorField projector(int k) const;
  /// theta_k = i (P_k - Id/N) as an analytic su(N) field.
  SolutionField theta_field(int k) const;
  /// Highest jet order available for chain members.
  int max_order() const { return kMaxJetOrder - std::max(0, n_ - 2); }

 private:
  int n_ = 0;
  std::vector<std::vector<cd>> f0_;
  ChartId chart_ = ChartId::main;
};

/// P = Id/N - i theta for a theta field.
MatJet projector_of_theta(const SolutionField& theta, double x, double y, int order);

/// sup |[(d_x^2 + d_y^2) theta, theta]|.
GridReport el_residual(const SolutionField& theta, const Chart& chart, int margin = 1);

/// Variants of the spectral potentials of the sigma model.
///  integrable:     U_x = -2/(1-l^2)([th_x,th] + i l [th_y,th]),  U_y = -2/(1-l^2)([th_y,th] - i l [th_x,th])
///  sum_difference: U_x = -(1+i l)/(1-l^2)[(D_x+D_y)th, th],  U_y = (1+i l)/(1-l^2)[(D_x-D_y)th, th]
///  cp1:            U_x = -2/(1-l^2)([th_x,th] - i l [th_y,th]),  U_y = -2/(1-l^2)(i l [th_x,th] + [th_y,th])
enum class CPPotential { integrable, sum_difference, cp1 };

std::string to_string(CPPotential v);
CPPotential parse_cp_potential(const std::string& s);

LaxPair lax_potentials_cpn(int N, CPPotential variant = CPPotential::integrable);

/// Lowering and raising projectors (d = d/dxi):
///  lower(P) = dbar P P d P / tr(.),  raise(P) = d P P dbar P / tr(.)
/// Jets lose one order.
MatJet ladder_lower(const MatJet& P);
MatJet ladder_raise(const MatJet& P);

/// Phi_k = Id + 4 l/(1-l)^2 sum_{j=1..k} lower^j(P) - 2/(1-l) P with P = Id/N - i theta.
/// Unitary for imaginary lambda; det = -(1+l)/(1-l) for k = 0.
Wavefunction phi_k_closed_form(const SolutionField& theta, int N, cd lambda, int k);
WaveFamily phi_k_family(int N, int k);

/// Phi = Id - 2P/(1+lambda), the wavefunction of the cp1 potentials.
Wavefunction phi_cp1(const SolutionField& theta, cd lambda);

/// Integrand of the Weierstrass formula: rotated = -[th_y,th]dx + [th_x,th]dy (d-closed on-shell),
/// unrotated = -[th_x,th]dx + [th_y,th]dy.
enum class WeierstrassForm { rotated, unrotated };

GForm weierstrass_integrand(int N, WeierstrassForm w = WeierstrassForm::rotated);

struct WeierstrassResult {
  ImmersionSurface surface;
  PotentialResult potential;
};

WeierstrassResult weierstrass_surface(const SolutionField& theta, int N, int i0, int j0, const Chart& chart,
                                      WeierstrassForm w = WeierstrassForm::rotated);

/// X_k = -i(P_k + 2 sum_{j<k} P_j) + i(1+2k)/N Id.
ImmersionSurface veronese_X(const CPModel& model, int k);

struct XIdentity {
  std::string identity;
  double residual = 0.0;
};

/// Algebraic identities of X_0, X_1, X_2 evaluated on a grid.
std::vector<XIdentity> veronese_identities(const CPModel& model, const Chart& chart);

/// Coordinates of X in the labelling used for the Veronese coordinate equations,
/// a signed permutation of Gell-Mann coordinates (p1=-g1, p2=-g2, p3=g3, p4=g8, p5=g6, p6=g4, p7=g7, p8=g5).
std::array<double, 9> labelled_coordinates(const Mat& X);

struct Claim {
  std::string id;
  std::string statement;
  std::string note;
  double residual = 0.0;
  double tol = 1e-8;
  bool verified() const { return residual <= tol; }
};

/// Evaluates every displayed claim of the CP^2 case study (coordinate equations, matrices,
/// identities, wavefunction claims) on a grid. Deterministic order.
std::vector<Claim> claim_registry_check(const CPModel& model, const Chart& chart);

}  // namespace isl
