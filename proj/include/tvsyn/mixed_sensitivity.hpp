#pragma once

#include <string>
#include <vector>

#include "tvsyn/operator_core.hpp"

namespace tvsyn {

/// 2N x N operator stored as two N x N blocks; causal means both blocks lower.
struct StackedOperator {
  Matrix top;
  Matrix bottom;

  Matrix dense() const;
  int dim() const noexcept { return static_cast<int>(top.cols()); }
};

/// min_Q || [W; 0] - [W; V] P Q || with its factorizations.
struct MixedPlant {
  CausalOperator W;
  CausalOperator V;
  CausalOperator P;
  CausalOperator lambda1;  // lambda1* lambda1 = W*W + V*V
  CausalOperator U1;       // lambda1 P = U1 G
  CausalOperator G;
  StackedOperator R;       // [W; V] lambda1^{-1} U1
  CausalOperator lambda;   // lambda* lambda = R* R
  StackedOperator R2;      // R lambda^{-1}, an isometry
  StackedOperator omega;   // [(I - R21 R21*) W; -R22 R21* W]

  int dim() const noexcept { return W.dim(); }
  /// R21* W, the symbol whose Hankel part enters mu_o.
  Matrix hankel_symbol() const;
  /// [W; 0].
  StackedOperator t1() const;
};

/// Throws AssumptionViolationError("closedness") when W*W + V*V is not
/// positive definite to tol, and AssumptionViolationError("A3") carrying the
/// condition number when G is not invertible to tol.
MixedPlant build_mixed_plant(const CausalOperator& w, const CausalOperator& v,
                             const CausalOperator& p, double tol = kRankTol);

/// sqrt of mixed_operator_norm(R21* W, Omega* Omega).
double mixed_value_hankel_toeplitz(const MixedPlant& mp);

/// ||Gamma|| with Gamma A = [W; 0] A - R2 lower(R2* [W; 0] A), A causal.
double mixed_value_gamma(const MixedPlant& mp);

struct MixedOptions {
  int bisection_iterations = 12;
  double tol = 1e-8;
  /// Spread of the three values above this times mu_o raises MethodDisagreementError.
  double agreement_tol = 1e-4;
};

struct MixedMethodValues {
  double hankel_toeplitz = 0.0;
  double gamma_projection = 0.0;
  double direct_convex = 0.0;
};

struct MixedResult {
  double mu_o = 0.0;
  /// Youla parameter G^{-1} lambda^{-1} Q~.
  CausalOperator Q;
  /// Minimizer of || T1 - R2 Q~ ||.
  CausalOperator Q_absorbed;
  MixedMethodValues method_values;
  /// max | ||(T1 - R2 Q~) v|| / mu_o - 1 | over the dual witness range.
  double allpass_defect = 0.0;
  /// Partial-isometry defect of (T1 - R2 Q~) / mu_o as a whole.
  double partial_isometry_defect = 0.0;
  /// Staircase level attaining mu_o (0 = the Omega block alone).
  int argmax_level = 0;
  int bisection_steps = 0;
  std::vector<std::string> method_tags;
};

MixedResult mixed_synthesize(const MixedPlant& mp, const MixedOptions& opts = {});

}  // namespace tvsyn
