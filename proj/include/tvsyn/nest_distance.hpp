#pragma once

#include <string>
#include <vector>

#include "tvsyn/dual_program.hpp"
#include "tvsyn/factorization.hpp"
#include "tvsyn/operator_core.hpp"

namespace tvsyn {

/// Plant (T1, T2, T3) reduced to the distance problem dist(B, causal),
/// B = T2i* T1 T3i*. The outer factors are absorbed into Q~ = T2o Q T3o.
struct FactoredPlant {
  CausalOperator t1;
  CausalOperator t2;
  CausalOperator t3;
  InnerOuterPair t2_factors;  // inner-first
  InnerOuterPair t3_factors;  // outer-first
  Matrix symbol;
  Matrix t2_outer_inverse;
  Matrix t3_outer_inverse;

  int dim() const noexcept { return t1.dim(); }
};

struct CornerMax {
  double mu = 0.0;
  /// Smallest level attaining the maximum.
  int level = 0;
};

FactoredPlant reduce_to_distance(const CausalOperator& t1, const CausalOperator& t2,
                                 const CausalOperator& t3, double tol = kRankTol);

/// ||P_n B (I - P_n)|| for n = 1..upto.
std::vector<double> corner_block_norms(const Matrix& b, int upto);

/// max over 1 <= n <= upto of the corner-block norms.
CornerMax arveson_distance(const Matrix& b, int upto);
inline CornerMax arveson_distance(const Matrix& b) {
  return arveson_distance(b, static_cast<int>(b.rows()));
}

/// min ||B - Q|| over Q lower triangular and supported on the leading n x n
/// block of the M x M matrix B. Equals arveson_distance(B) when n = M and is
/// nonincreasing in n. Level 0 is the block made of rows n..M-1 alone.
CornerMax restricted_distance(const Matrix& b, int n);

/// Staircase completion. `top` is N x C (C >= N); its entries (i, j), j <= i < N,
/// are free and get filled one diagonal at a time with the central one-step
/// extension  x = -c A* (mu^2 I - A A*)^+ b.  Rows of `fixed` are fully known
/// and sit above every free entry. Returns `top` with the free entries replaced.
///
/// Throws CompletionInfeasibleError if a completed block exceeds mu + 10 tol.
Matrix staircase_complete(const Matrix& fixed, const Matrix& top, double mu, double tol);

/// Central Parrott completion: lower-triangular Q with ||B - Q|| <= mu + tol.
/// mu is inflated by 1e-9 relative before use.
CausalOperator parrott_complete(const Matrix& b, double mu, double tol = 1e-8);
/// Same with Q restricted to the leading n x n block of the ambient B.
CausalOperator parrott_complete(const Matrix& b, int n, double mu, double tol = 1e-8);

/// max over an orthonormal basis v of range(T) of | ||(B - Q) v|| / mu - 1 |.
/// Throws UndefinedCertificateError when T is numerically zero.
double allpass_defect(const Matrix& b, const CausalOperator& q, const PreannihilatorElement& t,
                      double mu, double tol = 1e-8);

struct SynthesisOptions {
  /// Truncation order; 0 means the full (ambient) dimension.
  int n = 0;
  double tol = 1e-8;
  double gap_tol = 1e-8;
  bool run_sdp = true;
  int sdp_max_iter = 5000;
  double sdp_tol = 1e-4;
};

struct SynthesisResult {
  int n = 0;
  int ambient = 0;
  double mu_primal = 0.0;
  double mu_dual = 0.0;
  double gap = 0.0;
  bool gap_warning = false;
  /// Absorbed parameter (optimal for B).
  CausalOperator Q;
  /// Youla parameter T2o^{-1} Q T3o^{-1}; equals Q for symbol-only runs.
  CausalOperator Q_youla;
  PreannihilatorElement T_dual;
  std::string certificate_source;
  double allpass_defect = 0.0;
  double alignment_residual = 0.0;
  int argmax_level = 0;
  /// (mu - second-largest level norm) / mu; surrogate for mu > mu_oo.
  double dominance_margin = 0.0;
  double sdp_value = 0.0;
  bool sdp_converged = false;
  int sdp_iterations = 0;
  std::vector<std::string> method_tags;
};

SynthesisResult synthesize(const FactoredPlant& plant, const SynthesisOptions& opts = {});
/// Distance problem posed directly on the symbol B (square, M x M).
SynthesisResult synthesize_symbol(const Matrix& b, const SynthesisOptions& opts = {});

/// K = Q (I - P Q)^{-1}. Throws FeedbackIllPosedError if I - P Q is singular.
CausalOperator controller_from_Q(const CausalOperator& q, const CausalOperator& p);
/// Q = K (I + P K)^{-1}.
CausalOperator youla_from_controller(const CausalOperator& k, const CausalOperator& p);

}  // namespace tvsyn
