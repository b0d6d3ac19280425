#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvsyn/operator_core.hpp"

namespace tvsyn {

/// A feasible point of the dual program: strictly lower T with trace norm <= 1.
struct DualCertificate {
  PreannihilatorElement T;
  /// |tr(T B)|, a lower bound on the distance.
  double value = 0.0;
  /// |value - trace_norm(T) * closed-form optimum|.
  double alignment_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

/// Zeroes every entry on and above the diagonal.
PreannihilatorElement strict_truncation(const Matrix& m);

/// max_{1<=n<N} ||P_n B (I - P_n)|| on the NxN matrix B. By finite-dimensional
/// strong duality this is the optimum of the dual program.
double dual_value_closed_form(const Matrix& b);

/// Exact dual optimizer built from the top singular pair (u, v) of the
/// maximal corner block: T = v u*. Zero certificate when B is causal.
DualCertificate corner_witness(const Matrix& b);

/// Solves  sup tr(T B)  s.t.  [[Y, T], [T*, Z]] >= 0,  tr Y + tr Z <= 2,
/// T strictly lower, by ADMM on the 2N x 2N block matrix. Stops once the
/// feasible value is within tol (relative) of dual_value_closed_form(B).
///
/// Throws MaxIterationsError carrying the best value and residuals.
DualCertificate dual_solve(const Matrix& b, int max_iter = 5000, double tol = 1e-4);

/// | |tr(T (B - Q))| - ||B - Q|| * trace_norm(T) |. Q may be smaller than B,
/// in which case it is padded with zeros.
double alignment_check(const Matrix& b, const CausalOperator& q, const PreannihilatorElement& t);

struct TRecovery {
  bool ok = false;
  std::optional<PreannihilatorElement> T;
  /// Largest entry of the candidate on or above the diagonal.
  double leak = 0.0;
  /// Number of singular values grouped with the top one.
  int multiplicity = 0;
  std::string reason;
};

/// Candidate T_o = (1/k) sum_j v_j u_j* over the top singular pairs of B - Q.
/// Fails (as a value) when the candidate is not strictly lower within tol.
TRecovery recover_T_o(const Matrix& b, const CausalOperator& q, double tol = 1e-6);

struct BoundsRow {
  int n = 0;
  double mu_dual = 0.0;
  double mu_primal = 0.0;
  double gap = 0.0;
  /// trace_norm(T_n - T_M) for the corner witnesses, T_n zero-padded.
  double witness_drift = 0.0;
};

/// Lower bound from B restricted to its leading n x n block; upper bound from
/// Q restricted to the leading n x n block inside the ambient B. Rows sorted by n.
std::vector<BoundsRow> bounds_sweep(const Matrix& b, std::vector<int> n_list);

}  // namespace tvsyn
