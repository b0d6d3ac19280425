#pragma once

#include <string>

#include "tvsyn/operator_core.hpp"

namespace tvsyn {

enum class FactorOrder { kInnerFirst, kOuterFirst };

/// inner-first: T = inner * outer with inner*inner = I.
/// outer-first: T = outer * inner with inner inner* = I.
/// The outer factor always has a strictly positive diagonal.
struct InnerOuterPair {
  CausalOperator inner;
  CausalOperator outer;
  FactorOrder order;
};

/// Causal outer spectral factor: Lambda lower triangular with positive
/// diagonal and Lambda* Lambda = m. Computed as a Cholesky factor of the
/// index-reversed matrix, reversed back.
///
/// Throws InvalidInputError if m is not Hermitian and NotPositiveDefiniteError
/// (carrying the smallest eigenvalue) if lambda_min < tol * lambda_max.
CausalOperator spectral_factor_causal(const Matrix& m, double tol = kRankTol);
ComplexMatrix spectral_factor_causal(const ComplexMatrix& m, double tol = kRankTol);

/// T = T_i T_o. Requires cond(T) <= 1/tol, otherwise AssumptionViolationError("A1").
InnerOuterPair inner_outer(const CausalOperator& t, double tol = kRankTol);

/// T = T_o T_i, via inner_outer of J T* J.
InnerOuterPair outer_inner(const CausalOperator& t, double tol = kRankTol);

struct A1Report {
  bool passed = false;
  double t2_outer_condition = 0.0;
  double t3_outer_condition = 0.0;
  std::string message;
};

/// Never throws on factorization failure; failures are reported.
A1Report check_A1(const CausalOperator& t2, const CausalOperator& t3, double tol = kRankTol);

/// 2-norm condition number; infinity for singular input.
double condition_number(const Matrix& m);

}  // namespace tvsyn
