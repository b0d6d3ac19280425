#pragma once

#include "tvsyn/operator_core.hpp"

namespace tvsyn {

/// Lower-triangular entries (i >= j), column-major: the orthonormal HS basis
/// of the causal Hilbert-Schmidt matrices.
int lower_basis_size(int dim);
Vector vectorize_lower(const Matrix& a);
Matrix unvectorize_lower(const Vector& v, int dim);

/// Strictly upper entries (i < j), column-major.
int strict_upper_basis_size(int dim);
Vector vectorize_strict_upper(const Matrix& a);
Matrix unvectorize_strict_upper(const Vector& v, int dim);

/// A -> strict-upper part of B A, realized on the bases above.
struct HankelMap {
  Matrix symbol;
  int dim_domain = 0;
  int dim_codomain = 0;
  Matrix matrix;
};

/// A -> lower part (diagonal kept) of G A, on the lower basis.
struct ToeplitzMap {
  Matrix symbol_gram;
  int dim = 0;
  Matrix matrix;
};

/// Strict-upper part of B A.
Matrix hankel_apply(const Matrix& b, const CausalOperator& a);
HankelMap build_hankel_map(const Matrix& b);

struct HankelNorm {
  double norm = 0.0;
  /// Right singular vector as a lower-triangular matrix with hs_norm 1. The
  /// largest-magnitude entry is made positive.
  CausalOperator maximizer;
  /// "svd" up to dimension 40, "power" beyond.
  std::string method;
  int iterations = 0;
};

HankelNorm hankel_norm(const Matrix& b);

struct QFromMaximizer {
  CausalOperator Q;
  /// Unknowns of Q fixed by the identity Q A = lower(B A).
  int determined = 0;
  /// N(N+1)/2.
  int unknowns = 0;
  /// True if the undetermined directions were filled from the Parrott completion.
  bool completed = false;
  double identity_residual = 0.0;
};

/// Solves Q A = B A - hankel_apply(B, A) row by row in least squares. When A
/// is rank-deficient the null directions take the Parrott completion's values.
/// Throws IdentityViolationError if the system is inconsistent beyond tol.
QFromMaximizer q_from_maximizing_vector(const Matrix& b, const CausalOperator& a,
                                        double tol = 1e-8);

/// Lower part of G A. Throws InvalidInputError if G is not symmetric.
CausalOperator toeplitz_apply(const Matrix& g, const CausalOperator& a);
ToeplitzMap build_toeplitz_map(const Matrix& g);

/// Largest eigenvalue of H*H + T_gram on the lower basis (a squared norm).
/// Throws InvalidInputError if gram is not symmetric PSD.
double mixed_operator_norm(const Matrix& hankel_symbol, const Matrix& gram);

}  // namespace tvsyn
