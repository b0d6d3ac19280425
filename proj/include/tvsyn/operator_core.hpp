#pragma once

#include <Eigen/Dense>

#include "tvsyn/errors.hpp"

namespace tvsyn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Singular values below kRankTol * sigma_max count as zero everywhere.
inline constexpr double kRankTol = 1e-12;

/// Truncated causal operator: a square lower-triangular matrix.
class CausalOperator {
 public:
  CausalOperator() = default;

  /// Throws CausalityViolationError if any entry above the diagonal is nonzero.
  explicit CausalOperator(Matrix entries);

  /// Keeps the lower triangle (diagonal included) and drops the rest.
  static CausalOperator lower_part(const Matrix& m);
  static CausalOperator identity(int dim);
  static CausalOperator zero(int dim);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

/// Element of the preannihilator: strictly lower triangular.
class PreannihilatorElement {
 public:
  PreannihilatorElement() = default;
  explicit PreannihilatorElement(Matrix entries);

  static PreannihilatorElement zero(int dim);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

/// Coordinate nest P_0 = 0 < P_1 < ... < P_N = I on R^N.
class NestStructure {
 public:
  explicit NestStructure(int dim);

  int dim() const noexcept { return dim_; }
  /// P_n: diagonal with n leading ones.
  Matrix projection(int n) const;
  /// I - P_n.
  Matrix complement(int n) const;
  /// Delta_n = P_{n+1} - P_n, for 0 <= n < N.
  Matrix atom(int n) const;

 private:
  int dim_;
};

template <typename Scalar>
struct PolarParts {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> isometry_factor;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> positive_factor;
};

struct PartialIsometryReport {
  bool is_partial_isometry;
  double defect;
};

struct CausalityDefect {
  double causal_defect;
  double strict_defect;
};

// Norms. All throw InvalidInputError on non-finite entries.
double spectral_norm(const Matrix& m);
double spectral_norm(const ComplexMatrix& m);
double trace_norm(const Matrix& m);
double trace_norm(const ComplexMatrix& m);
double hs_norm(const Matrix& m);
double hs_norm(const ComplexMatrix& m);

/// Singular values in decreasing order; empty input gives an empty vector.
Vector singular_values(const Matrix& m);

/// M = U (M*M)^{1/2}, U a partial isometry with initial space range((M*M)^{1/2}).
PolarParts<double> polar_decompose(const Matrix& m);
PolarParts<std::complex<double>> polar_decompose(const ComplexMatrix& m);

/// defect = max |sigma - 1| over the numerically nonzero singular values.
PartialIsometryReport is_partial_isometry(const Matrix& m, double tol);
PartialIsometryReport is_partial_isometry(const ComplexMatrix& m, double tol);

CausalityDefect causality_defect(const Matrix& m);
CausalityDefect causality_defect(const ComplexMatrix& m);

/// Index reversal J (anti-identity).
Matrix reversal(int dim);

/// Throws InvalidInputError naming `what` when m has NaN or infinite entries.
void require_finite(const Matrix& m, const char* what);

}  // namespace tvsyn
