#include "tvsyn/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace tvsyn {

namespace {

template <typename Derived>
void check_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidInputError(std::string(what) + ": matrix has non-finite entries");
  }
}

template <typename MatrixType>
Vector singular_values_of(const MatrixType& m) {
  if (m.size() == 0) return Vector();
  if (std::min(m.rows(), m.cols()) <= 16) {
    Eigen::JacobiSVD<MatrixType> svd(m);
    return svd.singularValues();
  }
  Eigen::BDCSVD<MatrixType> svd(m);
  return svd.singularValues();
}

template <typename MatrixType>
double spectral_norm_impl(const MatrixType& m) {
  check_finite(m, "spectral_norm");
  Vector s = singular_values_of(m);
  return s.size() == 0 ? 0.0 : s(0);
}

template <typename MatrixType>
double trace_norm_impl(const MatrixType& m) {
  check_finite(m, "trace_norm");
  return singular_values_of(m).sum();
}

template <typename MatrixType>
double hs_norm_impl(const MatrixType& m) {
  check_finite(m, "hs_norm");
  return m.norm();
}

template <typename Scalar>
PolarParts<Scalar> polar_impl(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  check_finite(m, "polar_decompose");
  PolarParts<Scalar> out;
  if (m.size() == 0) {
    out.isometry_factor = M::Zero(m.rows(), m.cols());
    out.positive_factor = M::Zero(m.cols(), m.cols());
    return out;
  }
  Eigen::JacobiSVD<M> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cutoff = kRankTol * (s.size() ? s(0) : 0.0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  const M& u = svd.matrixU();
  const M& v = svd.matrixV();
  out.isometry_factor = u.leftCols(rank) * v.leftCols(rank).adjoint();
  out.positive_factor =
      v.leftCols(rank) * s.head(rank).template cast<Scalar>().asDiagonal() *
      v.leftCols(rank).adjoint();
  return out;
}

template <typename MatrixType>
PartialIsometryReport partial_isometry_impl(const MatrixType& m, double tol) {
  if (!(tol > 0)) throw InvalidInputError("is_partial_isometry: tol must be positive");
  check_finite(m, "is_partial_isometry");
  Vector s = singular_values_of(m);
  double defect = 0.0;
  if (s.size() > 0) {
    const double cutoff = kRankTol * s(0);
    for (Eigen::Index i = 0; i < s.size() && s(i) > cutoff; ++i) {
      defect = std::max(defect, std::abs(s(i) - 1.0));
    }
  }
  return {defect <= tol, defect};
}

template <typename MatrixType>
CausalityDefect causality_impl(const MatrixType& m) {
  check_finite(m, "causality_defect");
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatchError("causality_defect: matrix must be square");
  CausalityDefect d{0.0, 0.0};
  for (Eigen::Index k = 0; k < n; ++k) {
    // P_k M (I - P_k): rows [0, k), cols [k, n).
    if (k > 0) {
      d.causal_defect = std::max(d.causal_defect, spectral_norm_impl(MatrixType(m.block(0, k, k, n - k))));
    }
    // P_{k+1} M (I - P_k): rows [0, k], cols [k, n).
    d.strict_defect =
        std::max(d.strict_defect, spectral_norm_impl(MatrixType(m.block(0, k, k + 1, n - k))));
  }
  return d;
}

}  // namespace

CausalOperator::CausalOperator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw DimensionMismatchError("CausalOperator: entries must be a nonempty square matrix");
  }
  check_finite(entries_, "CausalOperator");
  std::vector<std::pair<int, int>> bad;
  for (Eigen::Index j = 1; j < entries_.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      if (entries_(i, j) != 0.0) bad.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "causality violation: nonzero entries above the diagonal at";
    const std::size_t shown = std::min<std::size_t>(bad.size(), 8);
    for (std::size_t k = 0; k < shown; ++k) os << " (" << bad[k].first << "," << bad[k].second << ")";
    if (bad.size() > shown) os << " and " << bad.size() - shown << " more";
    throw CausalityViolationError(os.str(), std::move(bad));
  }
}

CausalOperator CausalOperator::lower_part(const Matrix& m) {
  Matrix l = m.triangularView<Eigen::Lower>();
  return CausalOperator(std::move(l));
}

CausalOperator CausalOperator::identity(int dim) { return CausalOperator(Matrix::Identity(dim, dim)); }

CausalOperator CausalOperator::zero(int dim) { return CausalOperator(Matrix::Zero(dim, dim)); }

PreannihilatorElement::PreannihilatorElement(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw DimensionMismatchError("PreannihilatorElement: entries must be a nonempty square matrix");
  }
  check_finite(entries_, "PreannihilatorElement");
  std::vector<std::pair<int, int>> bad;
  for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      if (entries_(i, j) != 0.0) bad.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "preannihilator element must be strictly lower triangular; offending entry ("
       << bad.front().first << "," << bad.front().second << ")";
    throw CausalityViolationError(os.str(), std::move(bad));
  }
}

PreannihilatorElement PreannihilatorElement::zero(int dim) {
  return PreannihilatorElement(Matrix::Zero(dim, dim));
}

NestStructure::NestStructure(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidInputError("NestStructure: dim must be >= 1");
}

Matrix NestStructure::projection(int n) const {
  if (n < 0 || n > dim_) throw InvalidInputError("NestStructure::projection: level out of range");
  Vector d = Vector::Zero(dim_);
  d.head(n).setOnes();
  return d.asDiagonal();
}

Matrix NestStructure::complement(int n) const {
  return Matrix::Identity(dim_, dim_) - projection(n);
}

Matrix NestStructure::atom(int n) const {
  if (n < 0 || n >= dim_) throw InvalidInputError("NestStructure::atom: level out of range");
  Matrix a = Matrix::Zero(dim_, dim_);
  a(n, n) = 1.0;
  return a;
}

double spectral_norm(const Matrix& m) { return spectral_norm_impl(m); }
double spectral_norm(const ComplexMatrix& m) { return spectral_norm_impl(m); }
double trace_norm(const Matrix& m) { return trace_norm_impl(m); }
double trace_norm(const ComplexMatrix& m) { return trace_norm_impl(m); }
double hs_norm(const Matrix& m) { return hs_norm_impl(m); }
double hs_norm(const ComplexMatrix& m) { return hs_norm_impl(m); }

Vector singular_values(const Matrix& m) {
  check_finite(m, "singular_values");
  return singular_values_of(m);
}

PolarParts<double> polar_decompose(const Matrix& m) { return polar_impl<double>(m); }
PolarParts<std::complex<double>> polar_decompose(const ComplexMatrix& m) {
  return polar_impl<std::complex<double>>(m);
}

PartialIsometryReport is_partial_isometry(const Matrix& m, double tol) {
  return partial_isometry_impl(m, tol);
}
PartialIsometryReport is_partial_isometry(const ComplexMatrix& m, double tol) {
  return partial_isometry_impl(m, tol);
}

CausalityDefect causality_defect(const Matrix& m) { return causality_impl(m); }
CausalityDefect causality_defect(const ComplexMatrix& m) { return causality_impl(m); }

Matrix reversal(int dim) { return Matrix::Identity(dim, dim).rowwise().reverse(); }

void require_finite(const Matrix& m, const char* what) { check_finite(m, what); }

}  // namespace tvsyn
