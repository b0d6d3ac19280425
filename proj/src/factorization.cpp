#include "tvsyn/factorization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace tvsyn {

namespace {

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> anti_cholesky(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m, double tol) {
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatchError("spectral_factor_causal: matrix must be square and nonempty");
  }
  if (!m.allFinite()) throw InvalidInputError("spectral_factor_causal: non-finite entries");
  const double scale = std::max(m.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw InvalidInputError("spectral_factor_causal: matrix is not Hermitian");
  }
  const M herm = (m + m.adjoint()) / Scalar(2);

  Eigen::SelfAdjointEigenSolver<M> eig(herm, Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues()(0);
  const double lmax = eig.eigenvalues()(eig.eigenvalues().size() - 1);
  if (!(lmax > 0) || lmin < tol * lmax) {
    std::ostringstream os;
    os << "spectral_factor_causal: matrix is not positive definite (smallest eigenvalue " << lmin
       << ", largest " << lmax << ", threshold ratio " << tol << ")";
    throw NotPositiveDefiniteError(os.str(), lmin);
  }

  // Cholesky of J M J = L L*, then Lambda = J L* J is lower with Lambda* Lambda = M.
  const M flipped = herm.reverse();
  Eigen::LLT<M> llt(flipped);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefiniteError("spectral_factor_causal: Cholesky breakdown", lmin);
  }
  M lower = llt.matrixL();
  M lambda = M(lower.adjoint()).reverse();
  lambda.template triangularView<Eigen::StrictlyUpper>().setZero();
  return lambda;
}

}  // namespace

CausalOperator spectral_factor_causal(const Matrix& m, double tol) {
  return CausalOperator(anti_cholesky<double>(m, tol));
}

ComplexMatrix spectral_factor_causal(const ComplexMatrix& m, double tol) {
  return anti_cholesky<std::complex<double>>(m, tol);
}

double condition_number(const Matrix& m) {
  const Vector s = singular_values(m);
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

InnerOuterPair inner_outer(const CausalOperator& t, double tol) {
  const Matrix& a = t.matrix();
  const int n = t.dim();
  // QL of T from QR of J T J: J T J = Q R  =>  T = (J Q J)(J R J).
  Eigen::HouseholderQR<Matrix> qr(a.reverse());
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix outer = r.reverse();
  Matrix inner = q.reverse();

  for (int i = 0; i < n; ++i) {
    if (outer(i, i) < 0.0) {
      outer.row(i) *= -1.0;
      inner.col(i) *= -1.0;
    }
  }
  outer.triangularView<Eigen::StrictlyUpper>().setZero();

  const double cond = condition_number(outer);
  if (!(cond * tol <= 1.0)) {
    std::ostringstream os;
    os << "assumption A1 violated: outer factor is not invertible (condition number " << cond
       << " exceeds " << 1.0 / tol << ")";
    throw AssumptionViolationError("A1", os.str(), cond);
  }
  // Inner factor of a square causal operator is lower triangular up to rounding.
  return {CausalOperator::lower_part(inner), CausalOperator(std::move(outer)),
          FactorOrder::kInnerFirst};
}

InnerOuterPair outer_inner(const CausalOperator& t, double tol) {
  const Matrix flipped = Matrix(t.matrix().transpose()).reverse();
  InnerOuterPair io = inner_outer(CausalOperator::lower_part(flipped), tol);
  Matrix outer = Matrix(io.outer.matrix().transpose()).reverse();
  Matrix inner = Matrix(io.inner.matrix().transpose()).reverse();
  return {CausalOperator::lower_part(inner), CausalOperator::lower_part(outer),
          FactorOrder::kOuterFirst};
}

A1Report check_A1(const CausalOperator& t2, const CausalOperator& t3, double tol) {
  A1Report report;
  std::ostringstream msg;
  bool ok = true;
  try {
    report.t2_outer_condition = condition_number(inner_outer(t2, tol).outer.matrix());
  } catch (const AssumptionViolationError& e) {
    ok = false;
    report.t2_outer_condition = e.condition();
    msg << "T2: outer factor near-singular (condition number " << e.condition() << "); ";
  }
  try {
    report.t3_outer_condition = condition_number(outer_inner(t3, tol).outer.matrix());
  } catch (const AssumptionViolationError& e) {
    ok = false;
    report.t3_outer_condition = e.condition();
    msg << "T3: outer factor near-singular (condition number " << e.condition() << "); ";
  }
  report.passed = ok;
  report.message = ok ? "A1 holds: both outer factors invertible" : msg.str();
  return report;
}

}  // namespace tvsyn
