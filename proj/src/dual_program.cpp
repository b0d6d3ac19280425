#include "tvsyn/dual_program.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tvsyn/nest_distance.hpp"
#include "tvsyn/parallel.hpp"

namespace tvsyn {

namespace {

Matrix pad_to(const Matrix& m, Eigen::Index rows, Eigen::Index cols) {
  Matrix out = Matrix::Zero(rows, cols);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

void require_square(const Matrix& b, const char* what) {
  if (b.rows() != b.cols() || b.rows() < 1) {
    throw DimensionMismatchError(std::string(what) + ": symbol must be square and nonempty");
  }
  require_finite(b, what);
}

// Euclidean projection of w onto {x >= 0, sum x <= cap}.
Vector project_capped_simplex(const Vector& w, double cap) {
  Vector x = w.cwiseMax(0.0);
  if (x.sum() <= cap) return x;
  std::vector<double> u(w.data(), w.data() + w.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - cap) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0) theta = candidate;
  }
  return (w.array() - theta).cwiseMax(0.0).matrix();
}

}  // namespace

PreannihilatorElement strict_truncation(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatchError("strict_truncation: matrix must be square");
  Matrix s = m.triangularView<Eigen::StrictlyLower>();
  return PreannihilatorElement(std::move(s));
}

double dual_value_closed_form(const Matrix& b) {
  require_square(b, "dual_value_closed_form");
  const Eigen::Index n = b.rows();
  double best = 0.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    best = std::max(best, spectral_norm(Matrix(b.block(0, k, k, n - k))));
  }
  return best;
}

DualCertificate corner_witness(const Matrix& b) {
  require_square(b, "corner_witness");
  const Eigen::Index n = b.rows();
  double best = 0.0;
  Eigen::Index level = 0;
  for (Eigen::Index k = 1; k < n; ++k) {
    const double s = spectral_norm(Matrix(b.block(0, k, k, n - k)));
    if (s > best) {
      best = s;
      level = k;
    }
  }
  DualCertificate cert{PreannihilatorElement::zero(static_cast<int>(n))};
  cert.converged = true;
  if (level == 0) return cert;

  Eigen::JacobiSVD<Matrix> svd(Matrix(b.block(0, level, level, n - level)),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix t = Matrix::Zero(n, n);
  // Rows >= level, columns < level: strictly lower by construction.
  t.block(level, 0, n - level, level) = svd.matrixV().col(0) * svd.matrixU().col(0).transpose();
  cert.T = strict_truncation(t);
  cert.value = std::abs((cert.T.matrix() * b).trace());
  cert.alignment_residual = std::abs(cert.value - trace_norm(cert.T.matrix()) * best);
  return cert;
}

DualCertificate dual_solve(const Matrix& b, int max_iter, double tol) {
  require_square(b, "dual_solve");
  if (max_iter < 1) throw InvalidInputError("dual_solve: max_iter must be >= 1");
  if (!(tol > 0)) throw InvalidInputError("dual_solve: tol must be positive");

  const Eigen::Index n = b.rows();
  const double target = dual_value_closed_form(b);
  DualCertificate best{PreannihilatorElement::zero(static_cast<int>(n))};
  if (target == 0.0) {
    best.converged = true;
    return best;
  }

  // <C, X> = tr(B X12) for the symmetric block matrix X = [[Y, T], [T*, Z]].
  const Eigen::Index m = 2 * n;
  Matrix c = Matrix::Zero(m, m);
  c.topRightCorner(n, n) = 0.5 * b.transpose();
  c.bottomLeftCorner(n, n) = 0.5 * b;

  Matrix mask = Matrix::Ones(m, m);
  Matrix strict = Matrix::Zero(n, n);
  strict.triangularView<Eigen::StrictlyLower>().setOnes();
  mask.topRightCorner(n, n) = strict;
  mask.bottomLeftCorner(n, n) = strict.transpose();

  Matrix xb = Matrix::Zero(m, m);
  Matrix dual = Matrix::Zero(m, m);
  double rho = 1.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  const double goal = target * (1.0 - tol);

  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  for (int it = 1; it <= max_iter; ++it) {
    // Objective step: linear term plus the affine sparsity pattern.
    const Matrix xa = mask.cwiseProduct(xb - dual + c / rho);
    // PSD cone intersected with the trace budget.
    const Matrix v = xa + dual;
    eig.compute(0.5 * (v + v.transpose()));
    const Vector lam = project_capped_simplex(eig.eigenvalues(), 2.0);
    const Matrix xb_next = eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().transpose();

    dual_res = rho * (xb_next - xb).norm();
    xb = xb_next;
    primal_res = (xa - xb).norm();
    dual += xa - xb;

    if (primal_res > 10.0 * dual_res) {
      rho *= 2.0;
      dual /= 2.0;
    } else if (dual_res > 10.0 * primal_res) {
      rho /= 2.0;
      dual *= 2.0;
    }

    // Feasible witness: strictly lower part of X12, scaled into the unit ball.
    Matrix t = xb.topRightCorner(n, n).triangularView<Eigen::StrictlyLower>();
    const double tn = trace_norm(t);
    if (tn > 1.0) t /= tn;
    const double value = (t * b).trace();
    if (value > best.value) {
      best.T = PreannihilatorElement(t);
      best.value = value;
    }
    best.iterations = it;
    best.primal_residual = primal_res;
    best.dual_residual = dual_res;
    if (best.value >= goal) {
      best.converged = true;
      break;
    }
  }
  best.alignment_residual = std::abs(best.value - trace_norm(best.T.matrix()) * target);
  if (!best.converged) {
    std::ostringstream os;
    os << "dual_solve: no convergence after " << max_iter << " iterations (best value "
       << best.value << ", closed form " << target << ", primal residual " << primal_res
       << ", dual residual " << dual_res << ")";
    throw MaxIterationsError(os.str(), best.value, primal_res, dual_res);
  }
  return best;
}

double alignment_check(const Matrix& b, const CausalOperator& q, const PreannihilatorElement& t) {
  require_square(b, "alignment_check");
  const Matrix residual = b - pad_to(q.matrix(), b.rows(), b.cols());
  const Matrix tm = pad_to(t.matrix(), b.rows(), b.cols());
  return std::abs(std::abs((tm * residual).trace()) - spectral_norm(residual) * trace_norm(tm));
}

TRecovery recover_T_o(const Matrix& b, const CausalOperator& q, double tol) {
  require_square(b, "recover_T_o");
  const Eigen::Index n = b.rows();
  const Matrix residual = b - pad_to(q.matrix(), n, n);
  TRecovery out;
  Eigen::JacobiSVD<Matrix> svd(residual, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  if (s(0) <= 0.0) {
    out.reason = "B - Q is zero; no maximizing vectors";
    return out;
  }
  int k = 0;
  while (k < s.size() && s(k) >= s(0) * (1.0 - tol)) ++k;
  out.multiplicity = k;

  Matrix t = Matrix::Zero(n, n);
  for (int j = 0; j < k; ++j) t += svd.matrixV().col(j) * svd.matrixU().col(j).transpose();
  t /= static_cast<double>(k);
  out.leak = Matrix(t.triangularView<Eigen::Upper>()).cwiseAbs().maxCoeff();
  if (out.leak > tol) {
    std::ostringstream os;
    os << "candidate built from " << k << " top singular pair(s) leaves the preannihilator (leak "
       << out.leak << ")";
    out.reason = os.str();
    return out;
  }
  Matrix strict = t.triangularView<Eigen::StrictlyLower>();
  const double tn = trace_norm(strict);
  if (tn > 0) strict /= tn;
  out.T = PreannihilatorElement(std::move(strict));
  out.ok = true;
  return out;
}

std::vector<BoundsRow> bounds_sweep(const Matrix& b, std::vector<int> n_list) {
  require_square(b, "bounds_sweep");
  const int ambient = static_cast<int>(b.rows());
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  for (int n : n_list) {
    if (n < 1 || n > ambient) {
      throw InvalidInputError("bounds_sweep: every truncation must satisfy 1 <= n <= ambient");
    }
  }

  const Matrix full_witness = corner_witness(b).T.matrix();
  std::vector<BoundsRow> rows(n_list.size());
  parallel_for(static_cast<int>(n_list.size()), [&](int idx) {
    const int n = n_list[idx];
    const Matrix leading = b.topLeftCorner(n, n);
    BoundsRow row;
    row.n = n;
    row.mu_dual = dual_value_closed_form(leading);
    row.mu_primal = restricted_distance(b, n).mu;
    row.gap = row.mu_primal - row.mu_dual;
    row.witness_drift =
        trace_norm(Matrix(pad_to(corner_witness(leading).T.matrix(), ambient, ambient) - full_witness));
    rows[idx] = row;
  }, 2);
  return rows;
}

}  // namespace tvsyn
