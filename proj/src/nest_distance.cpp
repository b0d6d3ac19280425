#include "tvsyn/nest_distance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tvsyn/parallel.hpp"

namespace tvsyn {

namespace {

constexpr double kParrottInflation = 1e-9;

Matrix pad_to(const Matrix& m, Eigen::Index rows, Eigen::Index cols) {
  Matrix out = Matrix::Zero(rows, cols);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

// (mu^2 I - G)^+ for symmetric G, with the global rank policy.
Matrix shifted_pinv(const Matrix& gram, double mu2) {
  const Eigen::Index n = gram.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(mu2 * Matrix::Identity(n, n) - gram);
  const Vector& w = eig.eigenvalues();
  const double scale = w.cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(w(k)) > kRankTol * scale) inv(k) = 1.0 / w(k);
  }
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}

void require_square(const Matrix& b, const char* what) {
  if (b.rows() != b.cols() || b.rows() < 1) {
    throw DimensionMismatchError(std::string(what) + ": symbol must be square and nonempty");
  }
  require_finite(b, what);
}

Matrix lower_inverse(const CausalOperator& l) {
  const int n = l.dim();
  return l.matrix().triangularView<Eigen::Lower>().solve(Matrix::Identity(n, n));
}

}  // namespace

FactoredPlant reduce_to_distance(const CausalOperator& t1, const CausalOperator& t2,
                                 const CausalOperator& t3, double tol) {
  if (t1.dim() != t2.dim() || t1.dim() != t3.dim()) {
    throw DimensionMismatchError("reduce_to_distance: T1, T2, T3 must share one dimension");
  }
  const A1Report a1 = check_A1(t2, t3, tol);
  if (!a1.passed) {
    throw AssumptionViolationError(
        "A1", "assumption A1 violated: " + a1.message,
        std::max(a1.t2_outer_condition, a1.t3_outer_condition));
  }
  FactoredPlant plant{t1, t2, t3, inner_outer(t2, tol), outer_inner(t3, tol), {}, {}, {}};
  plant.symbol = plant.t2_factors.inner.matrix().transpose() * t1.matrix() *
                 plant.t3_factors.inner.matrix().transpose();
  plant.t2_outer_inverse = lower_inverse(plant.t2_factors.outer);
  plant.t3_outer_inverse = lower_inverse(plant.t3_factors.outer);
  return plant;
}

std::vector<double> corner_block_norms(const Matrix& b, int upto) {
  require_square(b, "corner_block_norms");
  const int m = static_cast<int>(b.rows());
  if (upto < 1 || upto > m) throw InvalidInputError("arveson_distance: need 1 <= upto <= dim");
  std::vector<double> norms(upto, 0.0);
  parallel_for(upto, [&](int idx) {
    const int n = idx + 1;
    if (n < m) norms[idx] = spectral_norm(Matrix(b.block(0, n, n, m - n)));
  }, 16);
  return norms;
}

CornerMax arveson_distance(const Matrix& b, int upto) {
  const std::vector<double> norms = corner_block_norms(b, upto);
  CornerMax best{0.0, 1};
  for (int idx = 0; idx < upto; ++idx) {
    if (norms[idx] > best.mu) best = {norms[idx], idx + 1};
  }
  return best;
}

CornerMax restricted_distance(const Matrix& b, int n) {
  require_square(b, "restricted_distance");
  const int m = static_cast<int>(b.rows());
  if (n < 1 || n > m) throw InvalidInputError("restricted_distance: need 1 <= n <= dim");
  const int tail = m - n;
  std::vector<double> norms(n + 1, 0.0);
  parallel_for(n + 1, [&](int level) {
    Matrix block(level + tail, m - level);
    block.topRows(level) = b.block(0, level, level, m - level);
    block.bottomRows(tail) = b.block(n, level, tail, m - level);
    if (block.size() > 0) norms[level] = spectral_norm(block);
  }, 16);
  CornerMax best{0.0, tail > 0 ? 0 : 1};
  for (int level = 0; level <= n; ++level) {
    if (norms[level] > best.mu) best = {norms[level], level};
  }
  return best;
}

Matrix staircase_complete(const Matrix& fixed, const Matrix& top, double mu, double tol) {
  const Eigen::Index n = top.rows();
  const Eigen::Index cols = top.cols();
  const Eigen::Index f = fixed.rows();
  if (cols < n) throw DimensionMismatchError("staircase_complete: top block must be wide");
  if (f > 0 && fixed.cols() != cols) {
    throw DimensionMismatchError("staircase_complete: fixed rows must match the column count");
  }
  if (!(mu >= 0)) throw InvalidInputError("staircase_complete: mu must be nonnegative");
  const double mu2 = mu * mu;
  const double limit = mu + 10.0 * tol * std::max(1.0, mu);

  Matrix r = top;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j + k < n; ++j) {
      const Eigen::Index i = j + k;
      const Eigen::Index rows_before = f + i;
      const Eigen::Index cols_after = cols - j - 1;
      Matrix a(rows_before, cols_after);
      Vector bv(rows_before);
      if (f > 0) {
        a.topRows(f) = fixed.rightCols(cols_after);
        bv.head(f) = fixed.col(j);
      }
      a.bottomRows(i) = r.block(0, j + 1, i, cols_after);
      bv.tail(i) = r.col(j).head(i);
      const Eigen::RowVectorXd cv = r.row(i).tail(cols_after);

      double x = 0.0;
      if (rows_before > 0 && cols_after > 0) {
        if (rows_before <= cols_after) {
          x = -(cv * a.transpose() * shifted_pinv(a * a.transpose(), mu2) * bv)(0);
        } else {
          x = -(cv * shifted_pinv(a.transpose() * a, mu2) * (a.transpose() * bv))(0);
        }
      }
      r(i, j) = x;

      Matrix block(rows_before + 1, cols_after + 1);
      block.topLeftCorner(rows_before, 1) = bv;
      block.topRightCorner(rows_before, cols_after) = a;
      block(rows_before, 0) = x;
      block.bottomRightCorner(1, cols_after) = cv;
      const double achieved = spectral_norm(block);
      if (achieved > limit) {
        std::ostringstream os;
        os << "completion infeasible at entry (" << i + 1 << "," << j + 1 << "): block norm "
           << achieved << " exceeds level " << mu << "; mu is below the true distance";
        throw CompletionInfeasibleError(os.str(), achieved);
      }
    }
  }
  return r;
}

CausalOperator parrott_complete(const Matrix& b, int n, double mu, double tol) {
  require_square(b, "parrott_complete");
  const int m = static_cast<int>(b.rows());
  if (n < 1 || n > m) throw InvalidInputError("parrott_complete: need 1 <= n <= dim");
  const double level = mu * (1.0 + kParrottInflation);
  const Matrix completed =
      staircase_complete(b.bottomRows(m - n), b.topRows(n), level, tol);
  Matrix q = b.topLeftCorner(n, n) - completed.leftCols(n);
  q.triangularView<Eigen::StrictlyUpper>().setZero();
  return CausalOperator(std::move(q));
}

CausalOperator parrott_complete(const Matrix& b, double mu, double tol) {
  return parrott_complete(b, static_cast<int>(b.rows()), mu, tol);
}

double allpass_defect(const Matrix& b, const CausalOperator& q, const PreannihilatorElement& t,
                      double mu, double /*tol*/) {
  require_square(b, "allpass_defect");
  if (!(mu > 0)) throw InvalidInputError("allpass_defect: mu must be positive");
  const Eigen::Index m = b.rows();
  const Matrix residual = b - pad_to(q.matrix(), m, m);
  const Matrix tm = pad_to(t.matrix(), m, m);
  Eigen::JacobiSVD<Matrix> svd(tm, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  if (s(0) <= 0.0) throw UndefinedCertificateError("allpass_defect: dual certificate is zero");
  double defect = 0.0;
  // Directions below 1e-6 relative come from truncating T to strictly lower
  // form, not from the certificate itself.
  for (Eigen::Index k = 0; k < s.size() && s(k) > 1e-6 * s(0); ++k) {
    const double gain = (residual * svd.matrixU().col(k)).norm();
    defect = std::max(defect, std::abs(gain / mu - 1.0));
  }
  return defect;
}

SynthesisResult synthesize_symbol(const Matrix& b, const SynthesisOptions& opts) {
  require_square(b, "synthesize");
  const int m = static_cast<int>(b.rows());
  const int n = opts.n == 0 ? m : opts.n;
  if (n < 1 || n > m) throw InvalidInputError("synthesize: need 1 <= n <= ambient");

  SynthesisResult res;
  res.n = n;
  res.ambient = m;
  const CornerMax primal = restricted_distance(b, n);
  res.mu_primal = primal.mu;
  res.argmax_level = primal.level;
  res.method_tags.push_back(n == m ? "primal:arveson-corner-blocks" : "primal:restricted-staircase");

  std::vector<double> levels = corner_block_norms(b, m);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  const double second = levels.size() > 1 ? levels[1] : 0.0;
  res.dominance_margin = res.mu_primal > 0 ? (res.mu_primal - second) / res.mu_primal : 0.0;

  res.Q = parrott_complete(b, n, res.mu_primal, opts.tol);
  res.Q_youla = res.Q;
  res.method_tags.push_back("Q:parrott-central-completion");

  const Matrix leading = b.topLeftCorner(n, n);
  if (opts.run_sdp) {
    try {
      const DualCertificate sdp = dual_solve(leading, opts.sdp_max_iter, opts.sdp_tol);
      res.sdp_value = sdp.value;
      res.sdp_converged = true;
      res.sdp_iterations = sdp.iterations;
    } catch (const MaxIterationsError& e) {
      res.sdp_value = e.best_value();
      res.sdp_iterations = opts.sdp_max_iter;
    }
    res.method_tags.push_back("dual:sdp-admm");
  }

  // Certificate chain: maximizing vectors of B - Q, then the corner witness,
  // then the SDP iterate.
  res.T_dual = PreannihilatorElement::zero(n);
  res.certificate_source = "none";
  const TRecovery recovered = recover_T_o(leading, res.Q);
  const DualCertificate corner = corner_witness(leading);
  if (recovered.ok) {
    res.T_dual = *recovered.T;
    res.certificate_source = "maximizing-vectors";
  } else {
    if (corner.value > 0.0) {
      res.T_dual = corner.T;
      res.certificate_source = "corner-witness";
    } else if (opts.run_sdp && res.sdp_value > 0.0) {
      res.T_dual = dual_solve(leading, opts.sdp_max_iter, 1.0).T;
      res.certificate_source = "sdp-admm";
    }
  }
  res.method_tags.push_back("certificate:" + res.certificate_source);

  const double tn = trace_norm(res.T_dual.matrix());
  res.mu_dual = tn > 0 ? std::abs((res.T_dual.matrix() * leading).trace()) / std::max(1.0, tn) : 0.0;
  res.mu_dual = std::max({res.mu_dual, corner.value, res.sdp_value});
  res.gap = res.mu_primal - res.mu_dual;
  res.gap_warning = res.gap > opts.gap_tol * std::max(1.0, res.mu_primal);

  const double local_mu = spectral_norm(Matrix(leading - res.Q.matrix()));
  res.alignment_residual = alignment_check(leading, res.Q, res.T_dual);
  if (tn > 0 && local_mu > 0) {
    res.allpass_defect = allpass_defect(leading, res.Q, res.T_dual, local_mu, opts.tol);
  }
  return res;
}

SynthesisResult synthesize(const FactoredPlant& plant, const SynthesisOptions& opts) {
  SynthesisResult res = synthesize_symbol(plant.symbol, opts);
  const int n = res.n;
  Matrix youla = plant.t2_outer_inverse.topLeftCorner(n, n) * res.Q.matrix() *
                 plant.t3_outer_inverse.topLeftCorner(n, n);
  res.Q_youla = CausalOperator::lower_part(youla);
  res.method_tags.push_back("youla:outer-unabsorbed");
  return res;
}

CausalOperator controller_from_Q(const CausalOperator& q, const CausalOperator& p) {
  if (q.dim() != p.dim()) throw DimensionMismatchError("controller_from_Q: dimension mismatch");
  const int n = q.dim();
  const Matrix resolvent = Matrix::Identity(n, n) - p.matrix() * q.matrix();
  const Vector diag = resolvent.diagonal().cwiseAbs();
  if (diag.minCoeff() <= 1e-12 * std::max(1.0, resolvent.cwiseAbs().maxCoeff())) {
    throw FeedbackIllPosedError("controller_from_Q: I - P Q is singular; feedback is ill-posed");
  }
  // K = Q R^{-1}  <=>  R^T K^T = Q^T with R lower triangular.
  Matrix k = resolvent.transpose().triangularView<Eigen::Upper>().solve(q.matrix().transpose()).transpose();
  return CausalOperator::lower_part(k);
}

CausalOperator youla_from_controller(const CausalOperator& k, const CausalOperator& p) {
  if (k.dim() != p.dim()) throw DimensionMismatchError("youla_from_controller: dimension mismatch");
  const int n = k.dim();
  const Matrix resolvent = Matrix::Identity(n, n) + p.matrix() * k.matrix();
  const Vector diag = resolvent.diagonal().cwiseAbs();
  if (diag.minCoeff() <= 1e-12 * std::max(1.0, resolvent.cwiseAbs().maxCoeff())) {
    throw FeedbackIllPosedError("youla_from_controller: I + P K is singular");
  }
  Matrix q = resolvent.transpose().triangularView<Eigen::Upper>().solve(k.matrix().transpose()).transpose();
  return CausalOperator::lower_part(q);
}

}  // namespace tvsyn
