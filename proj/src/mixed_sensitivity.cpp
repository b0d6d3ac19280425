#include "tvsyn/mixed_sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tvsyn/factorization.hpp"
#include "tvsyn/nest_distance.hpp"
#include "tvsyn/parallel.hpp"
#include "tvsyn/tv_hankel.hpp"

namespace tvsyn {

namespace {

constexpr double kLevelInflation = 1e-9;

Matrix lower_solve(const Matrix& l, const Matrix& rhs) {
  return l.triangularView<Eigen::Lower>().solve(rhs);
}

// X R^{-1} for lower-triangular R.
Matrix right_lower_solve(const Matrix& x, const Matrix& r) {
  return r.transpose().triangularView<Eigen::Upper>().solve(x.transpose()).transpose();
}

StackedOperator split(const Matrix& m) {
  const Eigen::Index n = m.cols();
  return {m.topRows(n), m.bottomRows(n)};
}

// [X[:l, l:]; Omega[:, l:]] for l = 0..N-1.
Matrix staircase_block(const Matrix& x, const Matrix& omega, int level) {
  const int n = static_cast<int>(x.cols());
  Matrix block(level + omega.rows(), n - level);
  block.topRows(level) = x.block(0, level, level, n - level);
  block.bottomRows(omega.rows()) = omega.rightCols(n - level);
  return block;
}

}  // namespace

Matrix StackedOperator::dense() const {
  Matrix m(top.rows() + bottom.rows(), top.cols());
  m << top, bottom;
  return m;
}

Matrix MixedPlant::hankel_symbol() const { return R2.top.transpose() * W.matrix(); }

StackedOperator MixedPlant::t1() const {
  return {W.matrix(), Matrix::Zero(dim(), dim())};
}

MixedPlant build_mixed_plant(const CausalOperator& w, const CausalOperator& v,
                             const CausalOperator& p, double tol) {
  if (w.dim() != v.dim() || w.dim() != p.dim()) {
    throw DimensionMismatchError("build_mixed_plant: W, V, P must share one dimension");
  }
  const int n = w.dim();
  MixedPlant mp;
  mp.W = w;
  mp.V = v;
  mp.P = p;

  const Matrix gram = w.matrix().transpose() * w.matrix() + v.matrix().transpose() * v.matrix();
  try {
    mp.lambda1 = spectral_factor_causal(gram, tol);
  } catch (const NotPositiveDefiniteError& e) {
    std::ostringstream os;
    os << "closedness assumption violated: W*W + V*V is not positive definite (smallest eigenvalue "
       << e.eigenvalue() << ")";
    throw AssumptionViolationError("closedness", os.str(), e.eigenvalue());
  }

  try {
    const InnerOuterPair io =
        inner_outer(CausalOperator::lower_part(mp.lambda1.matrix() * p.matrix()), tol);
    mp.U1 = io.inner;
    mp.G = io.outer;
  } catch (const AssumptionViolationError& e) {
    std::ostringstream os;
    os << "assumption A3 violated: G in lambda1 P = U1 G is not invertible (condition number "
       << e.condition() << ")";
    throw AssumptionViolationError("A3", os.str(), e.condition());
  }

  Matrix stacked(2 * n, n);
  stacked << w.matrix(), v.matrix();
  const Matrix r = right_lower_solve(stacked, mp.lambda1.matrix()) * mp.U1.matrix();
  mp.R = split(r);
  mp.lambda = spectral_factor_causal(Matrix(r.transpose() * r), tol);
  const Matrix r2 = right_lower_solve(r, mp.lambda.matrix());
  mp.R2 = split(r2);

  const Matrix r21t_w = mp.R2.top.transpose() * w.matrix();
  mp.omega = {w.matrix() - mp.R2.top * r21t_w, -mp.R2.bottom * r21t_w};
  return mp;
}

double mixed_value_hankel_toeplitz(const MixedPlant& mp) {
  const Matrix omega = mp.omega.dense();
  return std::sqrt(mixed_operator_norm(mp.hankel_symbol(), omega.transpose() * omega));
}

double mixed_value_gamma(const MixedPlant& mp) {
  const int n = mp.dim();
  const int dom = lower_basis_size(n);
  const Matrix t1 = mp.t1().dense();
  const Matrix r2 = mp.R2.dense();
  Matrix gamma(2 * n * n, dom);
  parallel_for(dom, [&](int col) {
    Vector e = Vector::Zero(dom);
    e(col) = 1.0;
    const Matrix ta = t1 * unvectorize_lower(e, n);
    const Matrix proj = Matrix(r2.transpose() * ta).triangularView<Eigen::Lower>();
    const Matrix image = ta - r2 * proj;
    gamma.col(col) = Eigen::Map<const Vector>(image.data(), image.size());
  }, 64);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gamma.transpose() * gamma, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues()(dom - 1)));
}

MixedResult mixed_synthesize(const MixedPlant& mp, const MixedOptions& opts) {
  if (opts.bisection_iterations < 0) {
    throw InvalidInputError("mixed_synthesize: bisection_iterations must be >= 0");
  }
  const int n = mp.dim();
  MixedResult res;
  res.method_values.hankel_toeplitz = mixed_value_hankel_toeplitz(mp);
  res.method_values.gamma_projection = mixed_value_gamma(mp);
  res.method_tags = {"mu:hankel-toeplitz", "mu:gamma-projection", "mu:parrott-bisection"};

  const Matrix x = mp.hankel_symbol();
  const Matrix omega = mp.omega.dense();
  const Matrix t1 = mp.t1().dense();
  const Matrix r2 = mp.R2.dense();

  // Feasibility of level mu: staircase completion of [X - Q~; Omega].
  auto try_level = [&](double mu, Matrix& q_out) {
    try {
      const Matrix completed =
          staircase_complete(omega, x, mu * (1.0 + kLevelInflation), opts.tol);
      q_out = Matrix(x - completed).triangularView<Eigen::Lower>();
      return true;
    } catch (const CompletionInfeasibleError&) {
      return false;
    }
  };

  double lo = res.method_values.hankel_toeplitz;
  double hi = lo * (1.0 + 1e-3);
  Matrix q_best;
  if (!try_level(lo, q_best)) {
    Matrix q_hi;
    int widen = 0;
    while (!try_level(hi, q_hi)) {
      if (++widen > 60) {
        throw MethodDisagreementError("mixed_synthesize: no feasible level above the lower bound",
                                      hi - lo);
      }
      hi = std::max(2.0 * hi, 1e-300);
    }
    q_best = q_hi;
    for (int it = 0; it < opts.bisection_iterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      Matrix q_mid;
      if (try_level(mid, q_mid)) {
        hi = mid;
        q_best = q_mid;
      } else {
        lo = mid;
      }
      res.bisection_steps = it + 1;
    }
  }
  res.Q_absorbed = CausalOperator(q_best);
  const Matrix residual = t1 - r2 * q_best;
  res.method_values.direct_convex = spectral_norm(residual);

  res.mu_o = res.method_values.hankel_toeplitz;
  const double vals[] = {res.method_values.hankel_toeplitz, res.method_values.gamma_projection,
                         res.method_values.direct_convex};
  const double spread = *std::max_element(std::begin(vals), std::end(vals)) -
                        *std::min_element(std::begin(vals), std::end(vals));
  if (spread > opts.agreement_tol * res.mu_o + 1e-12) {
    std::ostringstream os;
    os << "mixed_synthesize: methods disagree (hankel-toeplitz " << vals[0] << ", gamma " << vals[1]
       << ", direct " << vals[2] << ", spread " << spread << ")";
    throw MethodDisagreementError(os.str(), spread);
  }

  const Matrix youla =
      lower_solve(mp.G.matrix(), lower_solve(mp.lambda.matrix(), q_best));
  res.Q = CausalOperator::lower_part(youla);

  double best = -1.0;
  for (int level = 0; level < n; ++level) {
    const double s = spectral_norm(staircase_block(x, omega, level));
    if (s > best) {
      best = s;
      res.argmax_level = level;
    }
  }
  if (res.mu_o > 0) {
    Eigen::JacobiSVD<Matrix> svd(staircase_block(x, omega, res.argmax_level), Eigen::ComputeThinV);
    Vector v = Vector::Zero(n);
    v.tail(n - res.argmax_level) = svd.matrixV().col(0);
    res.allpass_defect = std::abs((residual * v).norm() / res.mu_o - 1.0);
    res.partial_isometry_defect = is_partial_isometry(Matrix(residual / res.mu_o), 1e-5).defect;
  } else {
    res.method_tags.push_back("allpass:undefined-zero-optimum");
  }
  return res;
}

}  // namespace tvsyn
