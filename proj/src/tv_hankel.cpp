#include "tvsyn/tv_hankel.hpp"

#include <cmath>
#include <sstream>

#include "tvsyn/nest_distance.hpp"
#include "tvsyn/parallel.hpp"

namespace tvsyn {

namespace {

constexpr int kDenseLimit = 40;
constexpr double kPowerTol = 1e-10;
constexpr int kPowerMaxIter = 10000;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatchError(std::string(what) + ": matrix must be square and nonempty");
  }
  require_finite(m, what);
}

void require_symmetric(const Matrix& g, const char* what) {
  require_square(g, what);
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw InvalidInputError(std::string(what) + ": Gram matrix is not symmetric");
  }
}

Matrix strict_upper(const Matrix& m) { return m.triangularView<Eigen::StrictlyUpper>(); }
Matrix lower(const Matrix& m) { return m.triangularView<Eigen::Lower>(); }

void normalize_sign(Vector& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v(k) < 0) v = -v;
}

}  // namespace

int lower_basis_size(int dim) { return dim * (dim + 1) / 2; }
int strict_upper_basis_size(int dim) { return dim * (dim - 1) / 2; }

Vector vectorize_lower(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Vector v(lower_basis_size(n));
  int k = 0;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) v(k++) = a(i, j);
  return v;
}

Matrix unvectorize_lower(const Vector& v, int dim) {
  if (v.size() != lower_basis_size(dim)) throw DimensionMismatchError("unvectorize_lower: size");
  Matrix a = Matrix::Zero(dim, dim);
  int k = 0;
  for (int j = 0; j < dim; ++j)
    for (int i = j; i < dim; ++i) a(i, j) = v(k++);
  return a;
}

Vector vectorize_strict_upper(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  Vector v(strict_upper_basis_size(n));
  int k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) v(k++) = a(i, j);
  return v;
}

Matrix unvectorize_strict_upper(const Vector& v, int dim) {
  if (v.size() != strict_upper_basis_size(dim)) {
    throw DimensionMismatchError("unvectorize_strict_upper: size");
  }
  Matrix a = Matrix::Zero(dim, dim);
  int k = 0;
  for (int j = 1; j < dim; ++j)
    for (int i = 0; i < j; ++i) a(i, j) = v(k++);
  return a;
}

Matrix hankel_apply(const Matrix& b, const CausalOperator& a) {
  require_square(b, "hankel_apply");
  if (a.dim() != b.rows()) throw DimensionMismatchError("hankel_apply: dimension mismatch");
  return strict_upper(b * a.matrix());
}

HankelMap build_hankel_map(const Matrix& b) {
  require_square(b, "build_hankel_map");
  const int n = static_cast<int>(b.rows());
  HankelMap map{b, lower_basis_size(n), strict_upper_basis_size(n), {}};
  map.matrix = Matrix::Zero(map.dim_codomain, map.dim_domain);
  // Image of E_ij is B(:, i) placed in column j, truncated to rows < j.
  parallel_for(map.dim_domain, [&](int col) {
    Vector e = Vector::Zero(map.dim_domain);
    e(col) = 1.0;
    const Matrix image = strict_upper(b * unvectorize_lower(e, n));
    map.matrix.col(col) = vectorize_strict_upper(image);
  }, 64);
  return map;
}

HankelNorm hankel_norm(const Matrix& b) {
  require_square(b, "hankel_norm");
  const int n = static_cast<int>(b.rows());
  HankelNorm out;
  const Matrix anticausal = strict_upper(b);
  if (anticausal.cwiseAbs().maxCoeff() == 0.0) {
    Matrix e = Matrix::Zero(n, n);
    e(0, 0) = 1.0;
    out.maximizer = CausalOperator(std::move(e));
    out.method = "trivial";
    return out;
  }

  Vector x;
  if (n <= kDenseLimit) {
    const HankelMap map = build_hankel_map(b);
    // H*H is small and symmetric; its top eigenpair is the top right singular pair.
    Eigen::SelfAdjointEigenSolver<Matrix> eig(map.matrix.transpose() * map.matrix);
    x = eig.eigenvectors().col(map.dim_domain - 1);
    out.norm = (map.matrix * x).norm();
    out.method = "svd";
  } else {
    x = vectorize_lower(Matrix::Ones(n, n));
    x.normalize();
    double prev = 0.0;
    out.method = "power";
    for (int it = 1; it <= kPowerMaxIter; ++it) {
      const Matrix image = strict_upper(b * unvectorize_lower(x, n));
      const Vector y = vectorize_lower(lower(b.transpose() * image));
      const double lambda = y.norm();
      if (lambda == 0.0) break;
      x = y / lambda;
      out.iterations = it;
      if (std::abs(lambda - prev) <= kPowerTol * lambda) break;
      prev = lambda;
    }
    out.norm = strict_upper(b * unvectorize_lower(x, n)).norm();
  }
  normalize_sign(x);
  out.maximizer = CausalOperator(unvectorize_lower(x, n));
  return out;
}

QFromMaximizer q_from_maximizing_vector(const Matrix& b, const CausalOperator& a, double tol) {
  require_square(b, "q_from_maximizing_vector");
  const int n = static_cast<int>(b.rows());
  if (a.dim() != n) throw DimensionMismatchError("q_from_maximizing_vector: dimension mismatch");

  const Matrix target = lower(b * a.matrix());
  const Matrix& am = a.matrix();
  QFromMaximizer out;
  out.unknowns = lower_basis_size(n);
  Matrix q = Matrix::Zero(n, n);
  std::vector<Eigen::CompleteOrthogonalDecomposition<Matrix>> rows;
  double residual = 0.0;
  for (int i = 0; i < n; ++i) {
    // Row i: q_i * A[0..i, 0..i] = target[i, 0..i]; columns beyond i read 0 = 0.
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
    cod.setThreshold(kRankTol);
    cod.compute(Matrix(am.topLeftCorner(i + 1, i + 1).transpose()));
    const Vector rhs = target.row(i).head(i + 1).transpose();
    const Vector qi = cod.solve(rhs);
    residual = std::max(residual, (am.topLeftCorner(i + 1, i + 1).transpose() * qi - rhs).norm());
    q.row(i).head(i + 1) = qi.transpose();
    out.determined += static_cast<int>(cod.rank());
  }
  out.identity_residual = residual;
  const double scale = std::max(1.0, target.norm());
  if (residual > tol * scale) {
    std::ostringstream os;
    os << "q_from_maximizing_vector: Q A = lower(B A) is inconsistent (residual " << residual
       << "); the vector is not a maximizer";
    throw IdentityViolationError(os.str(), residual);
  }

  if (out.determined < out.unknowns) {
    const double mu = arveson_distance(b).mu;
    const Matrix qp = parrott_complete(b, mu).matrix();
    for (int i = 0; i < n; ++i) {
      const Matrix ai = am.topLeftCorner(i + 1, i + 1);
      // Left null space of A_i: directions z with z A_i = 0.
      Eigen::JacobiSVD<Matrix> svd(ai, Eigen::ComputeFullU);
      const Vector& s = svd.singularValues();
      const double cut = kRankTol * std::max(s(0), 1e-300);
      int rank = 0;
      while (rank < s.size() && s(rank) > cut) ++rank;
      if (rank == i + 1) continue;
      const Matrix null = svd.matrixU().rightCols(i + 1 - rank);
      const Vector diff = (qp.row(i).head(i + 1) - q.row(i).head(i + 1)).transpose();
      q.row(i).head(i + 1) += (null * (null.transpose() * diff)).transpose();
    }
    out.completed = true;
  }
  out.Q = CausalOperator(std::move(q));
  return out;
}

CausalOperator toeplitz_apply(const Matrix& g, const CausalOperator& a) {
  require_symmetric(g, "toeplitz_apply");
  if (a.dim() != g.rows()) throw DimensionMismatchError("toeplitz_apply: dimension mismatch");
  return CausalOperator(lower(g * a.matrix()));
}

ToeplitzMap build_toeplitz_map(const Matrix& g) {
  require_symmetric(g, "build_toeplitz_map");
  const int n = static_cast<int>(g.rows());
  ToeplitzMap map{g, lower_basis_size(n), {}};
  map.matrix = Matrix::Zero(map.dim, map.dim);
  parallel_for(map.dim, [&](int col) {
    Vector e = Vector::Zero(map.dim);
    e(col) = 1.0;
    map.matrix.col(col) = vectorize_lower(lower(g * unvectorize_lower(e, n)));
  }, 64);
  return map;
}

double mixed_operator_norm(const Matrix& hankel_symbol, const Matrix& gram) {
  require_square(hankel_symbol, "mixed_operator_norm");
  require_symmetric(gram, "mixed_operator_norm");
  if (gram.rows() != hankel_symbol.rows()) {
    throw DimensionMismatchError("mixed_operator_norm: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> geig(0.5 * (gram + gram.transpose()),
                                             Eigen::EigenvaluesOnly);
  const double gmax = std::max(1.0, geig.eigenvalues().cwiseAbs().maxCoeff());
  if (geig.eigenvalues()(0) < -1e-10 * gmax) {
    std::ostringstream os;
    os << "mixed_operator_norm: Gram matrix is not PSD (smallest eigenvalue "
       << geig.eigenvalues()(0) << ")";
    throw InvalidInputError(os.str());
  }
  const HankelMap h = build_hankel_map(hankel_symbol);
  const ToeplitzMap t = build_toeplitz_map(0.5 * (gram + gram.transpose()));
  Matrix m = h.matrix.transpose() * h.matrix + t.matrix;
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return std::max(0.0, eig.eigenvalues()(m.rows() - 1));
}

}  // namespace tvsyn
