#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tvsyn/nest_distance.hpp"
#include "tvsyn/tv_hankel.hpp"

using namespace tvsyn;

namespace {

Matrix corner2(double v) {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = v;
  return b;
}

}  // namespace

TEST(Bases, RoundTripAndSizes) {
  EXPECT_EQ(lower_basis_size(4), 10);
  EXPECT_EQ(strict_upper_basis_size(4), 6);
  const Matrix a = oracle::gaussian(5, 5, 1);
  const Matrix l = a.triangularView<Eigen::Lower>();
  const Matrix u = a.triangularView<Eigen::StrictlyUpper>();
  EXPECT_EQ(unvectorize_lower(vectorize_lower(a), 5), l);
  EXPECT_EQ(unvectorize_strict_upper(vectorize_strict_upper(a), 5), u);
  EXPECT_NEAR(vectorize_lower(a).norm(), l.norm(), 1e-14);
}

TEST(HankelApply, Examples) {
  EXPECT_EQ(hankel_apply(Matrix::Zero(3, 3), CausalOperator::identity(3)), Matrix::Zero(3, 3));
  const Matrix l = oracle::lower_gaussian(4, 2, 0.0);
  EXPECT_EQ(hankel_apply(l, CausalOperator(oracle::lower_gaussian(4, 3, 0.0))),
            Matrix::Zero(4, 4));
  EXPECT_EQ(hankel_apply(corner2(1.0), CausalOperator::identity(2)), corner2(1.0));
  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1;
  EXPECT_EQ(hankel_apply(corner2(1.0), CausalOperator(e11)), Matrix::Zero(2, 2));
}

TEST(HankelApply, DependsOnlyOnStrictUpperOfProductAndIsLinear) {
  const Matrix b = oracle::gaussian(6, 6, 5);
  const CausalOperator a1(Matrix(oracle::lower_gaussian(6, 6, 0.0)));
  const CausalOperator a2(Matrix(oracle::lower_gaussian(6, 7, 0.0)));
  const Matrix sum = hankel_apply(b, CausalOperator(Matrix(2 * a1.matrix() - a2.matrix())));
  EXPECT_LE((sum - 2 * hankel_apply(b, a1) + hankel_apply(b, a2)).norm(), 1e-12);
  // Adding a lower matrix to B changes nothing.
  const Matrix shifted = b + oracle::lower_gaussian(6, 8, 1.0);
  EXPECT_LE((hankel_apply(shifted, a1) - hankel_apply(b, a1)).norm(), 1e-12);
}

TEST(HankelMap, MatchesApply) {
  const Matrix b = oracle::gaussian(5, 5, 9);
  const HankelMap h = build_hankel_map(b);
  EXPECT_EQ(h.dim_domain, 15);
  EXPECT_EQ(h.dim_codomain, 10);
  const Matrix a = oracle::lower_gaussian(5, 10, 0.0);
  const Vector image = h.matrix * vectorize_lower(a);
  EXPECT_LE((unvectorize_strict_upper(image, 5) - hankel_apply(b, CausalOperator(a))).norm(),
            1e-12);
}

TEST(HankelNorm, Examples) {
  const HankelNorm z = hankel_norm(oracle::lower_gaussian(4, 11, 0.0));
  EXPECT_EQ(z.norm, 0.0);
  EXPECT_EQ(z.method, "trivial");
  const HankelNorm c = hankel_norm(corner2(3.0));
  EXPECT_NEAR(c.norm, 3.0, 1e-14);
  EXPECT_NEAR(hs_norm(c.maximizer.matrix()), 1.0, 1e-14);
}

TEST(HankelNorm, EqualsArvesonSeedFortyOne) {
  const Matrix b = oracle::gaussian(7, 7, 41);
  const HankelNorm h = hankel_norm(b);
  EXPECT_NEAR(h.norm, arveson_distance(b).mu, 1e-10);
  EXPECT_EQ(h.method, "svd");
  EXPECT_NEAR(hs_norm(hankel_apply(b, h.maximizer)), h.norm, 1e-10);
}

TEST(HankelNorm, KroneckerOracleSweep) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);
    const Matrix b = oracle::gaussian(n, n, 2000 + seed);
    const double ref = oracle::hankel_norm_kron(b);
    EXPECT_NEAR(hankel_norm(b).norm, ref, 1e-9 * ref) << "seed " << seed;
  }
}

TEST(HankelNorm, MaximizerSignConvention) {
  const HankelNorm h = hankel_norm(oracle::gaussian(5, 5, 12));
  const Matrix& a = h.maximizer.matrix();
  Eigen::Index r, c;
  a.cwiseAbs().maxCoeff(&r, &c);
  EXPECT_GT(a(r, c), 0.0);
}

TEST(HankelNorm, RankBoundAndMaximizerDeficiency) {
  // Column 0 of A never reaches the strict-upper part, so maximizers vanish there.
  const Matrix b = oracle::gaussian(6, 6, 13);
  const HankelNorm h = hankel_norm(b);
  const Matrix& a = h.maximizer.matrix();
  EXPECT_LE(a.col(0).norm(), 1e-8);
  const HankelMap m = build_hankel_map(b);
  Eigen::JacobiSVD<Matrix> svd(m.matrix);
  EXPECT_LE(svd.rank(), m.dim_codomain);
}

TEST(HankelNorm, PowerIterationPath) {
  const Matrix b = oracle::gaussian(48, 48, 14);
  const HankelNorm h = hankel_norm(b);
  EXPECT_EQ(h.method, "power");
  const double mu = arveson_distance(b).mu;
  EXPECT_NEAR(h.norm, mu, 1e-6 * mu);
  EXPECT_GT(h.iterations, 0);
}

TEST(QFromMaximizer, ShiftExample) {
  // The maximizer of B = E12 is E22; only q22 is pinned by the identity.
  Matrix a = Matrix::Zero(2, 2);
  a(1, 1) = 1;
  const QFromMaximizer r = q_from_maximizing_vector(corner2(1.0), CausalOperator(a));
  EXPECT_EQ(r.unknowns, 3);
  EXPECT_EQ(r.determined, 1);
  EXPECT_TRUE(r.completed);
  EXPECT_LE(r.identity_residual, 1e-14);
  EXPECT_LE(r.Q.matrix().norm(), 1e-12);
}

TEST(QFromMaximizer, OptimalOnRandomSeedFortyThree) {
  const Matrix b = oracle::gaussian(6, 6, 43);
  const HankelNorm h = hankel_norm(b);
  const QFromMaximizer r = q_from_maximizing_vector(b, h.maximizer);
  EXPECT_TRUE(r.completed);
  EXPECT_LT(r.determined, r.unknowns);
  EXPECT_LE(r.identity_residual, 1e-8 * std::max(1.0, b.norm()));
  const Matrix qa = r.Q.matrix() * h.maximizer.matrix();
  const Matrix target = b * h.maximizer.matrix() - hankel_apply(b, h.maximizer);
  EXPECT_LE((qa - target).norm(), 1e-8 * std::max(1.0, b.norm()));
  EXPECT_LE(spectral_norm(Matrix(b - r.Q.matrix())), h.norm * (1 + 1e-6));
}

TEST(QFromMaximizer, InconsistentSystemThrows) {
  // B A = E11 with A = E21, but row 0 of Q A is q11 * A(0, :) = 0.
  Matrix a = Matrix::Zero(2, 2);
  a(1, 0) = 1;
  EXPECT_THROW(q_from_maximizing_vector(corner2(1.0), CausalOperator(a)), IdentityViolationError);
}

TEST(Toeplitz, Examples) {
  const CausalOperator a(Matrix(oracle::lower_gaussian(4, 15, 0.0)));
  EXPECT_EQ(toeplitz_apply(Matrix::Identity(4, 4), a).matrix(), a.matrix());
  EXPECT_EQ(toeplitz_apply(Matrix::Zero(4, 4), a).matrix(), Matrix::Zero(4, 4));
  Matrix g = Matrix::Identity(4, 4);
  g(0, 1) = 1;
  EXPECT_THROW(toeplitz_apply(g, a), InvalidInputError);
}

TEST(Toeplitz, MapIsSymmetricPsdForPsdGram) {
  const Matrix r = oracle::gaussian(5, 5, 16);
  const Matrix g = r.transpose() * r;
  const ToeplitzMap t = build_toeplitz_map(g);
  EXPECT_EQ(t.dim, 15);
  EXPECT_LE((t.matrix - t.matrix.transpose()).norm(), 1e-12 * g.norm());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(t.matrix);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10 * g.norm());
  // <A, T_G A> = ||R A||_HS^2 restricted to lower parts: compare against direct evaluation.
  const Matrix a = oracle::lower_gaussian(5, 17, 0.0);
  const Vector va = vectorize_lower(a);
  const double quad = va.dot(t.matrix * va);
  EXPECT_NEAR(quad, (r * a).squaredNorm(), 1e-10 * quad);
}

TEST(MixedOperatorNorm, Examples) {
  EXPECT_NEAR(mixed_operator_norm(Matrix::Zero(3, 3), Matrix::Identity(3, 3)), 1.0, 1e-14);
  EXPECT_NEAR(mixed_operator_norm(corner2(2.0), Matrix::Zero(2, 2)), 4.0, 1e-13);
  const Matrix b = oracle::gaussian(5, 5, 18);
  const double mu = arveson_distance(b).mu;
  EXPECT_NEAR(mixed_operator_norm(b, Matrix::Zero(5, 5)), mu * mu, 1e-10 * mu * mu);
  Matrix neg = Matrix::Identity(3, 3);
  neg(2, 2) = -1;
  EXPECT_THROW(mixed_operator_norm(Matrix::Zero(3, 3), neg), InvalidInputError);
}

TEST(MixedOperatorNorm, DenseOracle) {
  const Matrix b = oracle::gaussian(4, 4, 19);
  const Matrix r = oracle::gaussian(4, 4, 20);
  const Matrix g = r.transpose() * r;
  // Materialize A -> [strictupper(B A); R A] on the lower basis and take its norm squared.
  const int m = lower_basis_size(4);
  Matrix dense(6 + 16, m);
  for (int k = 0; k < m; ++k) {
    Vector e = Vector::Zero(m);
    e(k) = 1;
    const Matrix a = unvectorize_lower(e, 4);
    const Matrix up = Matrix(b * a).triangularView<Eigen::StrictlyUpper>();
    dense.col(k).head(6) = vectorize_strict_upper(up);
    const Matrix ra = r * a;
    dense.col(k).tail(16) = Eigen::Map<const Vector>(ra.data(), 16);
  }
  const double ref = std::pow(oracle::spec(dense), 2);
  // The Toeplitz part uses lower(G A), so the oracle must compress R A the same way:
  // <A, lower(G A)> = <A, G A> for lower A, hence the quadratic forms coincide.
  EXPECT_NEAR(mixed_operator_norm(b, g), ref, 1e-9 * ref);
}
