#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tvsyn/factorization.hpp"

using namespace tvsyn;

namespace {

Matrix well_conditioned_lower(int n, std::uint64_t seed) {
  Matrix m = oracle::lower_gaussian(n, seed, 0.0);
  m.diagonal() = m.diagonal().cwiseAbs().array() + 2.0;
  return m;
}

}  // namespace

TEST(SpectralFactor, Identity) {
  EXPECT_LE((spectral_factor_causal(Matrix(Matrix::Identity(4, 4))).matrix() - Matrix::Identity(4, 4))
                .norm(),
            1e-15);
}

TEST(SpectralFactor, Diagonal) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 4;
  m(1, 1) = 9;
  const Matrix l = spectral_factor_causal(m).matrix();
  EXPECT_NEAR(l(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(l(1, 1), 3.0, 1e-15);
  EXPECT_EQ(l(1, 0), 0.0);
}

TEST(SpectralFactor, RecoversPositiveDiagonalFactorSeedThree) {
  const Matrix l0 = well_conditioned_lower(6, 3);
  const Matrix l = spectral_factor_causal(Matrix(l0.transpose() * l0)).matrix();
  EXPECT_LE((l - l0).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(SpectralFactor, RoundTripSweep) {
  for (int n = 1; n <= 16; ++n) {
    const Matrix l0 = well_conditioned_lower(n, 50 + n);
    const Matrix m = l0.transpose() * l0;
    const CausalOperator l = spectral_factor_causal(m);
    EXPECT_LE((l.matrix().transpose() * l.matrix() - m).norm(), 1e-10 * m.norm());
    EXPECT_GT(l.matrix().diagonal().minCoeff(), 0.0);
  }
}

TEST(SpectralFactor, Errors) {
  Matrix ns = Matrix::Identity(2, 2);
  ns(0, 1) = 1;
  EXPECT_THROW(spectral_factor_causal(ns), InvalidInputError);
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1;
  try {
    spectral_factor_causal(indefinite);
    FAIL();
  } catch (const NotPositiveDefiniteError& e) {
    EXPECT_NEAR(e.eigenvalue(), -1.0, 1e-14);
  }
  Matrix tiny = Matrix::Identity(2, 2);
  tiny(1, 1) = 1e-15;
  EXPECT_THROW(spectral_factor_causal(tiny), NotPositiveDefiniteError);
  EXPECT_THROW(spectral_factor_causal(Matrix(Matrix::Zero(2, 3))), DimensionMismatchError);
}

TEST(SpectralFactor, ComplexHermitian) {
  ComplexMatrix l0 = ComplexMatrix::Zero(3, 3);
  l0.real() = well_conditioned_lower(3, 4);
  l0.imag() = Matrix(oracle::gaussian(3, 3, 5).triangularView<Eigen::StrictlyLower>());
  const ComplexMatrix m = l0.adjoint() * l0;
  const ComplexMatrix l = spectral_factor_causal(m);
  EXPECT_LE((l.adjoint() * l - m).norm(), 1e-10 * m.norm());
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) EXPECT_EQ(std::abs(l(i, j)), 0.0);
}

TEST(InnerOuter, ScaledIdentity) {
  const InnerOuterPair p = inner_outer(CausalOperator(Matrix(2.0 * Matrix::Identity(3, 3))));
  EXPECT_LE((p.inner.matrix() - Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LE((p.outer.matrix() - 2.0 * Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_EQ(p.order, FactorOrder::kInnerFirst);
}

TEST(InnerOuter, DiagonalUnitary) {
  Matrix d = Matrix::Identity(3, 3);
  d(1, 1) = -1;
  const InnerOuterPair p = inner_outer(CausalOperator(d));
  EXPECT_LE((p.inner.matrix() - d).norm(), 1e-15);
  EXPECT_LE((p.outer.matrix() - Matrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(InnerOuter, RandomSeedEleven) {
  const Matrix t = well_conditioned_lower(7, 11);
  const InnerOuterPair p = inner_outer(CausalOperator(t));
  const Matrix& ti = p.inner.matrix();
  EXPECT_LE((ti.transpose() * ti - Matrix::Identity(7, 7)).norm(), 1e-10);
  EXPECT_LE((ti * p.outer.matrix() - t).norm(), 1e-10 * t.norm());
  EXPECT_GT(p.outer.matrix().diagonal().minCoeff(), 0.0);
  // Outer factor agrees with the spectral factor of T*T.
  const Matrix lam = spectral_factor_causal(Matrix(t.transpose() * t)).matrix();
  EXPECT_LE((lam - p.outer.matrix()).norm(), 1e-9 * t.norm());
}

TEST(InnerOuter, IllConditionedUpToOneMillion) {
  Matrix t = well_conditioned_lower(6, 12);
  t(5, 5) = 1e-5;
  const InnerOuterPair p = inner_outer(CausalOperator(t));
  EXPECT_LE((p.inner.matrix() * p.outer.matrix() - t).norm(), 1e-10 * t.norm());
}

TEST(InnerOuter, DiagonalGauge) {
  const Matrix t = well_conditioned_lower(5, 13);
  Matrix d = Matrix::Identity(5, 5);
  d(0, 0) = d(3, 3) = -1;
  const InnerOuterPair a = inner_outer(CausalOperator(t));
  const InnerOuterPair b = inner_outer(CausalOperator(Matrix(t * d)));
  EXPECT_GT(b.outer.matrix().diagonal().minCoeff(), 0.0);
  EXPECT_LE((b.inner.matrix() * b.outer.matrix() - t * d).norm(), 1e-10 * t.norm());
  // T D = Ti To D = (Ti D)(D To D), and D To D has a positive diagonal.
  EXPECT_LE((b.outer.matrix() - d * a.outer.matrix() * d).norm(), 1e-10 * t.norm());
}

TEST(InnerOuter, SingularIsA1Violation) {
  Matrix t = Matrix::Identity(2, 2);
  t(1, 1) = 1e-15;
  try {
    inner_outer(CausalOperator(t));
    FAIL();
  } catch (const AssumptionViolationError& e) {
    EXPECT_EQ(e.assumption(), "A1");
    EXPECT_GT(e.condition(), 1e12);
  }
}

TEST(OuterInner, Examples) {
  const InnerOuterPair p = outer_inner(CausalOperator::identity(3));
  EXPECT_LE((p.outer.matrix() - Matrix::Identity(3, 3)).norm(), 1e-15);
  const InnerOuterPair q = outer_inner(CausalOperator(Matrix(3.0 * Matrix::Identity(3, 3))));
  EXPECT_LE((q.outer.matrix() - 3.0 * Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_LE((q.inner.matrix() - Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_EQ(q.order, FactorOrder::kOuterFirst);
}

TEST(OuterInner, RandomSeedFive) {
  const Matrix t = well_conditioned_lower(8, 5);
  const InnerOuterPair p = outer_inner(CausalOperator(t));
  const Matrix& ti = p.inner.matrix();
  EXPECT_LE((ti * ti.transpose() - Matrix::Identity(8, 8)).norm(), 1e-10);
  EXPECT_LE((p.outer.matrix() * ti - t).norm(), 1e-10 * t.norm());
  EXPECT_GT(p.outer.matrix().diagonal().minCoeff(), 0.0);
}

TEST(CheckA1, Examples) {
  A1Report r = check_A1(CausalOperator::identity(3), CausalOperator::identity(3));
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.t2_outer_condition, 1.0, 1e-14);
  EXPECT_NEAR(r.t3_outer_condition, 1.0, 1e-14);

  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = 1e-15;
  r = check_A1(CausalOperator(bad), CausalOperator::identity(2));
  EXPECT_FALSE(r.passed);
  EXPECT_NE(r.message.find("T2"), std::string::npos);
  EXPECT_NE(r.message.find("condition number"), std::string::npos);

  r = check_A1(CausalOperator(well_conditioned_lower(5, 1)),
               CausalOperator(well_conditioned_lower(5, 2)));
  EXPECT_TRUE(r.passed);
}
