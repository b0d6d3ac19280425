#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tvsyn/dual_program.hpp"
#include "tvsyn/nest_distance.hpp"
#include "tvsyn/plant_lab.hpp"

using namespace tvsyn;

namespace {

Matrix corner2(double v) {
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = v;
  return b;
}

Matrix e21() {
  Matrix t = Matrix::Zero(2, 2);
  t(1, 0) = 1;
  return t;
}

}  // namespace

TEST(StrictTruncation, Examples) {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  EXPECT_EQ(strict_truncation(d).matrix(), Matrix::Zero(3, 3));
  const Matrix s = oracle::gaussian(4, 4, 1).triangularView<Eigen::StrictlyLower>();
  EXPECT_EQ(strict_truncation(s).matrix(), s);
  Matrix m(2, 2);
  m << 1, 2, 3, 4;
  Matrix expected = Matrix::Zero(2, 2);
  expected(1, 0) = 3;
  EXPECT_EQ(strict_truncation(m).matrix(), expected);
}

TEST(ClosedForm, Examples) {
  EXPECT_EQ(dual_value_closed_form(Matrix::Zero(4, 4)), 0.0);
  EXPECT_DOUBLE_EQ(dual_value_closed_form(corner2(2.0)), 2.0);
  const Matrix b = oracle::gaussian(5, 5, 29);
  EXPECT_NEAR(dual_value_closed_form(b), arveson_distance(b).mu, 1e-12);
}

TEST(CornerWitness, IsFeasibleAndExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 8);
    const Matrix b = oracle::gaussian(n, n, 40 + seed);
    const DualCertificate c = corner_witness(b);
    EXPECT_LE(trace_norm(c.T.matrix()), 1 + 1e-12);
    EXPECT_NEAR(c.value, dual_value_closed_form(b), 1e-12 * c.value);
    EXPECT_NEAR(c.value, std::abs((c.T.matrix() * b).trace()), 1e-12);
  }
}

TEST(DualSolve, ZeroSymbol) {
  const DualCertificate c = dual_solve(Matrix::Zero(3, 3));
  EXPECT_EQ(c.value, 0.0);
  EXPECT_EQ(c.T.matrix(), Matrix::Zero(3, 3));
  EXPECT_TRUE(c.converged);
}

TEST(DualSolve, TwoByTwoCorner) {
  const DualCertificate c = dual_solve(corner2(2.0), 5000, 1e-10);
  EXPECT_NEAR(c.value, 2.0, 2e-10);
  EXPECT_LE((c.T.matrix() - e21()).norm(), 1e-6);
  EXPECT_LE(trace_norm(c.T.matrix()), 1 + 1e-8);
}

TEST(DualSolve, RandomSeedThirtyOne) {
  const Matrix b = oracle::gaussian(6, 6, 31);
  const DualCertificate c = dual_solve(b, 5000, 1e-4);
  const double ref = dual_value_closed_form(b);
  EXPECT_LE(std::abs(c.value - ref), 1e-4 * ref);
  EXPECT_LE(c.iterations, 5000);
}

TEST(DualSolve, CertificateInvariants) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Matrix b = oracle::gaussian(5, 5, 300 + seed);
    const DualCertificate c = dual_solve(b);
    EXPECT_LE(trace_norm(c.T.matrix()), 1 + 1e-8);
    EXPECT_EQ(Matrix(c.T.matrix().triangularView<Eigen::Upper>()), Matrix::Zero(5, 5));
    EXPECT_NEAR(c.value, (c.T.matrix() * b).trace(), 1e-10);
    EXPECT_LE(c.value, dual_value_closed_form(b) + 1e-10);
  }
}

TEST(DualSolve, MaxIterationsCarriesBestValue) {
  const Matrix b = oracle::gaussian(6, 6, 5);
  try {
    dual_solve(b, 3, 1e-12);
    FAIL();
  } catch (const MaxIterationsError& e) {
    EXPECT_GE(e.best_value(), 0.0);
    EXPECT_LE(e.best_value(), dual_value_closed_form(b) + 1e-12);
    EXPECT_GE(e.primal_residual(), 0.0);
  }
  EXPECT_THROW(dual_solve(b, 0, 1e-4), InvalidInputError);
  EXPECT_THROW(dual_solve(b, 10, 0.0), InvalidInputError);
}

TEST(WeakDuality, RandomFeasiblePairs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const Matrix b = oracle::gaussian(n, n, 700 + seed);
    Matrix t = oracle::gaussian(n, n, 800 + seed).triangularView<Eigen::StrictlyLower>();
    t /= std::max(trace_norm(t), 1e-300);
    const Matrix q = oracle::gaussian(n, n, 900 + seed).triangularView<Eigen::Lower>();
    EXPECT_LE(std::abs((t * b).trace()), spectral_norm(Matrix(b - q)) + 1e-12);
  }
}

TEST(Alignment, Examples) {
  EXPECT_EQ(alignment_check(corner2(1.0), CausalOperator::zero(2), PreannihilatorElement::zero(2)),
            0.0);
  EXPECT_NEAR(
      alignment_check(corner2(1.0), CausalOperator::zero(2), PreannihilatorElement(e21())), 0.0,
      1e-15);
  const Matrix b = oracle::gaussian(6, 6, 37);
  const SynthesisResult r = synthesize_symbol(b);
  EXPECT_LE(alignment_check(b, r.Q, r.T_dual), 1e-6 * r.mu_primal);
}

TEST(RecoverT, RankOneCorner) {
  const TRecovery r = recover_T_o(corner2(3.0), CausalOperator::zero(2));
  ASSERT_TRUE(r.ok);
  EXPECT_LE((r.T->matrix() - e21()).norm(), 1e-15);
  EXPECT_EQ(r.multiplicity, 1);
}

TEST(RecoverT, MultiplicityTwoPassesAlignment) {
  // B - Q = 2 (e1 e3^T + e2 e4^T): top singular value 2 twice, both pairs strictly lower.
  Matrix b = Matrix::Zero(4, 4);
  b(0, 2) = 2;
  b(1, 3) = 2;
  const TRecovery r = recover_T_o(b, CausalOperator::zero(4));
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(r.multiplicity, 2);
  EXPECT_NEAR(trace_norm(r.T->matrix()), 1.0, 1e-14);
  EXPECT_LE(alignment_check(b, CausalOperator::zero(4), *r.T), 1e-14);
  // Unequal convex weights are also aligned.
  Matrix t = Matrix::Zero(4, 4);
  t(2, 0) = 0.3;
  t(3, 1) = 0.7;
  EXPECT_LE(alignment_check(b, CausalOperator::zero(4), PreannihilatorElement(t)), 1e-14);
}

TEST(RecoverT, LeavesPreannihilatorThenFallbackAligns) {
  // Q = 0 is not optimal: the top singular pair of B is not strictly lower.
  const Matrix b = oracle::gaussian(5, 5, 61);
  const TRecovery r = recover_T_o(b, CausalOperator::zero(5));
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.reason.empty());
  EXPECT_GT(r.leak, 1e-6);
  // Fallback certificate with an optimal Q.
  const double mu = arveson_distance(b).mu;
  const CausalOperator q = parrott_complete(b, mu);
  const DualCertificate d = dual_solve(b, 20000, 1e-9);
  EXPECT_LE(alignment_check(b, q, d.T), 1e-6 * mu);
}

TEST(RecoverT, ZeroResidual) {
  const Matrix l = oracle::gaussian(3, 3, 2).triangularView<Eigen::Lower>();
  const TRecovery r = recover_T_o(l, CausalOperator(l));
  EXPECT_FALSE(r.ok);
}

TEST(DualUniqueness, RecoverAndSolveAgreeWhenSimple) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 30 && checked < 5; ++seed) {
    const Matrix b = oracle::gaussian(5, 5, 1700 + seed);
    const double mu = arveson_distance(b).mu;
    const CausalOperator q = parrott_complete(b, mu);
    const TRecovery rec = recover_T_o(b, q);
    if (!rec.ok || rec.multiplicity != 1) continue;
    const Vector s = singular_values(Matrix(b - q.matrix()));
    if (s(1) > s(0) * (1 - 1e-3)) continue;
    DualCertificate d;
    try {
      d = dual_solve(b, 200000, 1e-13);
    } catch (const MaxIterationsError&) {
      continue;
    }
    EXPECT_LE(trace_norm(Matrix(rec.T->matrix() - d.T.matrix())), 1e-5) << "seed " << seed;
    ++checked;
  }
  EXPECT_GE(checked, 3);
}

TEST(BoundsSweep, StrictlyUpperRankOne) {
  // B = u v^T on rows < 3, columns >= 3: the upper bound is ||B|| at every order,
  // the lower bound sees only columns < n of the corner.
  Matrix b = Matrix::Zero(6, 6);
  const Matrix u = oracle::gaussian(3, 1, 1), v = oracle::gaussian(1, 3, 2);
  b.block(0, 3, 3, 3) = u * v;
  const double nb = spectral_norm(b);
  const std::vector<BoundsRow> rows = bounds_sweep(b, {3, 4, 5, 6});
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int n = rows[k].n;
    EXPECT_NEAR(rows[k].mu_primal, nb, 1e-12 * nb);
    EXPECT_NEAR(rows[k].mu_dual, u.norm() * v.leftCols(n - 3).norm(), 1e-12 * nb);
  }
  EXPECT_NEAR(rows.back().gap, 0.0, 1e-12 * nb);
}

TEST(BoundsSweep, DecayingSymbolConverges) {
  const Matrix b = generate_symbol(64, 1, 0.5);
  const std::vector<BoundsRow> rows = bounds_sweep(b, {64, 4, 16, 8, 32, 16});
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LT(rows[k - 1].n, rows[k].n);
    EXPECT_GE(rows[k].mu_dual, rows[k - 1].mu_dual);
    EXPECT_LE(rows[k].mu_primal, rows[k - 1].mu_primal);
    EXPECT_LE(rows[k].gap, rows[k - 1].gap + 1e-15);
  }
  EXPECT_LE(rows.back().gap, 1e-3 * rows.back().mu_primal);
}

TEST(BoundsSweep, AmbientOnlyIsExact) {
  const Matrix b = oracle::gaussian(7, 7, 4);
  const std::vector<BoundsRow> rows = bounds_sweep(b, {7});
  EXPECT_EQ(rows[0].mu_dual, rows[0].mu_primal);
  EXPECT_EQ(rows[0].witness_drift, 0.0);
  EXPECT_THROW(bounds_sweep(b, {8}), InvalidInputError);
  EXPECT_THROW(bounds_sweep(b, {0}), InvalidInputError);
}
