#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "mpsd/errors.hpp"
#include "mpsd/matcore.hpp"
#include "test_support.hpp"

using namespace mpsd;
using mpsd::test_support::Gen;
using mpsd::test_support::oracle_min_eigenvalue;

namespace {

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix A(2, 2);
  A << a, b, c, d;
  return A;
}

}  // namespace

TEST(PsdCheck, AllOnesIsPsdWithZeroMinimum) {
  const PsdVerdict v = psd_check(all_ones(2));
  EXPECT_TRUE(v.verdict);
  EXPECT_NEAR(v.min_eigenvalue, 0.0, 1e-15);
}

TEST(PsdCheck, IndefiniteMatrixGivesEigenvectorWitness) {
  const CMatrix A = mat2(0.5, 1.0, 1.0, 0.5);
  const PsdVerdict v = psd_check(A);
  EXPECT_FALSE(v.verdict);
  EXPECT_NEAR(v.min_eigenvalue, -0.5, 1e-14);
  EXPECT_NEAR(v.witness.norm(), 1.0, 1e-14);
  EXPECT_NEAR(quadratic_form(A, v.witness).real(), -0.5, 1e-14);
  EXPECT_NEAR(std::abs(v.witness(0) + v.witness(1)), 0.0, 1e-14);
}

TEST(PsdCheck, NonHermitianIsRejectedWithDefect) {
  const CMatrix A = mat2(1.0, 1.0, 0.0, 1.0);
  const PsdVerdict v = psd_check(A);
  EXPECT_FALSE(v.verdict);
  EXPECT_NEAR(v.hermiticity_defect, 0.5, 1e-14);
}

TEST(PsdCheck, RejectsMalformedInput) {
  EXPECT_THROW(psd_check(CMatrix(2, 3)), InputError);
  CMatrix A = CMatrix::Identity(2, 2);
  A(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(psd_check(A), InputError);
}

TEST(PsdCheck, DefaultToleranceScalesWithNorm) {
  EXPECT_DOUBLE_EQ(default_tol(CMatrix::Identity(3, 3) * 1e-3), 1e-9);
  EXPECT_NEAR(default_tol(CMatrix::Identity(3, 3) * 1e4), 1e-5, 1e-18);
}

TEST(PsdCheck, AgreesWithGeneralEigensolverOnRandomHermitian) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Gen g(seed);
    const int m = g.integer(1, 6);
    CMatrix A = g.hermitian(m);
    // Shift so the spectrum straddles zero for about half of the cases.
    A += g.uniform(-2.0, 2.0) * CMatrix::Identity(m, m);
    const double oracle = oracle_min_eigenvalue(A);
    const PsdVerdict v = psd_check(A);
    ASSERT_NEAR(v.min_eigenvalue, oracle, 1e-10) << "seed " << seed;
    if (std::abs(oracle) > 1e-6) ASSERT_EQ(v.verdict, oracle >= 0) << "seed " << seed;
  }
}

TEST(PsdCheck, PsdConstructionsPass) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Gen g(seed);
    const int m = g.integer(1, 6);
    ASSERT_TRUE(psd_check(g.psd(m, g.integer(1, m))).verdict) << "seed " << seed;
  }
}

TEST(CpsdCheck, OnesAndNegativeOnesAreConditionallyPsd) {
  for (int m = 1; m <= 5; ++m) {
    EXPECT_TRUE(cpsd_check(all_ones(m)).verdict);
    EXPECT_TRUE(cpsd_check(-all_ones(m)).verdict);
  }
}

TEST(CpsdCheck, LogHalfIdentityFailsWithSumZeroWitness) {
  const CMatrix A = std::log(0.5) * CMatrix::Identity(2, 2);
  const PsdVerdict v = cpsd_check(A);
  EXPECT_FALSE(v.verdict);
  EXPECT_NEAR(v.min_eigenvalue, std::log(0.5), 1e-14);
  EXPECT_NEAR(std::abs(v.witness.sum()), 0.0, 1e-14);
  EXPECT_LT(quadratic_form(A, v.witness).real(), 0.0);
}

TEST(CpsdCheck, ScalarCaseIsAlwaysConditionallyPsd) {
  CMatrix A(1, 1);
  A(0, 0) = -7.0;
  const PsdVerdict v = cpsd_check(A);
  EXPECT_TRUE(v.verdict);
  EXPECT_EQ(v.witness.size(), 1);
}

TEST(CpsdCheck, NonHermitianThrows) {
  EXPECT_THROW(cpsd_check(mat2(0.0, 1.0, 0.0, 0.0)), PreconditionError);
}

TEST(CpsdCheck, RandomConditionallyPsdConstructionsPass) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Gen g(seed);
    const CMatrix A = g.cpsd(g.integer(2, 6));
    const PsdVerdict v = cpsd_check(A);
    ASSERT_TRUE(v.verdict) << "seed " << seed;
    ASSERT_NEAR(std::abs(v.witness.sum()), 0.0, 1e-12) << "seed " << seed;
  }
}

TEST(CpsdCheck, WitnessAttainsTheReportedMinimum) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Gen g(seed);
    const int m = g.integer(2, 6);
    const CMatrix A = g.hermitian(m);
    const PsdVerdict v = cpsd_check(A);
    ASSERT_NEAR(quadratic_form(A, v.witness).real(), v.min_eigenvalue, 1e-10) << "seed " << seed;
    ASSERT_NEAR(std::abs(v.witness.sum()), 0.0, 1e-12) << "seed " << seed;
  }
}

TEST(SumZeroBasis, ColumnsAreOrthonormalAndSumToZero) {
  for (int m = 2; m <= 6; ++m) {
    const CMatrix B = sum_zero_basis(m);
    EXPECT_EQ(B.cols(), m - 1);
    for (int j = 0; j < m - 1; ++j) EXPECT_NEAR(std::abs(B.col(j).sum()), 0.0, 1e-15);
    EXPECT_LE((B.adjoint() * B - CMatrix::Identity(m - 1, m - 1)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Hadamard, ExponentialOfLogHalfIdentity) {
  const CMatrix E = hadamard_exp(std::log(0.5) * CMatrix::Identity(2, 2));
  EXPECT_NEAR(std::abs(E(0, 0) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(E(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(E(1, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(E(1, 1) - 0.5), 0.0, 1e-15);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(E);
  EXPECT_NEAR(es.eigenvalues()(0), -0.5, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 1.5, 1e-12);
}

TEST(Hadamard, ExponentialScalesByT) {
  const CMatrix A = mat2(cplx(0.3, 0.1), 1.0, -2.0, cplx(0.0, 3.0));
  const CMatrix E = hadamard_exp(A, 2.0);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(std::abs(E(j, k) - std::exp(2.0 * A(j, k))), 0.0, 1e-14);
}

TEST(Hadamard, OverflowReportsEntry) {
  CMatrix A = CMatrix::Zero(2, 2);
  A(1, 0) = 800.0;
  try {
    hadamard_exp(A);
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.col(), 0u);
  }
}

TEST(Hadamard, SchurProductOfPsdIsPsd) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Gen g(seed);
    const int m = g.integer(1, 6);
    const CMatrix P = hadamard_product(g.psd(m), g.psd(m));
    ASSERT_GE(oracle_min_eigenvalue(P), -1e-10 * std::max(1.0, P.norm())) << "seed " << seed;
  }
}

TEST(Hadamard, ExponentialOfConditionallyPsdIsPsd) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Gen g(seed);
    const int m = g.integer(2, 5);
    const CMatrix A = g.cpsd(m) / 4.0;
    for (double t : {0.1, 1.0, 3.0}) {
      const CMatrix E = hadamard_exp(A, t);
      ASSERT_TRUE(psd_check(E).verdict) << "seed " << seed << " t " << t;
    }
  }
}

TEST(Hadamard, ExponentialOfNonConditionallyPsdFailsForSmallT) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const int m = g.integer(2, 5);
    CMatrix A = g.hermitian(m);
    const PsdVerdict c = cpsd_check(A);
    if (c.verdict || c.min_eigenvalue > -1e-2) continue;
    // exp_H(tA) = H + tA + O(t^2) and the all-ones part vanishes on the witness.
    const double t = 1e-4;
    const cplx q = quadratic_form(hadamard_exp(A, t), c.witness);
    ASSERT_LT(q.real(), 0.0) << "seed " << seed;
  }
}

TEST(MatrixNorm, DiagonalValues) {
  const CMatrix A = mat2(3.0, 0.0, 0.0, cplx(0.0, -4.0));
  EXPECT_NEAR(matrix_norm(A, NormKind::op), 4.0, 1e-14);
  EXPECT_NEAR(matrix_norm(A, NormKind::hs), 5.0, 1e-14);
  EXPECT_NEAR(matrix_norm(A, NormKind::trace), 7.0, 1e-14);
  EXPECT_NEAR(matrix_norm(A, NormKind::max), 4.0, 1e-14);
  EXPECT_NEAR(matrix_norm(A, NormKind::entry_sum), 7.0, 1e-14);
}

TEST(MatrixNorm, OrderingHoldsOnRandomMatrices) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Gen g(seed);
    const int m = g.integer(1, 6);
    const CMatrix A = g.complex_matrix(m);
    const double op = matrix_norm(A, NormKind::op), hs = matrix_norm(A, NormKind::hs);
    const double tr = matrix_norm(A, NormKind::trace), mx = matrix_norm(A, NormKind::max);
    ASSERT_LE(mx, op * (1 + 1e-12));
    ASSERT_LE(op, hs * (1 + 1e-12));
    ASSERT_LE(hs, tr * (1 + 1e-12));
    ASSERT_LE(op, m * mx * (1 + 1e-12));
  }
}

TEST(HermitianSplit, ReconstructsAndPartsArePsd) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const int m = g.integer(1, 5);
    const CMatrix A = g.complex_matrix(m);
    const HermitianParts p = hermitian_split(A);
    const CMatrix back = p.re_pos - p.re_neg + cplx(0.0, 1.0) * (p.im_pos - p.im_neg);
    ASSERT_LE((back - A).cwiseAbs().maxCoeff(), 1e-12) << "seed " << seed;
    for (const CMatrix* part : {&p.re_pos, &p.re_neg, &p.im_pos, &p.im_neg}) {
      ASSERT_TRUE(psd_check(*part).verdict) << "seed " << seed;
    }
  }
}

TEST(PsdSqrt, SquaresBack) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const CMatrix P = g.psd(g.integer(1, 5));
    const CMatrix S = psd_sqrt(P);
    ASSERT_LE((S * S - P).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, P.norm())) << "seed " << seed;
  }
}

TEST(ContractionFactor, PsdBlockHasContraction) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const int p = g.integer(1, 3), q = g.integer(1, 3);
    const CMatrix big = g.psd(p + q, g.integer(1, p + q));
    const Report r = contraction_factor_check(big.topLeftCorner(p, p), big.topRightCorner(p, q),
                                              big.bottomRightCorner(q, q));
    ASSERT_TRUE(r.all_passed()) << "seed " << seed;
    ASSERT_TRUE(r.data.at("block_psd").get<bool>());
  }
}

TEST(ContractionFactor, LargeOffDiagonalBreaksBlockAndFactor) {
  const CMatrix I = CMatrix::Identity(2, 2);
  const Report r = contraction_factor_check(I, 2.0 * I, I);
  EXPECT_TRUE(r.all_passed());
  EXPECT_FALSE(r.data.at("block_psd").get<bool>());
  EXPECT_NEAR(r.data.at("contraction_norm").get<double>(), 2.0, 1e-12);
}

TEST(ContractionFactor, RequiresPsdDiagonalBlocks) {
  const CMatrix I = CMatrix::Identity(2, 2);
  EXPECT_THROW(contraction_factor_check(-I, I, I), PreconditionError);
  EXPECT_THROW(contraction_factor_check(I, CMatrix::Zero(2, 3), I), InputError);
}
