#include <cmath>

#include <gtest/gtest.h>

#include "mpsd/catalog.hpp"
#include "mpsd/errors.hpp"
#include "mpsd/io.hpp"
#include "mpsd/psdfun.hpp"
#include "test_support.hpp"

using namespace mpsd;
using mpsd::test_support::Gen;

namespace {

MatrixFunction gaussian_kernel(int n, int m) {
  return MatrixFunction(n, m, [m](const Point& x) -> CMatrix { return std::exp(-x.squaredNorm()) * CMatrix::Ones(m, m); },
                        "gaussian_kernel", Properties{true, true, true});
}

MatrixFunction random_generator(Gen& g, int n, int m) {
  Eigen::MatrixXd G(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) G(j, k) = g.normal();
  catalog::ScalarGenerator s{-g.uniform(0.0, 1.0), g.point(n, 1.0), G * G.transpose() / n};
  return catalog::scalar_generator(s, m);
}

}  // namespace

TEST(PointSet, RejectsInvalidInput) {
  EXPECT_THROW(PointSet(1, {}), InputError);
  EXPECT_THROW(PointSet(2, {Point::Zero(1)}), InputError);
  EXPECT_THROW(PointSet(1, {Point::Constant(1, NAN)}), InputError);
  EXPECT_THROW(PointSet::random(1, 0, 1.0, 1), InputError);
}

TEST(PointSet, RandomIsSeededAndBounded) {
  const PointSet a = PointSet::random(3, 20, 2.5, 42), b = PointSet::random(3, 20, 2.5, 42);
  for (int p = 0; p < a.size(); ++p) {
    EXPECT_EQ(a[p], b[p]);
    EXPECT_LE(a[p].lpNorm<Eigen::Infinity>(), 2.5);
  }
}

TEST(MatrixFunction, ValidatesArgumentAndValue) {
  const MatrixFunction F = catalog::log_half_identity(2);
  EXPECT_THROW(F(Point::Zero(1)), InputError);
  const MatrixFunction bad(1, 2, [](const Point&) -> CMatrix { return CMatrix::Constant(2, 2, INFINITY); });
  EXPECT_THROW(bad(Point::Zero(1)), RangeError);
  const MatrixFunction wrong(1, 2, [](const Point&) -> CMatrix { return CMatrix::Zero(3, 3); });
  EXPECT_THROW(wrong(Point::Zero(1)), InputError);
}

TEST(Gram, BlocksAreFunctionOfDifferences) {
  const MatrixFunction F = catalog::point_mass_log(2, 1, 3, Point::Constant(1, 0.7));
  const PointSet X = PointSet::random(1, 4, 2.0, 5);
  const BlockGram G = gram(F, X);
  ASSERT_EQ(G.matrix.rows(), 8);
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) EXPECT_EQ(G.block(p, q), F(X[p] - X[q]));
}

TEST(Gram, TranslationInvariant) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Gen g(seed);
    const int n = g.integer(1, 3);
    const MatrixFunction F = random_generator(g, n, 2);
    const PointSet X = PointSet::random(n, g.integer(1, 6), 2.0, g.raw());
    const CMatrix a = gram(F, X).matrix, b = gram(F, X.shifted(g.point(n, 3.0))).matrix;
    ASSERT_LE((a - b).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff())) << "seed " << seed;
  }
}

TEST(Gram, PositiveDefiniteKernelGivesPsdGram) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const int n = g.integer(1, 3), m = g.integer(1, 4);
    const PointSet X = PointSet::random(n, g.integer(1, 6), 2.0, g.raw());
    ASSERT_TRUE(psd_function_check(gaussian_kernel(n, m), X).verdict) << "seed " << seed;
  }
}

TEST(Gram, LinearSkewShiftedGramVanishesAndQuadraticFormIsNegative) {
  const double s = 0.75;
  const MatrixFunction F = catalog::linear_skew(s);
  const PointSet X(1, {Point::Ones(1), Point::Zero(1)});
  EXPECT_LT(schoenberg_gram(F, X).matrix.cwiseAbs().maxCoeff(), 1e-14);
  for (double c2 : {0.3, 0.6, 1.0, 2.5}) {
    CVector c(4);
    c << 0.0, c2, -c2, 0.0;
    const cplx q = quadratic_form(gram(F, X).matrix, c);
    EXPECT_NEAR(q.real(), -2 * s * c2 * c2, 1e-12);
    EXPECT_NEAR(q.imag(), 0.0, 1e-12);
  }
}

TEST(CpsdFunction, LogHalfIdentityIsWeaklyButNotFullyCpsd) {
  const MatrixFunction F = catalog::log_half_identity(1);
  const PointSet X = PointSet::random(1, 3, 2.0, 9);
  const Report r = cpsd_function_check(F, X);
  EXPECT_TRUE(r.find("hermitian_symmetry")->passed);
  EXPECT_FALSE(r.find("conditional_positivity")->passed);
  const CVector w = vector_from_json(r.data.at("witness"));
  EXPECT_NEAR(std::abs(w.sum()), 0.0, 1e-12);
  EXPECT_TRUE(weak_cpsd_check(F, X, default_directions(2, 8, 3)).all_passed());
}

TEST(CpsdFunction, PointMassLogFollowsDeterminantCondition) {
  const PointSet X = PointSet::random(1, 5, 2.0, 11);
  EXPECT_TRUE(cpsd_function_check(catalog::point_mass_log(2, 1, 2, Point::Ones(1)), X).all_passed());
  EXPECT_TRUE(cpsd_function_check(catalog::point_mass_log(1, 1, 1, Point::Ones(1)), X).all_passed());
  EXPECT_FALSE(cpsd_function_check(catalog::point_mass_log(1, 2, 1, Point::Ones(1)), X).all_passed());
}

TEST(CpsdFunction, RandomGeneratorsAreCpsd) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const int n = g.integer(1, 3), m = g.integer(1, 4);
    const MatrixFunction F = random_generator(g, n, m);
    const PointSet X = PointSet::random(n, g.integer(1, 6), 2.0, g.raw());
    ASSERT_TRUE(cpsd_function_check(F, X).all_passed()) << "seed " << seed;
  }
}

TEST(CpsdFunction, NonHermitianSymmetricFunctionFailsSymmetry) {
  const MatrixFunction F(1, 1, [](const Point& x) -> CMatrix { return CMatrix::Constant(1, 1, x(0)); });
  const Report r = cpsd_function_check(F, PointSet(1, {Point::Zero(1), Point::Ones(1)}));
  EXPECT_FALSE(r.find("hermitian_symmetry")->passed);
  EXPECT_TRUE(r.data.at("checked_on_hermitian_part").get<bool>());
}

TEST(WeakCpsd, RejectsNonUnitDirections) {
  const MatrixFunction F = catalog::log_half_identity(1);
  const PointSet X = PointSet::random(1, 2, 1.0, 1);
  EXPECT_THROW(weak_cpsd_check(F, X, {CVector::Ones(2)}), InputError);
  EXPECT_THROW(weak_cpsd_check(F, X, {}), InputError);
}

TEST(WeakCpsd, DefaultDirectionsAreUnitVectors) {
  const auto dirs = default_directions(3, 5, 1);
  EXPECT_EQ(dirs.size(), 3u + 6u + 5u);
  for (const auto& d : dirs) EXPECT_NEAR(d.norm(), 1.0, 1e-14);
}

TEST(HadamardExpFunction, EvaluatesEntrywise) {
  const MatrixFunction F = catalog::point_mass_log(2, 1, 3, Point::Constant(1, 0.5));
  const MatrixFunction E = hadamard_exp_function(F, 1.7);
  const Point x = Point::Constant(1, 0.9);
  EXPECT_LE((E(x) - hadamard_exp(F(x), 1.7)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(E.properties().psd_claimed);
  EXPECT_THROW(hadamard_exp_function(F, -1.0), InputError);
}

TEST(HadamardExpFunction, PointMassLogTransformIsShiftedAtom) {
  // exp_H(t F)(x) = [[a^t, b^t], [b^t, c^t]] e^{-i t x y0}.
  const double a = 2, b = 1.5, c = 3, t = 0.8;
  const MatrixFunction E = hadamard_exp_function(catalog::point_mass_log(a, b, c, Point::Ones(1)), t);
  const Point x = Point::Constant(1, 1.3);
  CMatrix W(2, 2);
  W << std::pow(a, t), std::pow(b, t), std::pow(b, t), std::pow(c, t);
  const CMatrix expected = W * std::polar(1.0, -t * 1.3);
  EXPECT_LE((E(x) - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Schoenberg, EquivalenceHoldsForCpsdAndNonCpsd) {
  const std::vector<double> ts{0.01, 0.1, 1.0, 10.0};
  const PointSet X = PointSet::random(1, 4, 2.0, 21);
  const Report yes = schoenberg_equivalence_report(catalog::point_mass_log(2, 1, 2, Point::Ones(1)), X, ts);
  EXPECT_TRUE(yes.all_passed());
  EXPECT_TRUE(yes.data.at("verdict_cpsd").get<bool>());
  const Report no = schoenberg_equivalence_report(catalog::log_half_identity(1), X, ts);
  EXPECT_TRUE(no.all_passed());
  EXPECT_FALSE(no.data.at("verdict_cpsd").get<bool>());
  EXPECT_FALSE(no.data.at("verdict_exp_psd_all_t").get<bool>());
}

TEST(Schoenberg, ExpOfRandomGeneratorIsPsd) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const int n = g.integer(1, 3), m = g.integer(1, 4);
    const MatrixFunction F = random_generator(g, n, m);
    const PointSet X = PointSet::random(n, g.integer(1, 6), 2.0, g.raw());
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
      ASSERT_GE(psd_function_check(hadamard_exp_function(F, t), X).min_eigenvalue, -1e-8)
          << "seed " << seed << " t " << t;
    }
  }
}

TEST(Schoenberg, ShiftedGramPsdWhenOriginNonpositive) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Gen g(seed);
    const int n = g.integer(1, 3), m = g.integer(1, 4);
    const MatrixFunction F = random_generator(g, n, m);
    ASSERT_TRUE(nonpositive_at_origin(F));
    const PointSet X = PointSet::random(n, g.integer(1, 6), 2.0, g.raw());
    ASSERT_GE(psd_check(schoenberg_gram(F, X).matrix).min_eigenvalue, -1e-8) << "seed " << seed;
  }
}

TEST(GrowthBound, QuadraticGeneratorIsQuadratic) {
  const MatrixFunction F = catalog::scalar_generator(catalog::quadratic_generator(2, 1.0), 2);
  const Report r = growth_bound_estimate(F, {0.5, 1, 10, 100, 1000}, 8, 3);
  EXPECT_TRUE(r.all_passed());
  // ||F(x)|| = 2 |x|^2, so the ratio tends to 2 and C' = ||F||_{|y| = 2} = 8.
  EXPECT_NEAR(r.data.at("c_prime").get<double>(), 8.0, 1e-12);
  EXPECT_NEAR(r.data.at("ratio_sup").get<double>(), 2.0 * 1e6 / (1 + 1e6), 1e-9);
}

TEST(GrowthBound, Preconditions) {
  EXPECT_THROW(growth_bound_estimate(catalog::log_half_identity(1), {1.0}, 2, 1), PreconditionError);
  const MatrixFunction positive_origin = catalog::point_mass_log(2, 1, 2, Point::Ones(1));
  EXPECT_THROW(growth_bound_estimate(positive_origin, {1.0}, 2, 1), PreconditionError);
}

TEST(CpsdInequalities, HoldForRandomGenerators) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Gen g(seed);
    const int n = g.integer(1, 3);
    const MatrixFunction F = random_generator(g, n, g.integer(1, 4));
    std::vector<std::pair<Point, Point>> pairs;
    for (int k = 0; k < 50; ++k) pairs.emplace_back(g.point(n, 5.0), g.point(n, 5.0));
    ASSERT_TRUE(cpsd_inequalities_check(F, pairs).all_passed()) << "seed " << seed;
  }
}

TEST(CpsdInequalities, GrowingQuadraticViolatesRealPartBound) {
  const MatrixFunction F = catalog::scalar_generator(catalog::quadratic_generator(1, -1.0), 2);
  std::vector<std::pair<Point, Point>> pairs{{Point::Ones(1), Point::Constant(1, 2.0)}};
  const Report r = cpsd_inequalities_check(F, pairs);
  EXPECT_FALSE(r.find("real_part_lower")->passed);
}

TEST(CpsdInequalities, LinearSkewSatisfiesAllFour) {
  // i x S has F(0) = 0 and is hermitian symmetric; the inequalities alone do not
  // detect that it is not conditionally PSD.
  const MatrixFunction F = catalog::linear_skew(1.0);
  Gen g(5);
  std::vector<std::pair<Point, Point>> pairs;
  for (int k = 0; k < 100; ++k) pairs.emplace_back(g.point(1, 5.0), g.point(1, 5.0));
  EXPECT_TRUE(cpsd_inequalities_check(F, pairs).all_passed());
}
