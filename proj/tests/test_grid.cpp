#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "mpsd/errors.hpp"
#include "mpsd/grid.hpp"
#include "test_support.hpp"

using namespace mpsd;
using mpsd::test_support::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(GridSpec, RejectsInvalidParameters) {
  EXPECT_THROW(GridSpec(0, 1.0, 8), InputError);
  EXPECT_THROW(GridSpec(4, 1.0, 8), InputError);
  EXPECT_THROW(GridSpec(1, 0.0, 8), InputError);
  EXPECT_THROW(GridSpec(1, INFINITY, 8), InputError);
  EXPECT_THROW(GridSpec(1, 1.0, 4), InputError);
  EXPECT_THROW(GridSpec(1, 1.0, 24), InputError);
  EXPECT_NO_THROW(GridSpec(3, 1.0, 8));
}

TEST(GridSpec, CoordinatesAndFrequencies) {
  const GridSpec spec(2, 8.0, 8);
  EXPECT_EQ(spec.size(), 64u);
  EXPECT_DOUBLE_EQ(spec.spacing(), 1.0);
  EXPECT_DOUBLE_EQ(spec.dual_spacing(), 2 * kPi / 8.0);
  EXPECT_DOUBLE_EQ(spec.cell_volume(), 1.0);
  const Point x0 = spec.coord(0);
  EXPECT_DOUBLE_EQ(x0(0), -4.0);
  EXPECT_DOUBLE_EQ(x0(1), -4.0);
  // Last axis fastest.
  const Point x1 = spec.coord(1);
  EXPECT_DOUBLE_EQ(x1(0), -4.0);
  EXPECT_DOUBLE_EQ(x1(1), -3.0);
  const Point xi = spec.freq(spec.flat({4, 4}));
  EXPECT_DOUBLE_EQ(xi.norm(), 0.0);
  EXPECT_DOUBLE_EQ(spec.freq(0)(0), -kPi);
}

TEST(GridSpec, IndexRoundTripAndWrap) {
  const GridSpec spec(3, 2.0, 8);
  for (std::size_t i = 0; i < spec.size(); i += 37) EXPECT_EQ(spec.flat(spec.index(i)), i);
  EXPECT_EQ(spec.flat({-1, 8, 9}), spec.flat({7, 0, 1}));
}

TEST(GridSpec, NearestWrapsPeriodically) {
  const GridSpec spec(1, 8.0, 8);
  EXPECT_EQ(spec.nearest(Point::Constant(1, 0.4)), 4u);
  EXPECT_EQ(spec.nearest(Point::Constant(1, 4.2)), 0u);
  EXPECT_EQ(spec.nearest(Point::Constant(1, -4.4)), 0u);
  EXPECT_TRUE(spec.contains(Point::Constant(1, -4.0)));
  EXPECT_FALSE(spec.contains(Point::Constant(1, 4.0)));
  EXPECT_THROW(spec.nearest(Point::Zero(2)), InputError);
}

TEST(GridField, ArithmeticAndShapeChecks) {
  const GridSpec spec(1, 4.0, 8);
  Gen g(1);
  const GridField a = g.noise_field(spec, 2);
  GridField b = a;
  b *= cplx(2.0, 0.0);
  b -= a;
  EXPECT_EQ(max_abs_difference(a, b), 0.0);
  EXPECT_THROW(b += GridField(spec, 3), InputError);
  EXPECT_THROW(b += GridField(spec, 2, Domain::frequency), InputError);
  EXPECT_THROW(GridField(spec, 0), InputError);
}

TEST(GridField, LeftAndRightProducts) {
  const GridSpec spec(1, 4.0, 8);
  Gen g(2);
  const GridField f = g.noise_field(spec, 3);
  const CMatrix A = g.complex_matrix(3);
  const GridField l = f.left_multiplied(A), r = f.right_multiplied(A);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    EXPECT_LE((l.at(i) - A * f.at(i)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((r.at(i) - f.at(i) * A).cwiseAbs().maxCoeff(), 1e-14);
  }
  EXPECT_THROW(f.right_multiplied(CMatrix::Identity(2, 2)), InputError);
}

TEST(GridField, SampleRejectsBadValues) {
  const GridSpec spec(1, 4.0, 8);
  EXPECT_THROW(GridField::sample(spec, 2, [](const Point&) { return CMatrix::Identity(3, 3); }), InputError);
  EXPECT_THROW(GridField::sample(spec, 1, [](const Point&) { return CMatrix::Constant(1, 1, NAN); }),
               RangeError);
}

TEST(Dft, GaussianMatchesAnalyticTransform) {
  for (int n = 1; n <= 2; ++n) {
    const GridSpec spec(n, 40.0, n == 1 ? 256 : 128);
    const GridField f = GridField::sample(spec, 1, [](const Point& x) {
      return CMatrix::Constant(1, 1, std::exp(-x.squaredNorm() / 2));
    });
    const GridField fh = dft(f);
    EXPECT_EQ(fh.domain(), Domain::frequency);
    double err = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double expected = std::exp(-spec.freq(i).squaredNorm() / 2);
      err = std::max(err, std::abs(fh.at(i)(0, 0) - expected));
    }
    EXPECT_LE(err, 1e-12) << "n " << n;
  }
}

TEST(Dft, PlaneWaveIsSingleSpike) {
  const GridSpec spec(1, 10.0, 64);
  const int j0 = 3;
  const double xi0 = 2 * kPi * j0 / spec.L();
  const GridField f = GridField::sample(spec, 1, [&](const Point& x) {
    return CMatrix::Constant(1, 1, std::polar(1.0, xi0 * x(0)));
  });
  const GridField fh = dft(f);
  const std::size_t peak = static_cast<std::size_t>(j0 + spec.K() / 2);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const cplx expected = i == peak ? cplx(spec.L() / std::sqrt(2 * kPi), 0.0) : cplx(0.0, 0.0);
    ASSERT_LE(std::abs(fh.at(i)(0, 0) - expected), 1e-12) << "index " << i;
  }
}

TEST(Dft, RoundTripAndPlancherel) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Gen g(seed);
    const int n = g.integer(1, 3);
    const int K = n == 1 ? 1 << g.integer(3, 10) : n == 2 ? 1 << g.integer(3, 6) : 8 << g.integer(0, 1);
    const GridSpec spec(n, g.uniform(1.0, 50.0), K);
    const GridField f = g.noise_field(spec, g.integer(1, 3));
    const GridField fh = dft(f);
    ASSERT_LE(max_abs_difference(idft(fh), f), 1e-12 * (1 + sup_norm(f, NormKind::max))) << "seed " << seed;
    ASSERT_NEAR(hs_norm(fh), hs_norm(f), 1e-12 * hs_norm(f)) << "seed " << seed;
    const GridField f2 = g.noise_field(spec, f.m());
    const cplx lhs = hs_inner(f, f2), rhs = hs_inner(fh, dft(f2));
    ASSERT_LE(std::abs(lhs - rhs), 1e-11 * hs_norm(f) * hs_norm(f2)) << "seed " << seed;
  }
}

TEST(Dft, RejectsWrongDomain) {
  const GridSpec spec(1, 4.0, 8);
  EXPECT_THROW(dft(GridField(spec, 1, Domain::frequency)), InputError);
  EXPECT_THROW(idft(GridField(spec, 1)), InputError);
}

TEST(Norms, ConstantFieldValues) {
  const GridSpec spec(2, 3.0, 8);
  CMatrix A(2, 2);
  A << 1.0, cplx(0.0, -2.0), 0.0, 3.0;
  const GridField f = GridField::sample(spec, 2, [&](const Point&) { return A; });
  const double area = 9.0;
  EXPECT_NEAR(hs_norm(f), std::sqrt(area * 14.0), 1e-12);
  EXPECT_NEAR(triple_norm_1(f), area * 6.0, 1e-12);
  EXPECT_NEAR(triple_norm_2(f), std::sqrt(area) * 6.0, 1e-12);
  EXPECT_NEAR(sup_norm(f, NormKind::max), 3.0, 0.0);
  EXPECT_NEAR(sup_norm(f, NormKind::hs), std::sqrt(14.0), 1e-14);
}

TEST(Norms, TripleNormsBracketHs) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Gen g(seed);
    const GridSpec spec(1, g.uniform(1.0, 20.0), 32);
    const GridField f = g.noise_field(spec, g.integer(1, 4));
    ASSERT_LE(hs_norm(f), triple_norm_2(f) * (1 + 1e-12)) << "seed " << seed;
    ASSERT_LE(triple_norm_2(f), f.m() * hs_norm(f) * (1 + 1e-12)) << "seed " << seed;
  }
}

TEST(FieldIo, RoundTripDoubleAndSingle) {
  Gen g(9);
  GridField f = dft(g.noise_field(GridSpec(2, 6.5, 8), 2));
  std::stringstream ss;
  write_field(ss, f);
  const GridField back = read_field(ss);
  EXPECT_EQ(back.spec(), f.spec());
  EXPECT_EQ(back.domain(), Domain::frequency);
  EXPECT_EQ(max_abs_difference(back, f), 0.0);

  std::stringstream single;
  write_field(single, f, true);
  EXPECT_LT(single.str().size(), ss.str().size());
  EXPECT_LE(max_abs_difference(read_field(single), f), 1e-6 * sup_norm(f, NormKind::max));
}

TEST(FieldIo, HeaderLayoutIsLittleEndian) {
  std::stringstream ss;
  write_field(ss, GridField(GridSpec(1, 2.0, 8), 1));
  const std::string s = ss.str();
  ASSERT_GE(s.size(), 36u);
  EXPECT_EQ(s.substr(0, 7), "MPSDGF1");
  EXPECT_EQ(s[7], '\0');
  EXPECT_EQ(static_cast<unsigned char>(s[8]), 1);
  EXPECT_EQ(s.size(), 36u + 8u * 16u);
}

TEST(FieldIo, RejectsCorruptInput) {
  std::stringstream bad("NOTAFIELD-------------------------------");
  EXPECT_THROW(read_field(bad), InputError);

  std::stringstream ss;
  write_field(ss, GridField(GridSpec(1, 2.0, 8), 1));
  const std::string s = ss.str();
  std::stringstream truncated(s.substr(0, s.size() - 5));
  EXPECT_THROW(read_field(truncated), InputError);

  EXPECT_THROW(read_field_file("/nonexistent/field.bin"), InputError);
}
