#include <gtest/gtest.h>

#include "test_support.hpp"
#include "zipmap/complex_core.hpp"
#include "zipmap/error.hpp"

using namespace zipmap;
using zipmap::test::kPi;
using zipmap::test::Rng;

namespace {

const Mobius kHalfPole{1.0, 0.0, -0.5, 1.0};  // z / (1 - z/2)

void expect_near(Complex got, Complex want, double tol) {
  EXPECT_LE(std::abs(got - want), tol) << "got " << got << " want " << want;
}

}  // namespace

TEST(Mobius, EvaluatesFinitePoint) {
  const auto w = mobius_apply(kHalfPole, Complex(1.0));
  ASSERT_TRUE(w.is_finite());
  expect_near(w.raw(), 2.0, 1e-15);
}

TEST(Mobius, PoleGoesToInfinity) { EXPECT_TRUE(mobius_apply(kHalfPole, Complex(2.0)).is_infinite()); }

TEST(Mobius, IdentityFixesInfinity) {
  EXPECT_TRUE(mobius_apply(Mobius::identity(), ExtendedComplex::infinity()).is_infinite());
}

TEST(Mobius, InfinityGoesToRatioOfLeadingCoefficients) {
  const auto w = mobius_apply(kHalfPole, ExtendedComplex::infinity());
  expect_near(w.value(), -2.0, 1e-15);
}

TEST(Mobius, InverseOfHalfPole) {
  const Mobius inv = mobius_inverse(kHalfPole);
  // z / (1 + z/2), up to a common factor.
  for (Complex z : {Complex(0.3, 0.1), Complex(-1.0, 2.0), Complex(5.0, 0.0)})
    expect_near(mobius_apply(inv, z).value(), z / (1.0 + z / 2.0), 1e-14);
}

TEST(Mobius, InverseOfIdentity) {
  const Mobius inv = mobius_inverse(Mobius::identity());
  expect_near(mobius_apply(inv, Complex(0.7, -0.2)).value(), Complex(0.7, -0.2), 0.0);
}

TEST(Mobius, DegenerateRejected) {
  const Mobius m{1.0, 2.0, 2.0, 4.0};
  EXPECT_THROW(m.validate(), Error);
}

TEST(Mobius, RandomRoundTripOnSphere) {
  Rng rng(1);
  for (int t = 0; t < 1000; ++t) {
    Mobius m{rng.disc(3), rng.disc(3), rng.disc(3), rng.disc(3)};
    const Mobius inv = mobius_inverse(m);
    ExtendedComplex z = t % 50 == 0 ? ExtendedComplex::infinity() : ExtendedComplex(rng.disc(10));
    const auto back = mobius_apply(inv, mobius_apply(m, z));
    EXPECT_LT(spherical_distance(back, z), 1e-12);
  }
}

TEST(Mobius, ComposeMatchesSequentialApplication) {
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    Mobius f{rng.disc(2), rng.disc(2), rng.disc(2), rng.disc(2)};
    Mobius g{rng.disc(2), rng.disc(2), rng.disc(2), rng.disc(2)};
    const Complex z = rng.disc(2);
    EXPECT_LT(spherical_distance(mobius_apply(f.compose(g), z), mobius_apply(f, mobius_apply(g, z))), 1e-11);
  }
}

TEST(SqrtRight, Basics) {
  expect_near(sqrt_right(4.0), 2.0, 0.0);
  expect_near(sqrt_right(-1.0), Complex(0, 1), 1e-16);
}

TEST(SqrtRight, JustBelowNegativeAxis) {
  const Complex r = sqrt_right(Complex(-4.0, -1e-12));
  EXPECT_LT(r.imag(), 0.0);
  EXPECT_GT(std::arg(r), -kPi / 2);
  expect_near(r, Complex(0, -2), 1e-12);
}

TEST(SqrtRight, SquareRecoversInput) {
  Rng rng(3);
  for (int t = 0; t < 10000; ++t) {
    const Complex z = rng.disc(100);
    const Complex r = sqrt_right(z);
    EXPECT_LT(std::abs(r * r - z), 1e-14 * std::abs(z) + 1e-300);
    EXPECT_GE(r.real(), 0.0);
  }
}

TEST(PowBranch, Square) { expect_near(pow_branch(Complex(0, 1), 2.0), -1.0, 1e-15); }

TEST(PowBranch, HalfOnUpperBranch) { expect_near(pow_branch(-1.0, 0.5, Branch::Upper), Complex(0, 1), 1e-15); }

TEST(PowBranch, ZeroPowers) {
  expect_near(pow_branch(0.0, 0.5), 0.0, 0.0);
  EXPECT_THROW(pow_branch(0.0, -0.5), Error);
}

TEST(PowBranch, ComplementaryExponentsMatchLogOracle) {
  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    const Complex z = rng.upper(1e-3, 1e3);
    const double q = rng.uniform(0.01, 0.99);
    const Complex prod = pow_branch(z, q) * pow_branch(z, 1 - q);
    // Independent oracle: both factors carry arg in (0, pi), so the product is z itself.
    const Complex oracle = std::exp(q * std::log(z)) * std::exp((1 - q) * std::log(z));
    EXPECT_LT(std::abs(prod - oracle), 1e-13 * std::abs(z));
    EXPECT_LT(std::abs(prod - z), 1e-13 * std::abs(z));
  }
}

TEST(LogBranch, UpperBranchIsContinuousAcrossNegativeAxis) {
  EXPECT_NEAR(log_branch(Complex(-1, 0), Branch::Upper).imag(), kPi, 1e-15);
  EXPECT_NEAR(log_branch(Complex(-1, -1e-9), Branch::Upper).imag(), kPi + 1e-9, 1e-12);
  EXPECT_NEAR(log_branch(Complex(-1, 1e-9), Branch::Lower).imag(), -kPi - 1e-9, 1e-12);
}

TEST(Log1pExpm1, SmallArguments) {
  const Complex u(1e-10, -2e-10);
  expect_near(zipmap::log1p(u), u - u * u / 2.0, 1e-25);
  expect_near(zipmap::expm1(u), u + u * u / 2.0, 1e-25);
}

TEST(CircleThrough, GenericCircle) {
  const auto c = circle_through(0.0, 2.0, Complex(0, 1));
  ASSERT_TRUE(c.is_circle());
  expect_near(c.as_circle().center, Complex(1, 0.5), 1e-14);
  EXPECT_NEAR(c.as_circle().radius, std::sqrt(1.25), 1e-14);
}

TEST(CircleThrough, CollinearGivesLine) {
  const auto c = circle_through(0.0, 1.0, 2.0);
  ASSERT_FALSE(c.is_circle());
  EXPECT_LT(c.distance(0.0), 1e-15);
  EXPECT_NEAR(std::abs(c.as_line().direction.imag()), 0.0, 1e-15);
}

TEST(CircleThrough, UnitCircle) {
  const auto c = circle_through(1.0, Complex(0, 1), -1.0);
  ASSERT_TRUE(c.is_circle());
  expect_near(c.as_circle().center, 0.0, 1e-15);
  EXPECT_NEAR(c.as_circle().radius, 1.0, 1e-15);
}

TEST(CircleThrough, PassesThroughInputs) {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const Complex a = rng.disc(5), b = rng.disc(5), d = rng.disc(5);
    const auto c = circle_through(a, b, d);
    const double scale = std::max({std::abs(a - b), std::abs(b - d), std::abs(a - d)});
    for (Complex p : {a, b, d}) EXPECT_LT(c.distance(p), 1e-12 * std::max(scale, c.is_circle() ? c.as_circle().radius : 0.0));
  }
}

TEST(CircleThrough, RepeatedPointRejected) { EXPECT_THROW(circle_through(1.0, 1.0, 2.0), Error); }

TEST(RealAxisSecondIntersection, GenericCircle) {
  const auto b = real_axis_second_intersection(circle_through(0.0, 2.0, Complex(0, 1)));
  expect_near(b.value(), 2.0, 1e-14);
}

TEST(RealAxisSecondIntersection, TangentCircle) {
  EXPECT_TRUE(real_axis_second_intersection(CircleOrLine::circle(Complex(0, 1), 1.0)).is_infinite());
}

TEST(RealAxisSecondIntersection, VerticalLine) {
  EXPECT_TRUE(real_axis_second_intersection(CircleOrLine::line(0.0, Complex(0, 1))).is_infinite());
}

TEST(SphericalDistance, Examples) {
  EXPECT_NEAR(spherical_distance(0.0, ExtendedComplex::infinity()), 2.0, 1e-15);
  EXPECT_EQ(spherical_distance(0.0, 0.0), 0.0);
  EXPECT_NEAR(spherical_distance(1.0, Complex(0, 1)), std::sqrt(2.0), 1e-15);
}

TEST(SphericalDistance, BoundedAndLocallyEuclidean) {
  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    const Complex z = rng.disc(1e6), w = rng.disc(1e6);
    EXPECT_LE(spherical_distance(z, w), 2.0 + 1e-15);
    const Complex s = rng.disc(1e-4), u = rng.disc(1e-4);
    if (s != u) {
      EXPECT_NEAR(spherical_distance(s, u) / (2 * std::abs(s - u)), 1.0, 1e-6);
    }
  }
}

TEST(Hausdorff, IdenticalIsZero) {
  const auto p = make_polyline(std::vector<Complex>{0.0, 1.0, Complex(1, 1)}, false);
  EXPECT_EQ(hausdorff_distance(p, p), 0.0);
}

TEST(Hausdorff, TranslatedSegment) {
  const auto a = make_polyline(std::vector<Complex>{0.0, 1.0}, false);
  const auto b = make_polyline(std::vector<Complex>{Complex(0, 0.5), Complex(1, 0.5)}, false);
  EXPECT_NEAR(hausdorff_distance(a, b), 0.5, 1e-12);
}

TEST(Hausdorff, InscribedPolygonAgainstSampledCircle) {
  const int n = 24;
  const auto gon = make_polyline(test::circle_points(n), true);
  const auto fine = make_polyline(test::circle_points(10000), true);
  // Brute-force oracle: sample the polygon finely, take the farthest sample from the circle.
  double oracle = 0.0;
  const auto v = test::circle_points(n);
  for (int k = 0; k < n; ++k)
    for (int s = 0; s <= 200; ++s) {
      const Complex p = v[k] + (v[(k + 1) % n] - v[k]) * (s / 200.0);
      oracle = std::max(oracle, 1.0 - std::abs(p));
    }
  const double d = hausdorff_distance(gon, fine);
  EXPECT_NEAR(d, 1.0 - std::cos(kPi / n), 1e-6);
  EXPECT_NEAR(d, oracle, 1e-6);
}

TEST(Hausdorff, SymmetricAndTriangleInequality) {
  Rng rng(7);
  auto random_poly = [&] {
    std::vector<Complex> pts;
    const int m = rng.integer(2, 8);
    for (int i = 0; i < m; ++i) pts.push_back(rng.disc(2));
    return make_polyline(pts, false);
  };
  for (int t = 0; t < 100; ++t) {
    const auto a = random_poly(), b = random_poly(), c = random_poly();
    const double ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
    EXPECT_NEAR(ab, ba, 1e-12);
    EXPECT_LE(hausdorff_distance(a, c), ab + hausdorff_distance(b, c) + 1e-12);
  }
}

TEST(Hausdorff, SphericalMetricBounded) {
  const auto a = make_polyline(std::vector<Complex>{0.0, 1.0}, false);
  const auto b = make_polyline(std::vector<Complex>{1e6, Complex(1e6, 1)}, false);
  const double d = hausdorff_distance(a, b, Metric::Spherical);
  EXPECT_LE(d, 2.0);
  EXPECT_GT(d, 1.4);
}

TEST(Winding, SquareBothOrientations) {
  std::vector<Complex> sq{1.0, Complex(0, 1), -1.0, Complex(0, -1)};
  EXPECT_EQ(winding_sign(sq, 0.0), 1);
  std::reverse(sq.begin(), sq.end());
  EXPECT_EQ(winding_sign(sq, 0.0), -1);
}

TEST(Winding, AgreesWithShoelaceOnRandomPolygons) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    auto poly = test::random_star_polygon(rng, rng.integer(5, 20), 0.3, 1.0);
    if (t % 2) std::reverse(poly.begin(), poly.end());
    const int oracle = signed_area2(poly) > 0 ? 1 : -1;
    EXPECT_EQ(winding_sign(poly, 0.0), oracle);
  }
}

TEST(Winding, PointOnPolygonRejected) {
  std::vector<Complex> sq{1.0, Complex(0, 1), -1.0, Complex(0, -1)};
  EXPECT_THROW(winding_sign(sq, 1.0), Error);
}

TEST(ExtendedComplex, InfinityValueThrows) { EXPECT_THROW(ExtendedComplex::infinity().value(), Error); }
