#include <gtest/gtest.h>

#include <algorithm>

#include "test_support.hpp"
#include "zipmap/chain_geometry.hpp"
#include "zipmap/error.hpp"
#include "zipmap/map_builder.hpp"

using namespace zipmap;
using zipmap::test::kPi;
using zipmap::test::Rng;

namespace {

DiscChain hexagonal_ring() {
  DiscChain c;
  c.closed = true;
  for (int k = 0; k < 6; ++k) c.discs.push_back({std::polar(2.0, k * kPi / 3), 1.0});
  return c;
}

std::vector<ExtendedComplex> line_points(int n, double h, Complex dir = 1.0) {
  std::vector<ExtendedComplex> out;
  for (int k = 0; k < n; ++k) out.push_back(dir * (k * h));
  return out;
}

Polyline square(double lo, double hi) {
  return make_polyline(std::vector<Complex>{Complex(lo, lo), Complex(hi, lo), Complex(hi, hi), Complex(lo, hi)}, true);
}

// Square boundary with `per` vertices per side.
Polyline fine_square(int per) {
  const Complex c[4] = {Complex(0, 0), Complex(1, 0), Complex(1, 1), Complex(0, 1)};
  std::vector<Complex> pts;
  for (int s = 0; s < 4; ++s)
    for (int i = 0; i < per; ++i) pts.push_back(c[s] + (c[(s + 1) % 4] - c[s]) * (double(i) / per));
  return make_polyline(pts, true);
}

std::vector<ExtendedComplex> inverted_ellipse(int n, double r) {
  std::vector<ExtendedComplex> out;
  for (int k = 0; k < n; ++k) {
    const Complex z = r * std::polar(1.0, 2 * kPi * k / n);
    out.push_back(z / (1.0 + z * z));
  }
  return out;
}

double on_circle_error(Complex p, const Disc& d) { return std::abs(std::abs(p - d.center) - d.radius); }

}  // namespace

// ------------------------------------------------------------ disc chains

TEST(DiscChain, TangentPairIsValid) {
  EXPECT_TRUE(validate_disc_chain({{{0.0, 1.0}, {2.0, 1.0}}}).ok);
}

TEST(DiscChain, OverlapReported) {
  const auto r = validate_disc_chain({{{0.0, 1.0}, {1.9, 1.0}}});
  ASSERT_FALSE(r.ok);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, "overlap");
  EXPECT_NEAR(r.violations[0].magnitude, 0.1, 1e-12);
}

TEST(DiscChain, GapReported) {
  const auto r = validate_disc_chain({{{0.0, 1.0}, {2.5, 1.0}}});
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.violations[0].kind, "gap");
  EXPECT_NEAR(r.violations[0].magnitude, 0.5, 1e-12);
}

TEST(DiscChain, HexagonalRingCloses) {
  const auto ring = hexagonal_ring();
  EXPECT_TRUE(validate_disc_chain(ring).ok);
  auto open = ring;
  open.closed = false;
  EXPECT_TRUE(validate_disc_chain(open).ok);
}

TEST(DiscChain, NeedsTwoDiscs) {
  EXPECT_THROW(validate_disc_chain({{{0.0, 1.0}}}), Error);
}

TEST(Tangency, Examples) {
  auto t = tangency_points({{{0.0, 1.0}, {2.0, 1.0}}});
  ASSERT_EQ(t.size(), 1u);
  EXPECT_LT(std::abs(t[0] - 1.0), 1e-15);
  t = tangency_points({{{0.0, 1.0}, {3.0, 2.0}}});
  EXPECT_LT(std::abs(t[0] - 1.0), 1e-15);
}

TEST(Tangency, HexagonalRingIsSymmetric) {
  const auto ring = hexagonal_ring();
  const auto t = tangency_points(ring);
  ASSERT_EQ(t.size(), 6u);
  for (std::size_t j = 0; j < 6; ++j) {
    EXPECT_NEAR(std::abs(t[j] - t[(j + 1) % 6]), std::abs(t[(j + 1) % 6] - t[(j + 2) % 6]), 1e-12);
    EXPECT_LT(on_circle_error(t[j], ring.discs[j]), 1e-12);
    EXPECT_LT(on_circle_error(t[j], ring.discs[(j + 1) % 6]), 1e-12);
  }
}

TEST(Tangency, InvalidChainRejected) {
  EXPECT_THROW(tangency_points({{{0.0, 1.0}, {1.5, 1.0}}}), Error);
}

TEST(PolygonChain, UnitSquare) {
  const auto sq = square(0, 1);
  const auto chain = polygon_disc_chain(sq, 0.05);
  EXPECT_TRUE(chain.closed);
  EXPECT_TRUE(validate_disc_chain(chain).ok);
  for (const auto& d : chain.discs) {
    EXPECT_LE(d.radius, 0.05 * (1 + 1e-12));
    EXPECT_LT(distance_to_polyline(d.center, sq), 1e-12);
  }
  // A disc at every vertex.
  for (const auto& v : sq.finite_points()) {
    const bool found = std::any_of(chain.discs.begin(), chain.discs.end(),
                                   [&](const Disc& d) { return std::abs(d.center - v) < 1e-12; });
    EXPECT_TRUE(found);
  }
}

TEST(PolygonChain, SharpSpikeShrinksRadii) {
  const auto tri = make_polyline(std::vector<Complex>{0.0, Complex(1, 0.01), Complex(1, -0.01)}, true);
  const auto chain = polygon_disc_chain(tri, 0.05);
  EXPECT_TRUE(validate_disc_chain(chain).ok);
  double smallest = 1.0;
  for (const auto& d : chain.discs)
    if (std::abs(d.center) < 0.5) smallest = std::min(smallest, d.radius);
  EXPECT_LT(smallest, 0.01);
}

TEST(PolygonChain, HugeEpsClipsOrRefuses) {
  const auto sq = square(0, 1);
  try {
    const auto chain = polygon_disc_chain(sq, 10.0);
    EXPECT_TRUE(validate_disc_chain(chain).ok);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Infeasible);
  }
}

TEST(PolygonChain, RandomPolygonsValidate) {
  Rng rng(60);
  for (int t = 0; t < 20; ++t) {
    const auto poly = make_polyline(test::random_star_polygon(rng, rng.integer(5, 12), 0.4, 1.0), true);
    const auto chain = polygon_disc_chain(poly, rng.uniform(0.02, 0.1));
    EXPECT_TRUE(validate_disc_chain(chain).ok);
    for (const auto& p : tangency_points(chain)) EXPECT_LT(distance_to_polyline(p, poly), 1e-12);
  }
}

TEST(PolygonChain, NonSimpleRejected) {
  const auto bowtie = make_polyline(std::vector<Complex>{0.0, Complex(1, 1), Complex(1, 0), Complex(0, 1)}, true);
  EXPECT_THROW(polygon_disc_chain(bowtie, 0.05), Error);
}

TEST(WhitneyChain, ShrunkSquare) {
  const auto omega = square(0.1, 0.9);
  double previous = 1.0;
  for (int n : {4, 5, 6}) {
    const auto chain = whitney_disc_chain(omega, n, Complex(0.5, 0.5));
    EXPECT_TRUE(validate_disc_chain(chain).ok) << "n=" << n;
    for (const auto& d : chain.discs) EXPECT_DOUBLE_EQ(d.radius, std::ldexp(1.0, -n) / 2);
    std::vector<Complex> centers;
    for (const auto& d : chain.discs) centers.push_back(d.center);
    const double dh = hausdorff_distance(make_polyline(centers, true), omega);
    EXPECT_LT(dh, previous) << "n=" << n;
    EXPECT_LT(dh, 4.0 * std::ldexp(1.0, -n));
    previous = dh;
  }
}

TEST(WhitneyChain, Preconditions) {
  const auto omega = square(0.1, 0.9);
  EXPECT_THROW(whitney_disc_chain(omega, 4, Complex(2, 2)), Error);
  EXPECT_THROW(whitney_disc_chain(square(-1, 2), 4, Complex(0.5, 0.5)), Error);
  EXPECT_THROW(whitney_disc_chain(omega, 1, Complex(0.5, 0.5)), Error);
}

// --------------------------------------------------------------- diamonds

TEST(Diamond, Membership) {
  const auto d = Diamond::between(0.0, 2.0, 0.3);
  EXPECT_TRUE(diamond_contains(d, Complex(1.0)));
  EXPECT_FALSE(diamond_contains(d, Complex(0.0)));
  EXPECT_FALSE(diamond_contains(d, Complex(2.0)));
  const double h = std::tan(0.3) * 1.0;
  EXPECT_FALSE(diamond_contains(d, Complex(1.0, h)));
  EXPECT_TRUE(diamond_contains(d, Complex(1.0, h * (1 - 1e-6))));
  EXPECT_FALSE(diamond_contains(d, Complex(1.0, h * (1 + 1e-6))));
  EXPECT_FALSE(diamond_contains(d, ExtendedComplex::infinity()));
}

TEST(Diamond, Sector) {
  const auto s = Diamond::sector(Complex(1, 1), Complex(0, 1), 0.2);
  EXPECT_TRUE(diamond_contains(s, Complex(1, 100)));
  EXPECT_FALSE(diamond_contains(s, Complex(1, -1)));
  EXPECT_FALSE(diamond_contains(s, Complex(1, 1) + std::polar(5.0, kPi / 2 + 0.21)));
  EXPECT_TRUE(diamond_contains(s, Complex(1, 1) + std::polar(5.0, kPi / 2 + 0.19)));
}

TEST(Diamond, RotatedAgreesWithLocalFrame) {
  Rng rng(61);
  for (int t = 0; t < 1000; ++t) {
    const Complex a = rng.disc(2.0), b = rng.disc(2.0);
    const double e = rng.uniform(0.05, 1.2);
    const Complex z = rng.disc(3.0);
    // Local frame: a -> 0, b -> 1.
    const Complex u = (z - a) / (b - a);
    const bool oracle = std::abs(std::arg(u)) < e && std::abs(std::arg(1.0 - u)) < e;
    if (std::abs(std::abs(std::arg(u)) - e) < 1e-9 || std::abs(std::abs(std::arg(1.0 - u)) - e) < 1e-9) continue;
    EXPECT_EQ(diamond_contains(Diamond::between(a, b, e), z), oracle);
  }
}

// ----------------------------------------------------------------- pacman

TEST(Pacman, Shape) {
  const auto p = pacman_at(0.0, 1.0, 0.1, 8.0);
  EXPECT_NEAR(p.radius, 800.0, 1e-9);
  EXPECT_NEAR(p.opening, 0.2, 1e-15);
  EXPECT_TRUE(pacman_contains(p, Complex(5.0)));       // ahead
  EXPECT_FALSE(pacman_contains(p, Complex(-5.0)));     // in the notch behind
  EXPECT_TRUE(pacman_contains(p, Complex(-5.0, 3.0)));  // outside the notch angle
  EXPECT_FALSE(pacman_contains(p, Complex(900.0)));
}

TEST(Pacman, CollinearIsOk) {
  for (double eps : {0.02, 0.1, 0.5, 1.2}) {
    EXPECT_TRUE(pacman_condition(line_points(30, 0.1), eps).ok) << eps;
    EXPECT_TRUE(pacman_condition(line_points(30, 0.1, std::polar(1.0, 2.0)), eps).ok) << eps;
  }
}

TEST(Pacman, CollinearWithInfinityIsOk) {
  auto pts = line_points(20, 0.1);
  std::reverse(pts.begin(), pts.end());
  pts.insert(pts.begin(), ExtendedComplex::infinity());
  // Points run from infinity along the positive axis down to 0.
  EXPECT_TRUE(pacman_condition(pts, 0.1).ok);
}

TEST(Pacman, HairpinViolates) {
  std::vector<ExtendedComplex> pts;
  for (int k = 0; k <= 10; ++k) pts.push_back(Complex(0.1 * k, 0.0));
  for (int k = 10; k >= 0; --k) pts.push_back(Complex(0.1 * k, 0.3));
  const auto r = pacman_condition(pts, 0.1);
  EXPECT_FALSE(r.ok);
  // The fold is where the return leg first faces the outbound diamonds.
  bool after_fold = false;
  for (const auto& v : r.violations) {
    EXPECT_GT(v.magnitude, 0.0);
    if (v.indices[0] >= 11) after_fold = true;
  }
  EXPECT_TRUE(after_fold);
}

TEST(Pacman, DenseSamplingOracle) {
  // For random short walks compare the exact clip with a sampled pacman.
  Rng rng(62);
  const double eps = 0.3, c1 = 0.05;
  int both = 0;
  for (int t = 0; t < 30; ++t) {
    std::vector<ExtendedComplex> pts{Complex(0.0)};
    Complex dir = 1.0;
    for (int k = 0; k < 8; ++k) {
      dir *= std::polar(1.0, rng.uniform(-1.5, 1.5));
      pts.push_back(pts.back().raw() + dir * rng.uniform(0.5, 1.0));
    }
    const auto exact = pacman_condition(pts, eps, c1);
    bool sampled_violation = false;
    for (std::size_t k = 2; k + 1 < pts.size(); ++k) {
      const auto p = pacman_at(pts[k].raw(), pts[k + 1].raw(), eps, c1);
      for (std::size_t j = 0; j + 2 <= k; ++j) {
        const auto d = Diamond::between(pts[j].raw(), pts[j + 1].raw(), eps);
        for (int a = 0; a < 200 && !sampled_violation; ++a)
          for (int b = 1; b < 60 && !sampled_violation; ++b) {
            const Complex z = p.center + std::polar(p.radius * b / 60.0, 2 * kPi * a / 200);
            if (pacman_contains(p, z) && diamond_contains(d, z)) sampled_violation = true;
          }
      }
    }
    // Sampling can only miss intersections, never invent them.
    if (sampled_violation) {
      EXPECT_FALSE(exact.ok) << "trial " << t;
      ++both;
    }
  }
  EXPECT_GT(both, 0);  // the instances do exercise the violation path
}

TEST(Pacman, TwoPointsVacuous) {
  EXPECT_TRUE(pacman_condition({Complex(0.0), Complex(1.0)}, 0.1).ok);
}

TEST(Pacman, Preconditions) {
  EXPECT_THROW(pacman_condition(line_points(5, 1.0), 0.0), Error);
  EXPECT_THROW(pacman_condition(line_points(5, 1.0), 2.0), Error);
  EXPECT_THROW(pacman_condition(line_points(5, 1.0), 0.1, -1.0), Error);
  auto pts = line_points(5, 1.0);
  pts[3] = ExtendedComplex::infinity();
  EXPECT_THROW(pacman_condition(pts, 0.1), Error);
}

TEST(Pacman, ClosedEllipseNeedsSmallC1) {
  // R = C1 |dz| / eps^2 covers the far side of the ellipse for the default C1.
  std::vector<ExtendedComplex> pts;
  for (const auto& z : test::ellipse_points(200, 1.5, 1.0)) pts.push_back(z);
  EXPECT_FALSE(pacman_condition(pts, 0.1, kDefaultPacmanC1, true).ok);
  EXPECT_TRUE(pacman_condition(pts, 0.5, 0.01, true).ok);
}

// ------------------------------------------------------- spacing figures

TEST(Turning, Collinear) {
  const auto r = turning_angle_check(line_points(10, 0.5), 0.1);
  EXPECT_TRUE(r.ok);
}

TEST(Turning, RightAngle) {
  const auto r = turning_angle_check({Complex(0.0), Complex(1.0), Complex(1, 1)}, 0.1);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_NEAR(r.violations[0].magnitude, kPi / 2, 1e-12);
  EXPECT_EQ(r.violations[0].indices[0], 1u);
}

TEST(Turning, CircleSpacing) {
  for (int n : {60, 100, 700}) {
    std::vector<ExtendedComplex> pts;
    for (const auto& z : test::circle_points(n)) pts.push_back(z);
    const double dtheta = 2 * kPi / n;
    for (double eps : {0.5, 1.0}) {
      const auto r = turning_angle_check(pts, eps, true);
      EXPECT_EQ(r.ok, dtheta < eps / 10) << n << " " << eps;
      for (const auto& v : r.violations) EXPECT_NEAR(v.magnitude, dtheta, 1e-12);
    }
  }
}

TEST(Spacing, Examples) {
  EXPECT_NEAR(spacing_constant(line_points(10, 0.3)), 1.0, 1e-12);
  std::vector<ExtendedComplex> alt{Complex(0.0)};
  for (int k = 0; k < 8; ++k) alt.push_back(alt.back().raw() + (k % 2 ? 2.0 : 1.0));
  EXPECT_NEAR(spacing_constant(alt), 2.0, 1e-12);
  for (double q : {0.5, 1.7}) {
    std::vector<ExtendedComplex> geo{Complex(0.0)};
    double h = 1.0;
    for (int k = 0; k < 8; ++k, h *= q) geo.push_back(geo.back().raw() + h);
    EXPECT_NEAR(spacing_constant(geo), std::max(q, 1 / q), 1e-12);
  }
  EXPECT_THROW(spacing_constant({Complex(0.0), Complex(0.0), Complex(1.0)}), Error);
}

TEST(MeshSize, Examples) {
  EXPECT_NEAR(mesh_size(line_points(11, 0.1)), 0.1, 1e-15);
  EXPECT_NEAR(mesh_size({Complex(0.0), Complex(3, 4)}), 5.0, 1e-15);
  std::vector<ExtendedComplex> pts;
  for (const auto& z : test::circle_points(36)) pts.push_back(z);
  EXPECT_NEAR(mesh_size(pts, true), 2 * std::sin(kPi / 36), 1e-12);
}

// ------------------------------------------------------------ quasicircle

TEST(Quasicircle, CircleIsOne) {
  double previous = 1e9;
  for (int n : {16, 64, 256}) {
    const double k = quasicircle_constant(make_polyline(test::circle_points(n), true));
    EXPECT_GE(k, 1.0);
    EXPECT_LT(k, 1.0 + 1e-9);
    EXPECT_LE(k, previous + 1e-12);
    previous = k;
  }
}

TEST(Quasicircle, SquareResolutionsAgree) {
  // The corner configuration dominates; the value creeps up towards sqrt(2)
  // as the corner neighbourhood is resolved.
  const double coarse = quasicircle_constant(fine_square(64));
  const double fine = quasicircle_constant(fine_square(128));
  EXPECT_GT(coarse, 1.3);
  EXPECT_LT(fine, std::sqrt(2.0) + 1e-9);
  EXPECT_NEAR(fine, coarse, 0.01 * coarse);
}

TEST(Quasicircle, FlatCurveIsLarge) {
  // A thin folded hairpin: the far end pinches the two legs together.
  std::vector<Complex> pts;
  for (int k = 0; k <= 20; ++k) pts.push_back(Complex(0.05 * k, 0.0));
  for (int k = 20; k >= 0; --k) pts.push_back(Complex(0.05 * k, 1e-3));
  EXPECT_GT(quasicircle_constant(make_polyline(pts, true)), 50.0);
}

TEST(Quasicircle, SubsampledStaysAtLeastOne) {
  const double k = quasicircle_constant(fine_square(64), 1000);
  EXPECT_GE(k, 1.0);
}

// ------------------------------------------------------------ containment

TEST(CurveInChain, TangencyPolygonContained) {
  const auto chain = polygon_disc_chain(square(0, 1), 0.05);
  const auto t = tangency_points(chain);
  EXPECT_TRUE(curve_in_chain(make_polyline(t, true), chain).ok);
}

TEST(CurveInChain, SidewaysExitReported) {
  const DiscChain chain{{{0.0, 1.0}, {2.0, 1.0}}};
  const auto curve = make_polyline(std::vector<Complex>{Complex(-0.5, 0), Complex(1, 0), Complex(1, 0.8), Complex(2, 0)}, false);
  const auto r = curve_in_chain(curve, chain);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].indices[0], 2u);
  EXPECT_NEAR(r.violations[0].magnitude, std::abs(Complex(1, 0.8)) - 1.0, 1e-12);
}

TEST(CurveInChain, DiamondCover) {
  std::vector<Diamond> cover{Diamond::between(0.0, 1.0, 0.2), Diamond::between(1.0, Complex(1, 1), 0.2)};
  EXPECT_TRUE(curve_in_chain(make_polyline(std::vector<Complex>{0.0, Complex(0.5, 0.05), 1.0, Complex(1.02, 0.5)}, false), cover).ok);
  EXPECT_FALSE(curve_in_chain(make_polyline(std::vector<Complex>{Complex(0.5, 0.5)}, false), cover).ok);
}

// Disc-chain containment for the geodesic algorithm on tangency points.
TEST(CurveInChain, GeodesicBoundaryStaysInRandomChains) {
  Rng rng(63);
  for (int t = 0; t < 20; ++t) {
    const auto poly = make_polyline(test::random_star_polygon(rng, rng.integer(5, 9), 0.5, 1.0), true);
    const auto chain = polygon_disc_chain(poly, rng.uniform(0.04, 0.1));
    const auto pts = tangency_points(chain);
    const auto p = build_geodesic(test::to_extended(pts));
    const auto curve = boundary_sample(p, 16);
    const auto r = curve_in_chain(curve, chain, 1e-9);
    EXPECT_TRUE(r.ok) << "trial " << t << " escapes " << r.violations.size();
  }
}

// ------------------------------------------------------ tangent deviation

TEST(TangentDeviation, StraightIsZero) {
  std::vector<Complex> pts;
  for (int k = 0; k <= 16; ++k) pts.push_back(Complex(k, 2.0 * k));
  EXPECT_NEAR(tangent_deviation(make_polyline(pts, false), {Complex(1, 2)}), 0.0, 1e-15);
}

TEST(TangentDeviation, CircularArc) {
  for (double beta : {0.1, 0.4, 1.0}) {
    // Arc of half-angle beta over the chord [-1, 1]; the chord direction is 1.
    const int m = 4000;
    std::vector<Complex> pts;
    const Complex c(0.0, -1.0 / std::tan(beta));
    const double rad = 1.0 / std::sin(beta);
    for (int k = 0; k <= m; ++k) pts.push_back(c + std::polar(rad, kPi / 2 + beta - 2 * beta * k / m));
    EXPECT_NEAR(tangent_deviation(make_polyline(pts, false), {1.0}), beta, 2 * beta / m);
  }
}

TEST(TangentDeviation, TooCoarseRejected) {
  std::vector<Complex> pts{0.0, 1.0, 2.0, 3.0};
  EXPECT_THROW(tangent_deviation(make_polyline(pts, false), {1.0}), Error);
  std::vector<Complex> more(17);
  for (int k = 0; k < 17; ++k) more[k] = k;
  EXPECT_THROW(tangent_deviation(make_polyline(more, false), {1.0, 1.0, 1.0}), Error);
}

TEST(TangentDeviation, GeodesicNearCollinearData) {
  // Gentle arc: turning per step well below eps/10.
  const double eps = 0.1;
  std::vector<ExtendedComplex> pts{ExtendedComplex::infinity()};
  for (int k = 0; k <= 40; ++k) pts.push_back(Complex(0.05 * k, 0.01 * std::sin(0.05 * k)));
  ASSERT_TRUE(turning_angle_check(pts, eps).ok);
  const auto p = build_geodesic(pts);
  const int spa = 16;
  const auto b = boundary_sample(p, spa);
  std::vector<Complex> refs;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) refs.push_back(pts[k + 1].raw() - pts[k].raw());
  EXPECT_LT(tangent_deviation(b, refs), 3 * eps);
}

// -------------------------------------------------------------- separation

TEST(Separation, ConvexOk) {
  std::vector<ExtendedComplex> pts;
  for (const auto& z : test::ellipse_points(100, 1.4, 1.0)) pts.push_back(z);
  EXPECT_TRUE(neighborhood_separation_check(pts).ok);
}

TEST(Separation, InvertedEllipsePinch) {
  const auto coarse = neighborhood_separation_check(inverted_ellipse(40, 0.95));
  EXPECT_FALSE(coarse.ok);
  // The curve nearly closes up along the real axis; every fold lands on a
  // segment at that pinch.
  const auto pts = inverted_ellipse(40, 0.95);
  for (const auto& v : coarse.violations) EXPECT_LT(std::abs(pts[v.indices[1]].raw().imag()), 0.01);
  EXPECT_TRUE(neighborhood_separation_check(inverted_ellipse(4000, 0.95)).ok);
}

TEST(Separation, ZeroFactorVacuous) {
  EXPECT_TRUE(neighborhood_separation_check(inverted_ellipse(40, 0.95), 0.0).ok);
}
