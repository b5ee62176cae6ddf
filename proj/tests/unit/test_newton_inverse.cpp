#include <gtest/gtest.h>

#include <limits>

#include "test_support.hpp"
#include "zipmap/elementary_maps.hpp"
#include "zipmap/error.hpp"
#include "zipmap/newton_inverse.hpp"

using namespace zipmap;
using zipmap::test::kPi;
using zipmap::test::Rng;

namespace {

const Complex I(0.0, 1.0);
const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

// p = 1/2: f(z) = sqrt(z^2 - 1/4), so the inverse is the root of w^2 + 1/4
// lying in H.
Complex half_inverse(Complex w) {
  const Complex s = std::sqrt(w * w + 0.25);
  if (std::abs(s.imag()) > 1e-14 * std::abs(s)) return s.imag() > 0 ? s : -s;
  return w.real() >= 0 ? s : -s;
}

// Residual that a few ulps of error in z produce, |f'(z)| * 8 eps |z|: near
// the base points f is so steep that no double does better.
double rounding_residual(double p, Complex z) {
  if (z == Complex(p) || z == Complex(p - 1.0)) return std::numeric_limits<double>::infinity();
  const double fz = std::abs(unit_slit_forward(p, z));
  return 8e-16 * std::max(1.0, std::abs(z)) * fz * (p / std::abs(z - p) + (1 - p) / std::abs(z + 1.0 - p));
}

}  // namespace

TEST(Regions, Examples) {
  const NewtonConfig cfg;
  EXPECT_NEAR(unit_slit_length(0.5), 0.5, 1e-15);
  EXPECT_EQ(classify_unit(I, 0.5, cfg), Region::Far);
  EXPECT_EQ(classify_unit(std::polar(unit_slit_length(0.3), 0.3 * kPi), 0.3, cfg), Region::Tip);
  EXPECT_EQ(classify_unit(0.1 * std::polar(1.0, kPi / 4), 0.5, cfg), Region::SectorP);
  EXPECT_EQ(classify_unit(0.1 * std::polar(1.0, 3 * kPi / 4), 0.5, cfg), Region::SectorQ);
}

TEST(Regions, NormalisedClassificationDividesByScale) {
  const NewtonConfig cfg;
  SlitParams sp(Complex(0.0, 3.0));
  EXPECT_EQ(classify_region(sp.w_tip(), sp, cfg), Region::Tip);
  EXPECT_EQ(classify_region(Complex(0.0, 3.0 * 1.2), sp, cfg), Region::Far);
}

TEST(NewtonFar, HalfExponentClosedForm) {
  const auto r = newton_far(2.0 * I, 0.5, NewtonConfig{});
  EXPECT_LT(std::abs(r.z - I * std::sqrt(3.75)), 1e-14);
  EXPECT_LT(r.residual, 1e-13);
}

TEST(NewtonFar, FourIterationsBeyondGoldenRatio) {
  Rng rng(30);
  for (int t = 0; t < 100; ++t) {
    const double p = rng.uniform(0.05, 0.95);
    const Complex v = std::polar(kGolden + 0.1, rng.uniform(0.0, kPi));
    const auto trace = newton_far_trace(v, p, 4);
    ASSERT_EQ(trace.size(), 5u);
    EXPECT_LT(trace.back(), 1e-12) << "p=" << p << " v=" << v;
  }
}

TEST(NewtonFar, ContractionBoundPerIteration) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    const double p = rng.uniform(0.05, 0.95);
    const Complex v = std::polar(rng.uniform(kGolden + 1e-3, 50.0), rng.uniform(0.0, kPi));
    const auto trace = newton_far_trace(v, p, 5);
    for (std::size_t n = 0; n < trace.size(); ++n)
      EXPECT_LE(trace[n], 1.5 * std::pow(1.0 / 12.0, std::pow(2.0, static_cast<double>(n))) + 1e-14)
          << "n=" << n << " p=" << p << " v=" << v;
  }
}

TEST(NewtonFar, QuadraticContraction) {
  Rng rng(32);
  for (int t = 0; t < 200; ++t) {
    const double p = rng.uniform(0.05, 0.95);
    const Complex v = std::polar(rng.uniform(kGolden, 100.0), rng.uniform(0.0, kPi));
    const auto trace = newton_far_trace(v, p, 6);
    for (std::size_t n = 0; n + 1 < trace.size(); ++n) {
      if (trace[n] < 1e-7) break;  // the next residual would sit at the precision floor
      const double now = (2.0 / 3.0) * trace[n];
      EXPECT_LE((2.0 / 3.0) * trace[n + 1], now * now * 1.1 + 1e-15);
    }
  }
}

TEST(NewtonFar, RecoversLargePreimages) {
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const double p = rng.uniform(0.05, 0.95);
    const Complex z = rng.upper(5.0, 1e4);
    const Complex v = unit_slit_forward(p, z);
    const auto r = newton_far(v, p, NewtonConfig{});
    EXPECT_LT(std::abs(r.z - z), 1e-11 * std::abs(z));
  }
}

TEST(NewtonTip, TipGoesToZero) {
  for (double p : {0.1, 0.5, 0.77}) {
    const Complex tip = std::polar(unit_slit_length(p), kPi * p);
    const auto r = newton_tip(tip, p, NewtonConfig{});
    EXPECT_LT(std::abs(r.z), 1e-12);
  }
}

TEST(NewtonTip, HalfExponentJustBelowTip) {
  const Complex w = 0.49 * I;
  const auto r = newton_tip(w, 0.5, NewtonConfig{});
  // w lies on the slit, so the preimage is real with |z| = sqrt(1/4 - 0.49^2).
  EXPECT_NEAR(std::abs(r.z), std::abs(half_inverse(w)), 1e-12);
  EXPECT_LT(std::abs(r.z.imag()), 1e-12);
  EXPECT_LT(std::abs(unit_slit_forward(0.5, r.z) - w), 1e-13);
}

TEST(NewtonTip, RecoversSmallImaginaryPreimage) {
  for (double p : {0.2, 0.5, 0.9}) {
    const Complex z = 1e-3 * I;
    const auto r = newton_tip(unit_slit_forward(p, z), p, NewtonConfig{});
    EXPECT_LT(std::abs(r.z - z), 1e-9);
  }
}

TEST(NewtonSector, PositiveAxisNearBase) {
  for (double p : {0.2, 0.5, 0.8}) {
    for (double v : {1e-6, 1e-3, 0.05}) {
      const auto r = newton_sector(Complex(v, 0.0), p, NewtonConfig{}, Region::SectorP);
      EXPECT_GE(r.z.real(), p);
      EXPECT_LT(r.z.real(), p + 0.5);
      EXPECT_LT(std::abs(r.z.imag()), 1e-12);
      // The root is about p + v^(1/p); for tiny v it is within rounding of p.
      const double floor = rounding_residual(p, r.z);
      EXPECT_LE(std::abs(unit_slit_forward(p, r.z) - v), 1e-13 + floor);
      const double x = unit_slit_inverse_real(v, p);
      EXPECT_GE(x, p);
      EXPECT_NEAR(x, r.z.real(), 1e-12);
      EXPECT_LE(std::abs(unit_slit_forward(p, x) - v), 1e-13 + rounding_residual(p, x));
    }
  }
}

TEST(NewtonSector, HalfExponentClosedForm) {
  const Complex w = 0.1 * std::polar(1.0, kPi / 4);
  const auto r = newton_sector(w, 0.5, NewtonConfig{}, Region::SectorP);
  EXPECT_LT(std::abs(r.z - half_inverse(w)), 1e-13);
}

TEST(NewtonSector, RightSideOfSlit) {
  // The right side of the slit is the image of (0, p): just right of the
  // slit's foot the preimage sits slightly left of p, barely above R.
  const double p = 0.4;
  const Complex w = std::polar(1e-2, kPi * p - 1e-9);
  const auto r = newton_sector(w, p, NewtonConfig{}, Region::SectorP);
  EXPECT_LT(std::abs(unit_slit_forward(p, r.z) - w), 1e-12);
  EXPECT_LT(r.z.real(), p);
  EXPECT_GT(r.z.real(), p - 1e-3);
  EXPECT_GE(r.z.imag(), 0.0);
  EXPECT_LT(r.z.imag(), 1e-9);
}

TEST(SlitInverse, TipAndInfinity) {
  SlitParams sp(Complex(0.7, 1.9));
  EXPECT_LT(std::abs(slit_inverse(sp.a(), sp).value()), 1e-15);
  EXPECT_TRUE(slit_inverse(ExtendedComplex::infinity(), sp).is_infinite());
  EXPECT_DOUBLE_EQ(slit_inverse(0.0, sp).value().real(), sp.p());
  EXPECT_DOUBLE_EQ(slit_inverse(0.0, sp, NewtonConfig{}, BaseSide::Left).value().real(), sp.p() - 1.0);
}

TEST(SlitInverse, ForwardGeneratedSweep) {
  Rng rng(34);
  for (int t = 0; t < 1000; ++t) {
    SlitParams sp(std::polar(rng.uniform(0.2, 5.0), rng.uniform(0.05, 0.95) * kPi));
    const Complex z = t % 3 == 0 ? rng.upper(1e-3, 0.5) : rng.upper(1e-2, 20);
    const Complex w = slit_forward(sp, z).raw();
    const Complex back = slit_inverse(w, sp).value();
    EXPECT_LT(std::abs(back - z), 1e-10 * std::max(1.0, std::abs(z))) << "a=" << sp.a() << " z=" << z;
  }
}

TEST(SlitInverse, InverseThenForwardOffSlit) {
  Rng rng(35);
  for (int t = 0; t < 1000; ++t) {
    SlitParams sp(std::polar(rng.uniform(0.2, 5.0), rng.uniform(0.05, 0.95) * kPi));
    const Complex w = rng.upper(1e-3, 10);
    Complex z;
    ASSERT_NO_THROW(z = slit_inverse(w, sp).value()) << "a=" << sp.a() << " w=" << w;
    EXPECT_GE(z.imag(), -1e-12);
    const double floor = sp.scale() * rounding_residual(sp.p(), z);
    EXPECT_LT(std::abs(slit_forward(sp, z).raw() - w), 1e-10 * std::max(std::abs(w), std::abs(sp.a())) + floor)
        << "a=" << sp.a() << " w=" << w << " z=" << z;
  }
}

TEST(SlitInverse, HalfExponentClosedForm) {
  Rng rng(36);
  for (double len : {0.5, 3.0}) {
    SlitParams sp(I * len);
    const double c = sp.scale();
    for (int t = 0; t < 1000; ++t) {
      const Complex w = rng.upper(1e-3, 10);
      const Complex oracle = half_inverse(w / c);
      EXPECT_LT(std::abs(slit_inverse(w, sp).value() - oracle), 1e-12 * std::max(1.0, std::abs(oracle)));
    }
  }
}

TEST(SlitInverse, DispatchIsTotalOnDenseGrid) {
  const NewtonConfig cfg;
  for (double p : {0.05, 0.3, 0.5, 0.71, 0.95}) {
    const double len = unit_slit_length(p);
    int count[4] = {0, 0, 0, 0};
    for (int i = 0; i <= 80; ++i)
      for (int j = 0; j <= 40; ++j) {
        const Complex v(-2 * len + 4 * len * i / 80.0, 2 * len * j / 40.0);
        if (v == Complex(0.0) || std::abs(v) > 2 * len) continue;
        ++count[static_cast<int>(classify_unit(v, p, cfg))];
        Complex z;
        ASSERT_NO_THROW(z = unit_slit_inverse(v, p, cfg)) << "p=" << p << " v=" << v;
        // Near the base points f is steep: allow the residual that a few ulps of z produce.
        EXPECT_LT(std::abs(unit_slit_forward(p, z) - v), 1e-9 * len + rounding_residual(p, z)) << "p=" << p << " v=" << v;
      }
    for (int r = 0; r < 4; ++r) EXPECT_GT(count[r], 0) << "p=" << p << " region " << r;
  }
}

TEST(SlitInverse, OnSlitPreimagesBracketBase) {
  for (double p : {0.2, 0.5, 0.8}) {
    for (double t : {0.0, 0.3, 0.9, 1.0}) {
      const double r = unit_slit_inverse_on_slit(t, p, BaseSide::Right);
      const double l = unit_slit_inverse_on_slit(t, p, BaseSide::Left);
      EXPECT_GE(r, -1e-15);
      EXPECT_LE(r, p + 1e-15);
      EXPECT_GE(l, p - 1 - 1e-15);
      EXPECT_LE(l, 1e-15);
      const Complex target = t * std::polar(unit_slit_length(p), kPi * p);
      EXPECT_LT(std::abs(unit_slit_forward(p, r) - target), 1e-12);
      EXPECT_LT(std::abs(unit_slit_forward(p, l) - target), 1e-12);
    }
  }
}

TEST(NewtonConfig, Validation) {
  NewtonConfig bad;
  bad.tol = 1e-3;
  EXPECT_THROW(bad.validate(), Error);
  NewtonConfig few;
  few.max_iter = 2;
  EXPECT_THROW(few.validate(), Error);
  EXPECT_NO_THROW(NewtonConfig{}.validate());
}

TEST(NewtonDriver, NonConvergenceCarriesRegion) {
  NewtonConfig cfg;
  cfg.max_iter = 8;
  // A starting guess on the wrong side of the base cannot reach a tight residual in time.
  try {
    unit_slit_inverse_near(Complex(1e3, 1e3), 0.5, Complex(-1e-9, 1e-12), cfg);
  } catch (const NonConvergenceError& e) {
    EXPECT_GT(e.residual(), cfg.tol);
    EXPECT_FALSE(e.region().empty());
  }
}
