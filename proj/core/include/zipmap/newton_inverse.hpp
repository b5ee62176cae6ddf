#pragma once

// Inversion of the straight slit map by Newton's method. The w-plane is cut
// into four regions relative to the unnormalised map
//   f(z) = (z - p)^p (z + 1 - p)^(1 - p),
// and each region gets a preliminary map that makes the inverse well behaved:
//   FAR       |w| >= 9/8 |L|             plain Newton on z/w
//   TIP       |w - w_tip| < Im(w_tip)/4  square root at the tip
//   SECTOR_P  0 < arg w < pi p           w -> w^(1/p)
//   SECTOR_Q  pi p < arg w < pi          w -> w^(1/(1-p))

#include <vector>

#include "zipmap/complex_core.hpp"
#include "zipmap/elementary_maps.hpp"

namespace zipmap {

struct NewtonConfig {
  double tol = 1e-13;
  int max_iter = 30;
  double far_threshold = 9.0 / 8.0;
  double tip_fraction = 0.25;

  /// Throws Precondition unless 0 < tol < 1e-6 and max_iter >= 8.
  void validate() const;
};

enum class Region { Far, Tip, SectorP, SectorQ };

const char* to_string(Region region);

struct NewtonResult {
  Complex z;
  double residual = 0.0;  // |f(z) - w| / max(|w|, |L|)
  int iterations = 0;
  Region region = Region::Far;
};

/// Region of an unnormalised value v != 0 in the closed upper half-plane.
Region classify_unit(Complex v, double p, const NewtonConfig& cfg);
/// Region of a normalised value w (divided by C before classification).
Region classify_region(Complex w, const SlitParams& sp, const NewtonConfig& cfg);

/// Region solvers, all in unnormalised coordinates. Throw NonConvergenceError.
NewtonResult newton_far(Complex v, double p, const NewtonConfig& cfg);
NewtonResult newton_tip(Complex v, double p, const NewtonConfig& cfg);
NewtonResult newton_sector(Complex v, double p, const NewtonConfig& cfg, Region which);

/// Undamped far-field iteration from z0 = v + 2p - 1; returns the relative
/// residual |f(z_k)/v - 1| for k = 0..iterations.
std::vector<double> newton_far_trace(Complex v, double p, int iterations);

/// Plain Newton for f(z) = v started at `guess`, with no region logic.
NewtonResult unit_slit_inverse_near(Complex v, double p, Complex guess, const NewtonConfig& cfg);

/// Full inverse of f on the closed upper half-plane (v finite).
Complex unit_slit_inverse(Complex v, double p, const NewtonConfig& cfg);

/// Real preimage of a real value v != 0: x > p for v > 0, x < p - 1 for v < 0.
double unit_slit_inverse_real(double v, double p);

/// Preimage of the slit point t * unit_tip (0 <= t <= 1) on the requested side
/// of the base: in [0, p] for Right, in [p - 1, 0] for Left.
double unit_slit_inverse_on_slit(double t, double p, BaseSide side);

/// Inverse of the normalised slit map g_a. w = 0 maps to p (Right) or p - 1
/// (Left); w = infinity maps to infinity.
ExtendedComplex slit_inverse(const ExtendedComplex& w, const SlitParams& sp,
                             const NewtonConfig& cfg = NewtonConfig{},
                             BaseSide side = BaseSide::Right);

}  // namespace zipmap
