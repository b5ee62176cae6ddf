#pragma once

// Closed-form building blocks of the geodesic, slit and zipper algorithms.
//
// Every map here carries (a region of) the closed upper half-plane H onto H.
// "forward" is the direction that unzips a boundary arc (domain -> H);
// "inverse" is the direction that zips it back (H -> domain).

#include "zipmap/complex_core.hpp"

namespace zipmap {

struct NewtonConfig;

/// Which side of a slit base a welded point is tracked on. `Right` is the
/// side adjacent to the positive real axis.
enum class BaseSide { Right, Left };

/// Which half-plane the final map lands in: the domain itself (interior) or
/// the complement (exterior, onto the lower half-plane).
enum class Sheet { Interior, Exterior };

/// Orthogonal circular arc from 0 to `a`, opened by
///   f_a(z) = sqrt((z/(1 - z/b))^2 + c^2),  b = |a|^2/Re a,  c = |a|^2/Im a.
class GeodesicParams {
 public:
  explicit GeodesicParams(Complex a);

  Complex a() const noexcept { return a_; }
  /// Infinity when Re a = 0.
  ExtendedComplex b() const;
  double b_inverse() const noexcept { return b_inv_; }
  double c() const noexcept { return c_; }

 private:
  Complex a_;
  double b_inv_;
  double c_;
};

ExtendedComplex geodesic_forward(const GeodesicParams& gp, const ExtendedComplex& z);

enum class GeodesicBranch { Standard, Reflected };
ExtendedComplex geodesic_inverse(const GeodesicParams& gp, const ExtendedComplex& w,
                                 GeodesicBranch branch = GeodesicBranch::Standard);

/// Straight slit from 0 to `a`:
///   g_a(z) = C (z - p)^p (z + 1 - p)^(1 - p),  p = arg a / pi,
///   C = |a| / (p^p (1 - p)^(1 - p)).
/// The unnormalised map f = g_a / C has slit length |L| = p^p (1-p)^(1-p).
class SlitParams {
 public:
  explicit SlitParams(Complex a);

  Complex a() const noexcept { return a_; }
  double p() const noexcept { return p_; }
  double scale() const noexcept { return c_; }  // C
  double slit_length() const noexcept { return length_; }  // |L|
  /// Tip of the unnormalised slit, e^{i pi p} |L|.
  Complex unit_tip() const noexcept { return unit_tip_; }
  Complex w_tip() const noexcept { return a_; }

 private:
  Complex a_;
  double p_;
  double length_;
  double c_;
  Complex unit_tip_;
};

/// |L| = p^p (1-p)^(1-p), evaluated in log space.
double unit_slit_length(double p);

/// f(z) = (z - p)^p (z + 1 - p)^(1 - p) on the closed upper half-plane, with
/// exact real results for real z.
Complex unit_slit_forward(double p, Complex z);

ExtendedComplex slit_forward(const SlitParams& sp, const ExtendedComplex& z);

/// Circular arc 0 -> c -> a in H mapped to a straight slit by the
/// Moebius map l(z) = z / (1 - z/b), followed by the inverse slit map for
/// d = l(a):  h_{a,c} = g_d^{-1} o l.
class CircularSlitParams {
 public:
  /// Throws TangentArc when the arc is tangent to R at 0 and OutOfOrder-style
  /// DegenerateInput when c does not lie between 0 and a on the arc.
  CircularSlitParams(Complex a, Complex c);

  Complex a() const noexcept { return a_; }
  Complex c() const noexcept { return c_; }
  ExtendedComplex b() const;
  double b_inverse() const noexcept { return b_inv_; }
  Complex d() const noexcept { return inner_.a(); }
  const SlitParams& inner() const noexcept { return inner_; }
  /// Position of l(c) along the straight slit, in (0, 1).
  double c_fraction() const noexcept { return c_fraction_; }

  Complex to_slit(Complex z) const;        // l(z)
  ExtendedComplex to_slit(const ExtendedComplex& z) const;
  ExtendedComplex from_slit(const ExtendedComplex& v) const;  // l^{-1}

 private:
  Complex a_;
  Complex c_;
  double b_inv_;
  double c_fraction_;
  SlitParams inner_;
};

ExtendedComplex circular_slit_forward(const CircularSlitParams& cp, const ExtendedComplex& z,
                                      const NewtonConfig& cfg);
ExtendedComplex circular_slit_forward(const CircularSlitParams& cp, const ExtendedComplex& z);
ExtendedComplex circular_slit_inverse(const CircularSlitParams& cp, const ExtendedComplex& w);

// ---------------------------------------------------------------------------
// Initial and terminal maps. These are the first and last factors of the
// composed map; they are plain value types stored in a MapStep.

/// phi_1(z) = i sqrt((z - z1)/(z - z0)): complement of [z0, z1] onto H,
/// z1 -> 0, z0 -> infinity.
struct InitialGeodesic {
  Complex z0;
  Complex z1;

  ExtendedComplex forward(const ExtendedComplex& z) const;
  ExtendedComplex inverse(const ExtendedComplex& w) const;
};

/// phi_1(z) = sqrt((z - z2)(z1 - z0) / ((z - z0)(z1 - z2))) on the branch with
/// values in H: complement of the circular arc z0 -> z1 -> z2 onto H.
struct InitialZipper {
  Complex z0;
  Complex z1;
  Complex z2;

  ExtendedComplex forward(const ExtendedComplex& z) const;
  ExtendedComplex inverse(const ExtendedComplex& w) const;
};

/// phi_1(z) = lambda sqrt(z - z1), cut along the ray from z1 pointing away
/// from z2, and lambda unimodular with phi_1(z2) on the positive imaginary axis.
struct InitialUnbounded {
  Complex z1;
  Complex z2;

  Complex lambda() const;
  ExtendedComplex forward(const ExtendedComplex& z) const;
  ExtendedComplex inverse(const ExtendedComplex& w) const;
};

/// +-(z / (1 - z/zeta))^2 with zeta real (possibly infinite). Opens the half
/// disc bounded by the orthogonal arc from 0 to zeta.
struct TerminalGeodesic {
  double zeta_inverse = 0.0;  // 1/zeta; 0 encodes zeta = infinity
  int sign = 1;

  ExtendedComplex zeta() const;
  ExtendedComplex forward(const ExtendedComplex& z) const;
  ExtendedComplex inverse(const ExtendedComplex& w, Sheet sheet = Sheet::Interior) const;
};

/// C (z / (1 - z/zeta))^{pi/alpha}: opens the lens of angle alpha at 0
/// bounded by R and the circular arc through 0, zeta_prev and zeta.
/// `side` is the side of 0 on which the domain meets the real axis (+1 for
/// the positive half-line).
struct TerminalZipper {
  double zeta_inverse = 0.0;
  Complex zeta_prev;
  int side = 1;
  double scale = 1.0;  // C

  /// Angle at 0 between R (on `side`) and the arc. Throws TangentArc when it
  /// degenerates.
  double alpha() const;
  ExtendedComplex zeta() const;
  ExtendedComplex forward(const ExtendedComplex& z, Sheet sheet = Sheet::Interior) const;
  ExtendedComplex inverse(const ExtendedComplex& w, Sheet sheet = Sheet::Interior) const;

 private:
  Complex lens_point(const ExtendedComplex& z) const;  // z / (1 - z/zeta)
  double ray_angle() const;                            // arg of the arc's image ray
};

/// Welds [y, 0] to [0, x] (y < 0 < x): the inverse direction is
///   W(z) = (z - x)^p (z - y)^(1 - p),  p = x / (x - y),
/// which maps H onto H minus a straight slit and sends both x and y to 0.
struct WeldingSlit {
  double x = 1.0;
  double y = -1.0;

  double p() const { return x / (x - y); }
  ExtendedComplex forward(const ExtendedComplex& z, const NewtonConfig& cfg) const;
  ExtendedComplex inverse(const ExtendedComplex& w) const;
};

InitialGeodesic initial_geodesic(const ExtendedComplex& z0, const ExtendedComplex& z1);
InitialZipper initial_zipper(Complex z0, Complex z1, Complex z2);
InitialUnbounded initial_unbounded(Complex z1, Complex z2);
TerminalGeodesic terminal_geodesic(const ExtendedComplex& zeta, int sign);
TerminalZipper terminal_zipper(const ExtendedComplex& zeta, Complex zeta_prev, int side);

/// Moves a point with a tiny negative imaginary part (rounding noise relative
/// to `scale`) onto the real axis with a +0 imaginary part.
Complex snap_to_closed_upper(Complex w, double scale);

}  // namespace zipmap
