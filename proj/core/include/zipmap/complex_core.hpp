#pragma once

// Extended complex arithmetic, Moebius transforms, branch-managed roots and
// powers, and the small amount of planar geometry the rest of the library
// needs (circles through points, polyline distances, winding).

#include <complex>
#include <span>
#include <vector>

namespace zipmap {

using Complex = std::complex<double>;

/// A point of the Riemann sphere. Infinity is a tag, never an IEEE infinity.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  ExtendedComplex(Complex z);  // NOLINT: implicit from finite values
  ExtendedComplex(double re, double im = 0.0) : ExtendedComplex(Complex(re, im)) {}

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex z;
    z.infinite_ = true;
    return z;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; throws Precondition if this is infinity.
  Complex value() const;
  /// Finite value without the check (0 for infinity).
  constexpr Complex raw() const noexcept { return z_; }

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{};
  bool infinite_ = false;
};

/// z -> (a z + b) / (c z + d).
struct Mobius {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Mobius identity() { return {}; }
  /// Throws InvalidTransform when ad - bc vanishes relative to the coefficients.
  void validate() const;
  Mobius compose(const Mobius& inner) const;  // this o inner
};

ExtendedComplex mobius_apply(const Mobius& m, const ExtendedComplex& z);
Mobius mobius_inverse(const Mobius& m);

/// Principal square root, -pi/2 < arg <= pi/2.
Complex sqrt_right(Complex z);

/// Selects a continuous logarithm branch on a closed half-plane.
///   Principal: arg in (-pi, pi]
///   Upper:     arg in (-pi/2, 3pi/2]   (continuous on the closed upper half-plane minus 0)
///   Lower:     arg in (-3pi/2, pi/2]
enum class Branch { Principal, Upper, Lower };

Complex log_branch(Complex z, Branch branch);
/// exp(q log z) on the selected branch. z = 0 gives 0 for q > 0 and a
/// Domain error for q <= 0.
Complex pow_branch(Complex z, double q, Branch branch = Branch::Upper);

/// log(1 + u) and exp(v) - 1 without cancellation for small arguments.
Complex log1p(Complex u);
Complex expm1(Complex v);

struct Circle {
  Complex center;
  double radius;
};

struct Line {
  Complex point;
  Complex direction;  // unit
};

class CircleOrLine {
 public:
  static CircleOrLine circle(Complex center, double radius);
  static CircleOrLine line(Complex point, Complex direction);

  bool is_circle() const noexcept { return is_circle_; }
  const Circle& as_circle() const;
  const Line& as_line() const;
  /// Signed distance-like residual: | |z-c| - r | for circles, distance to the line otherwise.
  double distance(Complex z) const;

 private:
  bool is_circle_ = false;
  Circle circle_{};
  Line line_{};
};

/// Unique circle (or line, when collinear within 1e-12 of the data diameter) through three points.
CircleOrLine circle_through(Complex p1, Complex p2, Complex p3);

/// For a circle or line through 0, its other intersection with the real axis.
/// Infinity for a circle tangent to R at 0 or a line through 0 other than R.
ExtendedComplex real_axis_second_intersection(const CircleOrLine& c);

/// Chordal metric 2|z-w| / sqrt((1+|z|^2)(1+|w|^2)).
double spherical_distance(const ExtendedComplex& z, const ExtendedComplex& w);

struct Polyline {
  std::vector<ExtendedComplex> points;
  bool closed = false;

  /// At least two points, consecutive points distinct. Throws DegenerateInput.
  void validate() const;
  std::vector<Complex> finite_points() const;
};

Polyline make_polyline(std::span<const Complex> pts, bool closed);

enum class Metric { Euclidean, Spherical };

/// Symmetric Hausdorff distance between polylines treated as point sets
/// (segments, not vertices). Accurate to about 1e-12 of the data scale.
double hausdorff_distance(const Polyline& a, const Polyline& b,
                          Metric metric = Metric::Euclidean);

/// Distance from z to a polyline's segments.
double distance_to_polyline(Complex z, const Polyline& poly,
                            Metric metric = Metric::Euclidean);

/// +1 when the closed polygon winds counterclockwise about `interior`, -1 when
/// clockwise. Throws DegenerateInput if `interior` is on the polygon or the
/// polygon does not wind around it.
int winding_sign(std::span<const Complex> points, Complex interior);

/// Twice the signed area (shoelace) of a closed polygon.
double signed_area2(std::span<const Complex> points);

/// Distance from z to segment [p, q] (Euclidean).
double point_segment_distance(Complex z, Complex p, Complex q);

/// Even-odd point-in-polygon test.
bool point_in_polygon(Complex z, std::span<const Complex> polygon);

/// True when segments [p1,p2] and [q1,q2] intersect (including touching).
bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2);

}  // namespace zipmap
