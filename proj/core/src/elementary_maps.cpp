#include "zipmap/elementary_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zipmap/error.hpp"
#include "zipmap/newton_inverse.hpp"

namespace zipmap {

namespace {

constexpr double kPi = std::numbers::pi;
const ExtendedComplex kInf = ExtendedComplex::infinity();

void require_upper(Complex a, const char* what) {
  if (!(a.imag() > 0.0) || !std::isfinite(a.real()) || !std::isfinite(a.imag()))
    throw Error(ErrorKind::Precondition, std::string(what) + ": tip must lie in the open upper half-plane");
}

// z / (1 - z * binv) on the sphere.
ExtendedComplex normalized_moebius(const ExtendedComplex& z, double binv) {
  if (z.is_infinite()) {
    if (binv == 0.0) return kInf;
    return Complex(-1.0 / binv);
  }
  const Complex den = 1.0 - z.raw() * binv;
  if (den == Complex(0.0)) return kInf;
  return z.raw() / den;
}

// Inverse of the above: v / (1 + v * binv).
ExtendedComplex normalized_moebius_inverse(const ExtendedComplex& v, double binv) {
  if (v.is_infinite()) {
    if (binv == 0.0) return kInf;
    return Complex(1.0 / binv);
  }
  const Complex den = 1.0 + v.raw() * binv;
  if (den == Complex(0.0)) return kInf;
  return v.raw() / den;
}

// Upper-half-plane square root: i * sqrt(-z). Values lie in the closed upper
// half-plane for z off the positive real axis.
Complex sqrt_upper(Complex z) { return Complex(0.0, 1.0) * std::sqrt(-z); }

}  // namespace

Complex snap_to_closed_upper(Complex w, double scale) {
  if (w.imag() < 0.0 && -w.imag() <= 1e-12 * scale) return {w.real(), 0.0};
  return w;
}

// ---------------------------------------------------------------- geodesic

GeodesicParams::GeodesicParams(Complex a) : a_(a) {
  require_upper(a, "geodesic slit");
  const double m2 = std::norm(a);
  b_inv_ = a.real() / m2;
  c_ = m2 / a.imag();
}

ExtendedComplex GeodesicParams::b() const {
  if (b_inv_ == 0.0) return kInf;
  return Complex(1.0 / b_inv_);
}

ExtendedComplex geodesic_forward(const GeodesicParams& gp, const ExtendedComplex& z) {
  const ExtendedComplex me = normalized_moebius(z, gp.b_inverse());
  if (me.is_infinite()) return kInf;
  const Complex m = me.raw();
  const double c = gp.c();
  if (m == Complex(0.0)) return Complex(c);
  const Complex q = c / m;
  const Complex far = m * std::sqrt(1.0 + q * q);
  const Complex ic(0.0, c);
  if (z.is_infinite() || std::abs(m - ic) >= 0.5 * c) return far;
  // Near the tip m^2 + c^2 cancels; m - ic = (1 + ic/b)(z - a)/(1 - z/b) does not.
  const Complex zz = z.raw();
  const Complex near_tip = (1.0 + ic * gp.b_inverse()) * (zz - gp.a()) / (1.0 - zz * gp.b_inverse());
  const Complex r = std::sqrt(near_tip * (m + ic));
  if (std::abs(r.imag()) > 1e-3 * std::abs(r)) return r.imag() > 0.0 ? r : -r;
  return std::abs(r - far) <= std::abs(r + far) ? r : -r;
}

ExtendedComplex geodesic_inverse(const GeodesicParams& gp, const ExtendedComplex& w,
                                 GeodesicBranch branch) {
  if (w.is_infinite()) return normalized_moebius_inverse(kInf, gp.b_inverse());
  const double c = gp.c();
  Complex v = w.raw();
  Complex u;
  if (branch == GeodesicBranch::Standard) v = snap_to_closed_upper(v, std::max(std::abs(v), c));
  if (v.imag() == 0.0 && std::abs(v.real()) <= c) {
    u = Complex(0.0, std::sqrt((c - v.real()) * (c + v.real())));
  } else {
    const Complex q = c / v;
    u = v * std::sqrt(1.0 - q * q);
  }
  if (branch == GeodesicBranch::Reflected) u = -u;
  return normalized_moebius_inverse(u, gp.b_inverse());
}

// -------------------------------------------------------------- straight slit

double unit_slit_length(double p) {
  return std::exp(p * std::log(p) + (1.0 - p) * std::log1p(-p));
}

SlitParams::SlitParams(Complex a) : a_(a) {
  require_upper(a, "straight slit");
  p_ = std::arg(a) / kPi;
  if (!(p_ > 0.0 && p_ < 1.0))
    throw Error(ErrorKind::Precondition, "straight slit: arg a / pi must lie in (0, 1)");
  length_ = unit_slit_length(p_);
  c_ = std::abs(a) / length_;
  unit_tip_ = std::polar(length_, kPi * p_);
}

Complex unit_slit_forward(double p, Complex z) {
  const double q = 1.0 - p;
  const Complex s1 = z - p;
  const Complex s2 = z + q;
  if (s1 == Complex(0.0) || s2 == Complex(0.0)) return 0.0;
  if (z.imag() == 0.0) {
    const double x = z.real();
    if (x > p) return std::exp(p * std::log(x - p) + q * std::log(x + q));
    if (x < p - 1.0) return -std::exp(p * std::log(p - x) + q * std::log(-x - q));
    const double mag = std::exp(p * std::log(p - x) + q * std::log(x + q));
    return std::polar(mag, kPi * p);
  }
  return std::exp(p * log_branch(s1, Branch::Upper) + q * log_branch(s2, Branch::Upper));
}

ExtendedComplex slit_forward(const SlitParams& sp, const ExtendedComplex& z) {
  if (z.is_infinite()) return kInf;
  return sp.scale() * unit_slit_forward(sp.p(), z.raw());
}

// ------------------------------------------------------------- circular slit

CircularSlitParams::CircularSlitParams(Complex a, Complex c)
    : a_(a), c_(c), b_inv_(0.0), c_fraction_(0.0), inner_(Complex(0.0, 1.0)) {
  require_upper(a, "circular slit");
  require_upper(c, "circular slit");
  if (a == c) throw Error(ErrorKind::DegenerateInput, "circular slit: coincident arc points");
  const Complex u = 1.0 / c;
  const Complex v = 1.0 / a;
  const double num = (std::conj(u) * v).imag();
  const double den = (v - u).imag();
  const double scale = std::max(std::abs(a), std::abs(c));
  if (std::abs(num) * scale >= 1e12 * std::abs(den))
    throw Error(ErrorKind::TangentArc, "circular slit: arc is tangent to the real axis at 0");
  b_inv_ = num / den;
  const Complex d = to_slit(a);
  const Complex e = to_slit(c);
  if (!(d.imag() > 0.0))
    throw Error(ErrorKind::DegenerateInput, "circular slit: arc leaves the upper half-plane");
  c_fraction_ = (e / d).real();
  if (!(c_fraction_ > 0.0 && c_fraction_ < 1.0))
    throw Error(ErrorKind::DegenerateInput,
                "circular slit: intermediate point does not lie between 0 and the tip");
  inner_ = SlitParams(d);
}

ExtendedComplex CircularSlitParams::b() const {
  if (b_inv_ == 0.0) return kInf;
  return Complex(1.0 / b_inv_);
}

Complex CircularSlitParams::to_slit(Complex z) const { return z / (1.0 - z * b_inv_); }

ExtendedComplex CircularSlitParams::to_slit(const ExtendedComplex& z) const {
  return normalized_moebius(z, b_inv_);
}

ExtendedComplex CircularSlitParams::from_slit(const ExtendedComplex& v) const {
  return normalized_moebius_inverse(v, b_inv_);
}

ExtendedComplex circular_slit_forward(const CircularSlitParams& cp, const ExtendedComplex& z,
                                      const NewtonConfig& cfg) {
  return slit_inverse(cp.to_slit(z), cp.inner(), cfg);
}

ExtendedComplex circular_slit_forward(const CircularSlitParams& cp, const ExtendedComplex& z) {
  return circular_slit_forward(cp, z, NewtonConfig{});
}

ExtendedComplex circular_slit_inverse(const CircularSlitParams& cp, const ExtendedComplex& w) {
  return cp.from_slit(slit_forward(cp.inner(), w));
}

// ------------------------------------------------------------- initial maps

ExtendedComplex InitialGeodesic::forward(const ExtendedComplex& z) const {
  if (z.is_infinite()) return Complex(0.0, 1.0);
  if (z.raw() == z0) return kInf;
  return Complex(0.0, 1.0) * std::sqrt((z.raw() - z1) / (z.raw() - z0));
}

ExtendedComplex InitialGeodesic::inverse(const ExtendedComplex& w) const {
  if (w.is_infinite()) return z0;
  const Complex r = -(w.raw() * w.raw());
  const Complex den = 1.0 - r;
  if (den == Complex(0.0)) return kInf;
  return (z1 - r * z0) / den;
}

ExtendedComplex InitialZipper::forward(const ExtendedComplex& z) const {
  const Complex k = (z1 - z0) / (z1 - z2);
  if (z.is_infinite()) return sqrt_upper(k);
  if (z.raw() == z0) return kInf;
  return sqrt_upper((z.raw() - z2) * k / (z.raw() - z0));
}

ExtendedComplex InitialZipper::inverse(const ExtendedComplex& w) const {
  if (w.is_infinite()) return z0;
  const Complex k = (z1 - z0) / (z1 - z2);
  const Complex t = w.raw() * w.raw();
  const Complex den = k - t;
  if (den == Complex(0.0)) return kInf;
  return (k * z2 - t * z0) / den;
}

Complex InitialUnbounded::lambda() const {
  const Complex d = z2 - z1;
  return Complex(0.0, 1.0) * std::sqrt(std::abs(d)) / std::sqrt(d);
}

ExtendedComplex InitialUnbounded::forward(const ExtendedComplex& z) const {
  if (z.is_infinite()) return kInf;
  const Complex d = z2 - z1;
  return Complex(0.0, 1.0) * std::sqrt((z.raw() - z1) / d) * std::sqrt(std::abs(d));
}

ExtendedComplex InitialUnbounded::inverse(const ExtendedComplex& w) const {
  if (w.is_infinite()) return kInf;
  const Complex d = z2 - z1;
  return z1 - d * (w.raw() * w.raw()) / std::abs(d);
}

// ------------------------------------------------------------ terminal maps

ExtendedComplex TerminalGeodesic::zeta() const {
  if (zeta_inverse == 0.0) return kInf;
  return Complex(1.0 / zeta_inverse);
}

ExtendedComplex TerminalGeodesic::forward(const ExtendedComplex& z) const {
  const ExtendedComplex m = normalized_moebius(z, zeta_inverse);
  if (m.is_infinite()) return kInf;
  return static_cast<double>(sign) * m.raw() * m.raw();
}

ExtendedComplex TerminalGeodesic::inverse(const ExtendedComplex& w, Sheet sheet) const {
  if (w.is_infinite()) return normalized_moebius_inverse(kInf, zeta_inverse);
  Complex x = w.raw();
  const double s = sign;
  if (sheet == Sheet::Interior) {
    x = snap_to_closed_upper(x, std::abs(x));
  } else if (x.imag() >= 0.0 && x.imag() <= 1e-12 * std::abs(x)) {
    x = {x.real(), -0.0};
  }
  Complex v = s * std::sqrt(s * x);
  if (sheet == Sheet::Exterior) v = -v;
  return normalized_moebius_inverse(v, zeta_inverse);
}

ExtendedComplex TerminalZipper::zeta() const {
  if (zeta_inverse == 0.0) return kInf;
  return Complex(1.0 / zeta_inverse);
}

Complex TerminalZipper::lens_point(const ExtendedComplex& z) const {
  const ExtendedComplex m = normalized_moebius(z, zeta_inverse);
  return m.raw();
}

double TerminalZipper::ray_angle() const {
  const ExtendedComplex m = normalized_moebius(zeta_prev, zeta_inverse);
  if (m.is_infinite()) throw Error(ErrorKind::TangentArc, "terminal lens: degenerate arc");
  const double ang = std::arg(m.raw());
  if (!(ang > 1e-12 && ang < kPi - 1e-12))
    throw Error(ErrorKind::TangentArc, "terminal lens: arc is tangent to the real axis at 0");
  return ang;
}

double TerminalZipper::alpha() const {
  const double ang = ray_angle();
  return side > 0 ? ang : kPi - ang;
}

ExtendedComplex TerminalZipper::forward(const ExtendedComplex& z, Sheet sheet) const {
  const ExtendedComplex m = normalized_moebius(z, zeta_inverse);
  if (m.is_infinite()) return kInf;
  const double ang = ray_angle();
  if (sheet == Sheet::Interior) {
    const double alpha = side > 0 ? ang : kPi - ang;
    const double theta0 = side > 0 ? 0.0 : ang;
    return scale * pow_branch(std::polar(1.0, -theta0) * m.raw(), kPi / alpha, Branch::Upper);
  }
  const double beta = side > 0 ? kPi - ang : ang;
  const double theta1 = side > 0 ? ang : 0.0;
  return -scale * pow_branch(std::polar(1.0, -theta1) * m.raw(), kPi / beta, Branch::Upper);
}

ExtendedComplex TerminalZipper::inverse(const ExtendedComplex& w, Sheet sheet) const {
  if (w.is_infinite()) return normalized_moebius_inverse(kInf, zeta_inverse);
  const double ang = ray_angle();
  Complex x = w.raw() / scale;
  Complex v;
  if (sheet == Sheet::Interior) {
    x = snap_to_closed_upper(x, std::abs(x));
    const double alpha = side > 0 ? ang : kPi - ang;
    const double theta0 = side > 0 ? 0.0 : ang;
    v = std::polar(1.0, theta0) * pow_branch(x, alpha / kPi, Branch::Upper);
  } else {
    x = snap_to_closed_upper(-x, std::abs(x));
    const double beta = side > 0 ? kPi - ang : ang;
    const double theta1 = side > 0 ? ang : 0.0;
    v = std::polar(1.0, theta1) * pow_branch(x, beta / kPi, Branch::Upper);
  }
  return normalized_moebius_inverse(v, zeta_inverse);
}

// ----------------------------------------------------------------- welding

ExtendedComplex WeldingSlit::forward(const ExtendedComplex& z, const NewtonConfig& cfg) const {
  if (z.is_infinite()) return kInf;
  const double s = x - y;
  return s * unit_slit_inverse(z.raw() / s, p(), cfg);
}

ExtendedComplex WeldingSlit::inverse(const ExtendedComplex& w) const {
  if (w.is_infinite()) return kInf;
  const double s = x - y;
  Complex v = w.raw();
  if (v.imag() == 0.0) {
    if (v.real() == x || v.real() == y) return Complex(0.0);
  }
  return s * unit_slit_forward(p(), v / s);
}

// ---------------------------------------------------------------- factories

namespace {
void require_distinct(Complex a, Complex b, const char* what) {
  if (a == b) throw Error(ErrorKind::DegenerateInput, std::string(what) + ": coincident points");
}
}  // namespace

InitialGeodesic initial_geodesic(const ExtendedComplex& z0, const ExtendedComplex& z1) {
  if (z0.is_infinite() || z1.is_infinite())
    throw Error(ErrorKind::Precondition, "initial geodesic map: points must be finite");
  require_distinct(z0.raw(), z1.raw(), "initial geodesic map");
  return {z0.raw(), z1.raw()};
}

InitialZipper initial_zipper(Complex z0, Complex z1, Complex z2) {
  require_distinct(z0, z1, "initial zipper map");
  require_distinct(z1, z2, "initial zipper map");
  require_distinct(z0, z2, "initial zipper map");
  return {z0, z1, z2};
}

InitialUnbounded initial_unbounded(Complex z1, Complex z2) {
  require_distinct(z1, z2, "initial unbounded map");
  return {z1, z2};
}

TerminalGeodesic terminal_geodesic(const ExtendedComplex& zeta, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::Precondition, "terminal map: sign must be +1 or -1");
  if (zeta.is_infinite()) return {0.0, sign};
  const Complex z = zeta.raw();
  if (z == Complex(0.0)) throw Error(ErrorKind::Precondition, "terminal map: zeta must be nonzero");
  if (z.imag() != 0.0) throw Error(ErrorKind::Precondition, "terminal map: zeta must be real");
  return {1.0 / z.real(), sign};
}

TerminalZipper terminal_zipper(const ExtendedComplex& zeta, Complex zeta_prev, int side) {
  if (side != 1 && side != -1) throw Error(ErrorKind::Precondition, "terminal lens: side must be +1 or -1");
  TerminalZipper t;
  if (!zeta.is_infinite()) {
    const Complex z = zeta.raw();
    if (z == Complex(0.0)) throw Error(ErrorKind::Precondition, "terminal lens: zeta must be nonzero");
    if (z.imag() != 0.0) throw Error(ErrorKind::Precondition, "terminal lens: zeta must be real");
    t.zeta_inverse = 1.0 / z.real();
  }
  t.zeta_prev = zeta_prev;
  t.side = side;
  (void)t.alpha();  // validates the arc
  return t;
}

}  // namespace zipmap
