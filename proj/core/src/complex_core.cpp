#include "zipmap/complex_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>

#include "zipmap/error.hpp"

namespace zipmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-12;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace

ExtendedComplex::ExtendedComplex(Complex z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::Domain, "ExtendedComplex: non-finite coordinates; use infinity()");
  }
}

Complex ExtendedComplex::value() const {
  if (infinite_) throw Error(ErrorKind::Precondition, "value() called on the point at infinity");
  return z_;
}

void Mobius::validate() const {
  const double det = std::abs(a * d - b * c);
  const double scale = (std::abs(a) + std::abs(b)) * (std::abs(c) + std::abs(d));
  if (!(scale > 0.0) || det <= 1e-14 * scale) {
    throw Error(ErrorKind::InvalidTransform, "degenerate Moebius transform (ad - bc = 0)");
  }
}

Mobius Mobius::compose(const Mobius& inner) const {
  return {a * inner.a + b * inner.c, a * inner.b + b * inner.d,
          c * inner.a + d * inner.c, c * inner.b + d * inner.d};
}

ExtendedComplex mobius_apply(const Mobius& m, const ExtendedComplex& z) {
  m.validate();
  if (z.is_infinite()) {
    if (m.c == Complex(0.0)) return ExtendedComplex::infinity();
    return m.a / m.c;
  }
  const Complex w = z.raw();
  const Complex den = m.c * w + m.d;
  if (den == Complex(0.0)) return ExtendedComplex::infinity();
  return (m.a * w + m.b) / den;
}

Mobius mobius_inverse(const Mobius& m) {
  m.validate();
  return {m.d, -m.b, -m.c, m.a};
}

Complex sqrt_right(Complex z) { return std::sqrt(z); }

Complex log_branch(Complex z, Branch branch) {
  double arg = std::arg(z);
  switch (branch) {
    case Branch::Principal: break;
    case Branch::Upper:
      if (arg <= -kPi / 2) arg += 2 * kPi;
      break;
    case Branch::Lower:
      if (arg > kPi / 2) arg -= 2 * kPi;
      break;
  }
  return {std::log(std::abs(z)), arg};
}

Complex pow_branch(Complex z, double q, Branch branch) {
  if (z == Complex(0.0)) {
    if (q > 0.0) return 0.0;
    throw Error(ErrorKind::Domain, "pow_branch: zero raised to a non-positive power");
  }
  return std::exp(q * log_branch(z, branch));
}

Complex log1p(Complex u) {
  const double x = u.real();
  const double y = u.imag();
  if (std::abs(u) > 0.5) return std::log(1.0 + u);
  return {0.5 * std::log1p(x * (2.0 + x) + y * y), std::atan2(y, 1.0 + x)};
}

Complex expm1(Complex v) {
  const double x = v.real();
  const double y = v.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

CircleOrLine CircleOrLine::circle(Complex center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::DegenerateInput, "circle radius must be positive");
  CircleOrLine c;
  c.is_circle_ = true;
  c.circle_ = {center, radius};
  return c;
}

CircleOrLine CircleOrLine::line(Complex point, Complex direction) {
  const double n = std::abs(direction);
  if (!(n > 0.0)) throw Error(ErrorKind::DegenerateInput, "line direction must be nonzero");
  CircleOrLine c;
  c.is_circle_ = false;
  c.line_ = {point, direction / n};
  return c;
}

const Circle& CircleOrLine::as_circle() const {
  if (!is_circle_) throw Error(ErrorKind::Precondition, "CircleOrLine holds a line");
  return circle_;
}

const Line& CircleOrLine::as_line() const {
  if (is_circle_) throw Error(ErrorKind::Precondition, "CircleOrLine holds a circle");
  return line_;
}

double CircleOrLine::distance(Complex z) const {
  if (is_circle_) return std::abs(std::abs(z - circle_.center) - circle_.radius);
  return std::abs(cross(line_.direction, z - line_.point));
}

CircleOrLine circle_through(Complex p1, Complex p2, Complex p3) {
  const double d12 = std::abs(p2 - p1);
  const double d13 = std::abs(p3 - p1);
  const double d23 = std::abs(p3 - p2);
  const double diam = std::max({d12, d13, d23});
  if (d12 == 0.0 || d13 == 0.0 || d23 == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "circle_through: coincident points");
  }
  const Complex b = p2 - p1;
  const Complex c = p3 - p1;
  const double cr = cross(b, c);
  if (std::abs(cr) <= kRelTol * diam * diam) {
    Complex dir = b;
    if (d13 >= d12 && d13 >= d23) dir = c;
    if (d23 >= d12 && d23 >= d13) dir = p3 - p2;
    return CircleOrLine::line(p1, dir);
  }
  const Complex w = (std::norm(b) * c - std::norm(c) * b) / (Complex(0.0, 2.0) * cr);
  return CircleOrLine::circle(p1 + w, std::abs(w));
}

ExtendedComplex real_axis_second_intersection(const CircleOrLine& c) {
  if (c.is_circle()) {
    const Circle& k = c.as_circle();
    if (std::abs(std::abs(k.center) - k.radius) > 1e-9 * k.radius) {
      throw Error(ErrorKind::Precondition, "circle does not pass through 0");
    }
    if (std::abs(k.center.real()) <= kRelTol * k.radius) return ExtendedComplex::infinity();
    return ExtendedComplex(2.0 * k.center.real(), 0.0);
  }
  const Line& l = c.as_line();
  const double scale = std::max(1.0, std::abs(l.point));
  if (std::abs(cross(l.direction, -l.point)) > 1e-9 * scale) {
    throw Error(ErrorKind::Precondition, "line does not pass through 0");
  }
  if (std::abs(l.direction.imag()) <= kRelTol) {
    throw Error(ErrorKind::DegenerateInput, "the real axis meets itself everywhere");
  }
  return ExtendedComplex::infinity();
}

double spherical_distance(const ExtendedComplex& z, const ExtendedComplex& w) {
  if (z.is_infinite() && w.is_infinite()) return 0.0;
  if (z.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(w.raw()));
  if (w.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(z.raw()));
  const Complex a = z.raw();
  const Complex b = w.raw();
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

void Polyline::validate() const {
  if (points.size() < 2) throw Error(ErrorKind::DegenerateInput, "polyline needs at least 2 points");
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i] == points[i + 1]) {
      throw Error(ErrorKind::DegenerateInput, "polyline has repeated consecutive points");
    }
  }
}

std::vector<Complex> Polyline::finite_points() const {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.value());
  return out;
}

Polyline make_polyline(std::span<const Complex> pts, bool closed) {
  Polyline p;
  p.closed = closed;
  p.points.assign(pts.begin(), pts.end());
  return p;
}

double point_segment_distance(Complex z, Complex p, Complex q) {
  const Complex d = q - p;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - p);
  double t = ((z - p) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (p + t * d));
}

namespace {

double chordal(Complex a, Complex b) {
  return 2.0 * std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

// Minimises the chordal distance from z to p + t(q - p), t in [0,1]. The squared
// chordal distance is a ratio of two quadratics in t with equal leading
// coefficient, so the stationary points solve a quadratic.
double point_segment_chordal(Complex z, Complex p, Complex q) {
  const Complex d = q - p;
  const double A = std::norm(d);
  double best = std::min(chordal(z, p), chordal(z, q));
  if (A == 0.0) return best;
  const Complex e = p - z;
  const double B = 2.0 * (e * std::conj(d)).real();
  const double C0 = std::norm(e);
  const double E = 2.0 * (p * std::conj(d)).real();
  const double F = 1.0 + std::norm(p);
  const double qa = A * (E - B);
  const double qb = 2.0 * A * (F - C0);
  const double qc = B * F - C0 * E;
  auto consider = [&](double t) {
    if (t > 0.0 && t < 1.0) best = std::min(best, chordal(z, p + t * d));
  };
  if (std::abs(qa) < 1e-300) {
    if (qb != 0.0) consider(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      consider((-qb + s) / (2.0 * qa));
      consider((-qb - s) / (2.0 * qa));
    }
  }
  return best;
}

struct SegmentView {
  std::vector<Complex> pts;
  bool closed;
  std::size_t segment_count() const {
    if (pts.size() < 2) return pts.empty() ? 0 : 1;
    return closed ? pts.size() : pts.size() - 1;
  }
  Complex start(std::size_t i) const { return pts[i]; }
  Complex end(std::size_t i) const {
    if (pts.size() < 2) return pts[0];
    return pts[(i + 1) % pts.size()];
  }
};

double distance_to(Complex z, const SegmentView& v, Metric metric) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.segment_count(); ++i) {
    const double d = metric == Metric::Euclidean
                         ? point_segment_distance(z, v.start(i), v.end(i))
                         : point_segment_chordal(z, v.start(i), v.end(i));
    best = std::min(best, d);
  }
  return best;
}

// Uniform bucket grid over the segments of a polyline, for Euclidean
// nearest-segment and range queries.
class SegmentGrid {
 public:
  explicit SegmentGrid(const SegmentView& v) : v_(v), stamp_(v.segment_count(), 0) {
    const std::size_t m = v.segment_count();
    lo_ = hi_ = v.pts.front();
    for (const auto& p : v.pts) {
      lo_ = {std::min(lo_.real(), p.real()), std::min(lo_.imag(), p.imag())};
      hi_ = {std::max(hi_.real(), p.real()), std::max(hi_.imag(), p.imag())};
    }
    const double w = hi_.real() - lo_.real();
    const double h = hi_.imag() - lo_.imag();
    dim_ = std::max<long>(1, std::lround(std::sqrt(static_cast<double>(m))));
    cell_ = std::max({w, h, 1e-300}) / static_cast<double>(dim_);
    nx_ = std::max<long>(1, static_cast<long>(std::ceil(w / cell_)));
    ny_ = std::max<long>(1, static_cast<long>(std::ceil(h / cell_)));
    cells_.resize(static_cast<std::size_t>(nx_ * ny_));
    for (std::size_t i = 0; i < m; ++i) {
      const Complex a = v.start(i), b = v.end(i);
      const long x0 = cx(std::min(a.real(), b.real())), x1 = cx(std::max(a.real(), b.real()));
      const long y0 = cy(std::min(a.imag(), b.imag())), y1 = cy(std::max(a.imag(), b.imag()));
      for (long y = y0; y <= y1; ++y)
        for (long x = x0; x <= x1; ++x) cells_[static_cast<std::size_t>(y * nx_ + x)].push_back(i);
    }
  }

  double nearest(Complex z) {
    ++tick_;
    double best = std::numeric_limits<double>::infinity();
    const long zx = cx(z.real()), zy = cy(z.imag());
    const long rings = std::max(nx_, ny_);
    for (long r = 0; r <= rings; ++r) {
      for (long y = zy - r; y <= zy + r; ++y) {
        if (y < 0 || y >= ny_) continue;
        const bool edge = y == zy - r || y == zy + r;
        for (long x = zx - r; x <= zx + r; x += edge ? 1 : 2 * r) {
          if (x >= 0 && x < nx_) scan(x, y, [&](std::size_t i) {
              best = std::min(best, point_segment_distance(z, v_.start(i), v_.end(i)));
            });
          if (r == 0) break;
        }
      }
      // Cells beyond ring r lie at least r cells from z's projection onto the box.
      if (best <= static_cast<double>(r) * cell_) break;
    }
    return best;
  }

  // Calls f on every segment that may come within `radius` of z.
  template <class F>
  void near(Complex z, double radius, F&& f) {
    ++tick_;
    const long x0 = cx(z.real() - radius), x1 = cx(z.real() + radius);
    const long y0 = cy(z.imag() - radius), y1 = cy(z.imag() + radius);
    for (long y = y0; y <= y1; ++y)
      for (long x = x0; x <= x1; ++x) scan(x, y, f);
  }

 private:
  long cx(double x) const {
    return std::clamp(static_cast<long>(std::floor((x - lo_.real()) / cell_)), 0L, nx_ - 1);
  }
  long cy(double y) const {
    return std::clamp(static_cast<long>(std::floor((y - lo_.imag()) / cell_)), 0L, ny_ - 1);
  }
  template <class F>
  void scan(long x, long y, F&& f) {
    for (std::size_t i : cells_[static_cast<std::size_t>(y * nx_ + x)]) {
      if (stamp_[i] == tick_) continue;
      stamp_[i] = tick_;
      f(i);
    }
  }

  const SegmentView& v_;
  std::vector<std::size_t> stamp_;
  std::vector<std::vector<std::size_t>> cells_;
  Complex lo_, hi_;
  double cell_ = 1.0;
  long dim_ = 1, nx_ = 1, ny_ = 1;
  std::size_t tick_ = 0;
};

// sup over points x of A's segments of dist(x, B), by branch and bound on each
// segment. Upper bounds come from the Lipschitz constant of dist(., B) and,
// for the Euclidean metric, from convexity of the distance to each single
// segment of B.
double directed_hausdorff(const SegmentView& a, const SegmentView& b, Metric metric, double tol) {
  const bool euclid = metric == Metric::Euclidean;
  const double lip = euclid ? 1.0 : 2.0;
  std::optional<SegmentGrid> grid;
  if (euclid) grid.emplace(b);
  auto dist = [&](Complex z) { return euclid ? grid->nearest(z) : distance_to(z, b, metric); };
  double lower = 0.0;
  struct Interval {
    Complex p, q;
    double dp, dq, upper;
    bool operator<(const Interval& o) const { return upper < o.upper; }
  };
  auto bound = [&](Complex p, Complex q, double dp, double dq) {
    double u = std::max(dp, dq) + lip * std::abs(q - p) / 2.0;
    if (euclid) {
      // Only segments within dp + |q - p| of p can beat the nearest one to p.
      grid->near(p, dp + std::abs(q - p), [&](std::size_t i) {
        u = std::min(u, std::max(point_segment_distance(p, b.start(i), b.end(i)),
                                 point_segment_distance(q, b.start(i), b.end(i))));
      });
    }
    return u;
  };
  std::priority_queue<Interval> queue;
  for (std::size_t i = 0; i < a.segment_count(); ++i) {
    const Complex p = a.start(i);
    const Complex q = a.end(i);
    const double dp = dist(p);
    const double dq = dist(q);
    lower = std::max({lower, dp, dq});
    queue.push({p, q, dp, dq, bound(p, q, dp, dq)});
  }
  // The work cap only matters for pathological inputs; the answer is then
  // the best lower bound found.
  for (std::size_t work = 0; !queue.empty() && work < 200000; ++work) {
    Interval iv = queue.top();
    queue.pop();
    if (iv.upper <= lower + tol) break;
    const Complex m = 0.5 * (iv.p + iv.q);
    const double dm = dist(m);
    lower = std::max(lower, dm);
    queue.push({iv.p, m, iv.dp, dm, bound(iv.p, m, iv.dp, dm)});
    queue.push({m, iv.q, dm, iv.dq, bound(m, iv.q, dm, iv.dq)});
  }
  return lower;
}

double diameter_bound(const std::vector<Complex>& pts) {
  if (pts.empty()) return 0.0;
  double minx = pts[0].real(), maxx = minx, miny = pts[0].imag(), maxy = miny;
  for (const auto& p : pts) {
    minx = std::min(minx, p.real());
    maxx = std::max(maxx, p.real());
    miny = std::min(miny, p.imag());
    maxy = std::max(maxy, p.imag());
  }
  return std::hypot(maxx - minx, maxy - miny);
}

}  // namespace

double distance_to_polyline(Complex z, const Polyline& poly, Metric metric) {
  const SegmentView v{poly.finite_points(), poly.closed};
  if (v.pts.empty()) throw Error(ErrorKind::Precondition, "empty polyline");
  return distance_to(z, v, metric);
}

double hausdorff_distance(const Polyline& a, const Polyline& b, Metric metric) {
  const SegmentView va{a.finite_points(), a.closed};
  const SegmentView vb{b.finite_points(), b.closed};
  if (va.pts.empty() || vb.pts.empty()) {
    throw Error(ErrorKind::Precondition, "hausdorff_distance: empty polyline");
  }
  std::vector<Complex> all = va.pts;
  all.insert(all.end(), vb.pts.begin(), vb.pts.end());
  double scale = diameter_bound(all);
  if (metric == Metric::Spherical) scale = std::min(scale, 2.0);
  const double tol = 1e-12 * std::max(scale, 1e-300);
  return std::max(directed_hausdorff(va, vb, metric, tol), directed_hausdorff(vb, va, metric, tol));
}

int winding_sign(std::span<const Complex> points, Complex interior) {
  if (points.size() < 3) throw Error(ErrorKind::DegenerateInput, "winding_sign needs >= 3 points");
  const std::vector<Complex> pts(points.begin(), points.end());
  const double scale = std::max(diameter_bound(pts), 1e-300);
  double total = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex p = pts[i];
    const Complex q = pts[(i + 1) % pts.size()];
    if (point_segment_distance(interior, p, q) <= kRelTol * scale) {
      throw Error(ErrorKind::DegenerateInput, "winding_sign: point lies on the polygon");
    }
    total += std::arg((q - interior) / (p - interior));
  }
  const long turns = std::lround(total / (2 * kPi));
  if (turns == 0) throw Error(ErrorKind::DegenerateInput, "winding_sign: polygon does not wind around the point");
  return turns > 0 ? 1 : -1;
}

double signed_area2(std::span<const Complex> points) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    s += cross(points[i], points[(i + 1) % points.size()]);
  }
  return s;
}

bool point_in_polygon(Complex z, std::span<const Complex> polygon) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = polygon[i];
    const Complex b = polygon[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real();
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  auto orient = [](Complex a, Complex b, Complex c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
  };
  auto on_segment = [](Complex a, Complex b, Complex c) {
    return std::min(a.real(), b.real()) <= c.real() && c.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= c.imag() && c.imag() <= std::max(a.imag(), b.imag());
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace zipmap
