#include "zipmap/chain_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "zipmap/error.hpp"

namespace zipmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInfD = std::numeric_limits<double>::infinity();

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

Complex unit(Complex z) { return z / std::abs(z); }

std::vector<Complex> finite_only(const std::vector<ExtendedComplex>& pts) {
  std::vector<Complex> out;
  out.reserve(pts.size());
  for (const auto& z : pts)
    if (z.is_finite()) out.push_back(z.raw());
  return out;
}

std::vector<Complex> require_finite(const std::vector<ExtendedComplex>& pts, const char* what) {
  std::vector<Complex> out;
  out.reserve(pts.size());
  for (const auto& z : pts) {
    if (z.is_infinite()) throw Error(ErrorKind::Precondition, std::string(what) + ": points must be finite");
    out.push_back(z.raw());
  }
  return out;
}

// Keeps the part of a convex polygon with cross(dir, z - origin) > margin.
std::vector<Complex> clip_left(const std::vector<Complex>& poly, Complex origin, Complex dir,
                               double margin) {
  std::vector<Complex> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  auto value = [&](Complex z) { return cross(dir, z - origin) - margin; };
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = poly[i];
    const Complex q = poly[(i + 1) % n];
    const double vp = value(p);
    const double vq = value(q);
    if (vp > 0.0) out.push_back(p);
    if ((vp > 0.0) != (vq > 0.0)) {
      const double t = vp / (vp - vq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

double polygon_area(const std::vector<Complex>& poly) {
  return poly.size() < 3 ? 0.0 : 0.5 * std::abs(signed_area2(poly));
}

// Distance from z to a convex polygon (0 inside).
double convex_distance(Complex z, const std::vector<Complex>& poly) {
  const std::size_t n = poly.size();
  int sign = 0;
  bool inside = n >= 3;
  for (std::size_t i = 0; i < n && inside; ++i) {
    const double c = cross(poly[(i + 1) % n] - poly[i], z - poly[i]);
    const int s = (c > 0.0) - (c < 0.0);
    if (s == 0) continue;
    if (sign == 0) sign = s;
    else if (s != sign) inside = false;
  }
  if (inside) return 0.0;
  double d = kInfD;
  for (std::size_t i = 0; i < n; ++i) d = std::min(d, point_segment_distance(z, poly[i], poly[(i + 1) % n]));
  return d;
}

double point_ray_distance(Complex z, Complex origin, Complex dir) {
  const Complex u = unit(dir);
  const double t = (std::conj(u) * (z - origin)).real();
  return t <= 0.0 ? std::abs(z - origin) : std::abs(z - (origin + t * u));
}

bool is_sector(const Diamond& d) { return d.a.is_infinite() || d.b.is_infinite(); }

Complex sector_vertex(const Diamond& d) { return d.a.is_infinite() ? d.b.raw() : d.a.raw(); }

// Vertices of a finite diamond, counterclockwise.
std::vector<Complex> diamond_polygon(Complex a, Complex b, double eps) {
  const Complex m = 0.5 * (a + b);
  const Complex u = b - a;
  const Complex h = Complex(0.0, std::tan(eps) * 0.5) * u;
  return {a, m - h, b, m + h};
}

// A triangle covering the sector out to distance `reach` from its vertex.
std::vector<Complex> sector_polygon(Complex vertex, Complex axis, double eps, double reach) {
  const Complex u = unit(axis);
  const double len = 1.01 * reach / std::cos(eps);
  return {vertex, vertex + len * u * std::polar(1.0, -eps), vertex + len * u * std::polar(1.0, eps)};
}

double diamond_distance(const Diamond& d, Complex z) {
  if (diamond_contains(d, z)) return 0.0;
  if (is_sector(d)) {
    const Complex v = sector_vertex(d);
    const Complex u = unit(d.axis);
    return std::min(point_ray_distance(z, v, u * std::polar(1.0, d.half_angle)),
                    point_ray_distance(z, v, u * std::polar(1.0, -d.half_angle)));
  }
  const auto poly = diamond_polygon(d.a.raw(), d.b.raw(), d.half_angle);
  double best = kInfD;
  for (std::size_t i = 0; i < 4; ++i) best = std::min(best, point_segment_distance(z, poly[i], poly[(i + 1) % 4]));
  return best;
}

void check_polygon_simple(const std::vector<Complex>& v) {
  const std::size_t n = v.size();
  if (n < 3) throw Error(ErrorKind::Precondition, "polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] == v[(i + 1) % n]) throw Error(ErrorKind::Precondition, "polygon has repeated vertices");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw Error(ErrorKind::Precondition, "polygon is not simple: edges " + std::to_string(i) +
                                                 " and " + std::to_string(j) + " meet");
    }
}

}  // namespace

Diamond Diamond::between(Complex a, Complex b, double half_angle) {
  return Diamond{a, b, half_angle, b - a};
}

Diamond Diamond::sector(Complex vertex, Complex axis, double half_angle) {
  return Diamond{ExtendedComplex::infinity(), vertex, half_angle, axis};
}

void ChainReport::add(std::string kind, std::vector<std::size_t> indices, double magnitude) {
  ok = false;
  violations.push_back({std::move(kind), std::move(indices), magnitude});
}

// ------------------------------------------------------------ disc chains

ChainReport validate_disc_chain(const DiscChain& chain) {
  const auto& d = chain.discs;
  const std::size_t n = d.size();
  if (n < 2) throw Error(ErrorKind::Precondition, "a disc chain needs at least two discs");
  ChainReport report;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(d[i].radius > 0.0) || !std::isfinite(d[i].radius)) report.add("radius", {i}, d[i].radius);
    scale = std::max(scale, std::abs(d[i].radius));
  }
  const double tol = chain.tolerance * scale;
  auto consecutive = [&](std::size_t i, std::size_t j) {
    return j == i + 1 || (chain.closed && i == 0 && j == n - 1);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(d[i].center - d[j].center) - d[i].radius - d[j].radius;
      if (gap < -tol) {
        report.add("overlap", {i, j}, -gap);
      } else if (consecutive(i, j) && gap > tol) {
        report.add("gap", {i, j}, gap);
      }
    }
  }
  return report;
}

std::vector<Complex> tangency_points(const DiscChain& chain) {
  if (!validate_disc_chain(chain).ok)
    throw Error(ErrorKind::Precondition, "tangency points need a valid disc chain");
  const auto& d = chain.discs;
  const std::size_t n = d.size();
  const std::size_t count = chain.closed ? n : n - 1;
  std::vector<Complex> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const Disc& a = d[j];
    const Disc& b = d[(j + 1) % n];
    out.push_back(a.center + a.radius * unit(b.center - a.center));
  }
  return out;
}

DiscChain polygon_disc_chain(const Polyline& polygon, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorKind::Precondition, "eps must be positive");
  const std::vector<Complex> v = polygon.finite_points();
  check_polygon_simple(v);
  const std::size_t n = v.size();
  auto edge_a = [&](std::size_t e) { return v[e]; };
  auto edge_b = [&](std::size_t e) { return v[(e + 1) % n]; };

  // Vertex discs: a third of each incident edge, half the distance to the
  // other edges.
  std::vector<double> rv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    double r = std::min({eps, std::abs(edge_b(i) - edge_a(i)) / 3.0, std::abs(edge_b(prev) - edge_a(prev)) / 3.0});
    for (std::size_t e = 0; e < n; ++e) {
      if (e == i || e == prev) continue;
      r = std::min(r, 0.5 * point_segment_distance(v[i], edge_a(e), edge_b(e)));
    }
    rv[i] = r;
  }

  constexpr std::size_t kMaxDiscs = 1'000'000;
  DiscChain chain;
  chain.closed = true;
  for (std::size_t e = 0; e < n; ++e) {
    const Complex a = edge_a(e);
    const Complex b = edge_b(e);
    const double len = std::abs(b - a);
    const Complex u = (b - a) / len;
    chain.discs.push_back({a, rv[e]});
    auto allowed = [&](double s) {
      const Complex x = a + s * u;
      double r = eps;
      for (std::size_t f = 0; f < n; ++f)
        if (f != e) r = std::min(r, 0.5 * point_segment_distance(x, edge_a(f), edge_b(f)));
      return r;
    };
    double s = rv[e];
    const double end = len - rv[(e + 1) % n];
    while (end - s > 0.0) {
      const double rem = end - s;
      // Two thirds of the allowance at s is still allowed at the centre,
      // since the allowance is 1/2-Lipschitz.
      const double rho = (2.0 / 3.0) * allowed(s);
      if (!(rho > 0.0)) throw Error(ErrorKind::Infeasible, "polygon disc chain: zero radius on edge " + std::to_string(e));
      if (rem <= 2.0 * rho) {
        chain.discs.push_back({a + (s + 0.5 * rem) * u, 0.5 * rem});
        break;
      }
      if (rem <= 4.0 * rho) {
        chain.discs.push_back({a + (s + 0.25 * rem) * u, 0.25 * rem});
        chain.discs.push_back({a + (s + 0.75 * rem) * u, 0.25 * rem});
        break;
      }
      chain.discs.push_back({a + (s + rho) * u, rho});
      s += 2.0 * rho;
      if (chain.discs.size() > kMaxDiscs)
        throw Error(ErrorKind::Infeasible, "polygon disc chain: more than a million discs needed");
    }
  }
  return chain;
}

DiscChain whitney_disc_chain(const Polyline& domain, int n, Complex z0) {
  if (n < 1 || n > 12) throw Error(ErrorKind::Precondition, "whitney chain: level must be in [1, 12]");
  const std::vector<Complex> poly = domain.finite_points();
  check_polygon_simple(poly);
  for (const Complex& z : poly)
    if (z.real() < 0.0 || z.real() > 1.0 || z.imag() < 0.0 || z.imag() > 1.0)
      throw Error(ErrorKind::Precondition, "whitney chain: rescale the polygon into the unit square");
  if (!point_in_polygon(z0, poly)) throw Error(ErrorKind::Precondition, "whitney chain: z0 is not inside the polygon");

  const int cells = 1 << n;
  const double h = 1.0 / cells;
  std::vector<char> in(static_cast<std::size_t>(cells) * cells, 0);
  auto at = [&](int i, int j) -> char& { return in[static_cast<std::size_t>(j) * cells + i]; };
  auto get = [&](int i, int j) { return i >= 0 && j >= 0 && i < cells && j < cells && at(i, j); };

  auto doubled_inside = [&](double x0, double y0, double side) {
    const Complex c(x0 + 0.5 * side, y0 + 0.5 * side);
    if (!point_in_polygon(c, poly)) return false;
    const Complex lo = c - Complex(side, side);
    const Complex hi = c + Complex(side, side);
    const Complex box[4] = {lo, Complex(hi.real(), lo.imag()), hi, Complex(lo.real(), hi.imag())};
    const std::size_t m = poly.size();
    for (std::size_t e = 0; e < m; ++e) {
      const Complex p = poly[e];
      const Complex q = poly[(e + 1) % m];
      if (p.real() >= lo.real() && p.real() <= hi.real() && p.imag() >= lo.imag() && p.imag() <= hi.imag()) return false;
      for (int k = 0; k < 4; ++k)
        if (segments_intersect(p, q, box[k], box[(k + 1) % 4])) return false;
    }
    return true;
  };

  // Dyadic subdivision: stop at the first square with 2Q inside.
  struct Square {
    int i, j, level;
  };
  std::vector<Square> stack{{0, 0, 0}};
  while (!stack.empty()) {
    const Square q = stack.back();
    stack.pop_back();
    const double side = std::ldexp(1.0, -q.level);
    if (doubled_inside(q.i * side, q.j * side, side)) {
      const int span = 1 << (n - q.level);
      for (int dj = 0; dj < span; ++dj)
        for (int di = 0; di < span; ++di) at(q.i * span + di, q.j * span + dj) = 1;
    } else if (q.level < n) {
      for (int c = 0; c < 4; ++c) stack.push_back({2 * q.i + (c & 1), 2 * q.j + (c >> 1), q.level + 1});
    }
  }

  const int si = std::clamp(static_cast<int>(z0.real() / h), 0, cells - 1);
  const int sj = std::clamp(static_cast<int>(z0.imag() / h), 0, cells - 1);
  auto component = [&]() {
    std::vector<char> comp(in.size(), 0);
    if (!get(si, sj)) return comp;
    std::queue<std::pair<int, int>> qu;
    qu.push({si, sj});
    comp[static_cast<std::size_t>(sj) * cells + si] = 1;
    while (!qu.empty()) {
      const auto [i, j] = qu.front();
      qu.pop();
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = i + di[k], b = j + dj[k];
        if (!get(a, b)) continue;
        char& c = comp[static_cast<std::size_t>(b) * cells + a];
        if (!c) {
          c = 1;
          qu.push({a, b});
        }
      }
    }
    return comp;
  };

  // Remove cells meeting only diagonally, so the boundary is a simple loop.
  for (;;) {
    in = component();
    if (!get(si, sj))
      throw Error(ErrorKind::Infeasible, "whitney chain: no dyadic square around z0 at this level");
    bool changed = false;
    for (int j = 0; j + 1 < cells; ++j)
      for (int i = 0; i + 1 < cells; ++i) {
        const bool a = get(i, j), b = get(i + 1, j), c = get(i, j + 1), d = get(i + 1, j + 1);
        if (a && d && !b && !c) {
          at(i, j) = at(i + 1, j + 1) = 0;
          changed = true;
        } else if (b && c && !a && !d) {
          at(i + 1, j) = at(i, j + 1) = 0;
          changed = true;
        }
      }
    if (!changed) break;
  }

  // Fill holes: cells not reachable from outside the grid.
  {
    const int w = cells + 2;
    std::vector<char> outside(static_cast<std::size_t>(w) * w, 0);
    std::queue<std::pair<int, int>> qu;
    qu.push({-1, -1});
    outside[0] = 1;
    while (!qu.empty()) {
      const auto [i, j] = qu.front();
      qu.pop();
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = i + di[k], b = j + dj[k];
        if (a < -1 || b < -1 || a > cells || b > cells || get(a, b)) continue;
        char& c = outside[static_cast<std::size_t>(b + 1) * w + (a + 1)];
        if (!c) {
          c = 1;
          qu.push({a, b});
        }
      }
    }
    for (int j = 0; j < cells; ++j)
      for (int i = 0; i < cells; ++i)
        if (!outside[static_cast<std::size_t>(j + 1) * w + (i + 1)]) at(i, j) = 1;
  }

  // Boundary edges with the interior on the left; each vertex has one successor.
  const int verts = cells + 1;
  std::vector<int> next(static_cast<std::size_t>(verts) * verts, -1);
  auto vid = [&](int i, int j) { return j * verts + i; };
  std::size_t edges = 0;
  int start = -1;
  for (int j = 0; j < cells; ++j)
    for (int i = 0; i < cells; ++i) {
      if (!get(i, j)) continue;
      auto link = [&](int a, int b) {
        next[a] = b;
        ++edges;
        if (start < 0) start = a;
      };
      if (!get(i, j - 1)) link(vid(i, j), vid(i + 1, j));
      if (!get(i + 1, j)) link(vid(i + 1, j), vid(i + 1, j + 1));
      if (!get(i, j + 1)) link(vid(i + 1, j + 1), vid(i, j + 1));
      if (!get(i - 1, j)) link(vid(i, j + 1), vid(i, j));
    }

  DiscChain chain;
  chain.closed = true;
  int cur = start;
  do {
    chain.discs.push_back({Complex((cur % verts) * h, (cur / verts) * h), 0.5 * h});
    cur = next[cur];
    if (cur < 0 || chain.discs.size() > edges)
      throw Error(ErrorKind::Infeasible, "whitney chain: boundary is not a single loop");
  } while (cur != start);
  if (chain.discs.size() != edges)
    throw Error(ErrorKind::Infeasible, "whitney chain: boundary is not a single loop");
  return chain;
}

// ------------------------------------------------------ diamonds, pacmen

bool diamond_contains(const Diamond& d, const ExtendedComplex& z) {
  if (z.is_infinite()) return false;
  const double lim = d.half_angle * (1.0 - 1e-12);
  const Complex w = z.raw();
  if (is_sector(d)) {
    const Complex v = sector_vertex(d);
    if (w == v) return false;
    return std::abs(std::arg((w - v) / d.axis)) < lim;
  }
  const Complex a = d.a.raw(), b = d.b.raw();
  if (w == a || w == b) return false;
  return std::abs(std::arg((w - a) / (b - a))) < lim && std::abs(std::arg((w - b) / (a - b))) < lim;
}

bool pacman_contains(const Pacman& p, Complex z) {
  if (!(std::abs(z - p.center) < p.radius)) return false;
  if (z == p.center) return false;
  return std::abs(std::arg(std::conj(p.rotation) * (z - p.center))) > 0.5 * p.opening;
}

Pacman pacman_at(Complex zk, Complex zk1, double eps, double c1) {
  return Pacman{zk, c1 * std::abs(zk1 - zk) / (eps * eps), 2.0 * eps, unit(zk - zk1)};
}

namespace {

// Penetration depth of a convex region into a pacman (0 when disjoint).
double pacman_overlap(const Pacman& p, const std::vector<Complex>& region) {
  const double eps = 0.5 * p.opening;
  const double margin = 1e-12 * p.radius;
  double depth = 0.0;
  // Complement of the notch: left of the upper edge, or right of the lower edge.
  const Complex upper = p.rotation * std::polar(1.0, eps);
  const Complex lower = p.rotation * std::polar(1.0, -eps);
  for (const auto& part : {clip_left(region, p.center, upper, margin), clip_left(region, p.center, -lower, margin)}) {
    if (part.size() < 3 || polygon_area(part) <= 1e-24 * p.radius * p.radius) continue;
    const double d = convex_distance(p.center, part);
    if (d < p.radius * (1.0 - 1e-12)) depth = std::max(depth, p.radius - d);
  }
  return depth;
}

}  // namespace

ChainReport pacman_condition(const std::vector<ExtendedComplex>& points, double eps, double c1, bool closed) {
  if (!(eps > 0.0 && eps < kPi / 2)) throw Error(ErrorKind::Precondition, "pacman: eps must be in (0, pi/2)");
  if (!(c1 > 0.0)) throw Error(ErrorKind::Precondition, "pacman: C1 must be positive");
  const std::size_t n = points.size();
  for (std::size_t j = 1; j < n; ++j)
    if (points[j].is_infinite()) throw Error(ErrorKind::Precondition, "pacman: only the first point may be infinite");
  ChainReport report;
  if (n < 3) return report;
  const bool unbounded = points[0].is_infinite();
  if (unbounded && closed) throw Error(ErrorKind::Precondition, "pacman: closed data must be finite");

  auto region = [&](std::size_t j, const Pacman& p) -> std::vector<Complex> {
    if (j == 0 && unbounded) {
      const Complex z1 = points[1].raw();
      const Complex axis = z1 - points[2].raw();
      return sector_polygon(z1, axis, eps, std::abs(p.center - z1) + p.radius);
    }
    return diamond_polygon(points[j].raw(), points[(j + 1) % n].raw(), eps);
  };
  auto far_away = [&](std::size_t j, const Pacman& p) {
    if (j == 0 && unbounded) return false;
    const Complex a = points[j].raw(), b = points[(j + 1) % n].raw();
    return std::abs(0.5 * (a + b) - p.center) >= p.radius + 0.5 * std::abs(b - a);
  };
  auto check = [&](std::size_t k, std::size_t k1, std::size_t first, std::size_t last, const char* kind) {
    const Pacman p = pacman_at(points[k].raw(), points[k1].raw(), eps, c1);
    for (std::size_t j = first; j <= last; ++j) {
      if (far_away(j, p)) continue;
      const double depth = pacman_overlap(p, region(j, p));
      if (depth > 0.0) report.add(kind, {k, j}, depth);
    }
  };
  for (std::size_t k = 1; k + 1 < n; ++k)
    if (k >= 2) check(k, k + 1, 0, k - 2, "pacman");
  if (closed && n >= 4) check(n - 1, 0, 1, n - 3, "closing_pacman");
  return report;
}

// ------------------------------------------------------ spacing figures

ChainReport turning_angle_check(const std::vector<ExtendedComplex>& points, double eps, bool closed) {
  const std::vector<Complex> z = finite_only(points);
  const std::size_t n = z.size();
  if (n < 3) throw Error(ErrorKind::Precondition, "turning angle check needs at least 3 points");
  const std::size_t offset = points.size() - n;  // skipped leading infinity
  ChainReport report;
  const double bound = eps / 10.0;
  const std::size_t first = closed ? 0 : 1;
  const std::size_t last = closed ? n : n - 1;
  for (std::size_t k = first; k < last; ++k) {
    const Complex prev = z[(k + n - 1) % n], cur = z[k], nxt = z[(k + 1) % n];
    const double angle = std::abs(std::arg((nxt - cur) / (cur - prev)));
    if (!(angle < bound)) report.add("turning", {k + offset}, angle);
  }
  return report;
}

double spacing_constant(const std::vector<ExtendedComplex>& points, bool closed) {
  const std::vector<Complex> z = finite_only(points);
  const std::size_t n = z.size();
  if (n < 3) throw Error(ErrorKind::Precondition, "spacing constant needs at least 3 points");
  double worst = 1.0;
  const std::size_t first = closed ? 0 : 1;
  const std::size_t last = closed ? n : n - 1;
  for (std::size_t k = first; k < last; ++k) {
    const double back = std::abs(z[k] - z[(k + n - 1) % n]);
    const double fwd = std::abs(z[k] - z[(k + 1) % n]);
    if (back == 0.0 || fwd == 0.0)
      throw Error(ErrorKind::DegenerateInput, "spacing constant: coincident consecutive points at " + std::to_string(k));
    const double r = back / fwd;
    worst = std::max({worst, r, 1.0 / r});
  }
  return worst;
}

double mesh_size(const std::vector<ExtendedComplex>& points, bool closed) {
  const std::vector<Complex> z = finite_only(points);
  const std::size_t n = z.size();
  if (n < 2) throw Error(ErrorKind::Precondition, "mesh size needs at least 2 points");
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) m = std::max(m, std::abs(z[k + 1] - z[k]));
  if (closed) m = std::max(m, std::abs(z[0] - z[n - 1]));
  return m;
}

double quasicircle_constant(const Polyline& curve, std::size_t max_triples) {
  const std::vector<Complex> z = curve.finite_points();
  if (z.size() < 4) return 1.0;
  // Images under w = 1/(z - z_0), in curve order; the curve runs through infinity.
  std::vector<Complex> all;
  all.reserve(z.size() - 1);
  for (std::size_t k = 1; k < z.size(); ++k) all.push_back(1.0 / (z[k] - z[0]));
  std::size_t stride = 1;
  auto triples = [](std::size_t m) { return m < 3 ? 0.0 : static_cast<double>(m) * (m - 1) * (m - 2) / 6.0; };
  while (triples((all.size() + stride - 1) / stride) > static_cast<double>(std::max<std::size_t>(max_triples, 1))) ++stride;
  std::vector<Complex> w;
  for (std::size_t k = 0; k < all.size(); k += stride) w.push_back(all[k]);
  double best = 1.0;
  const std::size_t m = w.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 2; j < m; ++j) {
      const double base = std::abs(w[i] - w[j]);
      if (base == 0.0) return kInfD;
      for (std::size_t k = i + 1; k < j; ++k)
        best = std::max(best, (std::abs(w[i] - w[k]) + std::abs(w[k] - w[j])) / base);
    }
  return best;
}

// ------------------------------------------------------ containment

ChainReport curve_in_chain(const Polyline& curve, const ChainCover& cover, double slack) {
  ChainReport report;
  double lo_x = kInfD, lo_y = kInfD, hi_x = -kInfD, hi_y = -kInfD;
  auto grow = [&](Complex c, double r) {
    lo_x = std::min(lo_x, c.real() - r);
    hi_x = std::max(hi_x, c.real() + r);
    lo_y = std::min(lo_y, c.imag() - r);
    hi_y = std::max(hi_y, c.imag() + r);
  };
  if (const auto* chain = std::get_if<DiscChain>(&cover)) {
    for (const Disc& d : chain->discs) grow(d.center, d.radius);
  } else {
    for (const Diamond& d : std::get<std::vector<Diamond>>(cover)) {
      if (d.a.is_finite()) grow(d.a.raw(), 0.0);
      if (d.b.is_finite()) grow(d.b.raw(), 0.0);
    }
  }
  const double scale = std::hypot(hi_x - lo_x, hi_y - lo_y);
  const double allowance = slack * (std::isfinite(scale) ? scale : 1.0);

  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const ExtendedComplex& p = curve.points[i];
    if (p.is_infinite()) continue;
    const Complex z = p.raw();
    double dist = kInfD;
    if (const auto* chain = std::get_if<DiscChain>(&cover)) {
      for (const Disc& d : chain->discs) dist = std::min(dist, std::max(0.0, std::abs(z - d.center) - d.radius));
    } else {
      for (const Diamond& d : std::get<std::vector<Diamond>>(cover)) dist = std::min(dist, diamond_distance(d, z));
    }
    if (dist > allowance) report.add("escape", {i}, dist);
  }
  return report;
}

double tangent_deviation(const Polyline& curve, const std::vector<Complex>& reference_directions) {
  const std::size_t arcs = reference_directions.size();
  if (arcs == 0) throw Error(ErrorKind::Precondition, "tangent deviation: no reference directions");
  std::vector<Complex> z;
  z.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    if (p.is_infinite()) throw Error(ErrorKind::Precondition, "tangent deviation: curve must be finite");
    z.push_back(p.raw());
  }
  const std::size_t segments = curve.closed ? z.size() : z.size() - 1;
  if (z.size() < 2 || segments % arcs != 0)
    throw Error(ErrorKind::Precondition, "tangent deviation: sample count does not split into equal arcs");
  const std::size_t per = segments / arcs;
  if (per < 8) throw Error(ErrorKind::Precondition, "tangent deviation: at least 8 samples per arc required");
  double worst = 0.0;
  for (std::size_t s = 0; s < segments; ++s) {
    const Complex d = z[(s + 1) % z.size()] - z[s];
    if (d == Complex(0.0)) continue;
    worst = std::max(worst, std::abs(std::arg(d / reference_directions[s / per])));
  }
  return worst;
}

ChainReport neighborhood_separation_check(const std::vector<ExtendedComplex>& points, double factor) {
  const std::vector<Complex> z = require_finite(points, "separation check");
  const std::size_t n = z.size();
  ChainReport report;
  if (n < 3 || !(factor > 0.0)) return report;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex c = z[k];
    const double r = factor * std::abs(z[(k + 1) % n] - c);
    if (!(r > 0.0)) continue;
    auto inside = [&](std::size_t i) { return std::abs(z[i % n] - c) < r; };
    // Forward exit: segment (z_a, z_{a+1}) with z_{a+1} outside.
    std::size_t steps = 0;
    std::size_t a = k;
    while (steps < n && inside(a + 1)) {
      a = (a + 1) % n;
      ++steps;
    }
    if (steps == n) continue;  // the whole polygon is inside
    // Backward exit: segment (z_b, z_{b+1}) with z_b outside.
    std::size_t b = (k + n - 1) % n;
    while (inside(b)) b = (b + n - 1) % n;
    double worst = 0.0;
    std::size_t where = 0;
    for (std::size_t s = (a + 1) % n; s != b; s = (s + 1) % n) {
      const double d = point_segment_distance(c, z[s], z[(s + 1) % n]);
      if (d < r && r - d > worst) {
        worst = r - d;
        where = s;
      }
    }
    if (worst > 0.0) report.add("fold", {k, where}, worst);
  }
  return report;
}

}  // namespace zipmap
