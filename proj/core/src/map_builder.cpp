#include "zipmap/map_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zipmap/error.hpp"

namespace zipmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOutOfOrder = 1e-10;
const ExtendedComplex kInf = ExtendedComplex::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

// ------------------------------------------------------------------- steps

const char* step_kind(const MapStep& step) {
  return std::visit(
      Overloaded{
          [](const InitialGeodesic&) { return "initial_geodesic"; },
          [](const InitialZipper&) { return "initial_zipper"; },
          [](const InitialUnbounded&) { return "initial_unbounded"; },
          [](const GeodesicSlit&) { return "geodesic_slit"; },
          [](const StraightSlit&) { return "straight_slit"; },
          [](const CircularSlit&) { return "circular_slit"; },
          [](const WeldingSlit&) { return "welding_slit"; },
          [](const TerminalGeodesic&) { return "terminal_geodesic"; },
          [](const TerminalZipper&) { return "terminal_zipper"; },
          [](const MobiusNormalize&) { return "mobius"; },
      },
      step);
}

ExtendedComplex step_forward(const MapStep& step, const ExtendedComplex& z, Sheet sheet,
                             const NewtonConfig& cfg) {
  return std::visit(
      Overloaded{
          [&](const InitialGeodesic& s) { return s.forward(z); },
          [&](const InitialZipper& s) { return s.forward(z); },
          [&](const InitialUnbounded& s) { return s.forward(z); },
          [&](const GeodesicSlit& s) {
            return geodesic_forward(s.params, z.is_infinite() ? z : ExtendedComplex(z.raw() / s.prescale));
          },
          [&](const StraightSlit& s) { return slit_inverse(z, s.params, cfg); },
          [&](const CircularSlit& s) { return circular_slit_forward(s.params, z, cfg); },
          [&](const WeldingSlit& s) { return s.forward(z, cfg); },
          [&](const TerminalGeodesic& s) { return s.forward(z); },
          [&](const TerminalZipper& s) { return s.forward(z, sheet); },
          [&](const MobiusNormalize& s) { return mobius_apply(s.m, z); },
      },
      step);
}

// Rounding can push an image of the unit circle just below R, where the next
// inverse step would take the wrong side of its cut.
ExtendedComplex disc_to_half_plane(const Mobius& m, const ExtendedComplex& w, Sheet sheet) {
  const ExtendedComplex z = mobius_apply(mobius_inverse(m), w);
  if (sheet != Sheet::Interior || z.is_infinite()) return z;
  const Complex v = z.raw();
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
  if (v.imag() < 0.0 && v.imag() > -slack) return Complex(v.real(), 0.0);
  return z;
}

ExtendedComplex step_inverse(const MapStep& step, const ExtendedComplex& w, Sheet sheet) {
  return std::visit(
      Overloaded{
          [&](const InitialGeodesic& s) { return s.inverse(w); },
          [&](const InitialZipper& s) { return s.inverse(w); },
          [&](const InitialUnbounded& s) { return s.inverse(w); },
          [&](const GeodesicSlit& s) {
            const ExtendedComplex u = geodesic_inverse(s.params, w);
            return u.is_infinite() ? u : ExtendedComplex(u.raw() * s.prescale);
          },
          [&](const StraightSlit& s) { return slit_forward(s.params, w); },
          [&](const CircularSlit& s) { return circular_slit_inverse(s.params, w); },
          [&](const WeldingSlit& s) { return s.inverse(w); },
          [&](const TerminalGeodesic& s) { return s.inverse(w, sheet); },
          [&](const TerminalZipper& s) { return s.inverse(w, sheet); },
          [&](const MobiusNormalize& s) { return disc_to_half_plane(s.m, w, sheet); },
      },
      step);
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Geodesic: return "geodesic";
    case Variant::Slit: return "slit";
    case Variant::Zipper: return "zipper";
    case Variant::Welding: return "welding";
  }
  return "?";
}

Variant variant_from_string(std::string_view name) {
  if (name == "geodesic") return Variant::Geodesic;
  if (name == "slit") return Variant::Slit;
  if (name == "zipper") return Variant::Zipper;
  if (name == "welding") return Variant::Welding;
  throw Error(ErrorKind::Parse, "unknown algorithm variant '" + std::string(name) + "'");
}

// ------------------------------------------------------------------ build

namespace {

void check_points(std::span<const ExtendedComplex> pts, std::size_t min_count) {
  if (pts.size() < min_count)
    throw Error(ErrorKind::Precondition,
                "at least " + std::to_string(min_count) + " data points are required");
  for (std::size_t j = 1; j < pts.size(); ++j)
    if (pts[j].is_infinite())
      throw Error(ErrorKind::Precondition, "only the first data point may be infinite");
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const std::size_t k = (j + 1) % pts.size();
    if (pts[j] == pts[k])
      throw Error(ErrorKind::DegenerateInput,
                  "consecutive data points " + std::to_string(j) + " and " + std::to_string(k) +
                      " coincide");
  }
}

int data_orientation(std::span<const ExtendedComplex> pts) {
  if (pts[0].is_infinite()) return 1;
  std::vector<Complex> v;
  v.reserve(pts.size());
  for (const auto& z : pts) v.push_back(z.raw());
  const double a = signed_area2(v);
  if (a == 0.0) throw Error(ErrorKind::DegenerateInput, "data points enclose no area");
  return a > 0.0 ? 1 : -1;
}

// Tracks the images of all data points while the steps are assembled. Points
// already welded to the real axis hold their (real) prevertex so far.
class Builder {
 public:
  Builder(Variant variant, std::span<const ExtendedComplex> pts, const NewtonConfig& cfg)
      : cfg_(cfg), img_(pts.begin(), pts.end()), welded_(pts.size(), false) {
    cfg_.validate();
    pipe_.variant = variant;
    pipe_.points.assign(pts.begin(), pts.end());
    pipe_.bounded = pts[0].is_finite();
    pipe_.orientation = data_orientation(pts);
    pipe_.newton = cfg_;
    side_ = -pipe_.orientation;
  }

  int side() const { return side_; }
  const ExtendedComplex& image(std::size_t j) const { return img_[j]; }

  // Applies `step` to every point except the indices listed in `skip`, whose
  // images the caller sets explicitly.
  void push(MapStep step, std::initializer_list<std::size_t> skip, Sheet sheet = Sheet::Interior) {
    const long index = static_cast<long>(pipe_.steps.size());
    try {
      for (std::size_t j = 0; j < img_.size(); ++j) {
        if (std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
        ExtendedComplex w = step_forward(step, img_[j], sheet, cfg_);
        if (welded_[j] && w.is_finite()) w = Complex(w.raw().real(), 0.0);
        img_[j] = w;
      }
    } catch (const NonConvergenceError& e) {
      throw e.with_step(index);
    }
    pipe_.steps.push_back(std::move(step));
  }

  void set(std::size_t j, const ExtendedComplex& value) {
    img_[j] = value;
    welded_[j] = true;
  }

  // Image of data point j before its own step; must lie in the open upper
  // half-plane.
  Complex pending(std::size_t j) const {
    const ExtendedComplex& z = img_[j];
    if (z.is_infinite()) throw OutOfOrderError(j, std::numeric_limits<double>::infinity());
    const Complex v = z.raw();
    if (!(v.imag() > kOutOfOrder * std::abs(v))) throw OutOfOrderError(j, v.imag());
    return v;
  }

  MapPipeline finish() {
    pipe_.prevertices = img_;
    return std::move(pipe_);
  }

 private:
  NewtonConfig cfg_;
  MapPipeline pipe_;
  std::vector<ExtendedComplex> img_;
  std::vector<bool> welded_;
  int side_ = 1;
};

// First step shared by the geodesic and slit constructions. Leaves z_1 at 0.
void push_initial_two_point(Builder& b, std::span<const ExtendedComplex> pts) {
  if (pts[0].is_infinite()) {
    b.push(initial_unbounded(pts[1].raw(), pts[2].raw()), {0, 1});
    b.set(0, kInf);
  } else {
    b.push(initial_geodesic(pts[0], pts[1]), {0, 1});
    b.set(0, kInf);
  }
  b.set(1, Complex(0.0));
}

ExtendedComplex real_or_inf(const ExtendedComplex& z) {
  if (z.is_infinite()) return z;
  return Complex(z.raw().real(), 0.0);
}

MapPipeline build_two_point_family(Variant variant, std::span<const ExtendedComplex> pts,
                                   const NewtonConfig& cfg) {
  check_points(pts, 3);
  Builder b(variant, pts, cfg);
  const int s = b.side();
  const std::size_t n = pts.size() - 1;
  push_initial_two_point(b, pts);
  for (std::size_t k = 2; k <= n; ++k) {
    const Complex zeta = b.pending(k);
    if (variant == Variant::Geodesic) {
      const double sigma = std::abs(zeta);
      GeodesicParams gp(zeta / sigma);
      b.push(GeodesicSlit{gp, sigma}, {k, k - 1});
      b.set(k - 1, Complex(s * gp.c()));
    } else {
      SlitParams sp(zeta);
      b.push(StraightSlit{sp}, {k, k - 1});
      b.set(k - 1, Complex(s > 0 ? sp.p() : sp.p() - 1.0));
    }
    b.set(k, Complex(0.0));
  }
  // z_0 now sits on the real axis (or at infinity).
  const ExtendedComplex zeta = real_or_inf(b.image(0));
  b.push(terminal_geodesic(zeta, s), {0, n});
  b.set(0, kInf);
  b.set(n, Complex(0.0));
  return b.finish();
}

}  // namespace

MapPipeline build_geodesic(std::span<const ExtendedComplex> points, const NewtonConfig& cfg) {
  return build_two_point_family(Variant::Geodesic, points, cfg);
}

MapPipeline build_slit(std::span<const ExtendedComplex> points, const NewtonConfig& cfg) {
  return build_two_point_family(Variant::Slit, points, cfg);
}

MapPipeline build_zipper(std::span<const ExtendedComplex> points, const NewtonConfig& cfg) {
  if (points.size() % 2 != 0)
    throw Error(ErrorKind::Precondition, "zipper algorithm: even point count required");
  check_points(points, 4);
  if (points[0].is_infinite())
    throw Error(ErrorKind::Precondition, "zipper algorithm: data points must be finite");
  Builder b(Variant::Zipper, points, cfg);
  const int s = b.side();
  const BaseSide base = s > 0 ? BaseSide::Right : BaseSide::Left;
  const std::size_t last = points.size() - 1;  // 2n + 1

  b.push(initial_zipper(points[0].raw(), points[1].raw(), points[2].raw()), {0, 1, 2});
  b.set(0, kInf);
  b.set(1, Complex(static_cast<double>(s)));
  b.set(2, Complex(0.0));

  for (std::size_t k = 4; k < last; k += 2) {
    const Complex c = b.pending(k - 1);
    const Complex a = b.pending(k);
    std::optional<CircularSlitParams> cp;
    try {
      cp.emplace(a, c);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateInput) throw OutOfOrderError(k - 1, c.imag());
      throw;
    }
    const SlitParams& inner = cp->inner();
    const double t = std::abs(cp->to_slit(c)) / std::abs(inner.a());
    b.push(CircularSlit{*cp}, {k - 2, k - 1, k});
    b.set(k - 2, Complex(s > 0 ? inner.p() : inner.p() - 1.0));
    b.set(k - 1, Complex(unit_slit_inverse_on_slit(t, inner.p(), base)));
    b.set(k, Complex(0.0));
  }

  const Complex zeta_prev = b.pending(last);
  const ExtendedComplex zeta = real_or_inf(b.image(0));
  TerminalZipper tz = terminal_zipper(zeta, zeta_prev, s);
  const ExtendedComplex w_last = tz.forward(zeta_prev, Sheet::Interior);
  b.push(tz, {0, last - 1, last});
  b.set(0, kInf);
  b.set(last - 1, Complex(0.0));
  b.set(last, real_or_inf(w_last));
  return b.finish();
}

MapPipeline build(Variant variant, std::span<const ExtendedComplex> points, const NewtonConfig& cfg) {
  switch (variant) {
    case Variant::Geodesic: return build_geodesic(points, cfg);
    case Variant::Slit: return build_slit(points, cfg);
    case Variant::Zipper: return build_zipper(points, cfg);
    case Variant::Welding: break;
  }
  throw Error(ErrorKind::Precondition, "welding pipelines are built from a WeldingSpec");
}

// ------------------------------------------------------------- evaluation

namespace {

// Every value a multi-valued step could take at z, the standard one first.
std::vector<ExtendedComplex> forward_candidates(const MapStep& step, const ExtendedComplex& z,
                                                const ExtendedComplex& hint,
                                                const NewtonConfig& cfg) {
  std::vector<ExtendedComplex> out{step_forward(step, z, Sheet::Interior, cfg)};
  if (z.is_infinite() || out[0].is_infinite()) return out;
  std::visit(
      Overloaded{
          [&](const InitialGeodesic&) { out.push_back(-out[0].raw()); },
          [&](const InitialZipper&) { out.push_back(-out[0].raw()); },
          [&](const InitialUnbounded&) { out.push_back(-out[0].raw()); },
          [&](const GeodesicSlit&) { out.push_back(-out[0].raw()); },
          [&](const StraightSlit& s) {
            if (hint.is_infinite()) return;
            const double c = s.params.scale();
            try {
              out.push_back(c * unit_slit_inverse_near(z.raw() / c, s.params.p(), hint.raw() / c, cfg).z);
            } catch (const NonConvergenceError&) {
            }
          },
          [&](const CircularSlit& s) {
            if (hint.is_infinite()) return;
            const ExtendedComplex v = s.params.to_slit(z);
            if (v.is_infinite()) return;
            const SlitParams& in = s.params.inner();
            const double c = in.scale();
            try {
              out.push_back(c * unit_slit_inverse_near(v.raw() / c, in.p(), hint.raw() / c, cfg).z);
            } catch (const NonConvergenceError&) {
            }
          },
          [&](const WeldingSlit& s) {
            if (hint.is_infinite()) return;
            const double sc = s.x - s.y;
            try {
              out.push_back(sc * unit_slit_inverse_near(z.raw() / sc, s.p(), hint.raw() / sc, cfg).z);
            } catch (const NonConvergenceError&) {
            }
          },
          [&](const TerminalGeodesic&) {},
          [&](const TerminalZipper& s) {
            // Other branches of the fractional power differ by e^{2 pi i k pi/alpha}.
            const double e = kPi / s.alpha();
            for (int k : {-2, -1, 1, 2}) out.push_back(out[0].raw() * std::polar(1.0, 2 * kPi * k * e));
          },
          [&](const MobiusNormalize&) {},
      },
      step);
  return out;
}

ExtendedComplex eval_extension(const MapPipeline& p, const ExtendedComplex& z,
                               const std::optional<ExtendedComplex>& seed) {
  std::vector<ExtendedComplex> trail;
  if (seed) {
    ExtendedComplex s = *seed;
    trail.reserve(p.steps.size());
    for (const auto& step : p.steps) {
      s = step_forward(step, s, Sheet::Interior, p.newton);
      trail.push_back(s);
    }
  }
  ExtendedComplex v = z;
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    const ExtendedComplex hint = seed ? trail[k] : kInf;
    const auto cands = forward_candidates(p.steps[k], v, hint, p.newton);
    if (!seed) {
      // Without a trajectory to follow, refuse points next to a branch point.
      if (cands.size() >= 2 && cands[0].is_finite() && cands[1].is_finite()) {
        const double gap = std::abs(cands[0].raw() - cands[1].raw());
        if (gap <= 1e-6 * (1.0 + std::abs(cands[0].raw())))
          throw Error(ErrorKind::AmbiguousBranch,
                      "extension mode: point is at a branch point of step " + std::to_string(k) +
                          "; supply a seed");
      }
      v = cands[0];
      continue;
    }
    std::size_t best = 0;
    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const double d = spherical_distance(cands[i], hint);
      if (d < d1) {
        d2 = d1;
        d1 = d;
        best = i;
      } else if (d < d2 && spherical_distance(cands[i], cands[best]) > 1e-12) {
        d2 = d;
      }
    }
    if (std::isfinite(d2) && d2 - d1 <= 1e-9 * (d1 + d2) && d1 > 0.0)
      throw Error(ErrorKind::AmbiguousBranch,
                  "extension mode: branch choice at step " + std::to_string(k) +
                      " is ambiguous relative to the seed");
    v = cands[best];
  }
  return v;
}

}  // namespace

ExtendedComplex eval_forward(const MapPipeline& p, const ExtendedComplex& z, const BranchPolicy& policy) {
  if (policy.mode != BranchMode::Exterior) {
    for (std::size_t j = 0; j < p.points.size(); ++j)
      if (p.points[j] == z && j < p.prevertices.size()) return p.prevertices[j];
  }
  if (policy.mode == BranchMode::Extension) return eval_extension(p, z, policy.seed);
  const Sheet sheet = policy.mode == BranchMode::Exterior ? Sheet::Exterior : Sheet::Interior;
  ExtendedComplex v = z;
  for (const auto& step : p.steps) v = step_forward(step, v, sheet, p.newton);
  return v;
}

ExtendedComplex eval_inverse(const MapPipeline& p, const ExtendedComplex& w, Sheet sheet) {
  ExtendedComplex v = w;
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) v = step_inverse(*it, v, sheet);
  return v;
}

double boundary_residual(const MapPipeline& p) {
  const std::size_t n = p.points.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 64);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; j += stride) {
    if (p.points[j].is_infinite() || p.prevertices[j].is_infinite()) continue;
    const ExtendedComplex z = eval_inverse(p, p.prevertices[j]);
    const double d = z.is_finite() ? std::abs(z.raw() - p.points[j].raw())
                                   : std::numeric_limits<double>::infinity();
    worst = std::max(worst, d);
  }
  return worst;
}

// -------------------------------------------------------- boundary sample

namespace {

// Position of a prevertex on the circle R u {inf} (or the unit circle).
double prevertex_angle(const ExtendedComplex& v, bool normalized) {
  if (v.is_infinite()) return kPi;
  if (normalized) return std::arg(v.raw());
  return 2.0 * std::atan(v.raw().real());
}

ExtendedComplex angle_point(double theta, bool normalized) {
  if (normalized) return std::polar(1.0, theta);
  const double h = 0.5 * theta;
  if (std::abs(std::cos(h)) < 1e-300) return kInf;
  return Complex(std::tan(h), 0.0);
}

double wrap_positive(double d) {
  d = std::fmod(d, 2 * kPi);
  if (d < 0) d += 2 * kPi;
  return d;
}

}  // namespace

Polyline boundary_sample(const MapPipeline& p, int samples_per_arc) {
  if (samples_per_arc < 1) throw Error(ErrorKind::Precondition, "samples_per_arc must be at least 1");
  if (p.variant == Variant::Welding)
    throw Error(ErrorKind::Precondition, "boundary sampling needs a Jordan-domain pipeline");
  const std::size_t n = p.points.size();
  std::vector<double> theta(n);
  for (std::size_t j = 0; j < n; ++j) theta[j] = prevertex_angle(p.prevertices[j], p.normalized);

  // The prevertices run around the circle in one direction; find which.
  double forward_total = 0.0;
  for (std::size_t j = 0; j < n; ++j) forward_total += wrap_positive(theta[(j + 1) % n] - theta[j]);
  const double dir = std::abs(forward_total - 2 * kPi) < 1e-6 ? 1.0 : -1.0;

  Polyline out;
  const std::size_t first = p.bounded ? 0 : 1;
  const std::size_t arcs = p.bounded ? n : n - 2;
  out.closed = p.bounded;
  for (std::size_t a = 0; a < arcs; ++a) {
    const std::size_t j = first + a;
    const std::size_t k = (j + 1) % n;
    out.points.push_back(p.points[j]);
    const double span = dir > 0 ? wrap_positive(theta[k] - theta[j]) : -wrap_positive(theta[j] - theta[k]);
    for (int i = 1; i < samples_per_arc; ++i) {
      const double t = theta[j] + span * static_cast<double>(i) / samples_per_arc;
      out.points.push_back(eval_inverse(p, angle_point(t, p.normalized)));
    }
  }
  if (!p.bounded) out.points.push_back(p.points[n - 1]);
  return out;
}

// ------------------------------------------------------------ normalising

MapPipeline normalize_to_disc(const MapPipeline& p, Complex interior, Complex boundary_fix) {
  if (p.normalized) throw Error(ErrorKind::Precondition, "pipeline is already normalised to the disc");
  const ExtendedComplex w0e = eval_forward(p, interior);
  if (w0e.is_infinite() || !(w0e.raw().imag() > 0.0))
    throw Error(ErrorKind::Precondition, "normalisation point does not map into the upper half-plane");
  const Complex w0 = w0e.raw();
  bool found = false;
  ExtendedComplex t;
  for (std::size_t j = 0; j < p.points.size(); ++j) {
    if (p.points[j] == ExtendedComplex(boundary_fix)) {
      t = p.prevertices[j];
      found = true;
      break;
    }
  }
  if (!found) t = eval_forward(p, boundary_fix);
  Complex lambda = 1.0;
  if (t.is_finite()) {
    const Complex tv(t.raw().real(), 0.0);
    lambda = (tv - std::conj(w0)) / (tv - w0);
  }
  Mobius m{lambda, -lambda * w0, 1.0, -std::conj(w0)};
  m.validate();
  MapPipeline out = p;
  out.steps.push_back(MobiusNormalize{m});
  for (auto& v : out.prevertices) v = mobius_apply(m, v);
  // Project back to the circle: the prevertices are boundary values by construction.
  for (auto& v : out.prevertices)
    if (v.is_finite() && std::abs(v.raw()) > 0.0) v = v.raw() / std::abs(v.raw());
  out.normalized = true;
  return out;
}

// ---------------------------------------------------------------- welding

void WeldingSpec::validate() const {
  if (x.empty() || x.size() != y.size())
    throw Error(ErrorKind::Precondition, "welding: x and y must be nonempty and of equal length");
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] > 0.0) || !(y[j] < 0.0) || !std::isfinite(x[j]) || !std::isfinite(y[j]))
      throw Error(ErrorKind::Precondition, "welding: need x_j > 0 > y_j");
    if (j > 0 && (!(x[j] > x[j - 1]) || !(y[j] < y[j - 1])))
      throw Error(ErrorKind::Precondition, "welding: x must increase and y decrease");
  }
}

MapPipeline weld_build(const WeldingSpec& spec, const NewtonConfig& cfg) {
  spec.validate();
  cfg.validate();
  const std::size_t n = spec.x.size();
  // Welding factors W_1, ..., W_n in the order phi applies them; W_j acts on
  // the images of x_j, y_j under the earlier factors.
  std::vector<WeldingSlit> factors;
  factors.reserve(n);
  std::vector<double> xs(spec.x), ys(spec.y);
  for (std::size_t j = 0; j < n; ++j) {
    const WeldingSlit w{xs[j], ys[j]};
    factors.push_back(w);
    for (std::size_t k = j + 1; k < n; ++k) {
      xs[k] = w.inverse(Complex(xs[k])).raw().real();
      ys[k] = w.inverse(Complex(ys[k])).raw().real();
    }
  }
  MapPipeline p;
  p.variant = Variant::Welding;
  p.bounded = false;
  p.orientation = 1;
  p.newton = cfg;
  p.steps.push_back(initial_unbounded(Complex(0.0), Complex(-1.0)));
  for (std::size_t j = n; j-- > 0;) p.steps.push_back(factors[j]);
  for (std::size_t j = 0; j < n; ++j) {
    p.points.push_back(eval_inverse(p, Complex(spec.x[j])));
    p.prevertices.push_back(Complex(spec.x[j]));
  }
  return p;
}

}  // namespace zipmap
