#include "zipmap/newton_inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "zipmap/error.hpp"

namespace zipmap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

Complex log_u(Complex z) { return log_branch(z, Branch::Upper); }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// |f(z) - v| / max(|v|, |L|).
double relative_residual(Complex z, Complex v, double p, double length) {
  return std::abs(unit_slit_forward(p, z) - v) / std::max(std::abs(v), length);
}

// Damped Newton driver. `step` returns the full Newton step of the region's
// composed equation; `residual` measures the true relative residual. The step
// is halved while it fails to decrease the residual.
template <class Step, class Residual>
NewtonResult drive(Complex z0, Step step, Residual residual, const NewtonConfig& cfg,
                   Region region, bool damp_first) {
  Complex z = z0;
  double r = residual(z);
  int it = 0;
  bool stalled = false;  // the step is below the spacing of doubles at z
  while (r > cfg.tol && it < cfg.max_iter) {
    Complex dz = step(z);
    if (!finite(dz)) {  // only at a base point, where the root is within rounding
      stalled = true;
      break;
    }
    if (std::abs(dz) <= 8.0 * kEps * std::abs(z)) {
      stalled = true;
      break;
    }
    if (damp_first && it == 0 && std::abs(dz) > 0.5) dz *= 0.5 / std::abs(dz);
    Complex zn = z + dz;
    double rn = residual(zn);
    for (int h = 0; h < 12 && !(rn < r); ++h) {
      dz *= 0.5;
      zn = z + dz;
      rn = residual(zn);
    }
    ++it;
    if (!(rn < r)) break;
    z = zn;
    r = rn;
  }
  // A stalled iterate is accepted: the root lies within rounding of z. Near
  // the base points f is too steep for the residual to say more.
  if (!(r <= cfg.tol) && !stalled) throw NonConvergenceError(to_string(region), r, it);
  // One polishing step: the residual test alone leaves z short of full
  // accuracy where f' is small (near the tip).
  const Complex dz = step(z);
  if (finite(dz) && std::abs(dz) > 0.0) {
    const double rn = residual(z + dz);
    if (rn <= r) {
      z += dz;
      r = rn;
    }
  }
  return {z, r, it, region};
}

// ---------------------------------------------------------------- far field

Complex far_start(Complex v, double p) {
  const double q = 1.0 - p;
  return v + (2.0 * p - 1.0) + p * q / (2.0 * v) + (1.0 - 2.0 * p) * p * q / (3.0 * v * v);
}

// F = f(z)/v - 1 computed without cancellation.
Complex far_form(Complex z, double p, Complex log_v) {
  return expm1(p * log_u(z - p) + (1.0 - p) * log_u(z + 1.0 - p) - log_v);
}

Complex far_step(Complex z, double p, Complex log_v) {
  const Complex F = far_form(z, p, log_v);
  return -F * (z - p) * (z + 1.0 - p) / ((F + 1.0) * z);
}

// ------------------------------------------------------------------ the tip

struct TipExpansion {
  Complex e;  // E(z) = log(f(z)/w_tip)
  Complex s;  // E(z)/z^2
};

// log(f(z)/w_tip) near z = 0. The series in z is used close to the tip, where
// the direct form would lose all digits to cancellation.
TipExpansion tip_expansion(Complex z, double p) {
  const double q = 1.0 - p;
  const double m = std::min(p, q);
  const double az = std::abs(z);
  if (az < 0.1 * m) {
    const Complex alpha = -z / q;
    const Complex beta = z / p;
    Complex ak = 1.0, bk = 1.0, s = 0.0;
    for (int k = 2; k < 60; ++k) {
      const Complex term = (ak / q + bk / p) / static_cast<double>(k);
      s -= term;
      if (std::abs(term) <= 1e-17 * std::abs(s)) break;
      ak *= alpha;
      bk *= beta;
    }
    return {s * z * z, s};
  }
  Complex e;
  if (az < 0.5 * m) {
    e = p * zipmap::log1p(-z / p) + q * zipmap::log1p(z / q);
  } else {
    const Complex l1 = log_u(z - p) - Complex(std::log(p), kPi);
    const Complex l2 = log_u(z + q) - std::log(q);
    e = p * l1 + q * l2;
  }
  return {e, e / (z * z)};
}

struct TipSetup {
  Complex w_tip;
  Complex sqrt0;  // square root of f''(0)/2
  double c2;      // -1/(2 p (1 - p))
};

TipSetup tip_setup(double p) {
  const double q = 1.0 - p;
  const Complex w_tip = std::polar(unit_slit_length(p), kPi * p);
  const double c2 = -0.5 / (p * q);
  return {w_tip, std::sqrt(w_tip * c2), c2};
}

// K(z) = sqrt(f(z) - w_tip), analytic and univalent near 0, and its derivative.
void tip_form(Complex z, double p, const TipSetup& ts, Complex& k, Complex& dk) {
  const TipExpansion ex = tip_expansion(z, p);
  const Complex phi = (ex.e == Complex(0.0)) ? Complex(1.0) : expm1(ex.e) / ex.e;
  const Complex qz = ts.sqrt0 * std::sqrt((ex.s / ts.c2) * phi);
  k = z * qz;
  const Complex f = ts.w_tip * std::exp(ex.e);
  dk = f / (2.0 * qz * (z - p) * (z + 1.0 - p));
}

// ------------------------------------------------------------- base sectors

Complex sector_start(Complex v, double p, Region which) {
  const Complex lv = log_u(v);
  if (which == Region::SectorP) return p + std::exp(lv / p);
  const double q = 1.0 - p;
  return (p - 1.0) + std::exp(lv / q - Complex(0.0, kPi * p / q));
}

Complex sector_step(Complex z, double p, Complex log_v, Region which) {
  const double q = 1.0 - p;
  const Complex l1 = log_u(z - p);
  const Complex l2 = log_u(z + q);
  if (which == Region::SectorP) {
    const Complex h = expm1(l1 + (q / p) * l2 - log_v / p);
    return -h * p * (z - p) * (z + q) / ((h + 1.0) * z);
  }
  const Complex h = expm1((p / q) * l1 + l2 - log_v / q);
  return -h * q * (z - p) * (z + q) / ((h + 1.0) * z);
}

// Picks the better of two starting points by true residual.
Complex better_start(Complex a, Complex b, Complex v, double p, double length) {
  if (!finite(b)) return a;
  if (!finite(a)) return b;
  return relative_residual(b, v, p, length) < relative_residual(a, v, p, length) ? b : a;
}

NewtonResult solve_region(Complex v, double p, const NewtonConfig& cfg, Region region) {
  switch (region) {
    case Region::Far: return newton_far(v, p, cfg);
    case Region::Tip: return newton_tip(v, p, cfg);
    case Region::SectorP:
    case Region::SectorQ: return newton_sector(v, p, cfg, region);
  }
  throw Error(ErrorKind::Precondition, "unknown region");
}

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::Precondition, "slit exponent p must lie in (0, 1)");
}

// Solves g(s) = 0 for increasing g on [lo, hi] by Newton safeguarded with
// bisection.
template <class G>
double safeguarded_root(G g, double lo, double hi) {
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double val, der;
    g(s, val, der);
    if (val == 0.0) return s;
    if (val > 0.0) hi = s; else lo = s;
    double sn = s - val / der;
    if (!(sn > lo && sn < hi) || !std::isfinite(sn)) sn = 0.5 * (lo + hi);
    if (std::abs(sn - s) <= 1e-16 * std::max(1.0, std::abs(s)) || hi - lo <= 1e-16 * std::max(1.0, std::abs(s)))
      return sn;
    s = sn;
  }
  return s;
}

// delta in (0, p] with p log(delta) + (1 - p) log(1 - delta) = log(t |L|).
double slit_base_offset(double t, double p) {
  const double q = 1.0 - p;
  if (t >= 1.0) return p;
  const double target = std::log(t) + std::log(unit_slit_length(p));
  const double lo = target / p;
  const double hi = std::log(p);
  if (!(lo < hi)) return p;
  const double s = safeguarded_root(
      [&](double s, double& val, double& der) {
        const double e = std::exp(s);
        val = p * s + q * std::log1p(-e) - target;
        der = p - q * e / (1.0 - e);
      },
      lo, hi);
  return std::exp(s);
}

}  // namespace

void NewtonConfig::validate() const {
  if (!(tol > 0.0 && tol < 1e-6)) throw Error(ErrorKind::Precondition, "Newton tolerance must lie in (0, 1e-6)");
  if (max_iter < 8) throw Error(ErrorKind::Precondition, "Newton iteration cap must be at least 8");
  if (!(far_threshold > 0.0) || !(tip_fraction > 0.0))
    throw Error(ErrorKind::Precondition, "Newton region parameters must be positive");
}

const char* to_string(Region region) {
  switch (region) {
    case Region::Far: return "FAR";
    case Region::Tip: return "TIP";
    case Region::SectorP: return "SECTOR_P";
    case Region::SectorQ: return "SECTOR_Q";
  }
  return "?";
}

Region classify_unit(Complex v, double p, const NewtonConfig& cfg) {
  check_p(p);
  if (v == Complex(0.0))
    throw Error(ErrorKind::Domain, "slit base point w = 0 has the two preimages p and p - 1");
  const double length = unit_slit_length(p);
  if (std::abs(v) >= cfg.far_threshold * length) return Region::Far;
  const Complex tip = std::polar(length, kPi * p);
  if (std::abs(v - tip) < cfg.tip_fraction * tip.imag()) return Region::Tip;
  double a = std::arg(v);
  if (a < -kPi / 2) a += 2 * kPi;
  return a < kPi * p ? Region::SectorP : Region::SectorQ;
}

Region classify_region(Complex w, const SlitParams& sp, const NewtonConfig& cfg) {
  return classify_unit(w / sp.scale(), sp.p(), cfg);
}

NewtonResult newton_far(Complex v, double p, const NewtonConfig& cfg) {
  check_p(p);
  const Complex log_v = log_u(v);
  // Iterate on u = z / v; the residual is F itself, already relative to |v|.
  const double length = unit_slit_length(p);
  const double scale = std::max(std::abs(v), length) / std::abs(v);
  auto step = [&](Complex u) { return far_step(u * v, p, log_v) / v; };
  auto residual = [&](Complex u) {
    const Complex z = u * v;
    if (z == Complex(0.0)) return std::numeric_limits<double>::infinity();
    return std::abs(far_form(z, p, log_v)) / scale;
  };
  NewtonResult r = drive(far_start(v, p) / v, step, residual, cfg, Region::Far, false);
  r.z *= v;
  return r;
}

std::vector<double> newton_far_trace(Complex v, double p, int iterations) {
  check_p(p);
  const Complex log_v = log_u(v);
  Complex u = (v + (2.0 * p - 1.0)) / v;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(iterations) + 1);
  for (int k = 0; k <= iterations; ++k) {
    const Complex z = u * v;
    const Complex F = far_form(z, p, log_v);
    out.push_back(std::abs(F));
    if (k == iterations) break;
    u += far_step(z, p, log_v) / v;
  }
  return out;
}

NewtonResult newton_tip(Complex v, double p, const NewtonConfig& cfg) {
  check_p(p);
  const TipSetup ts = tip_setup(p);
  const double length = unit_slit_length(p);
  const double denom = std::max(std::abs(v), length);
  const Complex dv = v - ts.w_tip;
  Complex t = std::sqrt(dv);
  Complex z0 = t / ts.sqrt0;
  if (z0.imag() < 0.0) {
    t = -t;
    z0 = -z0;
  }
  auto step = [&](Complex z) {
    Complex k, dk;
    tip_form(z, p, ts, k, dk);
    return -(k - t) / dk;
  };
  auto residual = [&](Complex z) {
    const TipExpansion ex = tip_expansion(z, p);
    return std::abs(ts.w_tip * expm1(ex.e) - dv) / denom;
  };
  return drive(z0, step, residual, cfg, Region::Tip, false);
}

NewtonResult newton_sector(Complex v, double p, const NewtonConfig& cfg, Region which) {
  check_p(p);
  if (which != Region::SectorP && which != Region::SectorQ)
    throw Error(ErrorKind::Precondition, "newton_sector needs SECTOR_P or SECTOR_Q");
  const double length = unit_slit_length(p);
  const Complex log_v = log_u(v);
  const Complex z0 = better_start(sector_start(v, p, which), far_start(v, p), v, p, length);
  auto step = [&](Complex z) { return sector_step(z, p, log_v, which); };
  auto residual = [&](Complex z) { return relative_residual(z, v, p, length); };
  return drive(z0, step, residual, cfg, which, true);
}

NewtonResult unit_slit_inverse_near(Complex v, double p, Complex guess, const NewtonConfig& cfg) {
  check_p(p);
  const double length = unit_slit_length(p);
  const Complex log_v = log_u(v);
  auto step = [&](Complex z) { return far_step(z, p, log_v); };
  auto residual = [&](Complex z) { return relative_residual(z, v, p, length); };
  return drive(guess, step, residual, cfg, classify_unit(v, p, cfg), false);
}

Complex unit_slit_inverse(Complex v, double p, const NewtonConfig& cfg) {
  check_p(p);
  if (!finite(v)) throw Error(ErrorKind::Domain, "slit inverse: non-finite argument");
  if (v == Complex(0.0)) return p;
  const double length = unit_slit_length(p);
  v = snap_to_closed_upper(v, std::max(std::abs(v), length) * 1e-2);
  if (v.imag() == 0.0) return unit_slit_inverse_real(v.real(), p);
  if (v.imag() < 0.0) return std::conj(unit_slit_inverse(std::conj(v), p, cfg));

  const Region first = classify_unit(v, p, cfg);
  std::array<Region, 4> order{first, Region::Far, Region::Tip, Region::SectorP};
  std::array<Region, 4> ladder{Region::Far, Region::Tip, Region::SectorP, Region::SectorQ};
  std::size_t n = 1;
  for (Region r : ladder)
    if (r != first) order[n++] = r;
  double best = std::numeric_limits<double>::infinity();
  int iters = 0;
  for (Region r : order) {
    try {
      const NewtonResult res = solve_region(v, p, cfg, r);
      // A root below the real axis belongs to another sheet of f.
      if (res.z.imag() >= -1e-12 * (1.0 + std::abs(res.z))) return res.z;
      best = std::min(best, res.residual);
    } catch (const NonConvergenceError& e) {
      best = std::min(best, e.residual());
      iters = std::max(iters, e.iterations());
    }
  }
  throw NonConvergenceError(to_string(first), best, iters);
}

double unit_slit_inverse_real(double v, double p) {
  check_p(p);
  if (v == 0.0) return p;
  if (v < 0.0) return -unit_slit_inverse_real(-v, 1.0 - p);
  const double q = 1.0 - p;
  // x = p + exp(s) with p s + q log(1 + e^s) = log v; increasing and convex in s.
  const double target = std::log(v);
  double s = target;
  for (int it = 0; it < 100; ++it) {
    const double lp = s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
    const double sig = s > 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
    const double g = p * s + q * lp - target;
    const double ds = g / (p + q * sig);
    s -= ds;
    if (std::abs(ds) <= 2e-16 * std::max(1.0, std::abs(s))) break;
  }
  return p + std::exp(s);
}

double unit_slit_inverse_on_slit(double t, double p, BaseSide side) {
  check_p(p);
  t = std::clamp(t, 0.0, 1.0);
  if (side == BaseSide::Right) {
    if (t == 0.0) return p;
    return p - slit_base_offset(t, p);
  }
  if (t == 0.0) return p - 1.0;
  return p - 1.0 + slit_base_offset(t, 1.0 - p);
}

ExtendedComplex slit_inverse(const ExtendedComplex& w, const SlitParams& sp, const NewtonConfig& cfg,
                             BaseSide side) {
  if (w.is_infinite()) return ExtendedComplex::infinity();
  if (w.raw() == sp.a()) return Complex(0.0);
  const Complex v = w.raw() / sp.scale();
  if (v == Complex(0.0)) return side == BaseSide::Right ? sp.p() : sp.p() - 1.0;
  return unit_slit_inverse(v, sp.p(), cfg);
}

}  // namespace zipmap
