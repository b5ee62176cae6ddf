#pragma once

// Composed conformal maps: the geodesic, slit and zipper constructions,
// evaluation of the composition and its inverse, boundary sampling, disc
// normalisation and conformal welding.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "zipmap/complex_core.hpp"
#include "zipmap/elementary_maps.hpp"
#include "zipmap/newton_inverse.hpp"

namespace zipmap {

/// Forward direction z -> f_a(z / prescale) opens the arc 0 -> prescale * a.
/// The builder picks prescale = |zeta_k| so that |a| = 1; without it the
/// images of the remaining points can grow geometrically with the step count.
struct GeodesicSlit {
  GeodesicParams params;
  double prescale = 1.0;
};

/// Forward direction is the inverse slit map g_a^{-1} (Newton); the inverse
/// direction is g_a in closed form.
struct StraightSlit {
  SlitParams params;
};

/// Forward direction is h_{a,c} = g_d^{-1} o l.
struct CircularSlit {
  CircularSlitParams params;
};

/// A final Moebius map, e.g. the half-plane to disc normalisation.
struct MobiusNormalize {
  Mobius m;
};

using MapStep = std::variant<InitialGeodesic, InitialZipper, InitialUnbounded, GeodesicSlit,
                             StraightSlit, CircularSlit, WeldingSlit, TerminalGeodesic,
                             TerminalZipper, MobiusNormalize>;

/// Stable tag used in serialised pipelines ("initial_geodesic", ...).
const char* step_kind(const MapStep& step);

ExtendedComplex step_forward(const MapStep& step, const ExtendedComplex& z, Sheet sheet,
                             const NewtonConfig& cfg);
ExtendedComplex step_inverse(const MapStep& step, const ExtendedComplex& w, Sheet sheet);

enum class Variant { Geodesic, Slit, Zipper, Welding };

const char* to_string(Variant v);
/// Throws Parse for unknown names.
Variant variant_from_string(std::string_view name);

enum class BranchMode { Interior, Exterior, Extension };

/// How multi-valued steps are resolved during forward evaluation. Extension
/// mode follows the branch of the interior map along a seed point; without a
/// seed it only accepts points away from branch points.
struct BranchPolicy {
  BranchMode mode = BranchMode::Interior;
  std::optional<ExtendedComplex> seed;

  static BranchPolicy interior() { return {}; }
  static BranchPolicy exterior() { return {BranchMode::Exterior, std::nullopt}; }
  static BranchPolicy extension(std::optional<ExtendedComplex> seed = std::nullopt) {
    return {BranchMode::Extension, seed};
  }
};

/// A computed conformal map phi of the domain onto the upper half-plane (or
/// the disc once normalised). Steps are applied first to last by the forward
/// map; the inverse applies their inverses in reverse.
struct MapPipeline {
  Variant variant = Variant::Geodesic;
  std::vector<MapStep> steps;
  /// Data points in input order; points[0] is infinity for an unbounded arc.
  std::vector<ExtendedComplex> points;
  /// Image of each data point under phi, approached from inside the domain.
  std::vector<ExtendedComplex> prevertices;
  /// +1 when the data run counterclockwise around the domain, -1 otherwise.
  int orientation = 1;
  bool bounded = true;
  /// True once the target is the unit disc rather than the upper half-plane.
  bool normalized = false;
  NewtonConfig newton;
};

struct WeldingSpec {
  std::vector<double> x;  // 0 < x_1 < ... < x_n
  std::vector<double> y;  // y_n < ... < y_1 < 0

  /// Throws Precondition on length mismatch or monotonicity violations.
  void validate() const;
};

MapPipeline build_geodesic(std::span<const ExtendedComplex> points,
                           const NewtonConfig& cfg = NewtonConfig{});
MapPipeline build_slit(std::span<const ExtendedComplex> points,
                       const NewtonConfig& cfg = NewtonConfig{});
MapPipeline build_zipper(std::span<const ExtendedComplex> points,
                         const NewtonConfig& cfg = NewtonConfig{});
MapPipeline build(Variant variant, std::span<const ExtendedComplex> points,
                  const NewtonConfig& cfg = NewtonConfig{});

ExtendedComplex eval_forward(const MapPipeline& p, const ExtendedComplex& z,
                             const BranchPolicy& policy = BranchPolicy{});
ExtendedComplex eval_inverse(const MapPipeline& p, const ExtendedComplex& w,
                             Sheet sheet = Sheet::Interior);

/// Closed polyline through the data points in order (open, without the
/// infinite point, for an unbounded arc), with `samples_per_arc` points per
/// arc between consecutive prevertices.
Polyline boundary_sample(const MapPipeline& p, int samples_per_arc);

/// Appends a Moebius step so that `interior` maps to 0 and the data point
/// `boundary_fix` maps to 1 on the unit circle.
MapPipeline normalize_to_disc(const MapPipeline& p, Complex interior, Complex boundary_fix);

/// phi: H -> C minus an arc with phi(x_j) = phi(y_j); evaluate phi with
/// eval_inverse.
MapPipeline weld_build(const WeldingSpec& spec, const NewtonConfig& cfg = NewtonConfig{});

/// Largest |phi^{-1}(prevertex_j) - z_j| over (up to 64 of) the finite data
/// points, a sanity figure for a finished build.
double boundary_residual(const MapPipeline& p);

}  // namespace zipmap
