#pragma once

// File formats: point CSV, pipeline JSON, validator report JSON, boundary
// CSV and mapped-grid CSV/SVG. All parse errors throw ErrorKind::Parse.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zipmap/chain_geometry.hpp"
#include "zipmap/complex_core.hpp"
#include "zipmap/map_builder.hpp"

namespace zipmap {

/// Decimal text with 17 significant digits ("inf" for infinity, "nan").
std::string format_double(double x);
/// "re,im", or "inf" for the point at infinity.
std::string format_point(const ExtendedComplex& z);

/// One point per line as "re,im"; blank lines and lines starting with '#'
/// are skipped; "inf" is accepted for the first point only. Errors name the
/// 1-based line. At least `min_rows` points are required.
std::vector<ExtendedComplex> parse_points_csv(std::string_view text, std::size_t min_rows = 2);
std::string points_csv(const std::vector<ExtendedComplex>& points);

/// Rows "re,im,radius"; the same comment rules as point files.
std::vector<Disc> parse_discs_csv(std::string_view text);

/// JSON document:
///   {"format": "zipmap-pipeline", "version": 1, "variant": ..., "orientation": +-1,
///    "bounded": bool, "normalized": bool,
///    "newton": {"tol", "max_iter", "far_threshold", "tip_fraction"},
///    "points": [[re, im] | "inf", ...], "prevertices": [...],
///    "steps": [{"kind": ..., parameters...}, ...]}
/// Doubles are written in shortest round-trip form, so load(save(p)) is
/// value-identical.
std::string pipeline_to_json(const MapPipeline& p);
MapPipeline pipeline_from_json(std::string_view text);

/// {"ok": bool, "violations": [{"kind", "indices", "magnitude"}], extras...}
std::string report_to_json(const ChainReport& report,
                           const std::vector<std::pair<std::string, double>>& extras = {});

/// Rows "re,im,is_datapoint" where the flag is 1 for vertices that are data
/// points of `p`.
std::string boundary_csv(const MapPipeline& p, const Polyline& boundary);

enum class GridKind { Polar, Cartesian };

struct GridOptions {
  GridKind kind = GridKind::Polar;
  int rings = 8;            // polar: circles |w| = k/rings, k = 1..rings; cartesian: lines per axis
  int rays = 16;            // polar: rays arg w = 2 pi j / rays
  int samples = 200;        // points per curve
  bool geometric = false;   // polar rings at 1 - 2^-k instead of k/rings
};

/// Images under the inverse map of a grid in the unit disc. Needs a pipeline
/// normalised to the disc (Precondition otherwise).
std::vector<Polyline> mapped_grid(const MapPipeline& p, const GridOptions& opts);

/// Rows "curve,re,im" with the curve index.
std::string grid_csv(const std::vector<Polyline>& grid);
/// A standalone SVG drawing, one path per grid curve plus the boundary.
std::string grid_svg(const std::vector<Polyline>& grid, const Polyline& boundary);

}  // namespace zipmap
