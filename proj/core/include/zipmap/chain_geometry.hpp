#pragma once

// Geometric certificates for the convergence theorems: disc-chains,
// diamond-chains and the pacman condition, plus the spacing, turning and
// quasicircle figures used to judge a set of data points.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "zipmap/complex_core.hpp"

namespace zipmap {

struct Disc {
  Complex center;
  double radius = 1.0;
};

struct DiscChain {
  std::vector<Disc> discs;
  bool closed = false;
  double tolerance = 1e-9;  // relative to the largest radius
};

/// Open rhombus with opposite vertices a and b and interior angle
/// 2 * half_angle at both. When one vertex is infinite the diamond is the
/// sector of half-angle `half_angle` at the finite vertex around `axis`.
struct Diamond {
  ExtendedComplex a;
  ExtendedComplex b;
  double half_angle = 0.1;
  Complex axis = 1.0;  // only used when a or b is infinite

  static Diamond between(Complex a, Complex b, double half_angle);
  static Diamond sector(Complex vertex, Complex axis, double half_angle);
};

/// B(center, radius) minus the closed cone {|arg(conj(rotation)(z - center))| <= opening/2}.
struct Pacman {
  Complex center;
  double radius = 1.0;
  double opening = 0.2;
  Complex rotation = 1.0;
};

struct Violation {
  std::string kind;
  std::vector<std::size_t> indices;
  double magnitude = 0.0;
};

struct ChainReport {
  bool ok = true;
  std::vector<Violation> violations;

  void add(std::string kind, std::vector<std::size_t> indices, double magnitude);
};

/// Defaults for the constants the convergence theorem leaves unspecified.
inline constexpr double kDefaultPacmanC1 = 8.0;
inline constexpr double kDefaultEpsilon0 = 0.1;

/// Pairwise disjointness ("overlap", magnitude r_i + r_j - |c_i - c_j|) and
/// consecutive tangency ("gap", signed |c_j - c_k| - r_j - r_k). Throws
/// Precondition for fewer than two discs.
ChainReport validate_disc_chain(const DiscChain& chain);

/// Contact point of each consecutive pair (n - 1 points, or n when closed).
/// Throws Precondition if the chain does not validate.
std::vector<Complex> tangency_points(const DiscChain& chain);

/// Closed chain along a simple closed polygon: one disc at every vertex and
/// tangent discs centred on the edges in between, all radii at most eps and
/// below half the distance to the other edges. Throws Precondition for a
/// non-simple polygon and Infeasible if the chain would need too many discs.
DiscChain polygon_disc_chain(const Polyline& polygon, double eps);

/// Chain of discs of radius 2^-n / 2 on the boundary of the component
/// containing z0 of the union of dyadic squares Q (side >= 2^-n) with
/// 2Q inside the polygon. The polygon must lie in the unit square.
DiscChain whitney_disc_chain(const Polyline& domain, int n, Complex z0);

/// Membership in the open diamond. Points within 1e-12 (relative) of the
/// boundary count as outside.
bool diamond_contains(const Diamond& d, const ExtendedComplex& z);

bool pacman_contains(const Pacman& p, Complex z);

/// Pacman P_k at z_k, symmetric about z_k -> z_{k+1} with its notch pointing
/// back along z_k - z_{k+1}, radius C1 |z_{k+1} - z_k| / eps^2.
Pacman pacman_at(Complex zk, Complex zk1, double eps, double c1);

/// Checks that P_k misses the diamonds D(z_j, z_{j+1}), j <= k - 2, for
/// 1 <= k <= n - 1. points[0] may be infinite, in which case D(inf, z_1) is
/// the sector around z_1 - z_2. For closed data the pacman on the closing
/// segment z_n -> z_0 is also checked ("closing_pacman"). Intersections are
/// exact (convex clipping); magnitudes are penetration depths.
ChainReport pacman_condition(const std::vector<ExtendedComplex>& points, double eps,
                             double c1 = kDefaultPacmanC1, bool closed = false);

/// Reports every k with |arg((z_{k+1} - z_k)/(z_k - z_{k-1}))| >= eps/10.
ChainReport turning_angle_check(const std::vector<ExtendedComplex>& points, double eps,
                                bool closed = false);

/// Smallest D with 1/D <= |z_k - z_{k-1}| / |z_k - z_{k+1}| <= D for all
/// interior k (all k when closed). Throws DegenerateInput on coincident
/// consecutive points.
double spacing_constant(const std::vector<ExtendedComplex>& points, bool closed = false);

/// Three-point constant of a closed polyline after the Moebius map that
/// sends its first vertex to infinity; the smaller-diameter subarc between
/// two image points is then the bounded one. Brute force over all vertex
/// triples when that is within `max_triples`, over an evenly strided subset
/// otherwise. Always >= 1.
double quasicircle_constant(const Polyline& curve, std::size_t max_triples = 50'000'000);

using ChainCover = std::variant<DiscChain, std::vector<Diamond>>;

/// Every vertex of `curve` must lie in the union of the cover's open sets
/// (or at a tangency point), up to `slack` times the cover's diameter.
/// Violations ("escape") carry the point index and its distance to the cover.
ChainReport curve_in_chain(const Polyline& curve, const ChainCover& cover, double slack = 1e-9);

/// Largest angle between a segment of `curve` and the reference direction
/// of its arc. The curve is split into reference_directions.size() arcs of
/// equal sample count, as produced by boundary_sample. Throws Precondition
/// when an arc has fewer than 8 segments or the counts do not divide.
double tangent_deviation(const Polyline& curve, const std::vector<Complex>& reference_directions);

/// Largest gap between consecutive finite points (wrapping when closed).
double mesh_size(const std::vector<ExtendedComplex>& points, bool closed = false);

/// For each k, the closed polygon through the points must meet
/// B(z_k, factor |z_{k+1} - z_k|) in a single subarc; folds are reported
/// with the depth r - dist of the offending segment.
ChainReport neighborhood_separation_check(const std::vector<ExtendedComplex>& points,
                                          double factor = 5.0);

}  // namespace zipmap
