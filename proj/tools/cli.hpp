#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zipmap/map_builder.hpp"

namespace zipmap::cli {

/// Exit codes of the command-line tool.
enum Exit : int { kOk = 0, kValidationFailed = 1, kNumericalFailure = 2, kUsage = 3 };

/// Runs the tool with the given arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestResult {
  double max_error = 0.0;   // radians
  double threshold = 0.0;
  double seconds = 0.0;
  bool passed = false;
};

/// Data points f(e^{2 pi i j/n}) with f(z) = r z / (1 + (r z)^2).
std::vector<ExtendedComplex> inverted_ellipse_points(int n, double r);

/// Accepted prevertex error for the inverted-ellipse self-test.
double selftest_threshold(Variant variant, int n);

/// Builds, normalises at 0 and the first data point, and measures the
/// largest angular distance between prevertex j and e^{2 pi i j/n}.
SelftestResult run_selftest(Variant variant, int n, double r, const NewtonConfig& cfg = NewtonConfig{});

/// NewtonConfig with tol taken from ZIPMAP_NEWTON_TOL when set. Throws
/// Parse for an unreadable value.
NewtonConfig newton_config_from_env();

}  // namespace zipmap::cli
