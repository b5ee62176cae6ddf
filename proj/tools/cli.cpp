#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "zipmap/chain_geometry.hpp"
#include "zipmap/error.hpp"
#include "zipmap/serialization.hpp"

namespace zipmap::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Parse, "write to '" + path + "' failed");
}

// "re,im" on the command line.
Complex parse_complex_arg(const std::string& text) {
  const auto pts = parse_points_csv(text, 1);
  if (pts.size() != 1 || pts[0].is_infinite()) throw Error(ErrorKind::Parse, "expected 're,im', got '" + text + "'");
  return pts[0].raw();
}

MapPipeline load_pipeline(const std::string& path) {
  MapPipeline p = pipeline_from_json(read_file(path));
  if (std::getenv("ZIPMAP_NEWTON_TOL")) p.newton.tol = newton_config_from_env().tol;
  return p;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::Precondition: return kUsage;
    default: return kNumericalFailure;
  }
}

std::string describe(const Error& e) {
  std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
  if (const auto* nc = dynamic_cast<const NonConvergenceError*>(&e); nc && nc->step_index() >= 0)
    msg += " (step " + std::to_string(nc->step_index()) + ")";
  return msg;
}

struct BuildArgs {
  std::string algo = "geodesic", in, out;
  std::optional<std::string> interior;
};

struct EvalArgs {
  std::string pipeline, dir = "fwd", in, out, mode = "interior";
  std::optional<std::string> seed;
  bool roundtrip = false;
};

struct NormalizeArgs {
  std::string pipeline, out, interior = "0,0";
  std::size_t fix_index = 0;
};

struct BoundaryArgs {
  std::string pipeline, out;
  int per_arc = 20;
};

struct GridArgs {
  std::string pipeline, out, kind = "polar";
  int rings = 8, rays = 16, samples = 200, per_arc = 20;
  bool geometric = false;
};

struct ValidateArgs {
  std::string check, in;
  std::optional<std::string> out;
  double eps = kDefaultEpsilon0, c1 = kDefaultPacmanC1, factor = 5.0, tolerance = 1e-9;
  std::optional<double> max_value;
  std::size_t max_triples = 50'000'000;
  bool closed = false;
};

struct SelftestArgs {
  std::string algo = "geodesic";
  int n = 1000;
  double r = 0.95;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
  const Variant v = variant_from_string(a.algo);
  if (v == Variant::Welding) throw Error(ErrorKind::Precondition, "build: use geodesic, slit or zipper");
  const auto points = parse_points_csv(read_file(a.in), 2);
  const NewtonConfig cfg = newton_config_from_env();
  const auto t0 = std::chrono::steady_clock::now();
  MapPipeline p = build(v, points, cfg);
  if (a.interior) {
    Complex fix = 0.0;
    for (const auto& z : points)
      if (z.is_finite()) {
        fix = z.raw();
        break;
      }
    p = normalize_to_disc(p, parse_complex_arg(*a.interior), fix);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file(a.out, pipeline_to_json(p));
  out << "n=" << points.size() << " algo=" << to_string(v) << " time=" << secs
      << "s data_point_roundtrip=" << boundary_residual(p) << (p.normalized ? " normalized" : "") << "\n";
  return kOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const MapPipeline p = load_pipeline(a.pipeline);
  const auto input = parse_points_csv(read_file(a.in), 1);
  BranchPolicy policy;
  if (a.mode == "exterior") policy = BranchPolicy::exterior();
  else if (a.mode == "extension")
    policy = BranchPolicy::extension(a.seed ? std::optional<ExtendedComplex>(parse_complex_arg(*a.seed)) : std::nullopt);
  const Sheet sheet = a.mode == "exterior" ? Sheet::Exterior : Sheet::Interior;
  const bool forward = a.dir == "fwd";

  std::string text;
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    try {
      const ExtendedComplex r = forward ? eval_forward(p, input[i], policy) : eval_inverse(p, input[i], sheet);
      text += format_point(r) + "\n";
      if (a.roundtrip && input[i].is_finite() && r.is_finite()) {
        const ExtendedComplex back = forward ? eval_inverse(p, r, sheet) : eval_forward(p, r, policy);
        if (back.is_finite()) worst = std::max(worst, std::abs(back.raw() - input[i].raw()));
      }
    } catch (const Error& e) {
      ++failures;
      text += "error," + std::string(to_string(e.kind())) + "\n";
      err << "row " << i + 1 << ": " << describe(e) << "\n";
    }
  }
  write_file(a.out, text);
  out << "rows=" << input.size() << " errors=" << failures;
  if (a.roundtrip) out << " max_roundtrip_error=" << worst;
  out << "\n";
  return failures == 0 ? kOk : kNumericalFailure;
}

int cmd_normalize(const NormalizeArgs& a, std::ostream& out) {
  const MapPipeline p = load_pipeline(a.pipeline);
  if (a.fix_index >= p.points.size() || p.points[a.fix_index].is_infinite())
    throw Error(ErrorKind::Precondition, "normalize: --fix-index must name a finite data point");
  const MapPipeline q = normalize_to_disc(p, parse_complex_arg(a.interior), p.points[a.fix_index].raw());
  write_file(a.out, pipeline_to_json(q));
  out << "normalized at " << a.interior << " with data point " << a.fix_index << " -> 1\n";
  return kOk;
}

int cmd_boundary(const BoundaryArgs& a, std::ostream& out) {
  const MapPipeline p = load_pipeline(a.pipeline);
  const Polyline b = boundary_sample(p, a.per_arc);
  write_file(a.out, "# re,im,is_datapoint\n" + boundary_csv(p, b));
  out << "samples=" << b.points.size() << "\n";
  return kOk;
}

int cmd_grid(const GridArgs& a, std::ostream& out) {
  const MapPipeline p = load_pipeline(a.pipeline);
  GridOptions o;
  o.kind = a.kind == "cartesian" ? GridKind::Cartesian : GridKind::Polar;
  o.rings = a.rings;
  o.rays = a.rays;
  o.samples = a.samples;
  o.geometric = a.geometric;
  const auto grid = mapped_grid(p, o);
  const bool svg = a.out.size() >= 4 && a.out.compare(a.out.size() - 4, 4, ".svg") == 0;
  write_file(a.out, svg ? grid_svg(grid, boundary_sample(p, a.per_arc)) : grid_csv(grid));
  out << "curves=" << grid.size() << (svg ? " format=svg" : " format=csv") << "\n";
  return kOk;
}

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  const std::string text = read_file(a.in);
  ChainReport report;
  std::vector<std::pair<std::string, double>> extras;
  auto value_check = [&](const char* name, double value) {
    extras.push_back({name, value});
    if (a.max_value && !(value <= *a.max_value)) report.add(std::string(name) + "_exceeded", {}, value - *a.max_value);
  };
  if (a.check == "disc-chain") {
    DiscChain chain{parse_discs_csv(text), a.closed, a.tolerance};
    report = validate_disc_chain(chain);
  } else {
    const auto pts = parse_points_csv(text, 2);
    if (a.check == "pacman") {
      report = pacman_condition(pts, a.eps, a.c1, a.closed);
      extras = {{"eps", a.eps}, {"C1", a.c1}};
    } else if (a.check == "turning") {
      report = turning_angle_check(pts, a.eps, a.closed);
      extras = {{"eps", a.eps}};
    } else if (a.check == "spacing") {
      value_check("spacing_constant", spacing_constant(pts, a.closed));
    } else if (a.check == "mesh") {
      value_check("mesh_size", mesh_size(pts, a.closed));
    } else if (a.check == "quasicircle") {
      Polyline c;
      c.points = pts;
      c.closed = true;
      value_check("quasicircle_constant", quasicircle_constant(c, a.max_triples));
    } else if (a.check == "separation") {
      report = neighborhood_separation_check(pts, a.factor);
      extras = {{"factor", a.factor}};
    }
  }
  const std::string json = report_to_json(report, extras);
  if (a.out) write_file(*a.out, json);
  out << json;
  return report.ok ? kOk : kValidationFailed;
}

int cmd_selftest(const SelftestArgs& a, std::ostream& out) {
  const Variant v = variant_from_string(a.algo);
  if (v == Variant::Welding) throw Error(ErrorKind::Precondition, "selftest: use geodesic, slit or zipper");
  if (a.n < 8) throw Error(ErrorKind::Precondition, "selftest: n must be at least 8");
  if (v == Variant::Zipper && a.n % 2 != 0) throw Error(ErrorKind::Precondition, "selftest: zipper needs even n");
  const SelftestResult r = run_selftest(v, a.n, a.r, newton_config_from_env());
  out << "algo=" << to_string(v) << " n=" << a.n << " r=" << a.r << " max_error=" << r.max_error
      << " threshold=" << r.threshold << " time=" << r.seconds << "s " << (r.passed ? "PASS" : "FAIL") << "\n";
  return r.passed ? kOk : kValidationFailed;
}

}  // namespace

std::vector<ExtendedComplex> inverted_ellipse_points(int n, double r) {
  std::vector<ExtendedComplex> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Complex z = r * std::polar(1.0, 2 * kPi * j / n);
    pts.push_back(z / (1.0 + z * z));
  }
  return pts;
}

double selftest_threshold(Variant variant, int n) {
  const double m = static_cast<double>(n);
  switch (variant) {
    case Variant::Geodesic: return 5e2 / (m * m);
    case Variant::Slit: return 5.0 / m;
    case Variant::Zipper: return 1e4 / std::pow(m, 2.5);
    case Variant::Welding: break;
  }
  return 0.0;
}

SelftestResult run_selftest(Variant variant, int n, double r, const NewtonConfig& cfg) {
  const auto pts = inverted_ellipse_points(n, r);
  const auto t0 = std::chrono::steady_clock::now();
  MapPipeline p = build(variant, pts, cfg);
  p = normalize_to_disc(p, 0.0, pts[0].raw());
  SelftestResult res;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (int j = 0; j < n; ++j) {
    const Complex w = p.prevertices[static_cast<std::size_t>(j)].raw();
    res.max_error = std::max(res.max_error, std::abs(std::arg(w * std::polar(1.0, -2 * kPi * j / n))));
  }
  res.threshold = selftest_threshold(variant, n);
  res.passed = res.max_error < res.threshold;
  return res;
}

NewtonConfig newton_config_from_env() {
  NewtonConfig cfg;
  if (const char* env = std::getenv("ZIPMAP_NEWTON_TOL")) {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0') throw Error(ErrorKind::Parse, std::string("ZIPMAP_NEWTON_TOL: not a number: '") + env + "'");
    cfg.tol = tol;
    cfg.validate();
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zipmap: conformal maps onto Jordan domains by the geodesic, slit and zipper algorithms"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build_cmd = app.add_subcommand("build", "Build a map pipeline from a point file");
  build_cmd->add_option("--algo", build_args.algo, "geodesic | slit | zipper")
      ->check(CLI::IsMember({"geodesic", "slit", "zipper"}));
  build_cmd->add_option("--in", build_args.in, "points CSV")->required();
  build_cmd->add_option("--out", build_args.out, "pipeline JSON")->required();
  build_cmd->add_option("--interior", build_args.interior,
                        "normalise to the disc: interior point 're,im' goes to 0, the first data point to 1");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a pipeline on points");
  eval_cmd->add_option("--pipeline", eval_args.pipeline)->required();
  eval_cmd->add_option("--dir", eval_args.dir, "fwd (domain to half-plane/disc) or inv")
      ->check(CLI::IsMember({"fwd", "inv"}));
  eval_cmd->add_option("--in", eval_args.in)->required();
  eval_cmd->add_option("--out", eval_args.out)->required();
  eval_cmd->add_option("--mode", eval_args.mode)->check(CLI::IsMember({"interior", "exterior", "extension"}));
  eval_cmd->add_option("--seed", eval_args.seed, "extension mode: 're,im' inside the domain to follow");
  eval_cmd->add_flag("--roundtrip", eval_args.roundtrip, "report the largest round-trip error");

  NormalizeArgs norm_args;
  auto* norm_cmd = app.add_subcommand("normalize", "Append the half-plane to disc normalisation");
  norm_cmd->add_option("--pipeline", norm_args.pipeline)->required();
  norm_cmd->add_option("--out", norm_args.out)->required();
  norm_cmd->add_option("--interior", norm_args.interior, "interior point 're,im' sent to 0");
  norm_cmd->add_option("--fix-index", norm_args.fix_index, "data point sent to 1");

  BoundaryArgs boundary_args;
  auto* boundary_cmd = app.add_subcommand("boundary", "Sample the computed boundary curve");
  boundary_cmd->add_option("--pipeline", boundary_args.pipeline)->required();
  boundary_cmd->add_option("--per-arc", boundary_args.per_arc)->check(CLI::PositiveNumber);
  boundary_cmd->add_option("--out", boundary_args.out)->required();

  GridArgs grid_args;
  auto* grid_cmd = app.add_subcommand("grid", "Image of a disc grid (CSV, or SVG when --out ends in .svg)");
  grid_cmd->add_option("--pipeline", grid_args.pipeline)->required();
  grid_cmd->add_option("--kind", grid_args.kind)->check(CLI::IsMember({"polar", "cartesian"}));
  grid_cmd->add_option("--rings", grid_args.rings)->check(CLI::PositiveNumber);
  grid_cmd->add_option("--rays", grid_args.rays)->check(CLI::PositiveNumber);
  grid_cmd->add_option("--samples", grid_args.samples)->check(CLI::Range(2, 100000));
  grid_cmd->add_option("--per-arc", grid_args.per_arc, "boundary samples per arc in SVG output")
      ->check(CLI::PositiveNumber);
  grid_cmd->add_flag("--rings-geometric", grid_args.geometric, "rings at radii 1 - 2^-k");
  grid_cmd->add_option("--out", grid_args.out)->required();

  ValidateArgs val_args;
  auto* val_cmd = app.add_subcommand("validate", "Run a geometric validator; JSON report on stdout");
  val_cmd->add_option("--check", val_args.check)
      ->required()
      ->check(CLI::IsMember({"disc-chain", "pacman", "turning", "spacing", "mesh", "quasicircle", "separation"}));
  val_cmd->add_option("--in", val_args.in, "points CSV (discs as 're,im,radius' for disc-chain)")->required();
  val_cmd->add_option("--out", val_args.out, "also write the report here");
  val_cmd->add_option("--eps", val_args.eps);
  val_cmd->add_option("--c1", val_args.c1);
  val_cmd->add_option("--factor", val_args.factor);
  val_cmd->add_option("--tolerance", val_args.tolerance);
  val_cmd->add_option("--max-value", val_args.max_value, "fail when a computed constant exceeds this");
  val_cmd->add_option("--max-triples", val_args.max_triples);
  val_cmd->add_flag("--closed", val_args.closed);

  SelftestArgs self_args;
  auto* self_cmd = app.add_subcommand("selftest", "Inverted-ellipse accuracy test");
  self_cmd->add_option("--algo", self_args.algo)->check(CLI::IsMember({"geodesic", "slit", "zipper"}));
  self_cmd->add_option("--n", self_args.n);
  self_cmd->add_option("--r", self_args.r)->check(CLI::Range(0.0, 0.999999));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build_cmd) return cmd_build(build_args, out);
    if (*eval_cmd) return cmd_eval(eval_args, out, err);
    if (*norm_cmd) return cmd_normalize(norm_args, out);
    if (*boundary_cmd) return cmd_boundary(boundary_args, out);
    if (*grid_cmd) return cmd_grid(grid_args, out);
    if (*val_cmd) return cmd_validate(val_args, out);
    if (*self_cmd) return cmd_selftest(self_args, out);
  } catch (const Error& e) {
    err << "zipmap: " << describe(e) << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "zipmap: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kUsage;
}

}  // namespace zipmap::cli
