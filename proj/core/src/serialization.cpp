#include "zipmap/serialization.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "zipmap/error.hpp"

namespace zipmap {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (field.empty()) parse_fail(line, "empty field");
  // from_chars rejects a leading '+'.
  if (field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v))
    parse_fail(line, "not a finite number: '" + std::string(field) + "'");
  return v;
}

std::vector<std::string_view> split_fields(std::string_view row) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = row.find(',', start);
    out.push_back(row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Calls fn(line_number, fields) for each data row.
template <class Fn>
void for_each_row(std::string_view text, Fn fn) {
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line;
    const std::string_view row = trim(raw);
    if (!row.empty() && row.front() != '#') fn(line, row);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

bool is_inf_token(std::string_view s) {
  s = trim(s);
  return s == "inf" || s == "Inf" || s == "INF" || s == "infinity";
}

// ----------------------------------------------------------------- JSON

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json point_json(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  return complex_json(z.raw());
}

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Parse, "expected [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

ExtendedComplex point_from(const json& j) {
  if (j.is_string()) {
    if (is_inf_token(j.get<std::string>())) return ExtendedComplex::infinity();
    throw Error(ErrorKind::Parse, "unknown point token " + j.dump());
  }
  return complex_from(j);
}

const json& field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::Parse, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number()) throw Error(ErrorKind::Parse, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_integer()) throw Error(ErrorKind::Parse, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

json step_json(const MapStep& step) {
  json j;
  j["kind"] = step_kind(step);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, InitialGeodesic>) {
          j["z0"] = complex_json(s.z0);
          j["z1"] = complex_json(s.z1);
        } else if constexpr (std::is_same_v<T, InitialZipper>) {
          j["z0"] = complex_json(s.z0);
          j["z1"] = complex_json(s.z1);
          j["z2"] = complex_json(s.z2);
        } else if constexpr (std::is_same_v<T, InitialUnbounded>) {
          j["z1"] = complex_json(s.z1);
          j["z2"] = complex_json(s.z2);
        } else if constexpr (std::is_same_v<T, GeodesicSlit>) {
          j["a"] = complex_json(s.params.a());
          j["prescale"] = s.prescale;
        } else if constexpr (std::is_same_v<T, StraightSlit>) {
          j["a"] = complex_json(s.params.a());
        } else if constexpr (std::is_same_v<T, CircularSlit>) {
          j["a"] = complex_json(s.params.a());
          j["c"] = complex_json(s.params.c());
        } else if constexpr (std::is_same_v<T, WeldingSlit>) {
          j["x"] = s.x;
          j["y"] = s.y;
        } else if constexpr (std::is_same_v<T, TerminalGeodesic>) {
          j["zeta_inverse"] = s.zeta_inverse;
          j["sign"] = s.sign;
        } else if constexpr (std::is_same_v<T, TerminalZipper>) {
          j["zeta_inverse"] = s.zeta_inverse;
          j["zeta_prev"] = complex_json(s.zeta_prev);
          j["side"] = s.side;
          j["scale"] = s.scale;
        } else if constexpr (std::is_same_v<T, MobiusNormalize>) {
          j["a"] = complex_json(s.m.a);
          j["b"] = complex_json(s.m.b);
          j["c"] = complex_json(s.m.c);
          j["d"] = complex_json(s.m.d);
        }
      },
      step);
  return j;
}

MapStep step_from(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "step must be an object");
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) throw Error(ErrorKind::Parse, "step kind must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "initial_geodesic") return InitialGeodesic{complex_from(field(j, "z0")), complex_from(field(j, "z1"))};
  if (kind == "initial_zipper")
    return InitialZipper{complex_from(field(j, "z0")), complex_from(field(j, "z1")), complex_from(field(j, "z2"))};
  if (kind == "initial_unbounded") return InitialUnbounded{complex_from(field(j, "z1")), complex_from(field(j, "z2"))};
  if (kind == "geodesic_slit") return GeodesicSlit{GeodesicParams(complex_from(field(j, "a"))), number(j, "prescale")};
  if (kind == "straight_slit") return StraightSlit{SlitParams(complex_from(field(j, "a")))};
  if (kind == "circular_slit")
    return CircularSlit{CircularSlitParams(complex_from(field(j, "a")), complex_from(field(j, "c")))};
  if (kind == "welding_slit") return WeldingSlit{number(j, "x"), number(j, "y")};
  if (kind == "terminal_geodesic") return TerminalGeodesic{number(j, "zeta_inverse"), integer(j, "sign")};
  if (kind == "terminal_zipper")
    return TerminalZipper{number(j, "zeta_inverse"), complex_from(field(j, "zeta_prev")), integer(j, "side"),
                          number(j, "scale")};
  if (kind == "mobius") {
    Mobius m{complex_from(field(j, "a")), complex_from(field(j, "b")), complex_from(field(j, "c")),
             complex_from(field(j, "d"))};
    m.validate();
    return MobiusNormalize{m};
  }
  throw Error(ErrorKind::Parse, "unknown step kind '" + kind + "'");
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_point(const ExtendedComplex& z) {
  if (z.is_infinite()) return "inf";
  return format_double(z.raw().real()) + "," + format_double(z.raw().imag());
}

std::vector<ExtendedComplex> parse_points_csv(std::string_view text, std::size_t min_rows) {
  std::vector<ExtendedComplex> out;
  for_each_row(text, [&](std::size_t line, std::string_view row) {
    const auto f = split_fields(row);
    if (f.size() == 1 && is_inf_token(f[0])) {
      if (!out.empty()) parse_fail(line, "'inf' is only allowed as the first point");
      out.push_back(ExtendedComplex::infinity());
      return;
    }
    if (f.size() != 2) parse_fail(line, "expected 're,im'");
    out.push_back(Complex(parse_number(f[0], line), parse_number(f[1], line)));
  });
  if (out.size() < min_rows)
    throw Error(ErrorKind::Parse, "need at least " + std::to_string(min_rows) + " points, found " + std::to_string(out.size()));
  return out;
}

std::string points_csv(const std::vector<ExtendedComplex>& points) {
  std::string out;
  for (const auto& z : points) out += format_point(z) + "\n";
  return out;
}

std::vector<Disc> parse_discs_csv(std::string_view text) {
  std::vector<Disc> out;
  for_each_row(text, [&](std::size_t line, std::string_view row) {
    const auto f = split_fields(row);
    if (f.size() != 3) parse_fail(line, "expected 're,im,radius'");
    out.push_back({Complex(parse_number(f[0], line), parse_number(f[1], line)), parse_number(f[2], line)});
  });
  return out;
}

std::string pipeline_to_json(const MapPipeline& p) {
  json j;
  j["format"] = "zipmap-pipeline";
  j["version"] = 1;
  j["variant"] = to_string(p.variant);
  j["orientation"] = p.orientation;
  j["bounded"] = p.bounded;
  j["normalized"] = p.normalized;
  j["newton"] = {{"tol", p.newton.tol},
                 {"max_iter", p.newton.max_iter},
                 {"far_threshold", p.newton.far_threshold},
                 {"tip_fraction", p.newton.tip_fraction}};
  json pts = json::array(), pre = json::array(), steps = json::array();
  for (const auto& z : p.points) pts.push_back(point_json(z));
  for (const auto& z : p.prevertices) pre.push_back(point_json(z));
  for (const auto& s : p.steps) steps.push_back(step_json(s));
  j["points"] = std::move(pts);
  j["prevertices"] = std::move(pre);
  j["steps"] = std::move(steps);
  return j.dump(1) + "\n";
}

MapPipeline pipeline_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("pipeline JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "pipeline JSON must be an object");
  try {
    MapPipeline p;
    const json& variant = field(j, "variant");
    if (!variant.is_string()) throw Error(ErrorKind::Parse, "variant must be a string");
    p.variant = variant_from_string(variant.get<std::string>());
    p.orientation = integer(j, "orientation");
    if (p.orientation != 1 && p.orientation != -1) throw Error(ErrorKind::Parse, "orientation must be +1 or -1");
    if (j.contains("bounded")) p.bounded = j["bounded"].get<bool>();
    if (j.contains("normalized")) p.normalized = j["normalized"].get<bool>();
    if (j.contains("newton")) {
      const json& n = j["newton"];
      p.newton.tol = number(n, "tol");
      p.newton.max_iter = integer(n, "max_iter");
      p.newton.far_threshold = number(n, "far_threshold");
      p.newton.tip_fraction = number(n, "tip_fraction");
      p.newton.validate();
    }
    for (const auto& z : field(j, "points")) p.points.push_back(point_from(z));
    for (const auto& z : field(j, "prevertices")) p.prevertices.push_back(point_from(z));
    for (const auto& s : field(j, "steps")) p.steps.push_back(step_from(s));
    if (p.prevertices.size() != p.points.size())
      throw Error(ErrorKind::Parse, "points and prevertices differ in length");
    if (p.steps.empty()) throw Error(ErrorKind::Parse, "pipeline has no steps");
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("pipeline JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    throw Error(ErrorKind::Parse, std::string("pipeline JSON: invalid step parameters: ") + e.what());
  }
}

std::string report_to_json(const ChainReport& report, const std::vector<std::pair<std::string, double>>& extras) {
  json j;
  j["ok"] = report.ok;
  json v = json::array();
  for (const auto& x : report.violations)
    v.push_back({{"kind", x.kind}, {"indices", x.indices}, {"magnitude", x.magnitude}});
  j["violations"] = std::move(v);
  for (const auto& [k, val] : extras) j[k] = val;
  return j.dump(1) + "\n";
}

std::string boundary_csv(const MapPipeline& p, const Polyline& boundary) {
  std::set<std::pair<double, double>> data;
  for (const auto& z : p.points)
    if (z.is_finite()) data.insert({z.raw().real(), z.raw().imag()});
  std::string out;
  for (const auto& z : boundary.points) {
    const bool flag = z.is_finite() && data.count({z.raw().real(), z.raw().imag()}) > 0;
    out += format_point(z) + (flag ? ",1\n" : ",0\n");
  }
  return out;
}

// ----------------------------------------------------------------- grids

std::vector<Polyline> mapped_grid(const MapPipeline& p, const GridOptions& opts) {
  if (!p.normalized)
    throw Error(ErrorKind::Precondition, "grid needs a pipeline normalised to the disc; run 'zipmap normalize' first");
  if (opts.rings < 1 || opts.samples < 2 || (opts.kind == GridKind::Polar && opts.rays < 1))
    throw Error(ErrorKind::Precondition, "grid: rings, rays >= 1 and samples >= 2 required");
  auto curve = [&](auto param, bool closed) {
    Polyline c;
    c.closed = closed;
    for (int i = 0; i <= opts.samples - (closed ? 1 : 0); ++i) {
      const double t = static_cast<double>(i) / opts.samples;
      c.points.push_back(eval_inverse(p, param(t)));
    }
    return c;
  };
  std::vector<Polyline> out;
  if (opts.kind == GridKind::Polar) {
    for (int k = 1; k <= opts.rings; ++k) {
      const double r = opts.geometric ? 1.0 - std::ldexp(1.0, -k) : static_cast<double>(k) / opts.rings;
      out.push_back(curve([&](double t) { return std::polar(r, 2 * kPi * t); }, true));
    }
    for (int j = 0; j < opts.rays; ++j) {
      const Complex u = std::polar(1.0, 2 * kPi * j / opts.rays);
      out.push_back(curve([&](double t) { return t * u; }, false));
    }
  } else {
    for (int k = 1; k <= opts.rings; ++k) {
      const double c = -1.0 + 2.0 * k / (opts.rings + 1);
      const double h = std::sqrt(1.0 - c * c);
      out.push_back(curve([&](double t) { return Complex(c, -h + 2 * h * t); }, false));
      out.push_back(curve([&](double t) { return Complex(-h + 2 * h * t, c); }, false));
    }
  }
  return out;
}

std::string grid_csv(const std::vector<Polyline>& grid) {
  std::string out = "# curve,re,im\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (const auto& z : grid[i].points)
      if (z.is_finite()) out += std::to_string(i) + "," + format_point(z) + "\n";
  return out;
}

std::string grid_svg(const std::vector<Polyline>& grid, const Polyline& boundary) {
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  auto grow = [&](const Polyline& c) {
    for (const auto& z : c.points) {
      if (!z.is_finite()) continue;
      lo_x = std::min(lo_x, z.raw().real());
      hi_x = std::max(hi_x, z.raw().real());
      lo_y = std::min(lo_y, z.raw().imag());
      hi_y = std::max(hi_y, z.raw().imag());
    }
  };
  grow(boundary);
  for (const auto& c : grid) grow(c);
  if (lo_x > hi_x) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double pad = 0.05 * span;
  const double stroke = span / 800.0;

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(lo_x - pad) << " "
    << format_double(-hi_y - pad) << " " << format_double(hi_x - lo_x + 2 * pad) << " "
    << format_double(hi_y - lo_y + 2 * pad) << "\" width=\"800\" height=\"800\">\n";
  // y is flipped so the drawing has the usual orientation.
  auto path = [&](const Polyline& c, const char* colour, double width) {
    std::string d;
    bool pen = false;
    for (const auto& z : c.points) {
      if (!z.is_finite()) {
        pen = false;
        continue;
      }
      d += pen ? " L " : (d.empty() ? "M " : " M ");
      d += format_double(z.raw().real()) + " " + format_double(-z.raw().imag());
      pen = true;
    }
    if (d.empty()) return;
    if (c.closed) d += " Z";
    s << "  <path d=\"" << d << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\""
      << format_double(width) << "\"/>\n";
  };
  for (const auto& c : grid) path(c, "#3060a0", stroke);
  path(boundary, "#000000", 2.0 * stroke);
  s << "</svg>\n";
  return s.str();
}

}  // namespace zipmap
