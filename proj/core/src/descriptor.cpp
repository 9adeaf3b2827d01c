#include "lusin/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "lusin/errors.hpp"
#include "lusin/exhaustion.hpp"
#include "lusin/spaces.hpp"

namespace lusin {

namespace {

using nlohmann::json;

std::vector<double> coords_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ConfigError(what + " must be a nonempty array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(what + " must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

double number_of(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

std::string string_of(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  return j.get<std::string>();
}

SpaceDescriptor parse_space(const json& d) {
  const std::string kind = string_of(d.at("space"), "space");
  if (kind != "rays") {
    auto s = spaces::find(kind);
    if (!s) throw ConfigError("unknown space '" + kind + "'");
    return *s;
  }
  if (!d.contains("rays") || !d["rays"].is_array() || d["rays"].empty())
    throw ConfigError("space 'rays' needs a nonempty 'rays' array");
  std::vector<RayBranch> rays;
  for (const auto& r : d["rays"]) {
    RayBranch b;
    b.name = r.value("name", std::to_string(rays.size()));
    b.origin = coords_of(r.at("origin"), "ray origin");
    b.direction = coords_of(r.at("direction"), "ray direction");
    if (b.origin.size() != b.direction.size()) throw DescriptorError("ray origin and direction differ in dimension");
    if (!rays.empty() && b.origin.size() != rays.front().origin.size())
      throw DescriptorError("rays differ in dimension");
    double norm = 0.0;
    for (double v : b.direction) norm += v * v;
    if (std::abs(std::sqrt(norm) - 1.0) > 1e-12) throw DescriptorError("ray directions must be unit vectors");
    rays.push_back(std::move(b));
  }
  const bool disjoint = d.value("disjoint", false);
  return spaces::ray_space(d.value("name", std::string("rays")), std::move(rays), disjoint);
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot read '" + s + "' in " + what);
  }
}

Exhaustion parse_exhaustion(const json& e, const SpaceDescriptor& space) {
  if (!e.is_object()) throw ConfigError("exhaustion must be an object");
  const std::string intervals = string_of(e.at("intervals"), "exhaustion.intervals");
  const std::string radii = string_of(e.at("radii"), "exhaustion.radii");
  const auto n_max_raw = number_of(e.at("n_max"), "exhaustion.n_max");
  if (!(n_max_raw >= 1) || n_max_raw != std::floor(n_max_raw) || n_max_raw > 1e7)
    throw ConfigError("exhaustion.n_max must be an integer in [1, 1e7]");
  const auto n_max = static_cast<std::size_t>(n_max_raw);

  static const std::regex interval_re(R"(\[\s*0\s*,\s*(?:([0-9.eE+-]+)\s*\*\s*)?n\s*\])");
  static const std::regex ball_re(R"(ball\(\s*(?:([0-9.eE+-]+)\s*\*\s*)?n\s*\))");
  std::smatch m;
  bool balls = false;
  double scale = 1.0;
  if (std::regex_match(intervals, m, interval_re)) {
    if (m[1].matched) scale = parse_number(m[1], "exhaustion.intervals");
  } else if (std::regex_match(intervals, m, ball_re)) {
    balls = true;
    if (m[1].matched) scale = parse_number(m[1], "exhaustion.intervals");
  } else {
    throw ConfigError("exhaustion.intervals must look like \"[0,n]\", \"[0,c*n]\" or \"ball(c*n)\"");
  }
  if (!(scale > 0.0)) throw DescriptorError("exhaustion scale must be > 0");

  static const std::regex harmonic_re(R"(([0-9.eE+-]+)?\s*/\s*n)");
  static const std::regex geometric_re(R"(([0-9.eE+-]+)\s*\^\s*n)");
  std::vector<double> r(n_max);
  if (std::regex_match(radii, m, harmonic_re)) {
    const double c = m[1].matched ? parse_number(m[1], "exhaustion.radii") : 1.0;
    for (std::size_t n = 1; n <= n_max; ++n) r[n - 1] = c / static_cast<double>(n);
  } else if (std::regex_match(radii, m, geometric_re)) {
    const double q = parse_number(m[1], "exhaustion.radii");
    for (std::size_t n = 1; n <= n_max; ++n) r[n - 1] = std::pow(q, static_cast<double>(n));
  } else {
    const double c = parse_number(radii, "exhaustion.radii");
    std::fill(r.begin(), r.end(), c);
  }

  Exhaustion ex;
  if (balls) {
    if (!space.branches.empty()) throw DescriptorError("ball exhaustions need the plane");
    ex = Exhaustion::balls(n_max, std::vector<double>(static_cast<std::size_t>(space.dimension), 0.0), scale);
  } else {
    if (space.branches.empty()) throw DescriptorError("interval exhaustions need a ray space");
    ex = Exhaustion::ray_intervals(n_max, scale);
  }
  ex.radii = std::move(r);
  return ex;
}

double estimate_lipschitz(const MapInstance& m) {
  double worst = 0.0;
  for (std::size_t b = 0; b < m.forms.size(); ++b) {
    const double extent = m.sampling[b].extent;
    const double step = std::min(1e-3, extent / 1000.0);
    Point prev = evaluate(m.forms[b], 0.0);
    for (double s = step; s <= extent; s += step) {
      Point cur = evaluate(m.forms[b], s);
      worst = std::max(worst, euclidean(prev, cur) / step);
      prev = std::move(cur);
    }
  }
  return 1.1 * worst + 1e-9;
}

MapInstance parse_map(const json& d, const SpaceDescriptor& space, const std::string& name) {
  MapInstance m;
  m.name = name;
  m.domain = space;
  if (!d["branches"].is_array() || d["branches"].empty()) throw ConfigError("branches must be a nonempty array");
  for (const auto& b : d["branches"]) {
    const std::string form = string_of(b.at("form"), "branch form");
    const std::vector<double> coeffs = coords_of(b.at("coefficients"), "branch coefficients");
    try {
      m.forms.push_back(make_form(form, coeffs));
    } catch (const ParameterError& e) {
      throw DescriptorError(e.what());
    }
    BranchSampling s;
    if (b.contains("extent")) s.extent = number_of(b["extent"], "branch extent");
    const std::string law = b.value("law", std::string("linear"));
    if (law == "linear")
      s.law = SamplingLaw::linear;
    else if (law == "rational")
      s.law = SamplingLaw::rational;
    else
      throw ConfigError("unknown sampling law '" + law + "'");
    m.sampling.push_back(s);
  }
  m.codomain_dimension = codomain_dimension(m.forms.front());
  validate_map(m);
  if (d.contains("known_x1")) {
    std::vector<Point> x1;
    for (const auto& p : d["known_x1"]) x1.emplace_back(coords_of(p, "known_x1 point"));
    m.known_x1 = std::move(x1);
  }
  m.lipschitz = d.contains("lipschitz") ? number_of(d["lipschitz"], "lipschitz") : estimate_lipschitz(m);
  if (!(m.lipschitz > 0.0)) throw DescriptorError("lipschitz must be > 0");
  return m;
}

}  // namespace

Target load_descriptor(std::string_view text) {
  json d;
  try {
    d = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("descriptor is not valid JSON: ") + e.what());
  }
  if (!d.is_object()) throw ConfigError("descriptor must be a JSON object");
  try {
    Target t;
    t.space = parse_space(d);
    t.name = d.value("name", t.space.name);
    const Point x0(coords_of(d.at("x0"), "x0"));
    Point x0_tagged = x0;
    if (auto where = t.space.locate(x0); where && t.space.disjoint_branches) x0_tagged.branch = where->branch;
    t.cspace.emplace(t.space, x0_tagged, parse_exhaustion(d.at("exhaustion"), t.space));
    if (d.contains("branches")) t.map = parse_map(d, t.space, t.name);
    return t;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("descriptor is missing a field or has the wrong type: ") + e.what());
  } catch (const DomainError& e) {
    throw DescriptorError(e.what());
  }
}

Target load_descriptor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read descriptor '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return load_descriptor(buf.str());
}

Target resolve_target(const std::string& id) {
  if (auto m = maps::find(id)) {
    Target t;
    t.name = id;
    t.space = m->domain;
    t.cspace = compactified::over_rays(m->domain);
    t.map = std::move(m);
    return t;
  }
  if (auto s = spaces::find(id)) {
    Target t;
    t.name = id;
    t.space = *s;
    t.cspace = compactified::find(id);
    return t;
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(id, ec)) return load_descriptor_file(id);
  throw ConfigError("unknown space or map '" + id + "'");
}

std::vector<std::string> catalog_targets() {
  std::vector<std::string> out = spaces::names();
  for (auto& m : maps::names()) out.push_back(m);
  return out;
}

}  // namespace lusin
