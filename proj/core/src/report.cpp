#include "lusin/report.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "lusin/certificate.hpp"
#include "lusin/compactification.hpp"
#include "lusin/descriptor.hpp"
#include "lusin/errors.hpp"
#include "lusin/stratification.hpp"
#include "point_grid.hpp"

namespace lusin {

using nlohmann::json;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::compactify: return "compactify";
    case Command::stratify: return "stratify";
    case Command::report: return "report";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

Command parse_command(std::string_view s) {
  for (Command c : {Command::verify, Command::compactify, Command::stratify, Command::report})
    if (to_string(c) == s) return c;
  throw ConfigError("unknown command '" + std::string(s) + "'");
}

OutputFormat parse_format(std::string_view s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("unknown format '" + std::string(s) + "' (json or csv)");
}

void validate_config(const RunConfig& c) {
  if (c.target.empty()) throw ConfigError("no space or map given");
  if (c.samples && *c.samples < 10) throw ConfigError("--samples must be >= 10");
  if (c.tolerance && !(*c.tolerance > 0.0 && std::isfinite(*c.tolerance))) throw ConfigError("--tol must be > 0");
  if (c.depth < 1) throw ConfigError("--depth must be >= 1");
  for (double e : c.epsilons)
    if (!(e > 0.0 && std::isfinite(e))) throw ConfigError("every --eps must be > 0");
  for (const auto& p : c.points)
    if (p.empty()) throw ConfigError("empty point");
}

double round12(double v) noexcept {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

bool RunReport::pass() const noexcept {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

int exit_code(const RunReport& r) noexcept { return r.pass() ? kExitPass : kExitViolation; }

int exit_code(const std::exception& e) noexcept {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const DescriptorError*>(&e) ||
      dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const DomainError*>(&e))
    return kExitConfig;
  return kExitViolation;
}

namespace {

std::vector<double> rounded(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), round12);
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

SuiteResult suite(std::string name) {
  SuiteResult s;
  s.name = std::move(name);
  return s;
}

class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on), start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    if (!on_) return 0.0;
    return round12(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count());
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

SuiteResult finish(SuiteResult s, const Stopwatch& w) {
  s.max_slack = round12(s.max_slack);
  s.pass = s.violations == 0 && s.pass;
  s.wall_ms = w.ms();
  return s;
}

void slack(SuiteResult& s, double amount) {
  if (amount > 0.0) {
    ++s.violations;
    s.max_slack = std::max(s.max_slack, amount);
  }
}

SuiteResult from_axioms(std::string name, const AxiomReport& r, const Stopwatch& w) {
  SuiteResult s;
  s.name = std::move(name);
  s.checked = r.triples_checked + r.pairs_checked;
  s.violations = r.violation_count;
  s.max_slack = r.max_slack;
  for (std::size_t i = 0; i < std::min<std::size_t>(10, r.violations.size()); ++i) {
    std::string line = r.violations[i].axiom + " slack " + num(r.violations[i].slack) + " at";
    for (const Point& p : r.violations[i].points) line += " " + to_string(p);
    s.details.push_back(std::move(line));
  }
  return finish(std::move(s), w);
}

// Exhaustive on up to 1000 points, seeded random triples beyond that.
AxiomReport axioms_on(const DistanceOracle& d, const std::vector<Point>& samples, double tol, std::uint64_t seed) {
  if (samples.size() <= 1000) return check_metric_axioms(d, samples, tol);
  std::mt19937_64 rng(seed);
  const auto pick = [&] {
    return samples[std::min(samples.size() - 1, static_cast<std::size_t>(unit_uniform(rng) * samples.size()))];
  };
  std::vector<std::array<Point, 3>> triples;
  triples.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) triples.push_back({pick(), pick(), pick()});
  return check_metric_triples(d, triples, tol);
}

std::vector<double> default_epsilons(const Target& t) {
  if (t.space.branches.empty()) return {0.5, 0.1};
  return {0.5, 0.1, 0.02};
}

Point tagged(const SpaceDescriptor& space, std::vector<double> coords) {
  Point p(std::move(coords));
  if (space.disjoint_branches)
    if (auto where = space.locate(p)) p.branch = where->branch;
  if (!space.contains(p)) throw DomainError(to_string(p) + " is not a point of " + space.name);
  return p;
}

void add_nets(RunReport& rep, const Target& t, const std::vector<double>& eps, std::size_t samples,
              std::uint64_t seed, bool timing) {
  const CompactifiedSpace& cs = *t.cspace;
  const std::vector<Point> probes = t.space.sampler(samples, seed + 1);
  for (double e : eps) {
    Stopwatch w(timing);
    NetResult net;
    try {
      net = total_boundedness_net(cs, e, probes);
    } catch (const ParameterError& err) {
      throw ConfigError(err.what());
    }
    rep.nets.push_back({round12(e), net.n_eps, net.net.size(), net.grid_size, net.probes, net.uncovered,
                        round12(net.worst)});
    SuiteResult s;
    s.name = "net_coverage_eps_" + num(e);
    s.checked = net.probes;
    s.violations = net.uncovered;
    if (net.uncovered) s.max_slack = net.worst - e;
    s.details.push_back("net size " + std::to_string(net.net.size()) + ", n_eps " + std::to_string(net.n_eps));
    rep.suites.push_back(finish(std::move(s), w));
  }
}

void verify_suites(RunReport& rep, const Target& t, const RunConfig& cfg) {
  const std::size_t n = cfg.samples.value_or(1000);
  const double tol = cfg.tolerance.value_or(1e-9);
  const CompactifiedSpace& cs = *t.cspace;
  const SpaceDescriptor& space = t.space;
  const std::vector<Point> samples = space.sampler(n, cfg.seed);

  {
    Stopwatch w(cfg.timing);
    rep.suites.push_back(from_axioms("metric_axioms_d", axioms_on(space.distance, samples, tol, cfg.seed + 3), w));
  }
  {
    Stopwatch w(cfg.timing);
    rep.suites.push_back(
        from_axioms("delta_axioms", axioms_on(cs.cached_delta_oracle(), samples, tol, cfg.seed + 3), w));
  }

  // Pairs for the Lipschitz and domination suites.
  std::mt19937_64 rng(cfg.seed + 2);
  const auto pick = [&] {
    return std::min(samples.size() - 1, static_cast<std::size_t>(unit_uniform(rng) * samples.size()));
  };
  std::vector<double> h(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) h[i] = cs.h(samples[i]);
  {
    Stopwatch w(cfg.timing);
    SuiteResult lip = suite("lipschitz_h"), dom = suite("domination");
    for (std::size_t k = 0; k < 10 * n; ++k) {
      const std::size_t i = pick(), j = pick();
      const double d = space.distance(samples[i], samples[j]);
      const double dl = cs.delta(samples[i], samples[j]);
      ++lip.checked;
      slack(lip, std::abs(h[i] - h[j]) - d - 1e-12);
      ++dom.checked;
      slack(dom, dl - d - 1e-12);
      slack(dom, dl - (h[i] + h[j]) - 1e-12);
    }
    rep.suites.push_back(finish(std::move(lip), w));
    rep.suites.push_back(finish(std::move(dom), w));
  }
  {
    Stopwatch w(cfg.timing);
    SuiteResult s = suite("h_bounds");
    const double r1 = cs.exhaustion().radius(1);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double g = cs.g(samples[i]);
      ++s.checked;
      if (!(g > 0.0)) slack(s, std::max(-g, std::numeric_limits<double>::min()));
      slack(s, g - r1 - 1e-12);
      slack(s, -h[i]);
      slack(s, h[i] - g);
      slack(s, h[i] - space.distance(samples[i], cs.x0()));
    }
    rep.suites.push_back(finish(std::move(s), w));
  }
  {
    Stopwatch w(cfg.timing);
    SuiteResult s = suite("base_point");
    const double r1 = cs.exhaustion().radius(1);
    s.checked = 2;
    slack(s, std::abs(cs.g(cs.x0()) - r1) - 4 * std::numeric_limits<double>::epsilon() * r1);
    slack(s, std::abs(cs.h(cs.x0())));
    rep.suites.push_back(finish(std::move(s), w));
  }

  add_nets(rep, t, cfg.epsilons.empty() ? default_epsilons(t) : cfg.epsilons, n, cfg.seed, cfg.timing);

  {
    Stopwatch w(cfg.timing);
    SuiteResult s = suite("escape_convergence");
    const std::size_t rays = space.branches.empty() ? 1 : space.branches.size();
    for (std::size_t b = 0; b < rays; ++b) {
      std::vector<Point> seq;
      seq.reserve(10000);
      for (int m = 1; m <= 10000; ++m) {
        if (space.branches.empty()) {
          std::vector<double> c(static_cast<std::size_t>(space.dimension), 0.0);
          c[0] = m;
          seq.emplace_back(std::move(c));
        } else {
          seq.push_back(space.on_branch(static_cast<int>(b), m));
        }
      }
      const EscapeReport er = escape_convergence_check(cs, seq);
      ++s.checked;
      if (!er.converges_to_x0) {
        ++s.violations;
        s.max_slack = std::max(s.max_slack, er.delta_to_x0.back());
        s.details.push_back("ray " + std::to_string(b) + " does not approach x0 under delta");
      }
    }
    rep.suites.push_back(finish(std::move(s), w));
  }

  if (t.map) {
    const MapInstance& m = *t.map;
    {
      Stopwatch w(cfg.timing);
      const auto per = std::max<std::size_t>(2, n / m.forms.size());
      const BijectionReport b = check_bijection(m, sample_domain(m, per, cfg.seed));
      SuiteResult s = suite("bijection");
      s.checked = b.checked;
      s.violations = b.failures;
      if (b.failures) s.max_slack = b.max_error;
      rep.suites.push_back(finish(std::move(s), w));
    }
    {
      Stopwatch w(cfg.timing);
      const ContinuityReport c = check_continuity(m, 1e-2);
      SuiteResult s = suite("continuity");
      s.checked = c.steps;
      s.violations = c.failures;
      if (c.failures) s.max_slack = c.max_ratio - 1.0;
      rep.suites.push_back(finish(std::move(s), w));
    }
  }
}

double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto one_side = [](const std::vector<Point>& p, const std::vector<Point>& q) {
    double worst = 0.0;
    for (const Point& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& y : q) best = std::min(best, euclidean(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

void stratify_suites(RunReport& rep, const Target& t, std::size_t samples, double tol, const RunConfig& cfg) {
  const MapInstance& m = *t.map;
  StratifyOptions opt;
  opt.max_depth = cfg.depth;
  opt.tol = tol;
  opt.samples_per_branch = samples;
  opt.seed = cfg.seed;

  Stopwatch w(cfg.timing);
  SuiteResult s = suite("stratification");
  Stratification strat;
  try {
    strat = stratify(m, opt);
  } catch (const ResolutionError& e) {
    s.violations = 1;
    s.details.push_back(e.what());
    rep.suites.push_back(finish(std::move(s), w));
    return;
  }

  // Chain invariants: Y_{k+1} inside Y_k, Z_k and Y_{k+1} disjoint.
  for (const StratumLevel& level : strat.levels) {
    detail::PointGrid y(tol), next(tol);
    for (std::size_t i = 0; i < level.y_samples.size(); ++i) y.insert(level.y_samples[i], i);
    for (std::size_t i = 0; i < level.next_y_samples.size(); ++i) next.insert(level.next_y_samples[i], i);
    for (const Point& p : level.next_y_samples) {
      ++s.checked;
      if (!y.any_within(p, tol)) slack(s, tol);
    }
    for (const Point& z : level.z_samples) {
      ++s.checked;
      if (next.any_within(z, kPointEqualityTolerance)) slack(s, kPointEqualityTolerance);
    }

    LevelRow row;
    row.k = level.k;
    row.x_samples = level.x_samples.size();
    row.y_samples = level.y_samples.size();
    row.z_samples = level.z_samples.size();
    row.next_samples = level.next_y_samples.size();
    row.escape_branches = level.escape_branches;
    for (const Point& p : level.limit_points) row.limit_points.push_back(rounded(p.coords));
    for (const Cluster& c : cluster_points(level.next_y_samples, tol))
      row.next_clusters.push_back(rounded(c.centroid.coords));
    rep.levels.push_back(std::move(row));
  }
  rep.terminated = strat.terminated;
  s.details.push_back(std::to_string(strat.levels.size()) + " levels, " +
                      (strat.terminated ? "terminated" : "depth cap reached"));
  rep.suites.push_back(finish(std::move(s), w));

  if (m.known_x1) {
    Stopwatch w1(cfg.timing);
    SuiteResult x1 = suite("x1_match");
    const auto& est = strat.levels.front().next_x_samples;
    x1.checked = est.size() + m.known_x1->size();
    if (est.empty() != m.known_x1->empty()) {
      x1.violations = 1;
      x1.details.push_back("estimate and analytic X_1 disagree on emptiness");
    } else if (!est.empty()) {
      slack(x1, hausdorff(est, *m.known_x1) - tol);
    }
    rep.suites.push_back(finish(std::move(x1), w1));
  }

  {
    Stopwatch w2(cfg.timing);
    const ConsistencyReport c = check_properness_consistency(m, strat, 200, cfg.seed);
    SuiteResult s2 = suite("properness_consistency");
    s2.checked = c.points;
    s2.violations = c.points - c.agreements;
    if (c.inconclusive) s2.details.push_back(std::to_string(c.inconclusive) + " inconclusive");
    rep.consistency_agreement = round12(c.agreement());
    rep.suites.push_back(finish(std::move(s2), w2));
  }
}

void certificate_suite(RunReport& rep, const Target& t, const RunConfig& cfg) {
  const MapInstance& m = *t.map;
  if (!m.known_x1 || m.known_x1->size() != 1 || !same_point(m.known_x1->front(), t.cspace->x0())) return;
  Stopwatch w(cfg.timing);
  const CertificateReport c = homeo_certificate(m, *t.cspace, lollipop_test_sequences(25, cfg.seed));
  SuiteResult s = suite("certificate");
  for (std::size_t i = 0; i < c.per_sequence.size(); ++i) {
    const SequenceVerdict& v = c.per_sequence[i];
    ++s.checked;
    if (!v.agree) {
      ++s.violations;
      s.details.push_back("sequence " + std::to_string(i) + " (" + v.family + "): delta " +
                          std::string(to_string(v.delta_verdict)) + ", image " +
                          std::string(to_string(v.image_verdict)));
    }
  }
  rep.certificate_agreement = round12(c.agreement);
  rep.suites.push_back(finish(std::move(s), w));
}

RunReport start(const RunConfig& cfg, Command expected, const Target& t) {
  validate_config(cfg);
  if (cfg.command != expected) throw ConfigError("config is for '" + std::string(to_string(cfg.command)) + "'");
  RunReport rep;
  rep.config = cfg;
  rep.target_kind = t.is_map() ? "map" : "space";
  return rep;
}

}  // namespace

RunReport run_verify(const RunConfig& cfg) {
  validate_config(cfg);
  const Target t = resolve_target(cfg.target);
  RunReport rep = start(cfg, Command::verify, t);
  verify_suites(rep, t, cfg);
  return rep;
}

RunReport run_compactify(const RunConfig& cfg) {
  validate_config(cfg);
  const Target t = resolve_target(cfg.target);
  RunReport rep = start(cfg, Command::compactify, t);
  const CompactifiedSpace& cs = *t.cspace;

  std::vector<Point> pts;
  for (const auto& c : cfg.points) pts.push_back(tagged(t.space, c));
  for (const Point& p : pts)
    rep.probes.push_back({rounded(p.coords), round12(cs.g(p)), round12(cs.h(p)), round12(cs.delta(p, cs.x0()))});
  for (const Point& p : pts) {
    std::vector<double> row;
    for (const Point& q : pts) row.push_back(round12(cs.delta(p, q)));
    rep.delta_matrix.push_back(std::move(row));
  }

  {
    Stopwatch w(cfg.timing);
    SuiteResult s = suite("base_point");
    const double r1 = cs.exhaustion().radius(1);
    s.checked = 2;
    slack(s, std::abs(cs.g(cs.x0()) - r1) - 4 * std::numeric_limits<double>::epsilon() * r1);
    slack(s, std::abs(cs.h(cs.x0())));
    rep.suites.push_back(finish(std::move(s), w));
  }
  add_nets(rep, t, cfg.epsilons.empty() ? std::vector<double>{0.5, 0.1} : cfg.epsilons, cfg.samples.value_or(1000),
           cfg.seed, cfg.timing);
  return rep;
}

RunReport run_stratify(const RunConfig& cfg) {
  validate_config(cfg);
  const Target t = resolve_target(cfg.target);
  if (!t.map) throw ConfigError("'" + cfg.target + "' is a space, stratify needs a map");
  RunReport rep = start(cfg, Command::stratify, t);
  stratify_suites(rep, t, cfg.samples.value_or(10000), cfg.tolerance.value_or(1e-2), cfg);
  return rep;
}

RunReport run_report(const RunConfig& cfg) {
  validate_config(cfg);
  const Target t = resolve_target(cfg.target);
  RunReport rep = start(cfg, Command::report, t);
  verify_suites(rep, t, cfg);
  if (t.map) {
    stratify_suites(rep, t, 10000, 1e-2, cfg);
    certificate_suite(rep, t, cfg);
  }
  return rep;
}

RunReport run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::verify: return run_verify(cfg);
    case Command::compactify: return run_compactify(cfg);
    case Command::stratify: return run_stratify(cfg);
    case Command::report: return run_report(cfg);
  }
  throw ConfigError("no command");
}

// ---- serialization

namespace {

json config_json(const RunConfig& c) {
  json j;
  j["command"] = to_string(c.command);
  j["target"] = c.target;
  j["seed"] = c.seed;
  j["samples"] = c.samples ? json(*c.samples) : json(nullptr);
  j["tolerance"] = c.tolerance ? json(*c.tolerance) : json(nullptr);
  j["epsilons"] = c.epsilons;
  j["depth"] = c.depth;
  j["format"] = to_string(c.format);
  j["output_path"] = c.output_path ? json(*c.output_path) : json(nullptr);
  j["points"] = c.points;
  j["timing"] = c.timing;
  return j;
}

RunConfig config_from(const json& j) {
  RunConfig c;
  c.command = parse_command(j.at("command").get<std::string>());
  c.target = j.at("target").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  if (!j.at("samples").is_null()) c.samples = j["samples"].get<std::size_t>();
  if (!j.at("tolerance").is_null()) c.tolerance = j["tolerance"].get<double>();
  c.epsilons = j.at("epsilons").get<std::vector<double>>();
  c.depth = j.at("depth").get<int>();
  c.format = parse_format(j.at("format").get<std::string>());
  if (!j.at("output_path").is_null()) c.output_path = j["output_path"].get<std::string>();
  c.points = j.at("points").get<std::vector<std::vector<double>>>();
  c.timing = j.at("timing").get<bool>();
  return c;
}

}  // namespace

std::string to_json(const RunReport& r) {
  json j;
  j["config"] = config_json(r.config);
  j["target_kind"] = r.target_kind;
  j["verdict"] = r.pass() ? "pass" : "fail";
  json suites = json::array();
  for (const SuiteResult& s : r.suites) {
    suites.push_back({{"name", s.name},
                      {"checked", s.checked},
                      {"violations", s.violations},
                      {"max_slack", s.max_slack},
                      {"wall_ms", s.wall_ms},
                      {"verdict", s.pass ? "pass" : "fail"},
                      {"details", s.details}});
  }
  j["suites"] = suites;
  json nets = json::array();
  for (const NetRow& n : r.nets) {
    nets.push_back({{"epsilon", n.epsilon},
                    {"n_eps", n.n_eps},
                    {"net_size", n.net_size},
                    {"grid_size", n.grid_size},
                    {"probes", n.probes},
                    {"uncovered", n.uncovered},
                    {"worst", n.worst}});
  }
  j["nets"] = nets;
  json probes = json::array();
  for (const ProbeRow& p : r.probes)
    probes.push_back({{"point", p.point}, {"g", p.g}, {"h", p.h}, {"delta_to_x0", p.delta_to_x0}});
  j["probes"] = probes;
  j["delta_matrix"] = r.delta_matrix;
  json levels = json::array();
  for (const LevelRow& l : r.levels) {
    levels.push_back({{"k", l.k},
                      {"x_samples", l.x_samples},
                      {"y_samples", l.y_samples},
                      {"z_samples", l.z_samples},
                      {"next_samples", l.next_samples},
                      {"escape_branches", l.escape_branches},
                      {"limit_points", l.limit_points},
                      {"next_clusters", l.next_clusters}});
  }
  j["levels"] = levels;
  j["terminated"] = r.terminated ? json(*r.terminated) : json(nullptr);
  j["consistency_agreement"] = r.consistency_agreement ? json(*r.consistency_agreement) : json(nullptr);
  j["certificate_agreement"] = r.certificate_agreement ? json(*r.certificate_agreement) : json(nullptr);
  return j.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunReport r;
    r.config = config_from(j.at("config"));
    r.target_kind = j.at("target_kind").get<std::string>();
    for (const auto& s : j.at("suites")) {
      SuiteResult x;
      x.name = s.at("name").get<std::string>();
      x.checked = s.at("checked").get<std::size_t>();
      x.violations = s.at("violations").get<std::size_t>();
      x.max_slack = s.at("max_slack").get<double>();
      x.wall_ms = s.at("wall_ms").get<double>();
      x.pass = s.at("verdict").get<std::string>() == "pass";
      x.details = s.at("details").get<std::vector<std::string>>();
      r.suites.push_back(std::move(x));
    }
    for (const auto& n : j.at("nets")) {
      r.nets.push_back({n.at("epsilon").get<double>(), n.at("n_eps").get<std::size_t>(),
                        n.at("net_size").get<std::size_t>(), n.at("grid_size").get<std::size_t>(),
                        n.at("probes").get<std::size_t>(), n.at("uncovered").get<std::size_t>(),
                        n.at("worst").get<double>()});
    }
    for (const auto& p : j.at("probes")) {
      r.probes.push_back({p.at("point").get<std::vector<double>>(), p.at("g").get<double>(), p.at("h").get<double>(),
                          p.at("delta_to_x0").get<double>()});
    }
    r.delta_matrix = j.at("delta_matrix").get<std::vector<std::vector<double>>>();
    for (const auto& l : j.at("levels")) {
      LevelRow x;
      x.k = l.at("k").get<int>();
      x.x_samples = l.at("x_samples").get<std::size_t>();
      x.y_samples = l.at("y_samples").get<std::size_t>();
      x.z_samples = l.at("z_samples").get<std::size_t>();
      x.next_samples = l.at("next_samples").get<std::size_t>();
      x.escape_branches = l.at("escape_branches").get<std::vector<int>>();
      x.limit_points = l.at("limit_points").get<std::vector<std::vector<double>>>();
      x.next_clusters = l.at("next_clusters").get<std::vector<std::vector<double>>>();
      r.levels.push_back(std::move(x));
    }
    if (!j.at("terminated").is_null()) r.terminated = j["terminated"].get<bool>();
    if (!j.at("consistency_agreement").is_null()) r.consistency_agreement = j["consistency_agreement"].get<double>();
    if (!j.at("certificate_agreement").is_null()) r.certificate_agreement = j["certificate_agreement"].get<double>();
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("not a run report: ") + e.what());
  }
}

std::string to_csv(const RunReport& r) {
  std::ostringstream out;
  out << "suite,checked,violations,max_slack,wall_ms,verdict\n";
  char num[40];
  for (const SuiteResult& s : r.suites) {
    out << s.name << ',' << s.checked << ',' << s.violations << ',';
    std::snprintf(num, sizeof num, "%.12g", s.max_slack);
    out << num << ',';
    std::snprintf(num, sizeof num, "%.12g", s.wall_ms);
    out << num << ',' << (s.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

void emit_report(const RunReport& r, std::ostream& fallback) {
  const std::string text = r.config.format == OutputFormat::json ? to_json(r) : to_csv(r);
  if (!r.config.output_path) {
    fallback << text;
    return;
  }
  std::ofstream out(*r.config.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + *r.config.output_path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("error while writing '" + *r.config.output_path + "'");
}

}  // namespace lusin
