#include "lusin/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lusin {

Point RayBranch::at(double s, std::optional<int> tag) const {
  std::vector<double> c(origin.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = origin[i] + s * direction[i];
  return Point(std::move(c), tag);
}

std::optional<RayLocation> SpaceDescriptor::locate(const Point& p) const {
  constexpr double kOnRay = 1e-9;
  if (p.branch && *p.branch >= 0 && *p.branch < static_cast<int>(branches.size())) {
    const RayBranch& b = branches[static_cast<std::size_t>(*p.branch)];
    double s = 0.0;
    for (std::size_t i = 0; i < b.origin.size() && i < p.coords.size(); ++i)
      s += (p.coords[i] - b.origin[i]) * b.direction[i];
    if (s >= -kOnRay && euclidean(p, b.at(std::max(s, 0.0))) <= kOnRay * (1.0 + std::abs(s)))
      return RayLocation{*p.branch, std::max(s, 0.0)};
  }
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const RayBranch& b = branches[k];
    if (b.origin.size() != p.coords.size()) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < b.origin.size(); ++i) s += (p.coords[i] - b.origin[i]) * b.direction[i];
    if (s < -kOnRay) continue;
    s = std::max(s, 0.0);
    if (euclidean(p, b.at(s)) <= kOnRay * (1.0 + s))
      return RayLocation{static_cast<int>(k), s};
  }
  return std::nullopt;
}

double SpaceDescriptor::ray_parameter(const Point& p) const {
  auto loc = locate(p);
  if (!loc) throw DomainError(name + ": point " + to_string(p) + " lies on no ray");
  return loc->parameter;
}

Point SpaceDescriptor::on_branch(int branch, double s) const {
  if (branch < 0 || branch >= static_cast<int>(branches.size()))
    throw DomainError(name + ": no branch " + std::to_string(branch));
  if (!(s >= 0.0) || !std::isfinite(s)) throw DomainError(name + ": ray parameter must be finite and >= 0");
  return branches[static_cast<std::size_t>(branch)].at(s, disjoint_branches ? std::optional<int>(branch)
                                                                             : std::nullopt);
}

double dist(const SpaceDescriptor& space, const Point& x, const Point& y) {
  if (!space.contains(x)) throw DomainError(space.name + ": " + to_string(x) + " is not a member");
  if (!space.contains(y)) throw DomainError(space.name + ": " + to_string(y) + " is not a member");
  return space.distance(x, y);
}

namespace {

class ViolationLog {
 public:
  explicit ViolationLog(AxiomReport& report) : report_(report) {}

  void add(std::vector<Point> pts, const char* axiom, double slack) {
    ++report_.violation_count;
    report_.max_slack = std::max(report_.max_slack, slack);
    auto& v = report_.violations;
    if (v.size() < AxiomReport::kMaxRecordedViolations) {
      v.push_back({std::move(pts), axiom, slack});
      return;
    }
    auto weakest = std::min_element(v.begin(), v.end(),
                                     [](const auto& a, const auto& b) { return a.slack < b.slack; });
    if (weakest->slack < slack) *weakest = {std::move(pts), axiom, slack};
  }

  void finish() {
    std::stable_sort(report_.violations.begin(), report_.violations.end(),
                     [](const auto& a, const auto& b) { return a.slack > b.slack; });
  }

 private:
  AxiomReport& report_;
};

double checked_eval(const DistanceOracle& distance, const Point& a, const Point& b, AxiomReport& report,
                    ViolationLog& log) {
  const double d = distance(a, b);
  if (std::isnan(d) || d < 0.0) {
    log.finish();
    throw OracleError("distance oracle returned " + std::to_string(d) + " for " + to_string(a) + ", " +
                          to_string(b),
                      report);
  }
  return d;
}

void check_pair(const Point& a, const Point& b, double dab, double dba, double tolerance, ViolationLog& log) {
  if (std::abs(dab - dba) > tolerance) log.add({a, b}, "symmetry", std::abs(dab - dba));
  if (same_point(a, b)) {
    if (dab > tolerance) log.add({a, b}, "identity", dab);
  } else if (dab == 0.0) {
    double gap = 0.0;
    for (std::size_t i = 0; i < a.coords.size() && i < b.coords.size(); ++i)
      gap = std::max(gap, std::abs(a.coords[i] - b.coords[i]));
    log.add({a, b}, "identity", gap);
  }
}

}  // namespace

AxiomReport check_metric_axioms(const DistanceOracle& distance, std::span<const Point> samples,
                                double tolerance) {
  if (samples.empty()) throw ParameterError("check_metric_axioms: empty sample set");
  if (!(tolerance >= 0.0)) throw ParameterError("check_metric_axioms: tolerance must be >= 0");

  AxiomReport report;
  ViolationLog log(report);
  const std::size_t n = samples.size();
  // row-major D[i*n + j] = d(x_i, x_j); T is its transpose so both operands of
  // the triangle scan are contiguous.
  std::vector<double> D(n * n), T(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double dij = checked_eval(distance, samples[i], samples[j], report, log);
      const double dji = i == j ? dij : checked_eval(distance, samples[j], samples[i], report, log);
      D[i * n + j] = dij;
      D[j * n + i] = dji;
      T[j * n + i] = dij;
      T[i * n + j] = dji;
      ++report.pairs_checked;
      check_pair(samples[i], samples[j], dij, dji, tolerance, log);
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const double* row_i = &D[i * n];
    for (std::size_t j = 0; j < n; ++j) {
      const double* col_j = &T[j * n];
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < n; ++k) best = std::min(best, row_i[k] + col_j[k]);
      if (row_i[j] - best <= tolerance) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const double slack = row_i[j] - (row_i[k] + col_j[k]);
        if (slack > tolerance) log.add({samples[i], samples[j], samples[k]}, "triangle", slack);
      }
    }
  }
  report.triples_checked = n * n * n;
  log.finish();
  return report;
}

AxiomReport check_metric_triples(const DistanceOracle& distance,
                                 std::span<const std::array<Point, 3>> triples, double tolerance) {
  if (triples.empty()) throw ParameterError("check_metric_triples: no triples");
  if (!(tolerance >= 0.0)) throw ParameterError("check_metric_triples: tolerance must be >= 0");

  AxiomReport report;
  ViolationLog log(report);
  for (const auto& t : triples) {
    double d[3][3];
    for (int a = 0; a < 3; ++a) {
      d[a][a] = checked_eval(distance, t[a], t[a], report, log);
      for (int b = 0; b < 3; ++b)
        if (a != b) d[a][b] = checked_eval(distance, t[a], t[b], report, log);
    }
    for (int a = 0; a < 3; ++a) {
      if (d[a][a] > tolerance) log.add({t[a], t[a]}, "identity", d[a][a]);
      for (int b = a + 1; b < 3; ++b) {
        ++report.pairs_checked;
        check_pair(t[a], t[b], d[a][b], d[b][a], tolerance, log);
      }
    }
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) {
        if (x == y) continue;
        const int z = 3 - x - y;
        ++report.triples_checked;
        const double slack = d[x][y] - (d[x][z] + d[z][y]);
        if (slack > tolerance) log.add({t[x], t[y], t[z]}, "triangle", slack);
      }
    }
  }
  log.finish();
  return report;
}

std::vector<Point> epsilon_net(const DistanceOracle& distance, std::span<const Point> samples,
                               double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon_net: epsilon must be > 0");
  if (samples.empty()) throw ParameterError("epsilon_net: empty sample set");

  std::vector<double> gap(samples.size(), std::numeric_limits<double>::infinity());
  std::vector<Point> net;
  std::size_t next = 0;
  for (;;) {
    net.push_back(samples[next]);
    const Point& center = samples[next];
    double worst = -1.0;
    std::size_t worst_at = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      gap[i] = std::min(gap[i], distance(samples[i], center));
      if (gap[i] > worst) {
        worst = gap[i];
        worst_at = i;
      }
    }
    if (worst < epsilon) break;
    next = worst_at;
  }
  return net;
}

std::vector<Point> epsilon_net(const SpaceDescriptor& space, std::span<const Point> samples,
                               double epsilon) {
  for (const Point& p : samples)
    if (!space.contains(p)) throw DomainError(space.name + ": net sample " + to_string(p) + " is not a member");
  return epsilon_net(space.distance, samples, epsilon);
}

std::string_view to_string(CauchyVerdict v) {
  switch (v) {
    case CauchyVerdict::cauchy: return "cauchy";
    case CauchyVerdict::divergent: return "divergent";
    case CauchyVerdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

double window_diameter(std::span<const Point> w, const DistanceOracle& distance) {
  double diam = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) diam = std::max(diam, distance(w[i], w[j]));
  return diam;
}

}  // namespace

CauchyVerdict cauchy_classify(std::span<const Point> sequence, const DistanceOracle& distance,
                              std::size_t window, double tolerance) {
  if (window == 0) throw ParameterError("cauchy_classify: window must be positive");
  if (!(tolerance > 0.0)) throw ParameterError("cauchy_classify: tolerance must be positive");
  if (sequence.size() <= 2 * window)
    throw ParameterError("cauchy_classify: sequence must be longer than twice the window");

  const std::size_t n = sequence.size();
  const double last = window_diameter(sequence.subspan(n - window, window), distance);
  if (last < tolerance) return CauchyVerdict::cauchy;
  const double before = window_diameter(sequence.subspan(n - 2 * window, window), distance);
  return before >= tolerance ? CauchyVerdict::divergent : CauchyVerdict::undetermined;
}

}  // namespace lusin
