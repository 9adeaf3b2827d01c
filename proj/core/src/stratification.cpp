#include "lusin/stratification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "point_grid.hpp"

namespace lusin {

using detail::PointGrid;

std::vector<Point> LimitSet::points() const {
  std::vector<Point> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.centroid);
  return out;
}

LimitSet escape_limit_set(const MapInstance& map, const EscapeSampler& sampler, double tol,
                          const EscapeFilter& filter) {
  if (!(tol > 0.0)) throw ParameterError("escape_limit_set: tol must be > 0");

  struct Acc {
    std::vector<double> sum;
    std::size_t members = 0;
    std::set<int> steps;
  };
  std::vector<Acc> accs;
  PointGrid seeds(tol);
  LimitSet out;

  for (const EscapePoint& e : escape_points(map, sampler, /*tail_only=*/true)) {
    if (filter && !filter(e)) continue;
    ++out.tail_images;
    std::size_t id = 0;
    if (auto hit = seeds.nearest_within(e.image, 0.5 * tol)) {
      id = hit->first;
    } else {
      id = accs.size();
      accs.push_back({std::vector<double>(e.image.dimension(), 0.0), 0, {}});
      seeds.insert(e.image, id);
    }
    Acc& a = accs[id];
    for (std::size_t i = 0; i < a.sum.size(); ++i) a.sum[i] += e.image.coords[i];
    ++a.members;
    a.steps.insert(e.step);
  }

  for (const Acc& a : accs) {
    if (a.steps.size() < 2) {
      ++out.rejected_clusters;
      continue;
    }
    std::vector<double> c(a.sum.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.sum[i] / static_cast<double>(a.members);
    out.clusters.push_back({Point(std::move(c)), a.members, a.steps.size()});
  }
  return out;
}

namespace {

PointGrid index_points(std::span<const Point> pts, double cell) {
  PointGrid g(cell);
  for (std::size_t i = 0; i < pts.size(); ++i) g.insert(pts[i], i);
  return g;
}

}  // namespace

DiscontinuityEstimate discontinuity_set(const MapInstance& map, std::span<const Point> limit_points,
                                        std::span<const Point> domain_samples, double tol) {
  if (!(tol > 0.0)) throw ParameterError("discontinuity_set: tol must be > 0");
  DiscontinuityEstimate out;
  if (limit_points.empty()) return out;
  const PointGrid limits = index_points(limit_points, tol);
  for (std::size_t i = 0; i < domain_samples.size(); ++i) {
    Point y = map.forward(domain_samples[i]);
    if (limits.any_within(y, tol)) {
      out.indices.push_back(i);
      out.x1_samples.push_back(domain_samples[i]);
      out.y1_samples.push_back(std::move(y));
    }
  }
  return out;
}

std::vector<double> default_radius_schedule(double tol) { return {16 * tol, 8 * tol, 4 * tol, 2 * tol}; }

struct PropernessProbe::Impl {
  explicit Impl(double cell) : grid(cell) {}
  PointGrid grid;
  std::vector<double> parameter;
};

PropernessProbe::PropernessProbe(const MapInstance& map, std::span<const Point> domain_samples,
                                 const EscapeSampler& sampler, double cell)
    : impl_(std::make_unique<Impl>(cell)) {
  if (!(cell > 0.0)) throw ParameterError("PropernessProbe: cell must be > 0");
  for (const Point& x : domain_samples) {
    impl_->grid.insert(map.forward(x), impl_->parameter.size());
    impl_->parameter.push_back(map.domain.ray_parameter(x));
  }
  for (EscapePoint& e : escape_points(map, sampler, /*tail_only=*/false)) {
    impl_->grid.insert(e.image, impl_->parameter.size());
    impl_->parameter.push_back(e.parameter);
  }
}

PropernessProbe::~PropernessProbe() = default;
PropernessProbe::PropernessProbe(PropernessProbe&&) noexcept = default;
PropernessProbe& PropernessProbe::operator=(PropernessProbe&&) noexcept = default;

bool PropernessProbe::test(const Point& y, std::span<const double> radius_schedule, double bound) const {
  if (radius_schedule.empty()) throw ParameterError("properness test: empty radius schedule");
  if (!(bound > 0.0)) throw ParameterError("properness test: bound must be > 0");
  for (std::size_t i = 1; i < radius_schedule.size(); ++i)
    if (!(radius_schedule[i] < radius_schedule[i - 1]) || !(radius_schedule[i] > 0.0))
      throw ParameterError("properness test: radius schedule must be positive and decreasing");

  bool any_capture = false;
  // smallest radius first: it is the one most likely to exclude escaping points
  for (auto it = radius_schedule.rbegin(); it != radius_schedule.rend(); ++it) {
    bool captured = false, escaped = false;
    impl_->grid.for_each_within(y, *it, [&](std::size_t id, double) {
      captured = true;
      if (impl_->parameter[id] > bound) escaped = true;
    });
    if (captured && !escaped) return true;
    any_capture = any_capture || captured;
  }
  if (!any_capture) throw InconclusiveError("properness test: no sample image near " + to_string(y) + " at any radius");
  return false;
}

bool proper_neighborhood_test(const PropernessProbe& probe, const Point& y, std::span<const double> radius_schedule,
                              double bound) {
  return probe.test(y, radius_schedule, bound);
}

Stratification stratify(const MapInstance& map, const StratifyOptions& opt) {
  validate_map(map);
  if (opt.max_depth < 1) throw ParameterError("stratify: max_depth must be >= 1");
  if (!(opt.tol > 0.0)) throw ParameterError("stratify: tol must be > 0");

  const std::vector<Point> samples = sample_domain(map, opt.samples_per_branch, opt.seed);
  std::vector<Point> images;
  std::vector<RayLocation> where;
  images.reserve(samples.size());
  where.reserve(samples.size());
  std::vector<double> extent(map.forms.size(), 0.0);
  for (const Point& x : samples) {
    images.push_back(map.forward(x));
    where.push_back(*map.domain.locate(x));
    auto& e = extent[static_cast<std::size_t>(where.back().branch)];
    e = std::max(e, where.back().parameter);
  }

  const EscapeSampler all = EscapeSampler::all_branches(map);
  Stratification strat;
  strat.tol = opt.tol;
  std::vector<std::size_t> current(samples.size());
  std::iota(current.begin(), current.end(), std::size_t{0});

  for (int k = 0;; ++k) {
    if (current.size() < opt.min_level_samples)
      throw ResolutionError("stratify: level " + std::to_string(k) + " has only " + std::to_string(current.size()) +
                                " samples",
                            k);
    StratumLevel level;
    level.k = k;
    for (std::size_t i : current) {
      level.x_samples.push_back(samples[i]);
      level.y_samples.push_back(images[i]);
    }

    EscapeSampler sampler = all;
    EscapeFilter filter;
    std::shared_ptr<PointGrid> level_grid;
    if (k > 0) {
      std::vector<double> reach(map.forms.size(), -1.0);
      for (std::size_t i : current) {
        auto& r = reach[static_cast<std::size_t>(where[i].branch)];
        r = std::max(r, where[i].parameter);
      }
      sampler.branch_ids.clear();
      for (std::size_t b = 0; b < reach.size(); ++b)
        if (reach[b] >= opt.unbounded_fraction * extent[b] && extent[b] > 0.0)
          sampler.branch_ids.push_back(static_cast<int>(b));
      level_grid = std::make_shared<PointGrid>(index_points(level.y_samples, opt.tol));
      filter = [level_grid, tol = opt.tol](const EscapePoint& e) { return level_grid->any_within(e.image, tol); };
    }
    level.escape_branches = sampler.branch_ids;

    LimitSet limits;
    if (!sampler.branch_ids.empty()) limits = escape_limit_set(map, sampler, opt.tol, filter);
    level.limit_points = limits.points();

    std::vector<std::size_t> next;
    if (!limits.empty()) {
      const PointGrid lg = index_points(level.limit_points, opt.tol);
      for (std::size_t i : current)
        if (lg.any_within(images[i], opt.tol)) next.push_back(i);
    }
    if (next.size() < opt.empty_below) next.clear();

    std::vector<char> in_next(samples.size(), 0);
    for (std::size_t i : next) {
      in_next[i] = 1;
      level.next_x_samples.push_back(samples[i]);
      level.next_y_samples.push_back(images[i]);
    }
    for (std::size_t i : current)
      if (!in_next[i]) level.z_samples.push_back(images[i]);

    strat.levels.push_back(std::move(level));
    if (next.empty()) {
      strat.terminated = true;
      break;
    }
    if (k + 1 >= opt.max_depth) {
      strat.terminated = false;
      break;
    }
    current = std::move(next);
  }
  return strat;
}

std::vector<Cluster> cluster_points(std::span<const Point> points, double tol) {
  if (!(tol > 0.0)) throw ParameterError("cluster_points: tol must be > 0");
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  const PointGrid g = index_points(points, tol);
  for (std::size_t i = 0; i < n; ++i) {
    g.for_each_within(points[i], tol, [&](std::size_t j, double) {
      const std::size_t a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    });
  }
  std::map<std::size_t, std::size_t> slot;
  std::vector<Cluster> out;
  std::vector<std::vector<double>> sums;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    auto [it, fresh] = slot.emplace(root, out.size());
    if (fresh) {
      out.push_back({});
      sums.emplace_back(points[i].dimension(), 0.0);
    }
    auto& s = sums[it->second];
    for (std::size_t d = 0; d < s.size(); ++d) s[d] += points[i].coords[d];
    ++out[it->second].members;
  }
  for (std::size_t c = 0; c < out.size(); ++c) {
    for (double& v : sums[c]) v /= static_cast<double>(out[c].members);
    out[c].centroid = Point(std::move(sums[c]));
    out[c].distinct_steps = 0;
  }
  return out;
}

StratumMetric make_stratum_metric(const MapInstance& map, const Stratification& strat, int k) {
  if (k < 0 || k >= static_cast<int>(strat.levels.size()))
    throw ParameterError("make_stratum_metric: no level " + std::to_string(k));
  return StratumMetric{k, strat.levels[static_cast<std::size_t>(k)].next_x_samples, map.domain.distance};
}

double stratum_kappa(const StratumMetric& sm, const MapInstance& map, const Point& y) {
  if (sm.boundary_samples.empty()) return 0.0;
  const Point x = map.inverse(y);
  double nearest = std::numeric_limits<double>::infinity();
  for (const Point& b : sm.boundary_samples) nearest = std::min(nearest, sm.base_distance(x, b));
  if (nearest <= 1e-12)
    throw BoundaryContactError("stratum metric: " + to_string(y) + " touches X_" + std::to_string(sm.level + 1));
  return 1.0 / nearest;
}

double stratum_metric_eval(const StratumMetric& sm, const MapInstance& map, const Point& y, const Point& y2) {
  const double kappa = stratum_kappa(sm, map, y);
  const double kappa2 = stratum_kappa(sm, map, y2);
  return sm.base_distance(map.inverse(y), map.inverse(y2)) + std::abs(kappa - kappa2);
}

DistanceOracle stratum_metric_oracle(StratumMetric sm, const MapInstance& map) {
  struct Entry {
    Point x;
    double kappa;
  };
  auto memo = std::make_shared<std::map<std::vector<double>, Entry>>();
  auto shared = std::make_shared<const StratumMetric>(std::move(sm));
  return [shared, map, memo](const Point& y, const Point& y2) {
    auto lookup = [&](const Point& p) -> const Entry& {
      if (auto it = memo->find(p.coords); it != memo->end()) return it->second;
      return memo->emplace(p.coords, Entry{map.inverse(p), stratum_kappa(*shared, map, p)}).first->second;
    };
    const Entry& a = lookup(y);
    const Entry& b = lookup(y2);
    return shared->base_distance(a.x, b.x) + std::abs(a.kappa - b.kappa);
  };
}

Decomposition decompose_open_set(std::span<const Point> a_samples, const Stratification& strat) {
  std::vector<std::span<const Point>> strata;
  for (const auto& l : strat.levels) strata.emplace_back(l.z_samples);
  if (!strat.terminated && !strat.levels.empty()) strata.emplace_back(strat.levels.back().next_y_samples);

  Decomposition out;
  out.parts.resize(strata.size());
  out.part_of.reserve(a_samples.size());
  for (std::size_t i = 0; i < a_samples.size(); ++i) {
    double best = std::numeric_limits<double>::infinity(), second = best;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < strata.size(); ++k) {
      double d = std::numeric_limits<double>::infinity();
      for (const Point& z : strata[k]) d = std::min(d, euclidean(a_samples[i], z));
      if (d <= best) {
        second = best;
        best = d;
        best_k = k;
      } else if (d < second) {
        second = d;
      }
    }
    if (std::isfinite(second) && second - best <= 1e-12) out.ambiguous.push_back(i);
    out.part_of.push_back(best_k);
    out.parts[best_k].push_back(a_samples[i]);
  }
  return out;
}

ConsistencyReport check_properness_consistency(const MapInstance& map, const Stratification& strat,
                                               std::size_t count, std::uint64_t seed, double bound) {
  if (strat.levels.empty()) throw ParameterError("check_properness_consistency: empty stratification");
  const StratumLevel& top = strat.levels.front();
  const PropernessProbe probe(map, top.x_samples, EscapeSampler::all_branches(map), 2.0 * strat.tol);
  const PointGrid y1 = index_points(top.next_y_samples, strat.tol);
  const std::vector<double> radii = default_radius_schedule(strat.tol);

  ConsistencyReport rep;
  std::mt19937_64 rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const auto i = std::min(top.y_samples.size() - 1,
                            static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(top.y_samples.size())));
    const Point& y = top.y_samples[i];
    const bool far_from_y1 = !y1.any_within(y, strat.tol);
    ++rep.points;
    try {
      if (probe.test(y, radii, bound) == far_from_y1) ++rep.agreements;
    } catch (const InconclusiveError&) {
      ++rep.inconclusive;
    }
  }
  return rep;
}

}  // namespace lusin
