#include "lusin/compactification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <type_traits>

#include "lusin/spaces.hpp"
#include "point_grid.hpp"

namespace lusin {

CompactifiedSpace::CompactifiedSpace(SpaceDescriptor base, Point x0, Exhaustion exhaustion)
    : base_(std::make_shared<const SpaceDescriptor>(std::move(base))),
      x0_(std::move(x0)),
      exhaustion_(std::make_shared<const Exhaustion>(std::move(exhaustion))) {
  if (!base_->contains(x0_)) throw DomainError(base_->name + ": x0 " + to_string(x0_) + " is not a member");
  const ExhaustionReport rep = validate_exhaustion(*exhaustion_, *base_);
  if (!rep.ok) {
    const auto& v = rep.violations.front();
    throw DescriptorError(base_->name + ": invalid exhaustion, condition (" + v.condition + ") at n = " +
                          std::to_string(v.n) + ": " + v.detail);
  }
  if (region_distance(*base_, exhaustion_->region(1), x0_) != 0.0)
    throw DescriptorError(base_->name + ": x0 must lie in K_1");
}

double CompactifiedSpace::g(const Point& x) const {
  const Exhaustion& e = *exhaustion_;
  double running = -std::numeric_limits<double>::infinity();
  // interval exhaustions only need the ray parameter, found once
  const bool intervals = std::holds_alternative<RayInterval>(e.region(1));
  const double s = intervals ? base_->ray_parameter(x) : 0.0;
  for (std::size_t n = 1; n <= e.n_max(); ++n) {
    const double r = e.radius(n);
    if (r <= running) return running;
    const double d = intervals ? std::max(0.0, s - std::get<RayInterval>(e.region(n)).upper)
                               : region_distance(*base_, e.region(n), x);
    running = std::max(running, r - d);
  }
  throw DepthExhaustedError(base_->name + ": g(" + to_string(x) + ") did not settle within n_max = " +
                                std::to_string(e.n_max()),
                            running, e.radius(e.n_max()));
}

double CompactifiedSpace::h(const Point& x) const {
  return std::min(base_->distance(x, x0_), g(x));
}

double CompactifiedSpace::delta(const Point& x, const Point& y) const {
  const double d = base_->distance(x, y);
  if (d == 0.0) return 0.0;
  return std::min(d, h(x) + h(y));
}

DistanceOracle CompactifiedSpace::delta_oracle() const {
  return [self = *this](const Point& x, const Point& y) { return self.delta(x, y); };
}

DistanceOracle CompactifiedSpace::cached_delta_oracle() const {
  using Key = std::pair<std::vector<double>, int>;
  auto memo = std::make_shared<std::map<Key, double>>();
  return [self = *this, memo](const Point& x, const Point& y) {
    const double d = self.base().distance(x, y);
    if (d == 0.0) return 0.0;
    auto h = [&](const Point& p) {
      Key k{p.coords, p.branch.value_or(-1)};
      if (auto it = memo->find(k); it != memo->end()) return it->second;
      const double v = self.h(p);
      memo->emplace(std::move(k), v);
      return v;
    };
    return std::min(d, h(x) + h(y));
  };
}

namespace {

void require_member(const CompactifiedSpace& c, const Point& x) {
  if (!c.base().contains(x)) throw DomainError(c.base().name + ": " + to_string(x) + " is not a member");
}

}  // namespace

double g_value(const CompactifiedSpace& cspace, const Point& x) {
  require_member(cspace, x);
  return cspace.g(x);
}

double h_value(const CompactifiedSpace& cspace, const Point& x) {
  require_member(cspace, x);
  return cspace.h(x);
}

double delta(const CompactifiedSpace& cspace, const Point& x, const Point& y) {
  require_member(cspace, x);
  require_member(cspace, y);
  return cspace.delta(x, y);
}

NetResult total_boundedness_net(const CompactifiedSpace& cspace, double epsilon,
                                std::span<const Point> probe_samples) {
  if (!(epsilon > 0.0)) throw ParameterError("total_boundedness_net: epsilon must be > 0");
  const Exhaustion& e = cspace.exhaustion();

  NetResult out;
  for (std::size_t n = 1; n <= e.n_max(); ++n) {
    if (e.radius(n) < epsilon) {
      out.n_eps = n;
      break;
    }
  }
  if (out.n_eps == 0)
    throw DepthExhaustedError("total_boundedness_net: no r_n below epsilon within n_max", e.radius(e.n_max()),
                              e.radius(1));

  // Grid of K_{n_eps} fine enough that a (epsilon - cover)-net of the grid is
  // a strict epsilon-net of the whole region under d, hence under delta <= d.
  const Region& region = e.region(out.n_eps);
  const double spacing = epsilon / 4.0;
  const double cover = covering_radius(cspace.base(), region, spacing);
  const double estimate = std::visit(
      [&](const auto& r) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, RayInterval>)
          return static_cast<double>(cspace.base().branches.size()) * (r.upper / spacing + 1.0);
        else
          return std::numbers::pi * std::pow(r.radius / spacing + 2.0, 2.0);
      },
      region);
  if (estimate > static_cast<double>(kMaxNetGrid))
    throw ParameterError("total_boundedness_net: K_" + std::to_string(out.n_eps) + " needs about " +
                         std::to_string(static_cast<long long>(estimate)) + " grid points at epsilon " +
                         to_string(Point{epsilon}) + "; use a larger epsilon");
  const std::vector<Point> grid = region_grid(cspace.base(), region, spacing);
  out.grid_size = grid.size();

  // leader pass: keep a grid point unless a kept one is within epsilon - cover
  const double join = epsilon - cover;
  detail::PointGrid kept(join);
  for (const Point& p : grid) {
    if (kept.any_within(p, join)) continue;
    kept.insert(p, out.net.size());
    out.net.push_back(p);
  }
  out.net.push_back(cspace.x0());

  out.probes = probe_samples.size();
  if (probe_samples.empty()) return out;
  std::vector<double> net_h;
  net_h.reserve(out.net.size());
  for (const Point& q : out.net) net_h.push_back(cspace.h(q));
  for (const Point& p : probe_samples) {
    const double hp = cspace.h(p);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.net.size(); ++i) {
      const double d = cspace.base().distance(p, out.net[i]);
      best = std::min(best, d == 0.0 ? 0.0 : std::min(d, hp + net_h[i]));
    }
    out.worst = std::max(out.worst, best);
    if (!(best < epsilon)) ++out.uncovered;
  }
  return out;
}

EscapeReport escape_convergence_check(const CompactifiedSpace& cspace, std::span<const Point> sequence,
                                      double tolerance) {
  if (sequence.empty()) throw ParameterError("escape_convergence_check: empty sequence");
  if (!(tolerance > 0.0)) throw ParameterError("escape_convergence_check: tolerance must be > 0");

  EscapeReport rep;
  rep.h_values.reserve(sequence.size());
  rep.delta_to_x0.reserve(sequence.size());
  for (const Point& x : sequence) {
    require_member(cspace, x);
    rep.h_values.push_back(cspace.h(x));
    rep.delta_to_x0.push_back(cspace.delta(x, cspace.x0()));
  }

  const std::size_t n = rep.delta_to_x0.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 4);
  bool monotone = true;
  double tail_max = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) {
    tail_max = std::max(tail_max, rep.delta_to_x0[i]);
    if (i > n - tail && rep.delta_to_x0[i] > rep.delta_to_x0[i - 1]) monotone = false;
  }
  rep.converges_to_x0 = monotone && tail_max < tolerance;
  return rep;
}

namespace compactified {

CompactifiedSpace over_rays(const SpaceDescriptor& base, std::size_t n_max) {
  if (base.branches.empty()) throw DescriptorError(base.name + ": not a ray space");
  Point x0 = base.on_branch(0, 0.0);
  return CompactifiedSpace(base, std::move(x0), Exhaustion::ray_intervals(n_max));
}

std::optional<CompactifiedSpace> find(std::string_view name) {
  if (name == "plane") {
    return CompactifiedSpace(spaces::plane(), Point{0.0, 0.0}, Exhaustion::balls(kDefaultDepth, {0.0, 0.0}));
  }
  auto base = spaces::find(name);
  if (!base) return std::nullopt;
  return over_rays(*base);
}

std::vector<std::string> names() { return spaces::names(); }

}  // namespace compactified

}  // namespace lusin
