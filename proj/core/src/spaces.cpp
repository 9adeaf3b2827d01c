#include "lusin/spaces.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace lusin::spaces {

namespace {

DistanceOracle euclidean_oracle() {
  return [](const Point& a, const Point& b) { return euclidean(a, b); };
}

}  // namespace

SpaceDescriptor ray_space(std::string name, std::vector<RayBranch> branches, bool disjoint, double sample_mean) {
  SpaceDescriptor s;
  s.name = std::move(name);
  s.dimension = branches.empty() ? 1 : static_cast<int>(branches.front().origin.size());
  s.branches = std::move(branches);
  s.disjoint_branches = disjoint;
  s.distance = euclidean_oracle();
  // membership and sampler need the branches; share one immutable copy
  auto rays = std::make_shared<const SpaceDescriptor>(s);
  s.membership = [rays](const Point& p) {
    return p.is_finite() && p.dimension() == static_cast<std::size_t>(rays->dimension) &&
           rays->locate(p).has_value();
  };
  s.sampler = [rays, sample_mean](std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    out.reserve(count);
    const auto nb = rays->branches.size();
    for (std::size_t i = 0; i < count; ++i) {
      const auto b = static_cast<int>(std::min<std::size_t>(nb - 1, static_cast<std::size_t>(unit_uniform(rng) * nb)));
      const double s = -sample_mean * std::log1p(-unit_uniform(rng));
      out.push_back(rays->on_branch(b, s));
    }
    return out;
  };
  return s;
}

SpaceDescriptor half_line() {
  return ray_space("half-line", {RayBranch{"+", {0.0}, {1.0}}}, false);
}

SpaceDescriptor line() {
  return ray_space("line", {RayBranch{"+", {0.0}, {1.0}}, RayBranch{"-", {0.0}, {-1.0}}}, false);
}

SpaceDescriptor two_ray() {
  return ray_space("two-ray", {RayBranch{"a", {0.0, 0.0}, {1.0, 0.0}}, RayBranch{"b", {0.0, 2.0}, {1.0, 0.0}}}, true);
}

SpaceDescriptor plane() {
  SpaceDescriptor s;
  s.name = "plane";
  s.dimension = 2;
  s.distance = euclidean_oracle();
  s.membership = [](const Point& p) { return p.is_finite() && p.dimension() == 2; };
  s.sampler = [](std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double r = -8.0 * std::log1p(-unit_uniform(rng));
      const double a = 2.0 * std::numbers::pi * unit_uniform(rng);
      out.push_back(Point{r * std::cos(a), r * std::sin(a)});
    }
    return out;
  };
  return s;
}

SpaceDescriptor squared_half_line() {
  SpaceDescriptor s = half_line();
  s.name = "squared-half-line";
  s.distance = [](const Point& a, const Point& b) {
    const double d = a.coords[0] - b.coords[0];
    return d * d;
  };
  return s;
}

std::optional<SpaceDescriptor> find(std::string_view name) {
  if (name == "half-line") return half_line();
  if (name == "line") return line();
  if (name == "two-ray") return two_ray();
  if (name == "plane") return plane();
  if (name == "squared-half-line") return squared_half_line();
  return std::nullopt;
}

std::vector<std::string> names() {
  return {"half-line", "line", "two-ray", "plane", "squared-half-line"};
}

}  // namespace lusin::spaces
