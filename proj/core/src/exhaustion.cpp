#include "lusin/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lusin {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void require_rays(const SpaceDescriptor& base) {
  if (base.branches.empty())
    throw DescriptorError(base.name + ": interval regions need a ray-parametrised space");
}

void require_ball(const SpaceDescriptor& base, const Ball& b) {
  if (!base.branches.empty())
    throw DescriptorError(base.name + ": ball regions need a convex ambient space, not a union of rays");
  if (b.center.size() != static_cast<std::size_t>(base.dimension))
    throw DescriptorError(base.name + ": ball center has the wrong dimension");
  if (!(b.radius >= 0.0) || !std::isfinite(b.radius)) throw DescriptorError("ball radius must be finite and >= 0");
}

}  // namespace

double region_distance(const SpaceDescriptor& base, const Region& region, const Point& x) {
  return std::visit(overloaded{
                        [&](const RayInterval& r) {
                          require_rays(base);
                          return std::max(0.0, base.ray_parameter(x) - r.upper);
                        },
                        [&](const Ball& b) {
                          require_ball(base, b);
                          return std::max(0.0, euclidean(x.coords, b.center) - b.radius);
                        },
                    },
                    region);
}

double covering_radius(const SpaceDescriptor& base, const Region& region, double spacing) {
  if (std::holds_alternative<RayInterval>(region)) return 0.5 * spacing;
  return 0.5 * spacing * std::sqrt(static_cast<double>(base.dimension));
}

std::vector<Point> region_grid(const SpaceDescriptor& base, const Region& region, double spacing) {
  if (!(spacing > 0.0)) throw ParameterError("region_grid: spacing must be > 0");
  std::vector<Point> out;
  std::visit(overloaded{
                 [&](const RayInterval& r) {
                   require_rays(base);
                   const auto steps = static_cast<std::size_t>(std::ceil(r.upper / spacing));
                   for (std::size_t b = 0; b < base.branches.size(); ++b)
                     for (std::size_t i = 0; i <= steps; ++i)
                       out.push_back(base.on_branch(static_cast<int>(b), std::min(r.upper, i * spacing)));
                 },
                 [&](const Ball& ball) {
                   require_ball(base, ball);
                   if (base.dimension != 2) throw DescriptorError("ball grids are implemented for the plane only");
                   const auto steps = static_cast<long>(std::ceil(ball.radius / spacing));
                   for (long i = -steps; i <= steps; ++i) {
                     for (long j = -steps; j <= steps; ++j) {
                       Point p{ball.center[0] + i * spacing, ball.center[1] + j * spacing};
                       // keep cells whose center lies within half a diagonal of the ball
                       if (euclidean(p.coords, ball.center) <= ball.radius + spacing) out.push_back(std::move(p));
                     }
                   }
                 },
             },
             region);
  return out;
}

Exhaustion Exhaustion::ray_intervals(std::size_t n_max, double scale, double radius_numerator) {
  Exhaustion e;
  e.regions.reserve(n_max);
  e.radii.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    e.regions.emplace_back(RayInterval{scale * static_cast<double>(n)});
    e.radii.push_back(radius_numerator / static_cast<double>(n));
  }
  return e;
}

Exhaustion Exhaustion::balls(std::size_t n_max, std::vector<double> center, double scale, double radius_numerator) {
  Exhaustion e;
  e.regions.reserve(n_max);
  e.radii.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    e.regions.emplace_back(Ball{center, scale * static_cast<double>(n)});
    e.radii.push_back(radius_numerator / static_cast<double>(n));
  }
  return e;
}

bool ExhaustionReport::violates(const std::string& condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const ExhaustionViolation& v) { return v.condition == condition; });
}

ExhaustionReport validate_exhaustion(const Exhaustion& exh, const SpaceDescriptor& base) {
  if (exh.regions.size() < 2) throw DescriptorError("exhaustion needs at least 2 regions");
  if (exh.radii.size() != exh.regions.size())
    throw DescriptorError("exhaustion has " + std::to_string(exh.regions.size()) + " regions but " +
                          std::to_string(exh.radii.size()) + " radii");

  constexpr double tol = kValidationTolerance;
  ExhaustionReport rep;
  auto flag = [&](std::string cond, std::size_t n, std::string detail) {
    rep.ok = false;
    rep.violations.push_back({std::move(cond), n, std::move(detail)});
  };

  for (std::size_t n = 1; n <= exh.n_max(); ++n) {
    const double r = exh.radius(n);
    if (!(r > 0.0) || !std::isfinite(r)) flag("positive", n, "r_n = " + fmt(r) + " is not a positive real");
  }

  for (std::size_t n = 1; n < exh.n_max(); ++n) {
    const Region& inner = exh.region(n);
    const Region& outer = exh.region(n + 1);
    const double r = exh.radius(n);

    // gap = how far K_{n+1} extends beyond K_n; the enlargement K_n^r is
    // exactly "gap >= r" for both descriptor kinds under our distance.
    double gap = 0.0;
    if (const auto* a = std::get_if<RayInterval>(&inner)) {
      const auto* b = std::get_if<RayInterval>(&outer);
      if (!b) throw DescriptorError("mixed region kinds at n = " + std::to_string(n));
      require_rays(base);
      if (!std::isfinite(a->upper) || a->upper < 0.0)
        throw DescriptorError("interval bound must be finite and >= 0 at n = " + std::to_string(n));
      gap = b->upper - a->upper;
    } else {
      const auto& a2 = std::get<Ball>(inner);
      const auto* b2 = std::get_if<Ball>(&outer);
      if (!b2) throw DescriptorError("mixed region kinds at n = " + std::to_string(n));
      require_ball(base, a2);
      require_ball(base, *b2);
      gap = b2->radius - a2.radius - euclidean(a2.center, b2->center);
    }

    if (gap <= tol) flag("nesting", n, "K_n is not inside the interior of K_{n+1} (gap " + fmt(gap) + ")");
    if (r > gap + tol) flag("a", n, "enlargement by r_n = " + fmt(r) + " leaves K_{n+1} (room " + fmt(gap) + ")");
    if (!(r > exh.radius(n + 1))) flag("b", n, "r_n = " + fmt(r) + " <= r_{n+1} = " + fmt(exh.radius(n + 1)));
  }

  const double tail = exh.radius(exh.n_max());
  if (rep.violates("b") || !(tail < kRadiusTailThreshold))
    flag("c", exh.n_max(),
         "r_n -> 0 not certified: r_{n_max} = " + fmt(tail) + (rep.violates("b") ? " and radii not decreasing" : ""));
  return rep;
}

}  // namespace lusin
