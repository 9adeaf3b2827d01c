#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "lusin/metric.hpp"

namespace lusin {

/// All points of a ray space whose ray parameter lies in [0, upper].
struct RayInterval {
  double upper = 0.0;
};

/// Closed Euclidean ball; only meaningful in a convex ambient space.
struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

using Region = std::variant<RayInterval, Ball>;

/// d(x, region) under the base distance, evaluated analytically.
double region_distance(const SpaceDescriptor& base, const Region& region, const Point& x);

/// Finite grid covering `region`: every point of the region lies within
/// `covering_radius(spacing, base)` of some grid point.
std::vector<Point> region_grid(const SpaceDescriptor& base, const Region& region, double spacing);
double covering_radius(const SpaceDescriptor& base, const Region& region, double spacing);

/// Nested compact regions K_1, ..., K_{n_max} with radii r_1 > r_2 > ...
/// Index n (1-based) lives at position n - 1 of both vectors.
struct Exhaustion {
  std::vector<Region> regions;
  std::vector<double> radii;

  std::size_t n_max() const noexcept { return regions.size(); }
  const Region& region(std::size_t n) const { return regions.at(n - 1); }
  double radius(std::size_t n) const { return radii.at(n - 1); }

  /// K_n = [0, scale * n] on every ray, r_n = radius_numerator / n.
  static Exhaustion ray_intervals(std::size_t n_max, double scale = 1.0, double radius_numerator = 1.0);
  /// K_n = closed ball of radius scale * n about `center`, r_n = radius_numerator / n.
  static Exhaustion balls(std::size_t n_max, std::vector<double> center, double scale = 1.0,
                          double radius_numerator = 1.0);
};

/// Tail threshold certifying r_n -> 0 at the configured depth.
inline constexpr double kRadiusTailThreshold = 1e-3;
/// Absolute tolerance of every comparison made during validation.
inline constexpr double kValidationTolerance = 1e-12;

struct ExhaustionViolation {
  std::string condition;  // "nesting", "a", "b", "c", "positive"
  std::size_t n = 0;
  std::string detail;
};

struct ExhaustionReport {
  bool ok = true;
  std::vector<ExhaustionViolation> violations;

  bool violates(const std::string& condition) const;
};

/// Checks K_n inside the interior of K_{n+1}, (a) K_n^{r_n} inside K_{n+1},
/// (b) r_n > r_{n+1}, and (c) r_{n_max} below kRadiusTailThreshold together
/// with (b), all analytically on the descriptors.
ExhaustionReport validate_exhaustion(const Exhaustion& exh, const SpaceDescriptor& base);

}  // namespace lusin
