#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lusin/exhaustion.hpp"
#include "lusin/metric.hpp"

namespace lusin {

/// A base space with a distinguished point x0 and a validated exhaustion,
/// carrying the one-point-compactification metric
///
///   g(x)      = max_n [r_n - d(x, K_n)]
///   h(x)      = min{d(x, x0), g(x)}
///   delta(x,y) = min{d(x, y), h(x) + h(y)}.
///
/// Sequences leaving every K_n have h -> 0 and so converge to x0 under delta;
/// (X, delta) is compact.
class CompactifiedSpace {
 public:
  /// Throws DescriptorError when the exhaustion fails validation or x0 is
  /// not in K_1, DomainError when x0 is not a member.
  CompactifiedSpace(SpaceDescriptor base, Point x0, Exhaustion exhaustion);

  const SpaceDescriptor& base() const noexcept { return *base_; }
  const Point& x0() const noexcept { return x0_; }
  const Exhaustion& exhaustion() const noexcept { return *exhaustion_; }

  double g(const Point& x) const;
  double h(const Point& x) const;
  double delta(const Point& x, const Point& y) const;

  /// delta as a free-standing oracle (shares the immutable state).
  DistanceOracle delta_oracle() const;

  /// Same metric, with h memoized per point. The cache lives in the returned
  /// closure and is not synchronized: do not share one across threads.
  DistanceOracle cached_delta_oracle() const;

 private:
  std::shared_ptr<const SpaceDescriptor> base_;
  Point x0_;
  std::shared_ptr<const Exhaustion> exhaustion_;
};

/// Truncated evaluation of g: terms are scanned for n = 1, 2, ... and the scan
/// stops at the first n with r_n not above the running maximum (every later
/// term is at most r_n). Throws DepthExhaustedError if n_max is reached first.
double g_value(const CompactifiedSpace& cspace, const Point& x);
double h_value(const CompactifiedSpace& cspace, const Point& x);
double delta(const CompactifiedSpace& cspace, const Point& x, const Point& y);

struct NetResult {
  std::size_t n_eps = 0;        // first index with r_n < epsilon
  std::vector<Point> net;       // C_eps together with x0
  std::size_t grid_size = 0;    // points of K_{n_eps} the net was drawn from
  std::size_t probes = 0;
  std::size_t uncovered = 0;    // probes with delta-distance >= epsilon to the net
  double worst = 0.0;           // max over probes of the delta-distance to the net
};

/// Upper bound on the grid drawn from K_{n_eps}.
inline constexpr std::size_t kMaxNetGrid = 4'000'000;

/// Finite epsilon-net of (X, delta): an epsilon-net of K_{n_eps} under d plus
/// x0, where r_n < epsilon for n >= n_eps. Probe samples, when given, are
/// checked for coverage. Throws ParameterError when the grid of K_{n_eps}
/// would exceed kMaxNetGrid points.
NetResult total_boundedness_net(const CompactifiedSpace& cspace, double epsilon,
                                std::span<const Point> probe_samples = {});

struct EscapeReport {
  std::vector<double> h_values;
  std::vector<double> delta_to_x0;
  bool converges_to_x0 = false;
};

/// Evaluates h and delta(., x0) along `sequence`. Converges when the last
/// quarter of delta(., x0) is nonincreasing and stays below `tolerance`.
EscapeReport escape_convergence_check(const CompactifiedSpace& cspace, std::span<const Point> sequence,
                                      double tolerance = 1e-3);

namespace compactified {

/// Default exhaustion depth for the catalog: large enough that g settles for
/// ray parameters up to 10^5 - 1.
inline constexpr std::size_t kDefaultDepth = 100000;

/// K_n = [0, n] per ray, r_n = 1/n, x0 = origin of the first ray.
CompactifiedSpace over_rays(const SpaceDescriptor& base, std::size_t n_max = kDefaultDepth);

std::optional<CompactifiedSpace> find(std::string_view name);
std::vector<std::string> names();

}  // namespace compactified

}  // namespace lusin
