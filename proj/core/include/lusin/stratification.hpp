#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "lusin/lusin_map.hpp"
#include "lusin/metric.hpp"

namespace lusin {

struct Cluster {
  Point centroid;
  std::size_t members = 0;
  std::size_t distinct_steps = 0;
};

/// Estimated set of limits lim f(x_n) over sequences x_n -> infinity.
struct LimitSet {
  std::vector<Cluster> clusters;  // accepted limit points only
  std::size_t tail_images = 0;
  std::size_t rejected_clusters = 0;

  bool empty() const noexcept { return clusters.empty(); }
  std::vector<Point> points() const;
};

using EscapeFilter = std::function<bool(const EscapePoint&)>;

/// Clusters the tail images of every escape sequence (leader clustering with
/// join radius tol / 2, centroid representatives). A cluster is a limit point
/// only if images from at least two distinct schedule steps fall into it, so
/// images that keep running away contribute nothing.
LimitSet escape_limit_set(const MapInstance& map, const EscapeSampler& sampler, double tol,
                          const EscapeFilter& filter = {});

struct DiscontinuityEstimate {
  std::vector<std::size_t> indices;  // into the domain sample list
  std::vector<Point> x1_samples;
  std::vector<Point> y1_samples;
};

/// Domain samples whose image lies within `tol` of the limit set.
DiscontinuityEstimate discontinuity_set(const MapInstance& map, std::span<const Point> limit_points,
                                        std::span<const Point> domain_samples, double tol);

/// Default cutoff on the ray parameter beyond which a captured preimage point
/// counts as escaping.
inline constexpr double kDefaultParameterBound = 1e3;

/// Radii {16, 8, 4, 2} * tol.
std::vector<double> default_radius_schedule(double tol);

/// Image index over domain samples plus the whole escape schedule, answering
/// "does some neighborhood of y have a bounded preimage?".
class PropernessProbe {
 public:
  PropernessProbe(const MapInstance& map, std::span<const Point> domain_samples, const EscapeSampler& sampler,
                  double cell);
  ~PropernessProbe();
  PropernessProbe(PropernessProbe&&) noexcept;
  PropernessProbe& operator=(PropernessProbe&&) noexcept;

  /// True when, for some radius, every indexed point whose image falls in the
  /// ball B(y, radius) has ray parameter <= bound (and at least one does);
  /// false when every nonempty capture contains an escaping point. Throws
  /// InconclusiveError when no radius captures anything.
  bool test(const Point& y, std::span<const double> radius_schedule, double bound) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool proper_neighborhood_test(const PropernessProbe& probe, const Point& y, std::span<const double> radius_schedule,
                              double bound = kDefaultParameterBound);

struct StratumLevel {
  int k = 0;
  std::vector<Point> x_samples;       // X_k
  std::vector<Point> y_samples;       // Y_k = f(X_k)
  std::vector<Point> z_samples;       // Z_k = Y_k \ Y_{k+1}
  std::vector<Point> next_x_samples;  // X_{k+1} estimate (empty when declared empty)
  std::vector<Point> next_y_samples;  // Y_{k+1} estimate
  std::vector<Point> limit_points;    // escape limit set used at this level
  std::vector<int> escape_branches;
};

struct Stratification {
  std::vector<StratumLevel> levels;
  bool terminated = false;  // the last level's Y_{k+1} estimate is empty
  double tol = 1e-2;
};

struct StratifyOptions {
  int max_depth = 4;
  double tol = 1e-2;
  std::size_t samples_per_branch = 10000;
  std::uint64_t seed = 1;
  // A Y_{k+1} estimate with fewer survivors than this is declared empty.
  std::size_t empty_below = 3;
  // A level whose X_k has fewer samples than this cannot be estimated.
  std::size_t min_level_samples = 3;
  // At level k >= 1 a ray keeps its escapes only if X_k samples reach this
  // fraction of the ray's sampled parameter extent.
  double unbounded_fraction = 0.9;
};

/// Iterates the discontinuity-set decomposition: level 0 is the whole sampled
/// image; level k + 1 restricts f to X_{k+1} = f^{-1}(Y_{k+1}). Throws
/// ResolutionError naming the level when X_k has too few samples.
Stratification stratify(const MapInstance& map, const StratifyOptions& options = {});

/// Single-linkage components of `points` at distance `tol`, as centroids.
std::vector<Cluster> cluster_points(std::span<const Point> points, double tol);

/// d_k(x, x') = d(x, x') + |1/d(x, B) - 1/d(x', B)|, B = boundary samples,
/// evaluated at x = f^{-1}(y). With B empty the reciprocal terms vanish.
struct StratumMetric {
  int level = 0;
  std::vector<Point> boundary_samples;  // X_{k+1}
  DistanceOracle base_distance;
};

StratumMetric make_stratum_metric(const MapInstance& map, const Stratification& strat, int k);

/// 1 / d(f^{-1}(y), X_{k+1}); throws BoundaryContactError at distance <= 1e-12.
double stratum_kappa(const StratumMetric& sm, const MapInstance& map, const Point& y);
double stratum_metric_eval(const StratumMetric& sm, const MapInstance& map, const Point& y, const Point& y2);

/// The stratum metric as an oracle on image points, caching preimages and
/// kappa per point. Not thread-safe.
DistanceOracle stratum_metric_oracle(StratumMetric sm, const MapInstance& map);

struct Decomposition {
  // parts[k] = A ∩ Z_k, i.e. A_{k+1}
  std::vector<std::vector<Point>> parts;
  std::vector<std::size_t> part_of;    // per input sample
  std::vector<std::size_t> ambiguous;  // indices of samples with tied nearest strata
};

/// Assigns each sample of A to the stratum Z_k with the nearest sample
/// (deeper level on exact ties, which are flagged).
Decomposition decompose_open_set(std::span<const Point> a_samples, const Stratification& strat);

struct ConsistencyReport {
  std::size_t points = 0;
  std::size_t agreements = 0;
  std::size_t inconclusive = 0;
  double agreement() const noexcept { return points ? static_cast<double>(agreements) / points : 1.0; }
};

/// For `count` seeded image points drawn from the level-0 samples, compares
/// the properness verdict with "farther than tol from the Y_1 estimate".
ConsistencyReport check_properness_consistency(const MapInstance& map, const Stratification& strat,
                                               std::size_t count, std::uint64_t seed,
                                               double bound = kDefaultParameterBound);

}  // namespace lusin
