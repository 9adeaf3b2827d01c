#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <numbers>

#include "lusin/errors.hpp"
#include "lusin/stratification.hpp"
#include "support/generators.hpp"

using namespace lusin;
using lusin::testing::Gen;

namespace {

double nearest(const Point& p, const std::vector<Point>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : set) best = std::min(best, euclidean(p, q));
  return best;
}

double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  double worst = 0.0;
  for (const Point& p : a) worst = std::max(worst, nearest(p, b));
  for (const Point& q : b) worst = std::max(worst, nearest(q, a));
  return worst;
}

std::vector<Point> unit_circle(int n) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    out.push_back(Point{std::cos(a), std::sin(a)});
  }
  return out;
}

const Stratification& strat_of(const std::string& name) {
  static std::map<std::string, Stratification> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, stratify(*maps::find(name))).first;
  return it->second;
}

}  // namespace

TEST(LimitSet, LollipopClosesAtOneZero) {
  const MapInstance m = maps::lollipop();
  const LimitSet l = escape_limit_set(m, EscapeSampler::all_branches(m), 1e-2);
  ASSERT_EQ(l.clusters.size(), 1u);
  EXPECT_LT(euclidean(l.clusters[0].centroid, Point{1.0, 0.0}), 1e-2);
  EXPECT_GE(l.clusters[0].distinct_steps, 2u);
  EXPECT_EQ(l.tail_images, 1000u * 16u);
}

TEST(LimitSet, IdentityImagesRunAway) {
  const MapInstance m = maps::identity();
  const LimitSet l = escape_limit_set(m, EscapeSampler::all_branches(m), 1e-2);
  EXPECT_TRUE(l.empty());
  EXPECT_GT(l.rejected_clusters, 0u);
}

TEST(LimitSet, SpiralAccumulatesOnUnitCircle) {
  const MapInstance m = maps::spiral_lollipop();
  const LimitSet l = escape_limit_set(m, EscapeSampler::all_branches(m), 1e-2);
  EXPECT_LT(hausdorff(l.points(), unit_circle(3600)), 0.05);
}

TEST(LimitSet, FilterAndArguments) {
  const MapInstance m = maps::lollipop();
  const EscapeSampler s = EscapeSampler::all_branches(m);
  const LimitSet none = escape_limit_set(m, s, 1e-2, [](const EscapePoint&) { return false; });
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(none.tail_images, 0u);
  EXPECT_THROW(escape_limit_set(m, s, 0.0), ParameterError);
}

TEST(Discontinuity, CatalogMatchesAnalyticSets) {
  {
    const MapInstance m = maps::lollipop();
    const auto samples = sample_domain(m, 10000, 1);
    const auto l = escape_limit_set(m, EscapeSampler::all_branches(m), 1e-2).points();
    const auto d = discontinuity_set(m, l, samples, 1e-2);
    ASSERT_FALSE(d.x1_samples.empty());
    EXPECT_LE(hausdorff(d.x1_samples, {Point{0.0}}), 1e-2);
    EXPECT_LE(hausdorff(d.y1_samples, {Point{1.0, 0.0}}), 1e-2);
    for (std::size_t i = 0; i < d.indices.size(); ++i) EXPECT_EQ(samples[d.indices[i]], d.x1_samples[i]);
  }
  {
    const MapInstance m = maps::figure_eight();
    const auto samples = sample_domain(m, 10000, 1);
    const auto l = escape_limit_set(m, EscapeSampler::all_branches(m), 1e-2).points();
    const auto d = discontinuity_set(m, l, samples, 1e-2);
    EXPECT_LE(hausdorff(d.y1_samples, {Point{0.0, 0.0}}), 1e-2);
    EXPECT_LE(hausdorff(d.x1_samples, {Point{0.0}}), 1e-2);
  }
  {
    const MapInstance m = maps::identity();
    const auto d = discontinuity_set(m, {}, sample_domain(m, 1000, 1), 1e-2);
    EXPECT_TRUE(d.x1_samples.empty());
    EXPECT_TRUE(d.y1_samples.empty());
  }
}

TEST(Properness, LollipopExamples) {
  const MapInstance m = maps::lollipop();
  const auto samples = sample_domain(m, 10000, 1);
  const PropernessProbe probe(m, samples, EscapeSampler::all_branches(m), 0.02);
  const auto radii = default_radius_schedule(1e-2);
  EXPECT_TRUE(proper_neighborhood_test(probe, Point{-1.0, 0.0}, radii));
  EXPECT_FALSE(proper_neighborhood_test(probe, Point{1.0, 0.0}, radii));
  EXPECT_THROW(probe.test(Point{5.0, 5.0}, radii, 1e3), InconclusiveError);
  const std::vector<double> rising{0.01, 0.02};
  EXPECT_THROW(probe.test(Point{-1.0, 0.0}, rising, 1e3), ParameterError);
  EXPECT_THROW(probe.test(Point{-1.0, 0.0}, radii, 0.0), ParameterError);
}

TEST(Properness, IdentityIsProperEverywhereSampled) {
  const MapInstance m = maps::identity();
  const auto samples = sample_domain(m, 2000, 5);
  const PropernessProbe probe(m, samples, EscapeSampler::all_branches(m), 0.02);
  for (std::size_t i = 0; i < samples.size(); i += 13)
    ASSERT_TRUE(probe.test(m.forward(samples[i]), default_radius_schedule(1e-2), 1e3));
}

TEST(Stratify, IdentityHasOneLevel) {
  const Stratification& s = strat_of("identity");
  ASSERT_EQ(s.levels.size(), 1u);
  EXPECT_TRUE(s.terminated);
  EXPECT_TRUE(s.levels[0].next_y_samples.empty());
  EXPECT_EQ(s.levels[0].z_samples.size(), s.levels[0].y_samples.size());
}

TEST(Stratify, LollipopTerminatesAtDepthTwo) {
  const Stratification& s = strat_of("lollipop");
  ASSERT_EQ(s.levels.size(), 2u);
  EXPECT_TRUE(s.terminated);
  EXPECT_LE(hausdorff(s.levels[0].next_y_samples, {Point{1.0, 0.0}}), 1e-2);
  EXPECT_TRUE(s.levels[1].next_y_samples.empty());
}

TEST(Stratify, SpiralLollipopHasThreeLevels) {
  const Stratification& s = strat_of("spiral-lollipop");
  ASSERT_EQ(s.levels.size(), 3u);
  EXPECT_TRUE(s.terminated);
  // Y_1 is the circle, traced by ray b
  for (const Point& y : s.levels[0].next_y_samples)
    ASSERT_NEAR(std::hypot(y.coords[0], y.coords[1]), 1.0, 1e-2);
  for (const Point& x : s.levels[0].next_x_samples) ASSERT_EQ(x.branch, std::optional<int>(1));
  const auto y2 = cluster_points(s.levels[1].next_y_samples, 1e-2);
  ASSERT_EQ(y2.size(), 1u);
  EXPECT_LT(euclidean(y2[0].centroid, Point{1.0, 0.0}), 1e-2);
  EXPECT_EQ(s.levels[1].escape_branches, std::vector<int>{1});
  EXPECT_TRUE(s.levels[2].next_y_samples.empty());
}

TEST(Stratify, DepthCapLeavesChainOpen) {
  StratifyOptions o;
  o.max_depth = 1;
  const Stratification s = stratify(maps::lollipop(), o);
  ASSERT_EQ(s.levels.size(), 1u);
  EXPECT_FALSE(s.terminated);
  EXPECT_FALSE(s.levels[0].next_y_samples.empty());
}

TEST(Stratify, ThinLevelRaisesResolutionErrorNamingIt) {
  StratifyOptions o;
  o.min_level_samples = 100;
  try {
    stratify(maps::lollipop(), o);
    FAIL() << "expected ResolutionError";
  } catch (const ResolutionError& e) {
    EXPECT_EQ(e.level(), 1);
    EXPECT_NE(std::string(e.what()).find("level 1"), std::string::npos);
  }
  StratifyOptions bad;
  bad.max_depth = 0;
  EXPECT_THROW(stratify(maps::lollipop(), bad), ParameterError);
}

class ChainInvariants : public ::testing::TestWithParam<const char*> {};

TEST_P(ChainInvariants, InclusionDisjointnessDensityNowhereDensity) {
  const Stratification& s = strat_of(GetParam());
  Gen gen(77);
  for (const StratumLevel& level : s.levels) {
    for (const Point& y : level.next_y_samples) ASSERT_LT(nearest(y, level.y_samples), 1e-12);
    for (const Point& z : level.z_samples) ASSERT_GT(nearest(z, level.next_y_samples), 0.0);
    ASSERT_EQ(level.z_samples.size() + level.next_y_samples.size(), level.y_samples.size());
    if (level.z_samples.empty()) continue;

    // Z_k dense in Y_k
    for (std::size_t i = 0; i < level.y_samples.size(); i += 7)
      ASSERT_LE(nearest(level.y_samples[i], level.z_samples), 0.05) << "level " << level.k;

    // no ball about a Y_k sample is swallowed by Y_{k+1}
    const std::set<std::vector<double>> next(
        [&] {
          std::set<std::vector<double>> s;
          for (const Point& y : level.next_y_samples) s.insert(y.coords);
          return s;
        }());
    for (int b = 0; b < 100; ++b) {
      const Point& c = level.y_samples[gen.index(level.y_samples.size())];
      std::size_t captured = 0, inside = 0;
      for (const Point& y : level.y_samples) {
        if (euclidean(y, c) > 0.1) continue;
        ++captured;
        inside += next.count(y.coords);
      }
      ASSERT_GT(captured, 0u);
      ASSERT_LT(inside, captured) << "level " << level.k << " ball at " << to_string(c);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Catalog, ChainInvariants,
                         ::testing::Values("identity", "lollipop", "figure-eight", "spiral-lollipop"));

TEST(Consistency, PropernessAgreesWithLimitSetOnCatalog) {
  for (const char* name : {"identity", "lollipop", "figure-eight", "spiral-lollipop"}) {
    const ConsistencyReport r = check_properness_consistency(*maps::find(name), strat_of(name), 200, 5);
    EXPECT_EQ(r.points, 200u);
    EXPECT_EQ(r.agreements, 200u) << name;
    EXPECT_EQ(r.inconclusive, 0u) << name;
  }
}

TEST(StratumMetric, LollipopSpotValue) {
  const MapInstance m = maps::lollipop();
  const StratumMetric sm{0, *m.known_x1, m.domain.distance};
  EXPECT_NEAR(stratum_metric_eval(sm, m, m.forward(Point{1.0}), m.forward(Point{2.0})), 1.5, 1e-9);
  EXPECT_EQ(stratum_metric_eval(sm, m, m.forward(Point{3.0}), m.forward(Point{3.0})), 0.0);
  EXPECT_THROW(stratum_kappa(sm, m, m.forward(Point{0.0})), BoundaryContactError);
}

TEST(StratumMetric, EmptyBoundaryReducesToBaseDistance) {
  const MapInstance m = maps::identity();
  const StratumMetric sm = make_stratum_metric(m, strat_of("identity"), 0);
  EXPECT_TRUE(sm.boundary_samples.empty());
  EXPECT_DOUBLE_EQ(stratum_metric_eval(sm, m, Point{0.0}, Point{3.0}), 3.0);
  EXPECT_EQ(stratum_kappa(sm, m, Point{-8.0}), 0.0);
  EXPECT_THROW(make_stratum_metric(m, strat_of("identity"), 1), ParameterError);
}

TEST(StratumMetric, AxiomsAndDominationOnSpiralStrata) {
  const MapInstance m = maps::spiral_lollipop();
  const Stratification& s = strat_of("spiral-lollipop");
  for (int k : {0, 1}) {
    const StratumMetric sm = make_stratum_metric(m, s, k);
    const auto& z = s.levels[static_cast<std::size_t>(k)].z_samples;
    Gen gen(100 + k);
    std::vector<std::array<Point, 3>> triples;
    for (int i = 0; i < 1000; ++i)
      triples.push_back({z[gen.index(z.size())], z[gen.index(z.size())], z[gen.index(z.size())]});
    const DistanceOracle dk = stratum_metric_oracle(sm, m);
    EXPECT_TRUE(check_metric_triples(dk, triples, 1e-9).ok()) << "k = " << k;
    for (const auto& t : triples)
      ASSERT_GE(dk(t[0], t[1]) + 1e-12, m.domain.distance(m.inverse(t[0]), m.inverse(t[1])));
  }
}

TEST(StratumMetric, BoundaryApproachBlowsUp) {
  const MapInstance m = maps::lollipop();
  const StratumMetric sm{0, *m.known_x1, m.domain.distance};
  std::vector<Point> seq;
  for (int i = 1; i <= 4000; ++i) seq.push_back(m.forward(Point{1.0 / i}));
  EXPECT_GT(stratum_kappa(sm, m, seq.back()), 1e3);
  const DistanceOracle dk = stratum_metric_oracle(sm, m);
  EXPECT_NE(cauchy_classify(seq, dk, 400, 1e-2), CauchyVerdict::cauchy);
  // the ambient images do converge
  const DistanceOracle ambient = [](const Point& a, const Point& b) { return euclidean(a, b); };
  EXPECT_EQ(cauchy_classify(seq, ambient, 400, 1e-2), CauchyVerdict::cauchy);
}

TEST(Decompose, IdentityIsOnePart) {
  const Stratification& s = strat_of("identity");
  const auto a = std::vector<Point>(s.levels[0].y_samples.begin(), s.levels[0].y_samples.begin() + 300);
  const Decomposition d = decompose_open_set(a, s);
  ASSERT_EQ(d.parts.size(), 1u);
  EXPECT_EQ(d.parts[0].size(), a.size());
}

TEST(Decompose, SpiralNeighbourhoodOfOneZeroSplitsThreeWays) {
  const Stratification& s = strat_of("spiral-lollipop");
  std::vector<Point> a;
  for (const Point& y : s.levels[0].y_samples)
    if (euclidean(y, Point{1.0, 0.0}) < 0.3) a.push_back(y);
  const Decomposition d = decompose_open_set(a, s);
  ASSERT_EQ(d.parts.size(), 3u);
  std::size_t total = 0;
  for (const auto& p : d.parts) {
    EXPECT_FALSE(p.empty());
    total += p.size();
  }
  EXPECT_EQ(total, a.size());
  EXPECT_EQ(d.part_of.size(), a.size());
  for (const Point& y : d.parts[0]) ASSERT_GT(std::hypot(y.coords[0], y.coords[1]), 1.0 + 1e-3);
  for (const Point& y : d.parts[1]) ASSERT_NEAR(std::hypot(y.coords[0], y.coords[1]), 1.0, 1e-9);
  for (const Point& y : d.parts[2]) ASSERT_LT(euclidean(y, Point{1.0, 0.0}), 1e-2);
}

TEST(Clusters, SingleLinkageMergesChains) {
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(Point{0.005 * i, 0.0});
  pts.push_back(Point{5.0, 5.0});
  const auto c = cluster_points(pts, 0.01);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].members, 20u);
  EXPECT_NEAR(c[0].centroid.coords[0], 0.0475, 1e-12);
  EXPECT_EQ(c[1].members, 1u);
}
