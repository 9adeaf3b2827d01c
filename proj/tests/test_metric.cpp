#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "lusin/errors.hpp"
#include "lusin/metric.hpp"
#include "lusin/spaces.hpp"
#include "support/generators.hpp"

using namespace lusin;
using lusin::testing::Gen;

namespace {

const DistanceOracle kEuclid = [](const Point& a, const Point& b) { return euclidean(a, b); };

std::vector<Point> line_points(std::initializer_list<double> xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back(Point{x});
  return out;
}

}  // namespace

TEST(Point, EuclideanRejectsMixedDimensions) {
  EXPECT_THROW(euclidean(Point{1.0}, Point{1.0, 2.0}), DomainError);
  EXPECT_DOUBLE_EQ(euclidean(Point{0.0, 0.0}, Point{3.0, 4.0}), 5.0);
}

TEST(Point, SamePointIgnoresMissingTags) {
  EXPECT_TRUE(same_point(Point{1.0}, Point{1.0 + 1e-13}));
  EXPECT_FALSE(same_point(Point{1.0}, Point{1.0 + 1e-9}));
  EXPECT_TRUE(same_point(Point(std::vector<double>{0.0}, 1), Point{0.0}));
  EXPECT_FALSE(same_point(Point(std::vector<double>{0.0}, 1), Point(std::vector<double>{0.0}, 0)));
}

TEST(Point, UnitUniformStaysInRange) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = unit_uniform(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Spaces, LineOriginIsShared) {
  const SpaceDescriptor line = spaces::line();
  EXPECT_TRUE(same_point(line.on_branch(0, 0.0), line.on_branch(1, 0.0)));
  EXPECT_DOUBLE_EQ(line.distance(line.on_branch(0, 2.0), line.on_branch(1, 3.0)), 5.0);
  EXPECT_TRUE(line.contains(Point{-4.0}));
  EXPECT_FALSE(line.contains(Point{1.0, 0.0}));
}

TEST(Spaces, TwoRayPointsCarryTags) {
  const SpaceDescriptor s = spaces::two_ray();
  const Point a = s.on_branch(0, 1.5);
  const Point b = s.on_branch(1, 1.5);
  ASSERT_TRUE(a.branch && b.branch);
  EXPECT_EQ(*a.branch, 0);
  EXPECT_EQ(*b.branch, 1);
  EXPECT_DOUBLE_EQ(s.distance(a, b), 2.0);
  EXPECT_FALSE(s.contains(Point{-1.0, 0.0}));
  EXPECT_FALSE(s.contains(Point{1.0, 1.0}));
  const auto where = s.locate(Point{7.0, 2.0});
  ASSERT_TRUE(where);
  EXPECT_EQ(where->branch, 1);
  EXPECT_DOUBLE_EQ(where->parameter, 7.0);
}

TEST(Spaces, SamplersAreSeeded) {
  for (const auto& name : spaces::names()) {
    const auto s = spaces::find(name);
    ASSERT_TRUE(s) << name;
    EXPECT_EQ(s->sampler(50, 9), s->sampler(50, 9)) << name;
    EXPECT_NE(s->sampler(50, 9), s->sampler(50, 10)) << name;
    for (const Point& p : s->sampler(200, 4)) ASSERT_TRUE(s->contains(p)) << name << " " << to_string(p);
  }
  EXPECT_FALSE(spaces::find("torus"));
}

TEST(Spaces, DistOnNonMembersThrows) {
  EXPECT_THROW(dist(spaces::half_line(), Point{-1.0}, Point{0.0}), DomainError);
}

TEST(MetricAxioms, EuclideanSamplesPassAcrossSeeds) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Gen gen(seed);
    const auto pts = gen.points(spaces::plane(), 60);
    const AxiomReport r = check_metric_axioms(kEuclid, pts, 1e-9);
    ASSERT_TRUE(r.ok()) << "seed " << seed;
    EXPECT_EQ(r.triples_checked, 60u * 60u * 60u);
  }
}

TEST(MetricAxioms, SquaredDistanceBreaksTriangle) {
  const DistanceOracle sq = [](const Point& a, const Point& b) { return std::pow(a.coords[0] - b.coords[0], 2); };
  const AxiomReport r = check_metric_axioms(sq, line_points({0.0, 1.0, 2.0}), 1e-9);
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().axiom, "triangle");
  // d(0,2) = 4 against d(0,1) + d(1,2) = 2
  EXPECT_NEAR(r.max_slack, 2.0, 1e-12);
}

TEST(MetricAxioms, AsymmetryAndIdentityAreCaught) {
  const DistanceOracle skew = [](const Point& a, const Point& b) {
    return std::abs(a.coords[0] - b.coords[0]) + (a.coords[0] < b.coords[0] ? 0.5 : 0.0);
  };
  const AxiomReport r = check_metric_axioms(skew, line_points({0.0, 1.0}), 1e-9);
  bool symmetry = false;
  for (const auto& v : r.violations) symmetry = symmetry || v.axiom == "symmetry";
  EXPECT_TRUE(symmetry);

  const DistanceOracle shifted = [](const Point& a, const Point& b) { return std::abs(a.coords[0] - b.coords[0]) + 1.0; };
  const AxiomReport r2 = check_metric_axioms(shifted, line_points({0.0, 3.0}), 1e-9);
  bool identity = false;
  for (const auto& v : r2.violations) identity = identity || v.axiom == "identity";
  EXPECT_TRUE(identity);
}

TEST(MetricAxioms, NanOracleRaisesWithPartialReport) {
  const DistanceOracle bad = [](const Point&, const Point&) { return std::numeric_limits<double>::quiet_NaN(); };
  EXPECT_THROW(check_metric_axioms(bad, line_points({0.0, 1.0}), 1e-9), OracleError);
}

TEST(MetricAxioms, TriplesCheckAllOrderings) {
  const DistanceOracle sq = [](const Point& a, const Point& b) { return std::pow(a.coords[0] - b.coords[0], 2); };
  std::vector<std::array<Point, 3>> t{{Point{2.0}, Point{0.0}, Point{1.0}}};
  EXPECT_FALSE(check_metric_triples(sq, t, 1e-9).ok());
  EXPECT_TRUE(check_metric_triples(kEuclid, t, 1e-9).ok());
}

TEST(EpsilonNet, CoversAndSeparates) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Gen gen(seed);
    const auto pts = gen.points(spaces::plane(), 400, 5.0);
    const double eps = 0.7;
    const auto net = epsilon_net(kEuclid, pts, eps);
    for (const Point& p : pts) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : net) best = std::min(best, euclidean(p, q));
      ASSERT_LT(best, eps);
    }
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j) ASSERT_GE(euclidean(net[i], net[j]), eps);
    EXPECT_TRUE(same_point(net.front(), pts.front()));
  }
}

TEST(EpsilonNet, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(epsilon_net(kEuclid, line_points({0.0}), 0.0), ParameterError);
}

TEST(Cauchy, ConvergentAndDivergentSequences) {
  std::vector<Point> harmonic, linear, settles, jumps;
  for (int m = 1; m <= 300; ++m) {
    harmonic.push_back(Point{1.0 / m});
    linear.push_back(Point{static_cast<double>(m)});
    settles.push_back(Point{m <= 150 ? static_cast<double>(m % 2) : 7.0});
    jumps.push_back(Point{m < 295 ? 0.0 : 5.0});
  }
  EXPECT_EQ(cauchy_classify(harmonic, kEuclid, 50, 1e-2), CauchyVerdict::cauchy);
  EXPECT_EQ(cauchy_classify(linear, kEuclid, 50, 1e-2), CauchyVerdict::divergent);
  EXPECT_EQ(cauchy_classify(settles, kEuclid, 50, 1e-2), CauchyVerdict::cauchy);
  EXPECT_EQ(cauchy_classify(jumps, kEuclid, 50, 1e-2), CauchyVerdict::undetermined);
  EXPECT_THROW(cauchy_classify(harmonic, kEuclid, 150, 1e-2), ParameterError);
  EXPECT_EQ(to_string(CauchyVerdict::divergent), "divergent");
}
