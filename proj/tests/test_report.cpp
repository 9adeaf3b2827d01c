#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lusin/descriptor.hpp"
#include "lusin/errors.hpp"
#include "lusin/report.hpp"

using namespace lusin;

namespace {

const std::string kFixtures = std::string(LUSIN_FIXTURE_DIR) + "/";

RunConfig small(Command c, std::string target) {
  RunConfig cfg;
  cfg.command = c;
  cfg.target = std::move(target);
  cfg.seed = 7;
  cfg.samples = 60;
  cfg.epsilons = {0.5, 0.1};
  return cfg;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Config, Preconditions) {
  RunConfig c = small(Command::verify, "half-line");
  EXPECT_NO_THROW(validate_config(c));
  c.samples = 5;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small(Command::verify, "half-line");
  c.tolerance = 0.0;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small(Command::verify, "half-line");
  c.depth = 0;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small(Command::verify, "half-line");
  c.epsilons = {0.1, -1.0};
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small(Command::verify, "");
  EXPECT_THROW(validate_config(c), ConfigError);
  EXPECT_THROW(parse_command("plot"), ConfigError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
  EXPECT_EQ(parse_command("stratify"), Command::stratify);
}

TEST(ExitCodes, FromErrors) {
  EXPECT_EQ(exit_code(ConfigError("x")), kExitConfig);
  EXPECT_EQ(exit_code(DescriptorError("x")), kExitConfig);
  EXPECT_EQ(exit_code(ParameterError("x")), kExitConfig);
  EXPECT_EQ(exit_code(DomainError("x")), kExitConfig);
  EXPECT_EQ(exit_code(IoError("x")), kExitIo);
  EXPECT_EQ(exit_code(MapError("x")), kExitViolation);
  EXPECT_EQ(exit_code(std::runtime_error("x")), kExitViolation);
}

TEST(Round12, TwelveSignificantDigits) {
  EXPECT_EQ(round12(1.0 / 3.0), 0.333333333333);
  EXPECT_EQ(round12(0.0), 0.0);
  EXPECT_EQ(round12(123456789012345.0), 123456789012000.0);
  EXPECT_TRUE(std::isinf(round12(INFINITY)));
}

TEST(Verify, HalfLinePasses) {
  const RunReport r = run_verify(small(Command::verify, "half-line"));
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(exit_code(r), kExitPass);
  EXPECT_EQ(r.target_kind, "space");
  ASSERT_EQ(r.nets.size(), 2u);
  EXPECT_LT(r.nets[0].net_size, r.nets[1].net_size);
  for (const auto& s : r.suites) EXPECT_EQ(s.wall_ms, 0.0);
}

TEST(Verify, BrokenFixtureListsTriangleViolations) {
  const RunReport r = run_verify(small(Command::verify, "squared-half-line"));
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(exit_code(r), kExitViolation);
  const auto& d = r.suites.front();
  EXPECT_EQ(d.name, "metric_axioms_d");
  EXPECT_GT(d.violations, 0u);
  ASSERT_FALSE(d.details.empty());
  EXPECT_EQ(d.details.front().rfind("triangle", 0), 0u);
}

TEST(Verify, MapTargetsAddBijectionAndContinuity) {
  const RunReport r = run_verify(small(Command::verify, "figure-eight"));
  EXPECT_EQ(r.target_kind, "map");
  bool bij = false, cont = false;
  for (const auto& s : r.suites) {
    bij = bij || (s.name == "bijection" && s.pass);
    cont = cont || (s.name == "continuity" && s.pass);
  }
  EXPECT_TRUE(bij && cont);
}

TEST(Verify, PlaneFineNetIsAConfigError) {
  RunConfig c = small(Command::verify, "plane");
  c.epsilons = {0.02};
  EXPECT_THROW(run_verify(c), ConfigError);
}

TEST(Verify, UnknownTarget) { EXPECT_THROW(run_verify(small(Command::verify, "torus")), ConfigError); }

TEST(Compactify, ProbeValues) {
  RunConfig c = small(Command::compactify, "half-line");
  c.points = {{2.5}, {10.2}};
  const RunReport r = run_compactify(c);
  ASSERT_EQ(r.probes.size(), 2u);
  EXPECT_EQ(r.probes[0].g, round12(1.0 / 3.0));
  EXPECT_EQ(r.probes[1].h, round12(1.0 / 11.0));
  EXPECT_EQ(r.delta_matrix[0][1], round12(14.0 / 33.0));
  EXPECT_EQ(r.delta_matrix[1][0], r.delta_matrix[0][1]);
  c.points = {{-1.0}};
  EXPECT_THROW(run_compactify(c), DomainError);
}

TEST(Compactify, TwoRayPointsAreTagged) {
  RunConfig c = small(Command::compactify, "two-ray");
  c.points = {{3.0, 2.0}, {3.0, 0.0}};
  const RunReport r = run_compactify(c);
  EXPECT_EQ(r.delta_matrix[0][1], round12(2.0 / 3.0));
}

TEST(Stratify, TableAndDepthCap) {
  RunConfig c = small(Command::stratify, "lollipop");
  c.samples = 10000;
  const RunReport r = run_stratify(c);
  EXPECT_TRUE(r.pass());
  ASSERT_EQ(r.levels.size(), 2u);
  ASSERT_TRUE(r.terminated);
  EXPECT_TRUE(*r.terminated);
  ASSERT_EQ(r.levels[0].next_clusters.size(), 1u);
  EXPECT_NEAR(r.levels[0].next_clusters[0][0], 1.0, 1e-2);
  EXPECT_EQ(r.consistency_agreement, std::optional<double>(1.0));

  c.depth = 1;
  const RunReport capped = run_stratify(c);
  EXPECT_EQ(capped.levels.size(), 1u);
  EXPECT_EQ(capped.terminated, std::optional<bool>(false));

  EXPECT_THROW(run_stratify(small(Command::stratify, "half-line")), ConfigError);
}

TEST(Serialization, JsonRoundTripsFieldForField) {
  RunConfig c = small(Command::compactify, "two-ray");
  c.points = {{3.0, 2.0}, {1.25, 0.0}};
  c.output_path = "/tmp/x.json";
  const RunReport r = run_compactify(c);
  EXPECT_EQ(report_from_json(to_json(r)), r);

  RunConfig s = small(Command::stratify, "spiral-lollipop");
  s.samples.reset();
  const RunReport t = run_stratify(s);
  const RunReport back = report_from_json(to_json(t));
  EXPECT_EQ(back, t);
  EXPECT_EQ(to_json(back), to_json(t));
  EXPECT_THROW(report_from_json("{\"config\": 1}"), ConfigError);
}

TEST(Serialization, CsvHasOneRowPerSuite) {
  const RunReport r = run_verify(small(Command::verify, "line"));
  const std::string csv = to_csv(r);
  EXPECT_EQ(lines(csv), r.suites.size() + 1);
  EXPECT_EQ(csv.rfind("suite,checked,violations,max_slack,wall_ms,verdict\n", 0), 0u);
}

TEST(Serialization, DeterministicForFixedSeed) {
  const RunConfig c = small(Command::verify, "two-ray");
  EXPECT_EQ(to_json(run_verify(c)), to_json(run_verify(c)));
  RunConfig d = c;
  d.seed = 8;
  EXPECT_NE(to_json(run_verify(c)), to_json(run_verify(d)));
}

TEST(Emit, WritesFileOrFailsWithIoError) {
  RunConfig c = small(Command::verify, "half-line");
  const auto path = std::filesystem::temp_directory_path() / "lusin_emit_test.csv";
  c.output_path = path.string();
  c.format = OutputFormat::csv;
  const RunReport r = run_verify(c);
  std::ostringstream unused;
  emit_report(r, unused);
  EXPECT_TRUE(unused.str().empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), to_csv(r));
  std::filesystem::remove(path);

  RunReport bad = r;
  bad.config.output_path = "/nonexistent-dir/r.csv";
  EXPECT_THROW(emit_report(bad, unused), IoError);
}

TEST(Descriptor, MatchesCatalogHalfLine) {
  const Target t = load_descriptor_file(kFixtures + "half_line.json");
  EXPECT_EQ(t.name, "half-line-custom");
  ASSERT_TRUE(t.cspace);
  EXPECT_FALSE(t.is_map());
  const CompactifiedSpace cat = *compactified::find("half-line");
  for (double x : {0.0, 0.3, 2.5, 10.2, 400.0}) EXPECT_EQ(t.cspace->h(Point{x}), cat.h(Point{x}));
}

TEST(Descriptor, MapFromBranches) {
  const Target t = resolve_target(kFixtures + "lollipop.json");
  ASSERT_TRUE(t.map);
  const MapInstance cat = maps::lollipop();
  for (double s : {0.0, 0.5, 3.0, 80.0}) EXPECT_LT(euclidean(t.map->forward(Point{s}), cat.forward(Point{s})), 1e-15);
  ASSERT_TRUE(t.map->known_x1);
  EXPECT_EQ(t.map->known_x1->size(), 1u);
}

TEST(Descriptor, RaysWithGeometricRadii) {
  const Target t = load_descriptor_file(kFixtures + "two_ray_rays.json");
  ASSERT_TRUE(t.cspace);
  EXPECT_TRUE(t.space.disjoint_branches);
  EXPECT_EQ(t.cspace->x0().branch, std::optional<int>(0));
  EXPECT_DOUBLE_EQ(t.cspace->exhaustion().radius(3), 0.125);
  // K_n = [0, 2n]: at parameter 5 the best term is r_3 = 1/8
  EXPECT_DOUBLE_EQ(t.cspace->g(t.space.on_branch(1, 5.0)), 0.125);
}

TEST(Descriptor, Errors) {
  EXPECT_THROW(load_descriptor_file(kFixtures + "constant_radii.json"), DescriptorError);
  EXPECT_THROW(load_descriptor_file(kFixtures + "malformed.json"), ConfigError);
  EXPECT_THROW(load_descriptor_file(kFixtures + "missing.json"), IoError);
  EXPECT_THROW(resolve_target(kFixtures + "missing.json"), ConfigError);
  const std::string torus = R"j({"space": "torus", "x0": [0], "exhaustion": {}})j";
  const std::string no_exhaustion = R"j({"space": "half-line", "x0": [0]})j";
  const std::string bad_x0 =
      R"j({"space": "half-line", "x0": [-1], "exhaustion": {"intervals": "[0,n]", "radii": "1/n", "n_max": 2000}})j";
  const std::string bad_intervals =
      R"j({"space": "half-line", "x0": [0], "exhaustion": {"intervals": "(0,n)", "radii": "1/n", "n_max": 2000}})j";
  const std::string bad_form = R"j({"space": "half-line", "x0": [0],
      "branches": [{"form": "rational_circle", "coefficients": [1, 2]}],
      "exhaustion": {"intervals": "[0,n]", "radii": "1/n", "n_max": 2000}})j";
  EXPECT_THROW(load_descriptor(torus), ConfigError);
  EXPECT_THROW(load_descriptor(no_exhaustion), ConfigError);
  EXPECT_THROW(load_descriptor(bad_x0), DescriptorError);
  EXPECT_THROW(load_descriptor(bad_intervals), ConfigError);
  EXPECT_THROW(load_descriptor(bad_form), DescriptorError);
  EXPECT_THROW(load_descriptor("[1, 2]"), ConfigError);
}

TEST(Descriptor, CatalogNamesResolve) {
  for (const auto& n : catalog_targets()) EXPECT_NO_THROW(resolve_target(n)) << n;
}
