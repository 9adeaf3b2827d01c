#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lusin {

enum class Command { verify, compactify, stratify, report };
enum class OutputFormat { json, csv };

std::string_view to_string(Command c);
std::string_view to_string(OutputFormat f);
Command parse_command(std::string_view s);      // ConfigError on unknown names
OutputFormat parse_format(std::string_view s);  // ConfigError on unknown names

struct RunConfig {
  Command command = Command::verify;
  std::string target;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;   // unset: command default
  std::optional<double> tolerance;      // unset: command default
  std::vector<double> epsilons;         // empty: default list for the target
  int depth = 4;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;
  std::vector<std::vector<double>> points;  // compactify probes
  bool timing = false;                      // record wall time (breaks byte stability)

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError when samples < 10, tolerance <= 0, depth < 1, or an
/// epsilon is not positive.
void validate_config(const RunConfig& config);

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_slack = 0.0;
  double wall_ms = 0.0;
  bool pass = true;
  std::vector<std::string> details;

  friend bool operator==(const SuiteResult&, const SuiteResult&) = default;
};

struct NetRow {
  double epsilon = 0.0;
  std::size_t n_eps = 0;
  std::size_t net_size = 0;
  std::size_t grid_size = 0;
  std::size_t probes = 0;
  std::size_t uncovered = 0;
  double worst = 0.0;

  friend bool operator==(const NetRow&, const NetRow&) = default;
};

struct ProbeRow {
  std::vector<double> point;
  double g = 0.0;
  double h = 0.0;
  double delta_to_x0 = 0.0;

  friend bool operator==(const ProbeRow&, const ProbeRow&) = default;
};

struct LevelRow {
  int k = 0;
  std::size_t x_samples = 0;
  std::size_t y_samples = 0;
  std::size_t z_samples = 0;
  std::size_t next_samples = 0;
  std::vector<int> escape_branches;
  std::vector<std::vector<double>> limit_points;
  std::vector<std::vector<double>> next_clusters;  // single-linkage centroids of Y_{k+1}

  friend bool operator==(const LevelRow&, const LevelRow&) = default;
};

struct RunReport {
  RunConfig config;
  std::string target_kind;  // "space" or "map"
  std::vector<SuiteResult> suites;
  std::vector<NetRow> nets;
  std::vector<ProbeRow> probes;
  std::vector<std::vector<double>> delta_matrix;
  std::vector<LevelRow> levels;
  std::optional<bool> terminated;
  std::optional<double> consistency_agreement;
  std::optional<double> certificate_agreement;

  bool pass() const noexcept;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport run_verify(const RunConfig& config);
RunReport run_compactify(const RunConfig& config);
RunReport run_stratify(const RunConfig& config);
RunReport run_report(const RunConfig& config);
RunReport run(const RunConfig& config);

std::string to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);
std::string to_csv(const RunReport& report);

/// Writes the report to config.output_path, or to `fallback` when unset.
/// Throws IoError when the path cannot be written.
void emit_report(const RunReport& report, std::ostream& fallback);

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

int exit_code(const RunReport& report) noexcept;
int exit_code(const std::exception& error) noexcept;

/// Rounds to 12 significant digits, the precision of every printed number.
double round12(double v) noexcept;

}  // namespace lusin
