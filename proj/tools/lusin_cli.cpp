#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lusin/errors.hpp"
#include "lusin/report.hpp"

namespace {

// "1.5" or "0,2" -> coordinates
std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw lusin::ConfigError("cannot read point '" + text + "'");
    }
  }
  if (out.empty()) throw lusin::ConfigError("empty point");
  return out;
}

struct Options {
  std::string target;
  std::uint64_t seed = 1;
  std::size_t samples = 0;
  double tol = 0.0;
  std::vector<double> eps;
  int depth = 4;
  std::string format = "json";
  std::string out;
  bool timing = false;
  std::vector<std::string> points;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("target", o.target, "catalog space or map name, or a JSON descriptor path")->required();
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--samples", o.samples, "sample count (>= 10)");
  cmd->add_option("--tol", o.tol, "tolerance (> 0)");
  cmd->add_option("--eps", o.eps, "net radii, e.g. --eps 0.5,0.1")->delimiter(',');
  cmd->add_option("--depth", o.depth, "stratification depth cap");
  cmd->add_option("--format", o.format, "json or csv");
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
  cmd->add_flag("--timing", o.timing, "record wall time per suite");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compactification and stratification checks for continuous bijections"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lusin 0.1.0");

  Options o;
  auto* verify = app.add_subcommand("verify", "metric, Lipschitz, net and escape suites");
  auto* compactify = app.add_subcommand("compactify", "g, h and delta at the given points, plus nets");
  auto* stratify = app.add_subcommand("stratify", "level table and properness consistency for a map");
  auto* report = app.add_subcommand("report", "verify, stratify and the homeomorphism certificate");
  for (auto* c : {verify, compactify, stratify, report}) add_common(c, o);
  compactify->add_option("points", o.points, "points, one coordinate list each (\"2.5\" or \"1,2\")");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return lusin::kExitConfig;
  }

  try {
    lusin::RunConfig cfg;
    cfg.command = lusin::parse_command(app.get_subcommands().front()->get_name());
    cfg.target = o.target;
    cfg.seed = o.seed;
    if (!app.get_subcommands().front()->get_option("--samples")->empty()) cfg.samples = o.samples;
    if (!app.get_subcommands().front()->get_option("--tol")->empty()) cfg.tolerance = o.tol;
    cfg.epsilons = o.eps;
    cfg.depth = o.depth;
    cfg.format = lusin::parse_format(o.format);
    if (!o.out.empty()) cfg.output_path = o.out;
    cfg.timing = o.timing;
    for (const auto& p : o.points) cfg.points.push_back(parse_point(p));

    const lusin::RunReport rep = lusin::run(cfg);
    lusin::emit_report(rep, std::cout);
    const int code = lusin::exit_code(rep);
    if (code != lusin::kExitPass) {
      for (const auto& s : rep.suites)
        if (!s.pass) std::cerr << "lusin: suite " << s.name << " failed (" << s.violations << " violations)\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "lusin: " << e.what() << '\n';
    return lusin::exit_code(e);
  }
}
