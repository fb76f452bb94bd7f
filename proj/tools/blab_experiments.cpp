// Scenario runner.
//   blab_experiments list
//   blab_experiments defaults <scenario>
//   blab_experiments run <scenario|suite> --config <path> [--out <dir>] [--seed <n>]
// Exit status: 0 all criteria pass, 1 a criterion fails or a run aborts,
// 2 usage or configuration error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "blab/experiments/scenarios.hpp"

using namespace blab::experiments;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw blab::ConfigError("cannot read config " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

const char* criteria_of(Scenario s) {
  switch (s) {
    case Scenario::Ftc: return "1";
    case Scenario::Hardy: return "2";
    case Scenario::Decomposition: return "3, 4";
    case Scenario::ConjSmoothing: return "5, 6, 9";
    case Scenario::PartialSmoothing: return "7";
    case Scenario::Duality: return "8";
  }
  return "";
}

int run_one(ScenarioConfig cfg, const std::string& dir) {
  const ReportBundle b = run_scenario(cfg);
  emit_report(b, dir);
  for (const auto& c : b.criteria) std::cout << c.line() << "\n";
  std::cout << b.scenario << ": " << (b.passed() ? "PASS" : "FAIL") << " (" << dir << ")\n";
  return b.passed() ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blab scenario runner"};
  app.require_subcommand(1);

  app.add_subcommand("list", "print the scenarios");

  auto* defaults = app.add_subcommand("defaults", "print the default config of a scenario");
  std::string dname;
  defaults->add_option("scenario", dname)->required();

  auto* run = app.add_subcommand("run", "run a scenario, or 'suite' for a list of scenarios");
  std::string name, config_path, out_dir;
  std::optional<std::uint64_t> seed;
  run->add_option("scenario", name)->required();
  run->add_option("--config", config_path, "JSON config")->required();
  run->add_option("--out", out_dir, "output directory (overrides output_dir)");
  run->add_option("--seed", seed, "seed (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (app.got_subcommand("list")) {
      for (Scenario s : all_scenarios())
        std::cout << to_string(s) << "\tcriteria " << criteria_of(s) << "\n";
      return kOk;
    }
    if (app.got_subcommand("defaults")) {
      std::cout << to_json(default_config(parse_scenario(dname)));
      return kOk;
    }

    const std::string text = slurp(config_path);
    if (name == "suite") {
      std::vector<ScenarioConfig> cfgs = parse_suite(text);
      const std::string root = out_dir.empty() ? "out" : out_dir;
      int rc = kOk;
      ReportBundle top;
      top.scenario = "suite";
      top.config_echo = text;
      for (auto& c : cfgs) {
        if (seed) c.seed = *seed;
        const std::string dir = (std::filesystem::path(root) / to_string(c.scenario)).string();
        const ReportBundle b = run_scenario(c);
        emit_report(b, dir);
        for (const auto& cr : b.criteria) {
          std::cout << cr.line() << "\n";
          top.criteria.push_back(cr);
        }
        top.seconds += b.seconds;
        top.provenance.emplace_back(b.scenario, dir);
        if (!b.passed()) rc = kFail;
      }
      emit_report(top, root);
      std::cout << "suite: " << top.criteria.size() << " criteria, "
                << (rc == kOk ? "PASS" : "FAIL") << "\n";
      return rc;
    }

    ScenarioConfig cfg = parse_config(text, parse_scenario(name));
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    return run_one(cfg, cfg.output_dir);
  } catch (const blab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
