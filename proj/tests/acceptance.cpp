// Acceptance run: every scenario at its default resolution, one line per
// criterion.  Exit status 0 only when all nine criteria pass.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "blab/experiments/scenarios.hpp"

using namespace blab::experiments;

namespace {

// Pinned tolerances, per scenario.
const std::map<Scenario, std::map<std::string, double>> kTolerances = {
    {Scenario::Ftc, {{"ftc_sup", 1e-6}, {"runtime_s", 5.0}}},
    {Scenario::Hardy, {{"hardy_slack", 0.05}, {"hardy_1d", 1e-10}}},
    {Scenario::Decomposition,
     {{"zetah_k1", 1e-6}, {"zetah_k2", 1e-5}, {"zetah_k3", 1e-4}, {"zetah_refine", 4.0},
      {"residual_k1", 1e-5}, {"residual_k2", 1e-4}, {"envelope", 10.0}, {"sobolev_growth", 1.5}}},
    {Scenario::ConjSmoothing,
     {{"disk_constant", 1e-8}, {"annulus_coefficient", 1e-6}, {"refine_drift", 1e-3},
      {"ratio_envelope", 10.0}}},
    {Scenario::PartialSmoothing,
     {{"t_norm_drift", 0.02}, {"fd_growth", 0.30}, {"off_coefficient", 1e-9}, {"bf_drift", 0.02}}},
    {Scenario::Duality, {{"c_emp_drift", 2.0}}},
};

}  // namespace

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : "acceptance_out";
  std::map<int, CriterionResult> merged;
  for (Scenario s : all_scenarios()) {
    ScenarioConfig c = default_config(s);
    c.tolerances = kTolerances.at(s);
    c.seed = 20240601;
    ReportBundle b;
    try {
      b = run_scenario(c);
      emit_report(b, out + "/" + to_string(s));
    } catch (const std::exception& e) {
      std::cout << "ERROR scenario " << to_string(s) << ": " << e.what() << "\n";
      continue;
    }
    std::cout << "# " << b.scenario << " " << b.seconds << " s\n";
    for (const auto& r : b.criteria) {
      auto it = merged.find(r.id);
      if (it == merged.end()) {
        merged[r.id] = r;
      } else {
        it->second.passed = it->second.passed && r.passed;
        it->second.detail += "; " + r.detail;
      }
    }
  }
  int failed = 0;
  for (int id = 1; id <= 9; ++id) {
    auto it = merged.find(id);
    if (it == merged.end()) {
      std::cout << "FAIL criterion " << id << " not evaluated\n";
      ++failed;
      continue;
    }
    std::cout << it->second.line() << "\n";
    failed += !it->second.passed;
  }
  std::cout << (9 - failed) << "/9 criteria pass\n";
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
