#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blab/geometry/domain.hpp"

namespace blab::experiments {

enum class Scenario { PartialSmoothing, ConjSmoothing, Hardy, Duality, Decomposition, Ftc };

std::string to_string(Scenario s);
/// Throws ConfigError for unknown names.
Scenario parse_scenario(const std::string& name);
const std::vector<Scenario>& all_scenarios();

struct DomainSpec {
  geometry::DomainKind kind = geometry::DomainKind::Disk;
  double rho = 0.5;
  geometry::Domain make() const;
};

struct GridSpec {
  int nr = 32;
  int ntheta = 64;
  double delta = 1e-3;
};

/// Chebyshev-by-Fourier grid on the collar.  tau_min insets the grid from
/// the boundary in flow time.
struct CollarSpec {
  int ntau = 128;
  int ntheta = 512;
  double tau_min = 0.0;
};

struct FlowSpec {
  int M = 64;
  int Q = 32;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::Ftc;
  std::vector<DomainSpec> domains;
  int k = 1;
  int k1 = 1;
  int k2 = 1;
  int basis_size = 32;
  GridSpec grid;
  CollarSpec collar;
  CollarSpec inset{128, 1024, 0.05};  // decomposition family
  FlowSpec flow;
  int family_size = 10;
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  double tol(const std::string& key) const;
};

/// Defaults for the scenario, including every tolerance it reads.
ScenarioConfig default_config(Scenario s);

/// Parses one scenario object over the defaults of its scenario.  Unknown
/// keys, wrong types and out-of-range values throw ConfigError.
ScenarioConfig parse_config(const std::string& json_text);
/// As above; a missing "scenario" key defaults to `scenario`, a different
/// one is an error.
ScenarioConfig parse_config(const std::string& json_text, Scenario scenario);
/// A suite document {"scenarios": [ ... ]}; the list may be empty.
std::vector<ScenarioConfig> parse_suite(const std::string& json_text);

/// Canonical JSON echo (two-space indent, sorted keys).
std::string to_json(const ScenarioConfig& c);

/// Throws ConfigError when a field lies outside its documented range.
void validate(const ScenarioConfig& c);

}  // namespace blab::experiments
