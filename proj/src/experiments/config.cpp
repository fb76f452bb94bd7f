#include "blab/experiments/config.hpp"

#include <json.hpp>

namespace blab::experiments {

using nlohmann::json;

namespace {

const std::vector<std::pair<Scenario, std::string>>& names() {
  static const std::vector<std::pair<Scenario, std::string>> n = {
      {Scenario::PartialSmoothing, "partial-smoothing"},
      {Scenario::ConjSmoothing, "conj-smoothing"},
      {Scenario::Hardy, "hardy"},
      {Scenario::Duality, "duality"},
      {Scenario::Decomposition, "decomposition"},
      {Scenario::Ftc, "ftc"},
  };
  return n;
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

template <class T>
T get(const json& j, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, int>) {
      if (!j.is_number_integer()) fail(key + ": expected an integer");
    } else if constexpr (std::is_same_v<T, double>) {
      if (!j.is_number()) fail(key + ": expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.is_string()) fail(key + ": expected a string");
    }
    return j.get<T>();
  } catch (const json::exception& e) {
    fail(key + ": " + e.what());
  }
}

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) fail(what + ": expected an object");
}

geometry::DomainKind parse_kind(const std::string& name) {
  try {
    return geometry::parse_domain_kind(name);
  } catch (const Error& e) {
    fail(std::string("domain.kind: ") + e.what());
  }
}

DomainSpec parse_domain(const json& j) {
  DomainSpec d;
  if (j.is_string()) {
    d.kind = parse_kind(j.get<std::string>());
    return d;
  }
  require_object(j, "domain");
  for (const auto& [key, v] : j.items()) {
    if (key == "kind")
      d.kind = parse_kind(get<std::string>(v, "domain.kind"));
    else if (key == "rho")
      d.rho = get<double>(v, "domain.rho");
    else
      fail("domain: unknown key '" + key + "'");
  }
  return d;
}

void in_range(double v, double lo, double hi, const std::string& what) {
  if (!(v >= lo && v <= hi))
    fail(what + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
         std::to_string(hi) + "]");
}

ScenarioConfig from_json(const json& j) {
  require_object(j, "config");
  if (!j.contains("scenario")) fail("config: missing 'scenario'");
  ScenarioConfig c = default_config(parse_scenario(get<std::string>(j["scenario"], "scenario")));
  for (const auto& [key, v] : j.items()) {
    if (key == "scenario") continue;
    if (key == "domain") {
      c.domains = {parse_domain(v)};
    } else if (key == "domains") {
      if (!v.is_array() || v.empty()) fail("domains: expected a non-empty array");
      c.domains.clear();
      for (const auto& d : v) c.domains.push_back(parse_domain(d));
    } else if (key == "k") {
      c.k = get<int>(v, key);
      // k1, k2 follow k unless given
      if (!j.contains("k1")) c.k1 = c.k;
      if (!j.contains("k2")) c.k2 = c.k;
    } else if (key == "k1") {
      c.k1 = get<int>(v, key);
    } else if (key == "k2") {
      c.k2 = get<int>(v, key);
    } else if (key == "basis_size") {
      c.basis_size = get<int>(v, key);
    } else if (key == "family_size") {
      c.family_size = get<int>(v, key);
    } else if (key == "grid") {
      require_object(v, "grid");
      for (const auto& [g, x] : v.items()) {
        if (g == "nr") c.grid.nr = get<int>(x, "grid.nr");
        else if (g == "ntheta") c.grid.ntheta = get<int>(x, "grid.ntheta");
        else if (g == "delta") c.grid.delta = get<double>(x, "grid.delta");
        else fail("grid: unknown key '" + g + "'");
      }
    } else if (key == "collar" || key == "inset") {
      require_object(v, key);
      CollarSpec& cs = key == "collar" ? c.collar : c.inset;
      for (const auto& [g, x] : v.items()) {
        if (g == "ntau") cs.ntau = get<int>(x, key + ".ntau");
        else if (g == "ntheta") cs.ntheta = get<int>(x, key + ".ntheta");
        else if (g == "tau_min") cs.tau_min = get<double>(x, key + ".tau_min");
        else fail(key + ": unknown key '" + g + "'");
      }
    } else if (key == "flow") {
      require_object(v, "flow");
      for (const auto& [g, x] : v.items()) {
        if (g == "M") c.flow.M = get<int>(x, "flow.M");
        else if (g == "Q") c.flow.Q = get<int>(x, "flow.Q");
        else fail("flow: unknown key '" + g + "'");
      }
    } else if (key == "tolerances") {
      require_object(v, "tolerances");
      for (const auto& [t, x] : v.items()) {
        if (!c.tolerances.count(t))
          fail("tolerances: '" + t + "' is not read by " + to_string(c.scenario));
        c.tolerances[t] = get<double>(x, "tolerances." + t);
      }
    } else if (key == "output_dir") {
      c.output_dir = get<std::string>(v, key);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) fail("seed: expected a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else {
      fail("config: unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace

std::string to_string(Scenario s) {
  for (const auto& [v, n] : names())
    if (v == s) return n;
  return "?";
}

Scenario parse_scenario(const std::string& name) {
  for (const auto& [v, n] : names())
    if (n == name) return v;
  fail("unknown scenario '" + name + "'");
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> s = [] {
    std::vector<Scenario> out;
    for (const auto& p : names()) out.push_back(p.first);
    return out;
  }();
  return s;
}

geometry::Domain DomainSpec::make() const { return geometry::make_domain(kind, rho); }

double ScenarioConfig::tol(const std::string& key) const {
  auto it = tolerances.find(key);
  if (it == tolerances.end()) throw ContractError("no tolerance '" + key + "'");
  return it->second;
}

ScenarioConfig default_config(Scenario s) {
  using geometry::DomainKind;
  ScenarioConfig c;
  c.scenario = s;
  c.domains = {{DomainKind::Disk, 0.5}};
  switch (s) {
    case Scenario::Ftc:
      c.domains = {{DomainKind::Disk, 0.5}, {DomainKind::Annulus, 0.5}};
      c.grid = {16, 16, 1e-3};
      c.family_size = 10;
      c.tolerances = {{"ftc_sup", 1e-6}, {"runtime_s", 5.0}};
      break;
    case Scenario::Hardy:
      c.collar = {96, 64, 0.0};
      c.family_size = 20;
      c.tolerances = {{"hardy_slack", 0.05}, {"hardy_1d", 1e-10}};
      break;
    case Scenario::Decomposition:
      c.k = 2;
      c.collar = {128, 512, 0.0};
      c.inset = {128, 1024, 0.05};
      c.grid = {96, 512, 1e-3};
      c.tolerances = {{"zetah_k1", 1e-6},     {"zetah_k2", 1e-5},   {"zetah_k3", 1e-4},
                      {"zetah_refine", 4.0},  {"residual_k1", 1e-5}, {"residual_k2", 1e-4},
                      {"envelope", 10.0},     {"sobolev_growth", 1.5}};
      break;
    case Scenario::ConjSmoothing:
      c.domains = {{DomainKind::Disk, 0.5}, {DomainKind::Annulus, 0.5}};
      c.k = 2;
      c.basis_size = 32;
      c.grid = {32, 64, 1e-3};
      c.family_size = 10;
      c.tolerances = {{"disk_constant", 1e-8}, {"annulus_coefficient", 1e-6},
                      {"refine_drift", 1e-3},  {"ratio_envelope", 10.0}};
      break;
    case Scenario::PartialSmoothing:
      c.k = 3;
      c.basis_size = 16;
      c.grid = {64, 64, 1e-3};
      c.tolerances = {{"t_norm_drift", 0.02}, {"fd_growth", 0.30}, {"off_coefficient", 1e-9},
                      {"bf_drift", 0.02}};
      break;
    case Scenario::Duality:
      c.k = 2;
      c.basis_size = 16;
      c.grid = {48, 128, 1e-3};
      c.family_size = 20;
      c.tolerances = {{"c_emp_drift", 2.0}};
      break;
  }
  c.k1 = c.k2 = c.k;
  return c;
}

void validate(const ScenarioConfig& c) {
  in_range(c.k, 0, 3, "k");
  in_range(c.k1, 0, 3, "k1");
  in_range(c.k2, 0, 3, "k2");
  in_range(c.basis_size, 1, 256, "basis_size");
  in_range(c.family_size, 0, 1000, "family_size");
  in_range(c.grid.nr, 4, 4096, "grid.nr");
  in_range(c.grid.ntheta, 4, 8192, "grid.ntheta");
  in_range(c.grid.delta, 0.0, 0.1, "grid.delta");
  in_range(c.collar.ntau, 4, 1024, "collar.ntau");
  in_range(c.collar.ntheta, 8, 8192, "collar.ntheta");
  in_range(c.collar.tau_min, 0.0, 0.49, "collar.tau_min");
  in_range(c.inset.ntau, 4, 1024, "inset.ntau");
  in_range(c.inset.ntheta, 8, 8192, "inset.ntheta");
  in_range(c.inset.tau_min, 0.0, 0.49, "inset.tau_min");
  in_range(c.flow.M, 1, 4096, "flow.M");
  in_range(c.flow.Q, 1, 1024, "flow.Q");
  for (const auto& [k, v] : c.tolerances)
    if (!(v > 0.0)) fail("tolerances." + k + " must be positive");
  if (c.domains.empty()) fail("domains: empty");
  for (const auto& d : c.domains) {
    if (d.kind == geometry::DomainKind::Annulus) in_range(d.rho, 1e-3, 0.999, "domain.rho");
    if (d.kind == geometry::DomainKind::Ball2) fail("domain: ball2 is not used by the scenarios");
  }
  const bool disk_only = c.scenario == Scenario::Decomposition ||
                         c.scenario == Scenario::PartialSmoothing ||
                         c.scenario == Scenario::Duality || c.scenario == Scenario::Hardy;
  if (disk_only)
    for (const auto& d : c.domains)
      if (d.kind != geometry::DomainKind::Disk) fail(to_string(c.scenario) + " runs on the disk only");
  if (c.scenario == Scenario::Decomposition && (c.k < 1 || c.k > 2))
    fail("decomposition: k must be 1 or 2");
  if (c.scenario == Scenario::Duality && (c.k < 1 || c.k > 2)) fail("duality: k must be 1 or 2");
  if (c.scenario == Scenario::Duality && (c.k1 != c.k || c.k2 != c.k))
    fail("duality: the disk runs use k1 = k2 = k");
  if (c.scenario == Scenario::Ftc && c.family_size < 1) fail("ftc: family_size must be >= 1");
}

ScenarioConfig parse_config(const std::string& json_text) { return from_json(parse_text(json_text)); }

ScenarioConfig parse_config(const std::string& json_text, Scenario scenario) {
  json j = parse_text(json_text);
  require_object(j, "config");
  if (!j.contains("scenario")) j["scenario"] = to_string(scenario);
  ScenarioConfig c = from_json(j);
  if (c.scenario != scenario)
    fail("config is for scenario '" + to_string(c.scenario) + "', not '" + to_string(scenario) + "'");
  return c;
}

std::vector<ScenarioConfig> parse_suite(const std::string& json_text) {
  const json j = parse_text(json_text);
  require_object(j, "suite");
  for (const auto& [key, v] : j.items())
    if (key != "scenarios") fail("suite: unknown key '" + key + "'");
  if (!j.contains("scenarios") || !j["scenarios"].is_array()) fail("suite: expected 'scenarios' array");
  std::vector<ScenarioConfig> out;
  for (const auto& s : j["scenarios"]) out.push_back(from_json(s));
  return out;
}

std::string to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = to_string(c.scenario);
  j["domains"] = json::array();
  for (const auto& d : c.domains) {
    json dj{{"kind", geometry::to_string(d.kind)}};
    if (d.kind == geometry::DomainKind::Annulus) dj["rho"] = d.rho;
    j["domains"].push_back(dj);
  }
  j["k"] = c.k;
  j["k1"] = c.k1;
  j["k2"] = c.k2;
  j["basis_size"] = c.basis_size;
  j["family_size"] = c.family_size;
  j["grid"] = {{"nr", c.grid.nr}, {"ntheta", c.grid.ntheta}, {"delta", c.grid.delta}};
  j["collar"] = {{"ntau", c.collar.ntau}, {"ntheta", c.collar.ntheta}, {"tau_min", c.collar.tau_min}};
  j["inset"] = {{"ntau", c.inset.ntau}, {"ntheta", c.inset.ntheta}, {"tau_min", c.inset.tau_min}};
  j["flow"] = {{"M", c.flow.M}, {"Q", c.flow.Q}};
  j["tolerances"] = json::object();
  for (const auto& [k, v] : c.tolerances) j["tolerances"][k] = v;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

}  // namespace blab::experiments
