#pragma once

#include "blab/experiments/config.hpp"
#include "blab/experiments/report.hpp"

namespace blab::experiments {

/// Runs one scenario.  Deterministic given the config (seed included) apart
/// from the recorded wall time.
ReportBundle run_scenario(const ScenarioConfig& config);

ReportBundle run_ftc(const ScenarioConfig& c);
ReportBundle run_hardy(const ScenarioConfig& c);
ReportBundle run_decomposition(const ScenarioConfig& c);
ReportBundle run_conj_smoothing(const ScenarioConfig& c);
ReportBundle run_partial_smoothing(const ScenarioConfig& c);
ReportBundle run_duality(const ScenarioConfig& c);

}  // namespace blab::experiments
