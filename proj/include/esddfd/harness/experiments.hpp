#pragma once

// Experiment orchestration: config in, report out.

#include <optional>
#include <string>
#include <vector>

#include "esddfd/harness/config.hpp"
#include "esddfd/harness/report.hpp"

namespace esddfd::harness {

inline constexpr const char* kToolVersion = "0.1.0";

/// Fixed CSV columns of each experiment.
std::vector<std::string> report_columns(Experiment experiment);

/// Runs a validated config. Rows are deterministic; only metadata.timestamp
/// varies between runs. Solver blow-up is reported as data (diverged flag);
/// any other module error propagates.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct BatchResult {
  ExperimentConfig config;
  std::optional<ExperimentReport> report;
  /// Message of the exception that aborted the run, if any.
  std::string error;
};

/// Runs independent experiments concurrently; results keep input order.
std::vector<BatchResult> run_batch(const std::vector<ExperimentConfig>& configs);

/// A sensible plot of each experiment's report.
PlotSpec default_plot(Experiment experiment);

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace esddfd::harness
