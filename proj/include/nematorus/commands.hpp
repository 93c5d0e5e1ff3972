#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nematorus/config.hpp"
#include "nematorus/field_io.hpp"
#include "nematorus/flow.hpp"
#include "nematorus/stationary.hpp"
#include "nematorus/summary.hpp"

namespace nematorus {

ArtifactMeta artifact_meta(const RunConfig& config);

/// Initial field described by the config: generated in sector h, or read from
/// init-file (whose own winding then defines the sector).
SectorField initial_field(const RunConfig& config);

/// Builds the run summary of a finished flow.
RunSummary summarize_flow(const RunConfig& config, const FlowResult& result,
                          double wall_time_s);

/// Runs one flow and writes summary.json, trace.csv and the director fields.
/// EnergyIncreased is recorded in summary.json and then rethrown.
RunSummary cmd_run_flow(const RunConfig& config);

struct SweepCell {
  WindingIndex h;
  bool ok = false;
  std::string error;
  RunSummary summary;
};

struct SweepResult {
  int h_max = 0;
  std::vector<SweepCell> cells;  // h_phi-major, matching the table rows

  const SweepCell& cell(long h_theta, long h_phi) const;
};

/// One flow per index in {0..h_max}^2. Cells run on config.jobs workers; the
/// coordinator writes every file after all cells finish.
SweepResult cmd_sweep_sectors(const RunConfig& config);

struct ConstantAnalysisResult {
  std::vector<double> b_values;
  std::vector<StabilityReport> reports;
};

/// Writes constant_energy.csv, bifurcation_lambda.csv and stability.json.
ConstantAnalysisResult cmd_constant_analysis(const RunConfig& config);

/// Writes threshold.csv and threshold.json.
ThresholdReport cmd_threshold(const RunConfig& config,
                              const std::function<void(const ThresholdProbe&)>& on_probe = {});

/// Writes director_field.csv from the input file or the initial datum; returns its path.
std::string cmd_export(const RunConfig& config);

/// Creates the output directory, throwing IoError on failure.
void ensure_output_dir(const std::string& dir);

}  // namespace nematorus
