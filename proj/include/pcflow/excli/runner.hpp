#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "pcflow/excli/config.hpp"
#include "pcflow/kahler.hpp"
#include "pcflow/monitor.hpp"
#include "pcflow/sphere.hpp"
#include "pcflow/torus.hpp"

namespace pcflow::excli {

inline constexpr int kSummarySchemaVersion = 1;

/// A run failed after its configuration was accepted (NaN, I/O).
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::filesystem::path out_root = "pcflow_out";
  std::optional<std::uint64_t> seed;  // overrides experiment.seed
};

struct RunResult {
  std::string id;
  std::filesystem::path dir;
  double wall_time = 0.0;
  MonitorSeries series;
  std::optional<AdjudicationReport> adjudication;
  nlohmann::json summary;
};

/// --out if given, else $PCFLOW_OUT, else ./pcflow_out.
std::filesystem::path output_root(const std::optional<std::string>& cli_out);

ScalarField torus_initial(const ExperimentConfig& c);
SphericalSpectrum sphere_initial(const ExperimentConfig& c);

/// Monitors only; no files written.
MonitorSeries simulate(const ExperimentConfig& c, std::optional<AdjudicationReport>* adjudication = nullptr);

/// Writes monitors.csv, summary.json, adjudication.json (shrinking sphere)
/// and snapshots when enabled. A NaN abort leaves a partial CSV ending in a
/// "# truncated" row and throws RuntimeFailure.
RunResult run_experiment(ExperimentConfig c, const RunOptions& opts);

/// Directory a config writes to under `out_root`.
std::filesystem::path run_directory(const ExperimentConfig& c, const std::filesystem::path& out_root);

nlohmann::json adjudication_json(const AdjudicationReport& r);

}  // namespace pcflow::excli
