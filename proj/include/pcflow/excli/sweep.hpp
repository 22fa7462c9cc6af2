#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcflow/excli/config.hpp"

namespace pcflow::excli {

/// Residuals below this are treated as converged.
inline constexpr double kSweepFloor = 1e-7;

struct SweepRow {
  std::string residual;
  std::vector<double> sups;    // one per resolution
  std::vector<double> ratios;  // sups[i+1] / sups[i]
  bool non_decaying = false;
};

struct SweepReport {
  std::string id;
  std::vector<int> resolutions;
  std::vector<SweepRow> rows;

  bool any_non_decaying() const;
  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const;
};

/// "32,64,128" -> {32, 64, 128}. Needs at least three strictly increasing values.
std::vector<int> parse_resolutions(const std::string& text);
void validate_resolutions(const std::vector<int>& res);

/// Identity residuals of the config's initial data at each resolution.
/// A residual is non-decaying when it is above the floor at the finest
/// resolution and the last refinement shrank it by less than half.
SweepReport sweep(const ExperimentConfig& c, const std::vector<int>& resolutions);

/// Writes sweep.csv and sweep.json into `dir`.
void write_sweep(const SweepReport& r, const std::filesystem::path& dir);

}  // namespace pcflow::excli
