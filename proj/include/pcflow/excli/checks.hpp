#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace pcflow::excli {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct CheckInfo {
  int criterion;
  std::string name;
  std::string summary;
};

const std::vector<CheckInfo>& check_list();

struct CheckOptions {
  /// Shell glob matched against the check name or its criterion number.
  std::string filter = "*";
  /// Scratch runs go to <out_root>/check.
  std::filesystem::path out_root = "pcflow_out";
};

/// Runs the selected checks in criterion order. The last one also requires
/// every other selected check to have passed.
std::vector<CheckResult> run_checks(const CheckOptions& opts,
                                    const std::function<void(const CheckResult&)>& on_result = {});

std::string format_result(const CheckResult& r);

}  // namespace pcflow::excli
