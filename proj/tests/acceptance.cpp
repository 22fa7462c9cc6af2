// One line per acceptance criterion; exit status 3 if any fails.

#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include <fmt/format.h>

#include "pcflow/excli/checks.hpp"

int main(int argc, char** argv) {
  pcflow::excli::CheckOptions opts;
  opts.out_root = std::filesystem::temp_directory_path() / "pcflow_acceptance";
  if (argc > 1) opts.filter = argv[1];
  if (const char* env = std::getenv("PCFLOW_OUT")) opts.out_root = env;
  bool ok = true;
  for (const auto& r : pcflow::excli::run_checks(opts, [](const auto& r) {
         fmt::print("{}\n", pcflow::excli::format_result(r));
         std::fflush(stdout);
       }))
    ok = ok && r.passed;
  return ok ? 0 : 3;
}
