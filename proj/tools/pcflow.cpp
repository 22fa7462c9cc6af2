#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pcflow/excli/catalog.hpp"
#include "pcflow/excli/checks.hpp"
#include "pcflow/excli/config.hpp"
#include "pcflow/excli/runner.hpp"
#include "pcflow/excli/sweep.hpp"

namespace fs = std::filesystem;
using namespace pcflow::excli;

namespace {

enum Exit { kOk = 0, kConfigError = 1, kRuntimeFailure = 2, kAcceptanceFailure = 3 };

// A path to an ini file, or the name of a catalog experiment.
ExperimentConfig resolve_config(const std::string& arg) {
  if (fs::exists(arg)) return load_config(arg);
  for (const auto& e : catalog())
    if (e.name == arg) return parse_config(e.text);
  throw ConfigError("no config file or catalog experiment named '" + arg + "'");
}

int run_command(const std::vector<std::string>& args, const fs::path& root, std::optional<std::uint64_t> seed,
                int threads) {
  std::vector<ExperimentConfig> configs;
  try {
    for (const auto& a : args) configs.push_back(resolve_config(a));
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  }
  for (std::size_t i = 0; i < configs.size(); ++i)
    for (std::size_t j = i + 1; j < configs.size(); ++j)
      if (configs[i].id == configs[j].id) {
        fmt::print(stderr, "config error: duplicate experiment id '{}'\n", configs[i].id);
        return kConfigError;
      }

  // Runs are independent; a pool of workers shares the OpenMP budget.
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(configs.size())));
  omp_set_num_threads(std::max(1, threads / workers));
  std::atomic<std::size_t> next{0};
  std::atomic<int> status{kOk};
  std::mutex io;
  const auto worker = [&] {
    for (std::size_t i; (i = next++) < configs.size();) {
      try {
        const RunResult r = run_experiment(configs[i], RunOptions{root, seed});
        std::lock_guard lock(io);
        fmt::print("{}: {} rows, {:.2f}s -> {}\n", r.id, r.series.rows.size(), r.wall_time, r.dir.string());
      } catch (const ConfigError& e) {
        std::lock_guard lock(io);
        fmt::print(stderr, "config error: {}: {}\n", configs[i].id, e.what());
        status = std::max(status.load(), static_cast<int>(kConfigError));
      } catch (const std::exception& e) {
        std::lock_guard lock(io);
        fmt::print(stderr, "runtime failure: {}\n", e.what());
        status = kRuntimeFailure;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return status;
}

int sweep_command(const std::string& arg, const std::string& res, const fs::path& root,
                  std::optional<std::uint64_t> seed) {
  ExperimentConfig c;
  std::vector<int> resolutions;
  try {
    c = resolve_config(arg);
    if (seed) c.seed = *seed;
    resolutions = parse_resolutions(res);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  }
  try {
    const SweepReport rep = sweep(c, resolutions);
    const fs::path dir = run_directory(c, root) / "sweep";
    write_sweep(rep, dir);
    for (const auto& row : rep.rows) {
      fmt::print("{:<18}", row.residual);
      for (double s : row.sups) fmt::print(" {:10.3e}", s);
      fmt::print("{}\n", row.non_decaying ? "  non-decaying" : "");
    }
    fmt::print("-> {}\n", dir.string());
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "runtime failure: {}\n", e.what());
    return kRuntimeFailure;
  }
  return kOk;
}

int list_command(const std::string& show) {
  if (!show.empty()) {
    try {
      fmt::print("{}", catalog_entry(show).text);
      return kOk;
    } catch (const ConfigError& e) {
      fmt::print(stderr, "config error: {}\n", e.what());
      return kConfigError;
    }
  }
  for (const auto& e : catalog()) fmt::print("{:<24} {}\n", e.name, e.summary);
  fmt::print("\nchecks:\n");
  for (const auto& c : check_list()) fmt::print("{:2d} {:<24} {}\n", c.criterion, c.name, c.summary);
  return kOk;
}

int check_command(const std::string& filter, const fs::path& root) {
  CheckOptions opts;
  opts.filter = filter;
  opts.out_root = root;
  const auto results = run_checks(opts, [](const CheckResult& r) { fmt::print("{}\n", format_result(r)); std::fflush(stdout); });
  if (results.empty()) {
    fmt::print(stderr, "config error: no check matches '{}'\n", filter);
    return kConfigError;
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  fmt::print("{}/{} checks passed\n", passed, results.size());
  return passed == results.size() ? kOk : kAcceptanceFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcflow: heat-flow experiments for sigma_k of the Hessian"};
  app.require_subcommand(1);
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--out", out, "output root (default $PCFLOW_OUT, else ./pcflow_out)");
  app.add_option("--seed", seed, "override experiment.seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> run_args;
  auto* run = app.add_subcommand("run", "run experiments (ini files or catalog names)");
  run->add_option("config", run_args)->required();

  std::string sweep_arg, res = "32,64,128";
  auto* sw = app.add_subcommand("sweep", "identity residuals across resolutions");
  sw->add_option("config", sweep_arg)->required();
  sw->add_option("--res", res, "comma-separated resolutions");

  std::string show;
  auto* list = app.add_subcommand("list", "catalog experiments and acceptance checks");
  list->add_option("--show", show, "print the ini source of a catalog experiment");

  std::string filter = "*";
  auto* check = app.add_subcommand("check", "run the acceptance checks");
  check->add_option("--filter", filter, "glob over check names or numbers");

  for (auto* sub : {run, sw, list, check}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  omp_set_num_threads(threads);
  const fs::path root = output_root(out);
  try {
    if (*run) return run_command(run_args, root, seed, threads);
    if (*sw) return sweep_command(sweep_arg, res, root, seed);
    if (*list) return list_command(show);
    if (*check) return check_command(filter, root);
  } catch (const std::exception& e) {
    fmt::print(stderr, "runtime failure: {}\n", e.what());
    return kRuntimeFailure;
  }
  return kOk;
}
