#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pcflow/excli/catalog.hpp"
#include "pcflow/excli/config.hpp"
#include "pcflow/excli/runner.hpp"
#include "pcflow/excli/sweep.hpp"

using namespace pcflow;
using namespace pcflow::excli;

namespace {

const char* kMinimal = R"([experiment]
id = minimal
[geometry]
type = flat_torus
resolution = 32
[initial]
preset = random_bandlimited
)";

std::string read(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / "pcflow_test_excli" / name;
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string with(const std::string& base, const std::string& section, const std::string& line) {
  std::string s = base;
  const auto pos = s.find("[" + section + "]");
  if (pos == std::string::npos) return s + "[" + section + "]\n" + line + "\n";
  const auto eol = s.find('\n', pos);
  return s.insert(eol + 1, line + "\n");
}

}  // namespace

TEST(Config, MinimalDefaults) {
  const ExperimentConfig c = parse_config(kMinimal);
  EXPECT_EQ(c.id, "minimal");
  EXPECT_EQ(c.band, 8);
  EXPECT_EQ(c.dt, 1e-3);
  EXPECT_EQ(c.steps, 100);
  EXPECT_EQ(c.torus_dim(), 2);
  EXPECT_TRUE(c.monitors.sigma1);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_NE(config_error(with(kMinimal, "initial", "band = 16")).find("band"), std::string::npos);
  EXPECT_NE(config_error(with(kMinimal, "initial", "colour = red")).find("initial.colour"), std::string::npos);
  EXPECT_NE(config_error(with(kMinimal, "experiment", "dt = fast")).find("experiment.dt"), std::string::npos);
  EXPECT_NE(config_error(with(kMinimal, "experiment", "dt = -1")).find("dt"), std::string::npos);
  EXPECT_NE(config_error(with(kMinimal, "extras", "x = 1")).find("extras"), std::string::npos);
  EXPECT_NE(config_error(with(kMinimal, "monitors", "names = sigma1, bogus")).find("bogus"), std::string::npos);
  EXPECT_NE(config_error("[experiment]\nid = x\n").find("geometry.type"), std::string::npos);
  EXPECT_NE(config_error(with(kMinimal, "geometry", "radius = 2")).find("geometry.radius"), std::string::npos);
  EXPECT_FALSE(config_error(with(kMinimal, "initial", "amplitude = nan")).empty());
}

TEST(Config, GoldenFile) {
  const ExperimentConfig c = load_config(PCFLOW_TEST_DATA "/golden.ini");
  EXPECT_EQ(describe(c), read(PCFLOW_TEST_DATA "/golden.describe.txt"));
}

TEST(Config, CatalogParses) {
  for (const auto& e : catalog()) {
    const ExperimentConfig c = parse_config(e.text);
    EXPECT_EQ(c.id, e.name);
  }
  EXPECT_THROW(catalog_entry("missing"), ConfigError);
}

TEST(Runner, SingleModeCsvMatchesAnalytic) {
  RunOptions o;
  o.out_root = scratch("runs");
  const RunResult r = run_experiment(catalog_config("torus_single_mode"), o);
  std::ifstream is(r.dir / "monitors.csv");
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) {
    double t = 0.0, min_sigma1 = 0.0;
    char comma = 0;
    std::istringstream(line) >> t >> comma >> min_sigma1;
    EXPECT_NEAR(min_sigma1, -std::exp(-t), 1e-9);
    ++rows;
  }
  EXPECT_EQ(rows, 101);
  const auto summary = nlohmann::json::parse(read(r.dir / "summary.json"));
  EXPECT_EQ(summary["schema_version"], kSummarySchemaVersion);
  EXPECT_EQ(summary["monitors"].size(), 2u);
  EXPECT_LT(summary["residual_sups"]["res_sigma1_sup"].get<double>(), 1e-9);
}

TEST(Runner, SphereCosThetaResidual) {
  const MonitorSeries s = simulate(catalog_config("sphere_cos_theta"));
  for (double v : s.column(Column::res_sigma2_sup)) EXPECT_LT(v, 1e-7);
}

TEST(Runner, ZeroStepsWritesHeaderOnly) {
  ExperimentConfig c = parse_config(with(kMinimal, "experiment", "steps = 0"));
  RunOptions o;
  o.out_root = scratch("runs");
  const RunResult r = run_experiment(c, o);
  EXPECT_EQ(read(r.dir / "monitors.csv"), "t,min_sigma1,max_sigma1,min_sigma2,min_H,res_sigma1_sup,res_sigma2_sup,quotient_min\n");
  EXPECT_TRUE(std::filesystem::exists(r.dir / "summary.json"));
}

TEST(Runner, BlowUpLeavesTruncatedCsv) {
  const std::string text = R"([experiment]
id = blowup
steps = 3
[geometry]
type = flat_torus
resolution = 16
[initial]
preset = single_mode
modes = 1,1:1e300
[monitors]
names = sigma1, sigma2
)";
  RunOptions o;
  o.out_root = scratch("runs");
  EXPECT_THROW(run_experiment(parse_config(text), o), RuntimeFailure);
  const std::string csv = read(o.out_root / "blowup" / "monitors.csv");
  EXPECT_NE(csv.find("# truncated"), std::string::npos);
}

TEST(Runner, Deterministic) {
  const ExperimentConfig c = catalog_config("torus_quotient_cos");
  std::ostringstream a, b;
  simulate(c).write_csv(a);
  simulate(c).write_csv(b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Runner, OutputRoot) {
  EXPECT_EQ(output_root(std::string("cli_dir")), std::filesystem::path("cli_dir"));
  setenv("PCFLOW_OUT", "env_dir", 1);
  EXPECT_EQ(output_root(std::nullopt), std::filesystem::path("env_dir"));
  unsetenv("PCFLOW_OUT");
  EXPECT_EQ(output_root(std::nullopt), std::filesystem::path("pcflow_out"));
}

TEST(Sweep, Resolutions) {
  EXPECT_EQ(parse_resolutions("32, 64,128"), (std::vector<int>{32, 64, 128}));
  EXPECT_THROW(parse_resolutions("32,64"), ConfigError);
  EXPECT_THROW(parse_resolutions("32,32,64"), ConfigError);
  EXPECT_THROW(parse_resolutions("64,32,128"), ConfigError);
  EXPECT_THROW(parse_resolutions("32,x,64"), ConfigError);
}

TEST(Sweep, TorusResidualsStayAtFloor) {
  const SweepReport r = sweep(parse_config(with(kMinimal, "initial", "band = 8")), {32, 64, 128});
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows)
    for (double s : row.sups) EXPECT_LT(s, kSweepFloor);
  EXPECT_FALSE(r.any_non_decaying());
}

TEST(Sweep, FlippedCurvatureIsNonDecaying) {
  const SweepReport r = sweep(catalog_config("sphere_flipped_control"), {16, 32, 48});
  EXPECT_TRUE(r.any_non_decaying());
  EXPECT_EQ(r.rows[0].residual, "commutation");
  EXPECT_TRUE(r.rows[0].non_decaying);
  EXPECT_FALSE(r.rows[1].non_decaying);
}
