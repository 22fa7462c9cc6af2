#include <gtest/gtest.h>

#include <sstream>

#include "pcflow/extrema.hpp"
#include "pcflow/kernels.hpp"
#include "pcflow/monitor.hpp"
#include "pcflow/torus_flow.hpp"
#include "support.hpp"

using namespace pcflow;
using namespace pcflow::test;

TEST(Monitor, ParseNames) {
  const MonitorSet m = MonitorSet::parse({"sigma2", "res_sigma1"});
  EXPECT_FALSE(m.sigma1);
  EXPECT_TRUE(m.sigma2);
  EXPECT_TRUE(m.res_sigma1);
  EXPECT_FALSE(m.needs_quotient());
  EXPECT_TRUE(MonitorSet::parse({"H"}).needs_quotient());
  EXPECT_THROW(MonitorSet::parse({"sigma9"}), std::invalid_argument);
}

TEST(Monitor, CsvLayout) {
  MonitorSeries s;
  MonitorRow r;
  r.t = 0.5;
  r[Column::min_sigma1] = -1.25;
  s.append(r);
  std::ostringstream os;
  s.write_csv(os);
  EXPECT_EQ(os.str(), "t,min_sigma1,max_sigma1,min_sigma2,min_H,res_sigma1_sup,res_sigma2_sup,quotient_min\n"
                      "0.5,-1.25,,,,,,\n");
  MonitorRow earlier;
  earlier.t = 0.5;
  EXPECT_THROW(s.append(earlier), std::logic_error);
}

TEST(Monitor, NonFiniteAborts) {
  MonitorSeries s;
  MonitorRow r;
  r[Column::min_sigma2] = std::nan("");
  try {
    check_finite(r, s);
    FAIL();
  } catch (const FlowAborted& e) {
    std::ostringstream os;
    e.partial().write_csv(os);
    EXPECT_NE(os.str().find("# truncated"), std::string::npos);
  }
}

TEST(TorusFlow, SingleModeMatchesAnalytic) {
  const TorusGrid g = TorusGrid::cube(2, 32, 2.0 * std::numbers::pi);
  InitialSpec spec;
  spec.preset = "single_mode";
  spec.modes = {Mode{{1, 0, 0, 0}, 1.0, 0.0}};
  TorusFlowOptions o;
  o.dt = 1e-2;
  o.steps = 50;
  const MonitorSeries s = run_flow(initial_data(g, spec), o);
  ASSERT_EQ(s.rows.size(), 51u);
  for (const auto& row : s.rows) {
    EXPECT_NEAR(*row[Column::min_sigma1], -std::exp(-row.t), 1e-9);
    EXPECT_NEAR(*row[Column::max_sigma1], std::exp(-row.t), 1e-9);
  }
}

TEST(TorusFlow, MaximumPrincipleAndIncreasingTime) {
  TorusFlowOptions o;
  o.dt = 1e-3;
  o.steps = 100;
  o.monitors = MonitorSet::parse({"sigma1", "sigma2", "res_sigma1", "res_sigma2"});
  const MonitorSeries s = run_flow(random_torus(2, 32, 8, 21), o);
  ASSERT_EQ(s.rows.size(), 101u);
  for (std::size_t i = 1; i < s.rows.size(); ++i) {
    EXPECT_GT(s.rows[i].t, s.rows[i - 1].t);
    EXPECT_GE(*s.rows[i][Column::min_sigma1], *s.rows[i - 1][Column::min_sigma1] - 1e-10);
    EXPECT_LE(*s.rows[i][Column::max_sigma1], *s.rows[i - 1][Column::max_sigma1] + 1e-10);
    EXPECT_LT(*s.rows[i][Column::res_sigma2_sup], 1e-8);
  }
}

TEST(TorusFlow, ZeroStepsRecordsNothing) {
  TorusFlowOptions o;
  o.steps = 0;
  EXPECT_TRUE(run_flow(random_torus(2, 16, 4, 1), o).rows.empty());
}

TEST(TorusFlow, PolishedExtremaBeatGridNodes) {
  // Extremum of sin(x + 0.1) sits between nodes; the polished value is exact.
  const TorusGrid g = TorusGrid::cube(1, 8, 2.0 * std::numbers::pi);
  ScalarField f = ScalarField::zeros(g);
  for (int i = 0; i < 8; ++i) f.samples[i] = std::sin(g.coordinate(0, i) + 0.1);
  const PolishedExtrema e = polished_extrema(TorusSpectrum::analyze(f));
  EXPECT_NEAR(e.max, 1.0, 1e-13);
  EXPECT_NEAR(e.min, -1.0, 1e-13);
  EXPECT_LT(kernels::extrema(f.samples).max, 1.0 - 1e-3);
}
