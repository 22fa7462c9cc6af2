#include "pcflow/excli/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>

#include "pcflow/extrema.hpp"
#include "pcflow/kahler.hpp"
#include "pcflow/kernels.hpp"
#include "pcflow/snapshot.hpp"
#include "pcflow/sphere_identities.hpp"
#include "pcflow/torus_flow.hpp"
#include "pcflow/torus_identities.hpp"

namespace pcflow::excli {

namespace {

using nlohmann::json;

TorusGrid torus_grid(const ExperimentConfig& c) { return TorusGrid::make(c.torus_dim(), c.resolution, c.sides()); }

MonitorRow complex_torus_row(const ScalarField& f, double t, const MonitorSet& mon) {
  MonitorRow row;
  row.t = t;
  const TorusSpectrum s = TorusSpectrum::analyze(f);
  if (mon.sigma1) {
    TorusSpectrum quarter = s.laplacian();
    for (auto& z : quarter.coefficients()) z *= 0.25;
    const PolishedExtrema e = polished_extrema(quarter);
    row[Column::min_sigma1] = e.min;
    row[Column::max_sigma1] = e.max;
  }
  if (mon.sigma2 || mon.res_sigma1) {
    const HermitianHessianField a = complex_hessian(s);
    if (mon.sigma2) {
      std::vector<double> s2(f.samples.size());
      kernels::sigma_field(a.view(), 2, s2);
      row[Column::min_sigma2] = kernels::extrema(s2).min;
    }
    if (mon.res_sigma1) {
      const ScalarField dt_sigma1 = complex_hessian(s.laplacian()).trace();
      const ScalarField lap_sigma1 = spectral_laplacian(a.trace());
      double sup = 0.0;
      for (std::size_t p = 0; p < f.samples.size(); ++p)
        sup = std::max(sup, std::abs(dt_sigma1.samples[p] - lap_sigma1.samples[p]));
      row[Column::res_sigma1_sup] = sup;
    }
  }
  if (mon.res_sigma2) row[Column::res_sigma2_sup] = kahler_sigma2_residual(f).sup();
  return row;
}

MonitorSeries shrinking_series(const ExperimentConfig& c, const SphericalSpectrum& u0) {
  MonitorSeries series;
  if (c.steps == 0) return series;
  for (int i = 0; i <= c.steps; ++i) {
    const double t = i * c.dt;
    const double s = 1.0 - c.rate() * t;
    const SphericalSpectrum u = sphere_heat_propagate(u0, conformal_time(t, c.rate()));
    MonitorRow row;
    row.t = t;
    if (c.monitors.sigma1) {
      const SphereExtrema e = sphere_polished_extrema(u.laplacian());
      row[Column::min_sigma1] = e.min / s;
      row[Column::max_sigma1] = e.max / s;
    }
    if (c.monitors.sigma2) {
      // Frame Hessian of g(t) = s g_0 is Hess_0 / s.
      row[Column::min_sigma2] = kernels::extrema(sphere_sigma2_field(u).samples).min / (s * s);
    }
    check_finite(row, series);
    series.append(row);
  }
  return series;
}

json column_stats(const MonitorSeries& s, Column c) {
  const auto v = s.column(c);
  if (v.empty()) return nullptr;
  double lo = v[0], hi = v[0];
  for (double x : v) lo = std::min(lo, x), hi = std::max(hi, x);
  return json{{"min", lo}, {"max", hi}, {"first", v.front()}, {"last", v.back()}};
}

json summary_json(const ExperimentConfig& c, const MonitorSeries& s, const std::optional<AdjudicationReport>& adj,
                  double wall, const std::string& status, const std::string& message) {
  json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["id"] = c.id;
  j["geometry"] = kind_name(c.kind);
  j["resolution"] = c.resolution;
  j["band"] = c.band;
  j["dt"] = c.dt;
  j["steps"] = c.steps;
  j["seed"] = c.seed;
  j["preset"] = c.initial.preset;
  j["status"] = status;
  if (!message.empty()) j["message"] = message;
  j["wall_time_s"] = wall;
  j["rows"] = s.rows.size();
  json mon = json::object();
  const auto add = [&](const char* name, std::initializer_list<Column> cols) {
    json m = json::object();
    for (Column col : cols) m[kMonitorColumns[static_cast<int>(col) + 1]] = column_stats(s, col);
    mon[name] = m;
  };
  const MonitorSet& ms = c.monitors;
  if (ms.sigma1) add("sigma1", {Column::min_sigma1, Column::max_sigma1});
  if (ms.sigma2) add("sigma2", {Column::min_sigma2});
  if (ms.H) add("H", {Column::min_H});
  if (ms.res_sigma1) add("res_sigma1", {Column::res_sigma1_sup});
  if (ms.res_sigma2) add("res_sigma2", {Column::res_sigma2_sup});
  if (ms.quotient) add("quotient", {Column::quotient_min});
  j["monitors"] = mon;
  json res = json::object();
  for (Column col : {Column::res_sigma1_sup, Column::res_sigma2_sup}) {
    const auto v = s.column(col);
    if (!v.empty()) res[kMonitorColumns[static_cast<int>(col) + 1]] = *std::max_element(v.begin(), v.end());
  }
  j["residual_sups"] = res;
  json verdicts = json::object();
  if (adj) {
    verdicts["shrinking_sigma1"] = adj->verdict;
    double r0 = 0.0, r1 = 0.0;
    for (const auto& st : adj->steps) r0 = std::max(r0, st.sup_r0), r1 = std::max(r1, st.sup_r1);
    j["adjudication"] = {{"rate", adj->rate}, {"verdict", adj->verdict}, {"max_sup_r0", r0}, {"max_sup_r1", r1}};
  }
  j["verdicts"] = verdicts;
  return j;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw RuntimeFailure("cannot write " + p.string());
  os << text;
}

void write_csv(const std::filesystem::path& p, const MonitorSeries& s) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw RuntimeFailure("cannot write " + p.string());
  s.write_csv(os);
}

void write_snapshots(const ExperimentConfig& c, const std::filesystem::path& dir) {
  const double t_end = c.steps * c.dt;
  if (c.is_torus()) {
    const ScalarField f0 = torus_initial(c);
    const ScalarField f1 = heat_propagate(f0, t_end);
    write_torus_binary(dir / "field_t0.bin", f0, 0.0);
    write_torus_binary(dir / "field_final.bin", f1, t_end);
    if (f0.samples.size() <= (1u << 16)) {
      write_torus_csv(dir / "field_t0.csv", f0);
      write_torus_csv(dir / "field_final.csv", f1);
    }
    if (c.torus_dim() == 2) {
      write_torus_binary(dir / "sigma2_t0.bin", sigma_field(f0, 2), 0.0);
    }
  } else {
    const SphericalSpectrum u0 = sphere_initial(c);
    const double tau = c.kind == GeometryKind::shrinking_sphere ? conformal_time(t_end, c.rate()) : t_end;
    const SphericalSpectrum u1 = sphere_heat_propagate(u0, tau);
    write_sphere_binary(dir / "field_t0.bin", sh_synthesize(u0), 0.0);
    write_sphere_binary(dir / "field_final.bin", sh_synthesize(u1), t_end);
    write_sphere_csv(dir / "field_t0.csv", sh_synthesize(u0));
    write_spectrum_csv(dir / "spectrum_t0.csv", u0);
  }
}

}  // namespace

std::filesystem::path output_root(const std::optional<std::string>& cli_out) {
  if (cli_out && !cli_out->empty()) return *cli_out;
  if (const char* env = std::getenv("PCFLOW_OUT"); env && *env) return env;
  return "pcflow_out";
}

ScalarField torus_initial(const ExperimentConfig& c) {
  InitialSpec spec = c.initial;
  spec.seed = c.seed;
  spec.band = c.band;
  return initial_data(torus_grid(c), spec);
}

SphericalSpectrum sphere_initial(const ExperimentConfig& c) {
  const double radius = c.kind == GeometryKind::shrinking_sphere ? 1.0 : c.radius();
  const SphereGrid g = SphereGrid::make(c.resolution, radius);
  const std::string& p = c.initial.preset;
  const double amp = c.initial.amplitude;
  SphericalSpectrum s = SphericalSpectrum::zeros(g);
  if (p == "cos_theta") {
    s = sh_analyze(SphereField::from_function(g, [&](double th, double) { return amp * std::cos(th); }));
  } else if (p == "harmonic") {
    if (c.sphere_l > g.lmax()) throw ConfigError("'initial.l': exceeds geometry.resolution");
    s = sphere_harmonic(g, c.sphere_l, c.sphere_m);
    for (auto& z : s.coefficients()) z *= amp;
  } else if (p == "random_bandlimited") {
    s = random_sphere_spectrum(g, c.band, c.seed);
    for (auto& z : s.coefficients()) z *= amp;
  } else if (p == "constant") {
    s.at(0, 0) = amp * std::sqrt(4.0 * std::numbers::pi);
  } else {
    throw ConfigError("'initial.preset': unknown sphere preset '" + p + "'");
  }
  return s;
}

MonitorSeries simulate(const ExperimentConfig& c, std::optional<AdjudicationReport>* adjudication) {
  switch (c.kind) {
    case GeometryKind::flat_torus: {
      TorusFlowOptions o;
      o.dt = c.dt;
      o.steps = c.steps;
      o.monitors = c.monitors;
      o.delta = c.delta;
      return run_flow(torus_initial(c), o);
    }
    case GeometryKind::flat_complex_torus: {
      if (c.monitors.res_sigma2 && c.torus_dim() != 4) throw ConfigError("'monitors.names': res_sigma2 needs geometry.m = 2");
      MonitorSeries series;
      if (c.steps == 0) return series;
      const TorusSpectrum s0 = TorusSpectrum::analyze(torus_initial(c));
      for (int i = 0; i <= c.steps; ++i) {
        const double t = i * c.dt;
        const MonitorRow row = complex_torus_row(s0.propagated(t).synthesize(), t, c.monitors);
        check_finite(row, series);
        series.append(row);
      }
      return series;
    }
    case GeometryKind::round_sphere: {
      SphereFlowOptions o;
      o.dt = c.dt;
      o.steps = c.steps;
      o.monitors = c.monitors;
      return sphere_run_flow(sphere_initial(c), o);
    }
    case GeometryKind::shrinking_sphere: {
      if (c.monitors.res_sigma1 || c.monitors.res_sigma2)
        throw ConfigError("'monitors.names': shrinking_sphere records sigma1/sigma2; residuals go to adjudication.json");
      const SphericalSpectrum u0 = sphere_initial(c);
      ShrinkingOptions o;
      o.dt = c.dt;
      o.steps = c.steps;
      o.rate = c.rate();
      try {
        if (adjudication) *adjudication = shrinking_sigma1_adjudication(u0, o);
      } catch (const std::out_of_range& e) {
        throw ConfigError(std::string("'experiment.steps' / 'experiment.dt': ") + e.what());
      }
      return shrinking_series(c, u0);
    }
  }
  return {};
}

std::filesystem::path run_directory(const ExperimentConfig& c, const std::filesystem::path& out_root) {
  if (!c.output_dir.empty()) {
    const std::filesystem::path p(c.output_dir);
    return p.is_absolute() ? p : out_root / p;
  }
  return out_root / c.id;
}

json adjudication_json(const AdjudicationReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"t", s.t}, {"sup_r0", s.sup_r0}, {"sup_r1", s.sup_r1}, {"sup_sigma1", s.sup_sigma1}, {"verdict", s.verdict}});
  return {{"rate", r.rate}, {"verdict", r.verdict}, {"steps", steps}};
}

RunResult run_experiment(ExperimentConfig c, const RunOptions& opts) {
  if (opts.seed) {
    c.seed = *opts.seed;
    c.initial.seed = *opts.seed;
  }
  RunResult result;
  result.id = c.id;
  result.dir = run_directory(c, opts.out_root);
  std::error_code ec;
  std::filesystem::create_directories(result.dir, ec);
  if (ec) throw RuntimeFailure("cannot create " + result.dir.string() + ": " + ec.message());

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  try {
    result.series = simulate(c, &result.adjudication);
  } catch (const FlowAborted& e) {
    result.series = e.partial();
    result.wall_time = elapsed();
    write_csv(result.dir / "monitors.csv", result.series);
    result.summary = summary_json(c, result.series, std::nullopt, result.wall_time, "aborted", e.what());
    write_text(result.dir / "summary.json", result.summary.dump(2) + "\n");
    throw RuntimeFailure(c.id + ": " + e.what());
  }
  result.wall_time = elapsed();
  write_csv(result.dir / "monitors.csv", result.series);
  if (result.adjudication) write_text(result.dir / "adjudication.json", adjudication_json(*result.adjudication).dump(2) + "\n");
  if (c.snapshots) write_snapshots(c, result.dir);
  result.summary = summary_json(c, result.series, result.adjudication, result.wall_time, "ok", "");
  write_text(result.dir / "summary.json", result.summary.dump(2) + "\n");
  return result;
}

}  // namespace pcflow::excli
