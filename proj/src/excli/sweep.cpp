#include "pcflow/excli/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <boost/algorithm/string.hpp>
#include <fmt/format.h>

#include "pcflow/excli/runner.hpp"
#include "pcflow/kahler.hpp"
#include "pcflow/sphere_identities.hpp"
#include "pcflow/torus_identities.hpp"

namespace pcflow::excli {

std::vector<int> parse_resolutions(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  std::vector<int> out;
  for (auto p : parts) {
    boost::trim(p);
    int v = 0;
    const auto [end, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (p.empty() || ec != std::errc{} || end != p.data() + p.size())
      throw ConfigError("'--res': '" + p + "' is not an integer");
    out.push_back(v);
  }
  validate_resolutions(out);
  return out;
}

void validate_resolutions(const std::vector<int>& res) {
  if (res.size() < 3) throw ConfigError("'--res': a sweep needs at least 3 resolutions");
  for (std::size_t i = 1; i < res.size(); ++i)
    if (res[i] <= res[i - 1]) throw ConfigError("'--res': resolutions must be strictly increasing");
}

namespace {

std::vector<std::pair<std::string, double>> residuals_at(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, double>> out;
  switch (c.kind) {
    case GeometryKind::flat_torus: {
      const ScalarField f = torus_initial(c);
      out.emplace_back("res_sigma1", residual_sigma1(f).sup());
      if (c.torus_dim() >= 2) out.emplace_back("res_sigma2", residual_sigma_k(f, 2).sup());
      if (c.torus_dim() >= 3) out.emplace_back("res_sigma3", residual_sigma_k(f, 3).sup());
      break;
    }
    case GeometryKind::flat_complex_torus: {
      const ScalarField f = torus_initial(c);
      out.emplace_back("res_sigma1", residual_sigma1(f).sup());
      if (c.torus_dim() == 4) out.emplace_back("kahler_sigma2", kahler_sigma2_residual(f).sup());
      break;
    }
    case GeometryKind::round_sphere: {
      const SphericalSpectrum u = sphere_initial(c);
      out.emplace_back("commutation", commutation_residual(u, c.flip_curvature).field.sup());
      out.emplace_back("riemannian_sigma2", riemannian_sigma2_residual(u).field.sup());
      break;
    }
    case GeometryKind::shrinking_sphere: {
      ShrinkingOptions o;
      o.dt = c.dt;
      o.steps = c.steps;
      o.rate = c.rate();
      const AdjudicationReport r = shrinking_sigma1_adjudication(sphere_initial(c), o);
      double r0 = 0.0, r1 = 0.0;
      for (const auto& s : r.steps) r0 = std::max(r0, s.sup_r0), r1 = std::max(r1, s.sup_r1);
      out.emplace_back("shrinking_r0", r0);
      out.emplace_back("shrinking_r1", r1);
      break;
    }
  }
  return out;
}

}  // namespace

bool SweepReport::any_non_decaying() const {
  return std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.non_decaying; });
}

SweepReport sweep(const ExperimentConfig& c, const std::vector<int>& resolutions) {
  validate_resolutions(resolutions);
  for (int n : resolutions) {
    if (c.is_torus() && (n < 4 || (n & (n - 1)) != 0))
      throw ConfigError(fmt::format("'--res': torus N = {} is not a power of two >= 4", n));
    if (c.is_torus() && c.initial.preset == "random_bandlimited" && 4 * c.band > n)
      throw ConfigError(fmt::format("'--res': {} is below 4 * initial.band = {}", n, 4 * c.band));
    if (!c.is_torus() && (n < 8 || n > 128)) throw ConfigError(fmt::format("'--res': L_max {} outside [8, 128]", n));
  }
  SweepReport rep;
  rep.id = c.id;
  rep.resolutions = resolutions;
  for (int n : resolutions) {
    const auto res = residuals_at(c.at_resolution(n));
    if (rep.rows.empty())
      for (const auto& [name, v] : res) rep.rows.push_back({name, {}, {}, false});
    for (std::size_t i = 0; i < res.size(); ++i) rep.rows[i].sups.push_back(res[i].second);
  }
  for (auto& row : rep.rows) {
    for (std::size_t i = 1; i < row.sups.size(); ++i)
      row.ratios.push_back(row.sups[i - 1] > 0.0 ? row.sups[i] / row.sups[i - 1] : 0.0);
    row.non_decaying = row.sups.back() > kSweepFloor && row.ratios.back() >= 0.5;
  }
  return rep;
}

nlohmann::json SweepReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows)
    rs.push_back({{"residual", r.residual}, {"sups", r.sups}, {"ratios", r.ratios}, {"non_decaying", r.non_decaying}});
  return {{"schema_version", 1},
          {"id", id},
          {"resolutions", resolutions},
          {"floor", kSweepFloor},
          {"residuals", rs},
          {"non_decaying", any_non_decaying()}};
}

void SweepReport::write_csv(std::ostream& os) const {
  os << "residual,resolution,sup,ratio,non_decaying\n";
  for (const auto& r : rows)
    for (std::size_t i = 0; i < resolutions.size(); ++i)
      os << fmt::format("{},{},{:.17g},{},{}\n", r.residual, resolutions[i], r.sups[i],
                        i == 0 ? std::string() : fmt::format("{:.17g}", r.ratios[i - 1]), r.non_decaying ? 1 : 0);
}

void write_sweep(const SweepReport& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw RuntimeFailure("cannot create " + dir.string() + ": " + ec.message());
  std::ofstream csv(dir / "sweep.csv", std::ios::binary);
  std::ofstream js(dir / "sweep.json", std::ios::binary);
  if (!csv || !js) throw RuntimeFailure("cannot write sweep files in " + dir.string());
  r.write_csv(csv);
  js << r.to_json().dump(2) << "\n";
}

}  // namespace pcflow::excli
