#include "pcflow/excli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pcflow/torus.hpp"

namespace pcflow::excli {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kAllowed{
    {"experiment", {"id", "steps", "dt", "seed", "output_dir", "snapshots"}},
    {"geometry", {"type", "resolution", "dim", "m", "side", "radius", "rate"}},
    {"initial", {"preset", "band", "amplitude", "modes", "width", "alpha", "window_inner", "window_outer", "l", "m"}},
    {"monitors", {"names", "delta"}},
    {"debug", {"flip_curvature"}},
};

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& path) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.'));
    if (!v) return std::nullopt;
    std::string s = boost::algorithm::trim_copy(*v);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
  }

  std::string required(const std::string& path) const {
    auto v = raw(path);
    if (!v || v->empty()) throw ConfigError("missing required key '" + path + "'");
    return *v;
  }

  template <class T>
  T number(const std::string& path, T fallback) const {
    auto v = raw(path);
    if (!v) return fallback;
    return parse<T>(path, *v);
  }

  template <class T>
  static T parse(const std::string& path, const std::string& text) {
    T out{};
    const char* b = text.data();
    const char* e = b + text.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || ptr != e)
      throw ConfigError(fmt::format("'{}': expected {} but got '{}'", path,
                                    std::is_floating_point_v<T> ? "a number" : "an integer", text));
    if constexpr (std::is_floating_point_v<T>)
      if (!std::isfinite(out)) throw ConfigError(fmt::format("'{}': '{}' is not finite", path, text));
    return out;
  }

  bool flag(const std::string& path, bool fallback) const {
    auto v = raw(path);
    if (!v) return fallback;
    const std::string s = boost::algorithm::to_lower_copy(*v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError(fmt::format("'{}': expected a boolean but got '{}'", path, *v));
  }

 private:
  const pt::ptree& tree_;
};

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    boost::algorithm::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Mode> parse_modes(const std::string& path, const std::string& text, int dim) {
  std::vector<Mode> modes;
  for (const auto& entry : split_list(text, ';')) {
    const auto parts = split_list(entry, ':');
    if (parts.empty() || parts.size() > 3) throw ConfigError(fmt::format("'{}': malformed mode '{}'", path, entry));
    Mode m;
    const auto ks = split_list(parts[0], ',');
    if (static_cast<int>(ks.size()) != dim)
      throw ConfigError(fmt::format("'{}': mode '{}' needs {} wavenumbers", path, entry, dim));
    for (int a = 0; a < dim; ++a) m.k[a] = Reader::parse<int>(path, ks[a]);
    if (parts.size() > 1) m.amplitude = Reader::parse<double>(path, parts[1]);
    if (parts.size() > 2) m.phase = Reader::parse<double>(path, parts[2]);
    modes.push_back(m);
  }
  return modes;
}

GeometryKind parse_kind(const std::string& s) {
  if (s == "flat_torus") return GeometryKind::flat_torus;
  if (s == "round_sphere") return GeometryKind::round_sphere;
  if (s == "shrinking_sphere") return GeometryKind::shrinking_sphere;
  if (s == "flat_complex_torus") return GeometryKind::flat_complex_torus;
  throw ConfigError("'geometry.type': unknown geometry '" + s + "'");
}

const std::set<std::string> kSpherePresets{"cos_theta", "harmonic", "random_bandlimited", "constant"};

void validate(ExperimentConfig& c) {
  if (c.is_torus()) {
    try {
      TorusGrid::make(c.torus_dim(), c.resolution, c.sides());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("'geometry.resolution' / 'geometry.side': ") + e.what());
    }
    const auto& presets = initial_presets();
    if (std::find(presets.begin(), presets.end(), c.initial.preset) == presets.end())
      throw ConfigError("'initial.preset': unknown torus preset '" + c.initial.preset + "'");
    if ((c.initial.preset == "single_mode" || c.initial.preset == "sum_of_modes") && c.initial.modes.empty())
      throw ConfigError("'initial.modes': required by preset '" + c.initial.preset + "'");
    if (c.monitors.needs_quotient() && c.kind != GeometryKind::flat_torus)
      throw ConfigError("'monitors.names': H and quotient need geometry.type = flat_torus");
  } else {
    if (c.resolution < 8 || c.resolution > 128) throw ConfigError("'geometry.resolution': L_max must lie in [8, 128]");
    if (!kSpherePresets.contains(c.initial.preset))
      throw ConfigError("'initial.preset': unknown sphere preset '" + c.initial.preset + "'");
    if (c.initial.preset == "harmonic" && (c.sphere_l < 0 || c.sphere_m < 0 || c.sphere_m > c.sphere_l))
      throw ConfigError("'initial.l' / 'initial.m': need 0 <= m <= l");
    if (c.monitors.needs_quotient()) throw ConfigError("'monitors.names': H and quotient are torus-only monitors");
  }
  if (c.band < 1) throw ConfigError("'initial.band': must be at least 1");
  if (c.band * 4 > c.resolution)
    throw ConfigError(fmt::format("'initial.band': band = {} exceeds resolution / 4 = {}", c.band, c.resolution / 4));
  if (!(c.dt > 0.0)) throw ConfigError("'experiment.dt': must be positive");
  if (c.steps < 0) throw ConfigError("'experiment.steps': must be >= 0");
  if (c.delta < 0.0) throw ConfigError("'monitors.delta': must be >= 0");
  try {
    pcflow::validate(c.geometry);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'geometry': ") + e.what());
  }
}

}  // namespace

int ExperimentConfig::torus_dim() const {
  if (auto* t = std::get_if<FlatTorus>(&geometry)) return t->n;
  if (auto* t = std::get_if<FlatComplexTorus>(&geometry)) return 2 * t->m;
  return 0;
}

std::vector<double> ExperimentConfig::sides() const {
  if (auto* t = std::get_if<FlatTorus>(&geometry)) return t->side_lengths;
  if (auto* t = std::get_if<FlatComplexTorus>(&geometry)) return t->side_lengths;
  return {};
}

double ExperimentConfig::radius() const {
  if (auto* s = std::get_if<RoundSphere2>(&geometry)) return s->radius;
  if (auto* s = std::get_if<ShrinkingSphere>(&geometry)) return s->radius0;
  return 0.0;
}

double ExperimentConfig::rate() const { return shrink_rate; }

ExperimentConfig ExperimentConfig::at_resolution(int res) const {
  ExperimentConfig c = *this;
  c.resolution = res;
  return c;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config syntax error on line {}: {}", e.line(), e.message()));
  }
  for (const auto& [section, body] : tree) {
    auto it = kAllowed.find(section);
    if (it == kAllowed.end()) {
      if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
      throw ConfigError("unknown section '[" + section + "]'");
    }
    for (const auto& [key, value] : body)
      if (!it->second.contains(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
  }

  const Reader r(tree);
  ExperimentConfig c;
  c.id = r.required("experiment.id");
  c.steps = r.number<int>("experiment.steps", 100);
  c.dt = r.number<double>("experiment.dt", 1e-3);
  c.seed = r.number<std::uint64_t>("experiment.seed", 0);
  c.output_dir = r.raw("experiment.output_dir").value_or("");
  c.snapshots = r.flag("experiment.snapshots", false);

  c.kind = parse_kind(r.required("geometry.type"));
  c.resolution = Reader::parse<int>("geometry.resolution", r.required("geometry.resolution"));
  std::vector<double> sides;
  if (auto s = r.raw("geometry.side"))
    for (const auto& item : split_list(*s, ',')) sides.push_back(Reader::parse<double>("geometry.side", item));
  const auto expand = [&](int dim) {
    if (sides.empty()) return std::vector<double>(dim, 2.0 * std::numbers::pi);
    if (sides.size() == 1) return std::vector<double>(dim, sides[0]);
    if (static_cast<int>(sides.size()) != dim)
      throw ConfigError(fmt::format("'geometry.side': need 1 or {} lengths, got {}", dim, sides.size()));
    return sides;
  };
  const auto reject = [&](const std::string& key) {
    if (r.raw(key)) throw ConfigError("'" + key + "' does not apply to geometry.type = " + kind_name(c.kind));
  };
  switch (c.kind) {
    case GeometryKind::flat_torus: {
      reject("geometry.m"), reject("geometry.radius"), reject("geometry.rate");
      const int dim = r.number<int>("geometry.dim", 2);
      if (dim < 2 || dim > 3) throw ConfigError("'geometry.dim': must be 2 or 3");
      c.geometry = FlatTorus{dim, expand(dim)};
      break;
    }
    case GeometryKind::flat_complex_torus: {
      reject("geometry.dim"), reject("geometry.radius"), reject("geometry.rate");
      const int m = r.number<int>("geometry.m", 2);
      if (m < 1 || m > 2) throw ConfigError("'geometry.m': must be 1 or 2");
      c.geometry = FlatComplexTorus{m, expand(2 * m)};
      break;
    }
    case GeometryKind::round_sphere:
      reject("geometry.dim"), reject("geometry.m"), reject("geometry.side"), reject("geometry.rate");
      c.geometry = RoundSphere2{r.number<double>("geometry.radius", 1.0)};
      break;
    case GeometryKind::shrinking_sphere:
      reject("geometry.dim"), reject("geometry.m"), reject("geometry.side"), reject("geometry.radius");
      c.geometry = ShrinkingSphere{1.0};
      c.shrink_rate = r.number<double>("geometry.rate", 2.0);
      if (!(c.shrink_rate > 0.0)) throw ConfigError("'geometry.rate': must be positive");
      break;
  }

  c.initial.preset = r.required("initial.preset");
  c.band = r.number<int>("initial.band", c.resolution / 4);
  c.initial.band = c.band;
  c.initial.seed = c.seed;
  c.initial.amplitude = r.number<double>("initial.amplitude", 1.0);
  c.initial.width = r.number<double>("initial.width", 1.0);
  c.initial.alpha = r.number<double>("initial.alpha", 0.5);
  c.initial.window_inner = r.number<double>("initial.window_inner", 0.75);
  c.initial.window_outer = r.number<double>("initial.window_outer", 0.95);
  if (auto modes = r.raw("initial.modes")) {
    if (!c.is_torus()) throw ConfigError("'initial.modes' applies to torus geometries only");
    c.initial.modes = parse_modes("initial.modes", *modes, c.torus_dim());
  }
  c.sphere_l = r.number<int>("initial.l", 1);
  c.sphere_m = r.number<int>("initial.m", 0);

  try {
    c.monitors = MonitorSet::parse(split_list(r.raw("monitors.names").value_or("sigma1"), ','));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'monitors.names': ") + e.what());
  }
  c.delta = r.number<double>("monitors.delta", 0.0);
  c.flip_curvature = r.flag("debug.flip_curvature", false);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string kind_name(GeometryKind k) {
  switch (k) {
    case GeometryKind::flat_torus: return "flat_torus";
    case GeometryKind::round_sphere: return "round_sphere";
    case GeometryKind::shrinking_sphere: return "shrinking_sphere";
    case GeometryKind::flat_complex_torus: return "flat_complex_torus";
  }
  return "?";
}

std::string describe(const ExperimentConfig& c) {
  std::string s;
  const auto line = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
  line("id", c.id);
  line("geometry", kind_name(c.kind));
  line("resolution", std::to_string(c.resolution));
  if (c.is_torus()) {
    line("torus_dim", std::to_string(c.torus_dim()));
    line("side", fmt::format("{}", fmt::join(c.sides(), ",")));
  } else {
    line("radius", fmt::format("{}", c.radius()));
  }
  if (c.kind == GeometryKind::shrinking_sphere) line("rate", fmt::format("{}", c.rate()));
  line("band", std::to_string(c.band));
  line("dt", fmt::format("{}", c.dt));
  line("steps", std::to_string(c.steps));
  line("seed", std::to_string(c.seed));
  line("preset", c.initial.preset);
  line("amplitude", fmt::format("{}", c.initial.amplitude));
  for (const auto& m : c.initial.modes)
    line("mode", fmt::format("{}:{}:{}", fmt::join(std::vector<int>(m.k.begin(), m.k.begin() + c.torus_dim()), ","),
                             m.amplitude, m.phase));
  if (c.initial.preset == "gaussian_bump") line("width", fmt::format("{}", c.initial.width));
  if (c.initial.preset == "radial_profile")
    line("alpha", fmt::format("{} window {}..{}", c.initial.alpha, c.initial.window_inner, c.initial.window_outer));
  if (c.initial.preset == "harmonic") line("harmonic", fmt::format("l={} m={}", c.sphere_l, c.sphere_m));
  line("monitors", fmt::format("{}", fmt::join(c.monitors.names(), ",")));
  line("delta", fmt::format("{}", c.delta));
  line("flip_curvature", c.flip_curvature ? "true" : "false");
  line("snapshots", c.snapshots ? "true" : "false");
  line("output_dir", c.output_dir);
  return s;
}

}  // namespace pcflow::excli
