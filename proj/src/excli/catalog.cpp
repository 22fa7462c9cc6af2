#include "pcflow/excli/catalog.hpp"

namespace pcflow::excli {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"torus_single_mode", "sin x on the 2-torus; min sigma_1 = -exp(-t)",
       R"([experiment]
id = torus_single_mode
steps = 100
dt = 1e-3

[geometry]
type = flat_torus
dim = 2
resolution = 32

[initial]
preset = single_mode
modes = 1,0:1

[monitors]
names = sigma1, res_sigma1
)"},
      {"torus_random_flow", "random band-limited data, N = 64, band 16",
       R"([experiment]
id = torus_random_flow
steps = 100
dt = 1e-3
seed = 7

[geometry]
type = flat_torus
dim = 2
resolution = 64

[initial]
preset = random_bandlimited
band = 16

[monitors]
names = sigma1, sigma2, res_sigma1, res_sigma2
)"},
      {"torus_quotient_cos", "f = -cos x - cos y, quotient H = sigma_2 / F on sigma_1 > 0.5",
       R"([experiment]
id = torus_quotient_cos
steps = 100
dt = 1e-3

[geometry]
type = flat_torus
dim = 2
resolution = 32

[initial]
preset = sum_of_modes
modes = 1,0:1:-1.5707963267948966; 0,1:1:-1.5707963267948966

[monitors]
names = sigma1, sigma2, H, quotient, res_sigma2
delta = 0.5
)"},
      {"torus_gaussian_bump", "inverted Gaussian bump on a 20 x 20 torus",
       R"([experiment]
id = torus_gaussian_bump
steps = 100
dt = 1e-2

[geometry]
type = flat_torus
dim = 2
resolution = 64
side = 20

[initial]
preset = gaussian_bump
amplitude = -1
width = 2

[monitors]
names = sigma1, sigma2, H, quotient
delta = 0.05
)"},
      {"sphere_cos_theta", "cos theta on the unit sphere, L_max = 32",
       R"([experiment]
id = sphere_cos_theta
steps = 100
dt = 1e-3

[geometry]
type = round_sphere
resolution = 32

[initial]
preset = cos_theta

[monitors]
names = sigma1, sigma2, res_sigma1, res_sigma2
)"},
      {"sphere_random", "random data of degree <= 8 on the unit sphere, L_max = 48",
       R"([experiment]
id = sphere_random
steps = 100
dt = 1e-3
seed = 11

[geometry]
type = round_sphere
resolution = 48

[initial]
preset = random_bandlimited
band = 8

[monitors]
names = sigma1, sigma2, res_sigma2
)"},
      {"kahler_flat", "flat complex 2-torus, N = 32, band 8",
       R"([experiment]
id = kahler_flat
steps = 3
dt = 1e-3
seed = 3

[geometry]
type = flat_complex_torus
m = 2
resolution = 32

[initial]
preset = random_bandlimited
band = 8

[monitors]
names = sigma1, sigma2, res_sigma1, res_sigma2
)"},
      {"shrinking_adjudication", "trace evolution on the shrinking sphere g(t) = (1 - 2t) g_0",
       R"([experiment]
id = shrinking_adjudication
steps = 20
dt = 0.01
seed = 1

[geometry]
type = shrinking_sphere
resolution = 32
rate = 2

[initial]
preset = random_bandlimited
band = 6

[monitors]
names = sigma1, sigma2
)"},
      {"sphere_flipped_control", "commutation residual with the curvature sign flipped",
       R"([experiment]
id = sphere_flipped_control
steps = 10
dt = 1e-3
seed = 5

[geometry]
type = round_sphere
resolution = 32

[initial]
preset = random_bandlimited
band = 4

[monitors]
names = sigma1

[debug]
flip_curvature = true
)"},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw ConfigError("unknown catalog experiment '" + name + "'");
}

ExperimentConfig catalog_config(const std::string& name) { return parse_config(catalog_entry(name).text); }

}  // namespace pcflow::excli
