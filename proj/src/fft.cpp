#include "pcflow/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace pcflow::fft {

namespace {

// The FFTW planner is not thread-safe; execution with the new-array
// interface is. Plans are created once per shape under a lock and reused.
struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int n, bool forward_dir) {
    const auto key = std::make_tuple(dim, n, forward_dir ? 1 : -1);
    std::lock_guard lock(mutex);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    std::vector<int> shape(dim, n);
    std::size_t real_size = 1;
    for (int d = 0; d < dim; ++d) real_size *= n;
    double* r = fftw_alloc_real(real_size);
    fftw_complex* c = fftw_alloc_complex(half_spectrum_size(dim, n));
    // c2r destroys its input; inverse() always executes on a scratch copy.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = forward_dir ? fftw_plan_dft_r2c(dim, shape.data(), r, c, flags)
                              : fftw_plan_dft_c2r(dim, shape.data(), c, r, flags);
    fftw_free(r);
    fftw_free(c);
    if (!p) throw std::runtime_error("fft: failed to create plan");
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

std::size_t real_size(int dim, int n) {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
  return s;
}

}  // namespace

std::size_t half_spectrum_size(int dim, int n) {
  return real_size(dim - 1, n) * static_cast<std::size_t>(n / 2 + 1);
}

void forward(int dim, int n, std::span<const double> in, std::span<std::complex<double>> out) {
  if (in.size() != real_size(dim, n) || out.size() != half_spectrum_size(dim, n))
    throw std::invalid_argument("fft::forward: size mismatch");
  fftw_plan p = cache().get(dim, n, true);
  // r2c never writes its input.
  fftw_execute_dft_r2c(p, const_cast<double*>(in.data()), reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse(int dim, int n, std::span<const std::complex<double>> in, std::span<double> out) {
  if (out.size() != real_size(dim, n) || in.size() != half_spectrum_size(dim, n))
    throw std::invalid_argument("fft::inverse: size mismatch");
  fftw_plan p = cache().get(dim, n, false);
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace pcflow::fft
