// OpenMP kernels against their serial reference twins on a 2-D and a 3-D grid.

#include <cmath>
#include <map>
#include <numbers>

#include <benchmark/benchmark.h>

#include "pcflow/initial_data.hpp"
#include "pcflow/kernels.hpp"
#include "pcflow/sphere_calculus.hpp"
#include "pcflow/torus_identities.hpp"

namespace {

using namespace pcflow;

struct Fields {
  HessianField a;
  HessianField la;
  ThirdDerivativeField d3;
};

const Fields& fields(int dim, int n) {
  static std::map<std::pair<int, int>, Fields> cache;
  auto it = cache.find({dim, n});
  if (it == cache.end()) {
    InitialSpec spec;
    spec.preset = "random_bandlimited";
    spec.band = n / 4;
    spec.seed = 1;
    const TorusSpectrum s = TorusSpectrum::analyze(initial_data(TorusGrid::cube(dim, n, 2.0 * std::numbers::pi), spec));
    it = cache.emplace(std::pair{dim, n}, Fields{HessianField::from_spectrum(s), HessianField::from_spectrum(s.laplacian()),
                                                 ThirdDerivativeField::from_spectrum(s)}).first;
  }
  return it->second;
}

template <bool Parallel>
void BM_sigma(benchmark::State& st) {
  const Fields& f = fields(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  std::vector<double> out(f.a.grid.size());
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) {
    if constexpr (Parallel) kernels::sigma_field(f.a.view(), k, out);
    else kernels::sigma_field_reference(f.a.view(), k, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(out.size()));
}

template <bool Parallel>
void BM_sigma_derivative(benchmark::State& st) {
  const Fields& f = fields(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  std::vector<double> out(f.a.grid.size());
  for (auto _ : st) {
    if constexpr (Parallel) kernels::sigma_derivative_field(f.a.view(), f.la.view(), 2, out);
    else kernels::sigma_derivative_field_reference(f.a.view(), f.la.view(), 2, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(out.size()));
}

template <bool Parallel>
void BM_contraction(benchmark::State& st) {
  const Fields& f = fields(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  std::vector<double> out(f.a.grid.size());
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) {
    if constexpr (Parallel) kernels::newton_contraction_field(f.a.view(), f.d3.view(), k, out);
    else kernels::newton_contraction_field_reference(f.a.view(), f.d3.view(), k, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(out.size()));
}

template <bool Parallel>
void BM_extrema(benchmark::State& st) {
  const Fields& f = fields(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const auto& v = f.a.comps[0];
  for (auto _ : st) {
    const auto e = Parallel ? kernels::extrema(v) : kernels::extrema_reference(v);
    benchmark::DoNotOptimize(e);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(v.size()));
}

void BM_sphere_hessian(benchmark::State& st) {
  const SphericalSpectrum u = random_sphere_spectrum(SphereGrid::make(static_cast<int>(st.range(0))), 8, 1);
  for (auto _ : st) benchmark::DoNotOptimize(covariant_hessian(u, 2).comps.data());
}

void grids(benchmark::internal::Benchmark* b) { b->Args({2, 256})->Args({3, 32}); }

}  // namespace

BENCHMARK(BM_sigma<true>)->Apply(grids);
BENCHMARK(BM_sigma<false>)->Apply(grids);
BENCHMARK(BM_sigma_derivative<true>)->Apply(grids);
BENCHMARK(BM_sigma_derivative<false>)->Apply(grids);
BENCHMARK(BM_contraction<true>)->Apply(grids);
BENCHMARK(BM_contraction<false>)->Apply(grids);
BENCHMARK(BM_extrema<true>)->Apply(grids);
BENCHMARK(BM_extrema<false>)->Apply(grids);
BENCHMARK(BM_sphere_hessian)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
