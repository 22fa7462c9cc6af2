#include "pcflow/excli/checks.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "pcflow/excli/catalog.hpp"
#include "pcflow/excli/runner.hpp"
#include "pcflow/geomodels.hpp"
#include "pcflow/kahler.hpp"
#include "pcflow/sphere_calculus.hpp"
#include "pcflow/sphere_identities.hpp"
#include "pcflow/symfun.hpp"
#include "pcflow/torus_identities.hpp"

namespace pcflow::excli {

namespace {

using Rng = std::mt19937_64;
using cplx = std::complex<double>;

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    passed = passed && ok;
    notes.push_back((ok ? "" : "FAILED ") + what);
  }
  std::string detail() const {
    std::string s;
    for (const auto& n : notes) s += (s.empty() ? "" : "; ") + n;
    return s;
  }
};

double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

SymMatrix random_sym(Rng& rng, int n) {
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, uniform(rng));
  return a;
}

HermMatrix random_herm(Rng& rng, int n) {
  HermMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a.set(i, i, cplx(uniform(rng), 0.0));
    for (int j = i + 1; j < n; ++j) a.set(i, j, cplx(uniform(rng), uniform(rng)));
  }
  return a;
}

// sigma_k with the imaginary part kept, from the unsymmetrised recursion.
double max_sigma_imag(const HermMatrix& a) {
  const int n = a.dim();
  SmallMatrix<cplx> t = SmallMatrix<cplx>::identity(n);
  double worst = 0.0;
  for (int k = 1; k <= n; ++k) {
    const cplx sigma = (a.matrix() * t).trace() / static_cast<double>(k);
    worst = std::max(worst, std::abs(sigma.imag()));
    t = SmallMatrix<cplx>::identity(n) * sigma - t * a.matrix();
  }
  return worst;
}

template <class Scalar>
double max_abs_entry(const SmallMatrix<Scalar>& m) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) s = std::max(s, std::abs(m(i, j)));
  return s;
}

Outcome check_algebra() {
  Rng rng(101);
  double euler = 0.0, trace_tk = 0.0, cayley = 0.0, frob = 0.0, imag = 0.0;
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 1000; ++trial) {
      const SymMatrix a = random_sym(rng, n);
      const double norm = std::sqrt(a.frobenius_norm2());
      const SigmaVector s = sigma_vector(a);
      for (int k = 1; k <= n; ++k) {
        const double scale = std::pow(1.0 + norm, k);
        const double lhs = trace_product(newton_transform(a, k - 1), a);
        euler = std::max(euler, std::abs(lhs - k * s[k]) / scale);
        trace_tk = std::max(trace_tk, std::abs(newton_transform(a, k).trace() - (n - k) * s[k]) / scale);
      }
      cayley = std::max(cayley, max_abs_entry(newton_transform(a, n).matrix()) / (1.0 + std::pow(norm, n)));
      frob = std::max(frob, std::abs(s[1] * s[1] - 2.0 * s[2] - a.frobenius_norm2()) / (1.0 + a.frobenius_norm2()));
    }
  for (int n = 1; n <= 4; ++n)
    for (int trial = 0; trial < 1000; ++trial) imag = std::max(imag, max_sigma_imag(random_herm(rng, n)));
  Outcome o;
  o.require(euler < 1e-10, fmt::format("trace(T_(k-1) A) = k sigma_k rel {:.2e}", euler));
  o.require(trace_tk < 1e-10, fmt::format("trace T_k = (n-k) sigma_k rel {:.2e}", trace_tk));
  o.require(cayley < 1e-9, fmt::format("T_n = 0 scaled {:.2e}", cayley));
  o.require(frob < 1e-12, fmt::format("sigma_1^2 - 2 sigma_2 = |A|^2 rel {:.2e}", frob));
  o.require(imag < 1e-12, fmt::format("Hermitian Im sigma_k {:.2e}", imag));
  return o;
}

Outcome check_derivative() {
  Rng rng(202);
  const double h = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int k = 1 + static_cast<int>(rng() % n);
    const SymMatrix a = random_sym(rng, n);
    const SymMatrix b = random_sym(rng, n);
    const double exact = sigma_directional_derivative(a, b, k);
    SymMatrix plus(n), minus(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        plus.set(i, j, a(i, j) + h * b(i, j));
        minus.set(i, j, a(i, j) - h * b(i, j));
      }
    const double fd = (elementary_symmetric(plus, k) - elementary_symmetric(minus, k)) / (2.0 * h);
    const double scale = std::sqrt(b.frobenius_norm2()) * std::pow(1.0 + std::sqrt(a.frobenius_norm2()), k - 1);
    worst = std::max(worst, std::abs(fd - exact) / std::max(std::abs(exact), scale));
  }
  Outcome o;
  o.require(worst < 1e-6, fmt::format("1000 triples, worst rel err {:.2e}", worst));
  return o;
}

Outcome check_curvature() {
  Rng rng(303);
  double gap_s = 0.0, gap_cp = 0.0, min_s = 0.0, min_cp = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const ModelSn space{n, uniform(rng, 0.5, 2.0)};
    const SymMatrix a = random_sym(rng, n);
    const double scale = space.kappa * (1.0 + a.frobenius_norm2());
    gap_s = std::max(gap_s, closed_form_gap(a, space) / scale);
    min_s = std::min(min_s, condition_non2_value(a, space) / scale);
  }
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const ModelCPn space{n, uniform(rng, 0.5, 2.0)};
    const HermMatrix a = random_herm(rng, n);
    const double scale = space.c * (1.0 + a.frobenius_norm2());
    gap_cp = std::max(gap_cp, closed_form_gap(a, space) / scale);
    min_cp = std::min(min_cp, condition_non1_value(a, space) / scale);
  }
  Outcome o;
  o.require(gap_s < 1e-12, fmt::format("S^n brute vs closed rel {:.2e}", gap_s));
  o.require(min_s > -1e-12, fmt::format("S^n min value {:.2e}", min_s));
  o.require(gap_cp < 1e-12, fmt::format("CP^n brute vs closed rel {:.2e}", gap_cp));
  o.require(min_cp > -1e-12, fmt::format("CP^n min value {:.2e}", min_cp));
  return o;
}

ScalarField random_torus(int dim, int n, int band, std::uint64_t seed) {
  InitialSpec spec;
  spec.preset = "random_bandlimited";
  spec.band = band;
  spec.seed = seed;
  return initial_data(TorusGrid::cube(dim, n, 2.0 * std::numbers::pi), spec);
}

Outcome check_torus_spectral() {
  const double side = 3.0;
  const TorusGrid g = TorusGrid::cube(2, 32, side);
  const double w = 2.0 * std::numbers::pi / side;
  const double t = 0.05;
  ScalarField f = ScalarField::zeros(g);
  for (std::size_t p = 0; p < g.size(); ++p) f.samples[p] = std::sin(w * g.coordinate(0, g.unflatten(p)[0]));
  const ScalarField ft = heat_propagate(f, t);
  const double amp = std::exp(-w * w * t);
  double decay = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) decay = std::max(decay, std::abs(ft.samples[p] - amp * f.samples[p]));
  decay /= amp;

  const ScalarField r = random_torus(2, 32, 8, 17);
  const ScalarField two = heat_propagate(heat_propagate(r, 0.013), 0.029);
  const ScalarField one = heat_propagate(r, 0.042);
  double semigroup = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) semigroup = std::max(semigroup, std::abs(two.samples[p] - one.samples[p]));
  Outcome o;
  o.require(decay < 1e-10, fmt::format("single-mode decay rel {:.2e}", decay));
  o.require(semigroup < 1e-12, fmt::format("semigroup sup {:.2e}", semigroup));
  return o;
}

Outcome check_flat_identities() {
  const ScalarField f2 = random_torus(2, 64, 16, 5);
  const ScalarField f3 = random_torus(3, 32, 8, 6);
  const double r1 = residual_sigma1(f2).sup();
  const double r2 = residual_sigma_k(f2, 2).sup();
  const double r3 = residual_sigma_k(f3, 3).sup();

  // k = 2: sum_i trace(d_i T_1 d_i A) = |grad sigma_1|^2 - sum u_ijk^2.
  const ScalarField contraction = newton_gradient_contraction(f2, 2);
  const TorusSpectrum s = TorusSpectrum::analyze(f2);
  const ThirdDerivativeField d3 = ThirdDerivativeField::from_spectrum(s);
  const ScalarField lap = spectral_laplacian(f2);
  const ScalarField g0 = spectral_derivative(lap, axes_index({0}));
  const ScalarField g1 = spectral_derivative(lap, axes_index({1}));
  double gap = 0.0;
  for (std::size_t p = 0; p < f2.samples.size(); ++p) {
    double third = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) third += std::pow(d3.component(i, j, k, p), 2);
    const double closed = g0.samples[p] * g0.samples[p] + g1.samples[p] * g1.samples[p] - third;
    gap = std::max(gap, std::abs(contraction.samples[p] - closed));
  }
  Outcome o;
  o.require(r1 < 1e-9, fmt::format("sigma_1 {:.2e}", r1));
  o.require(r2 < 1e-8, fmt::format("sigma_2 (n=2, N=64, band 16) {:.2e}", r2));
  o.require(r3 < 1e-7, fmt::format("sigma_3 (n=3, N=32, band 8) {:.2e}", r3));
  o.require(gap < 1e-8, fmt::format("k=2 contraction closed-form gap {:.2e}", gap));
  return o;
}

// Largest violation of min nondecreasing / max nonincreasing.
double monotonicity_violation(const MonitorSeries& s) {
  const auto lo = s.column(Column::min_sigma1);
  const auto hi = s.column(Column::max_sigma1);
  double worst = 0.0;
  for (std::size_t i = 1; i < lo.size(); ++i) worst = std::max(worst, lo[i - 1] - lo[i]);
  for (std::size_t i = 1; i < hi.size(); ++i) worst = std::max(worst, hi[i] - hi[i - 1]);
  return worst;
}

Outcome check_maximum_principle() {
  Outcome o;
  for (const char* name : {"torus_single_mode", "torus_random_flow", "torus_gaussian_bump", "sphere_cos_theta", "sphere_random"}) {
    ExperimentConfig c = catalog_config(name);
    c.monitors = MonitorSet::parse({"sigma1"});
    const MonitorSeries s = simulate(c);
    const double v = monotonicity_violation(s);
    o.require(v <= 1e-10 && c.steps >= 100 && s.rows.size() == static_cast<std::size_t>(c.steps) + 1,
              fmt::format("{} {} steps violation {:.1e}", name, c.steps, v));
  }
  return o;
}

Outcome check_quotient() {
  Outcome o;
  for (const char* name : {"torus_quotient_cos", "torus_gaussian_bump"}) {
    const ExperimentConfig c = catalog_config(name);
    const ScalarField f0 = torus_initial(c);
    double gap = 0.0;
    for (double t : {0.0, 0.5 * c.steps * c.dt, c.steps * c.dt}) {
      const QuotientResult q = quotient_residual(heat_propagate(f0, t), c.delta);
      if (!q.mask_empty) gap = std::max(gap, q.reduced_gap);
    }
    const MonitorSeries s = simulate(c);
    const auto g = s.column(Column::quotient_min);
    const double min_g = g.empty() ? std::nan("") : *std::min_element(g.begin(), g.end());
    o.require(gap < 1e-8 && !g.empty(), fmt::format("{} delta {} gap {:.2e}, min G {:.4g}", name, c.delta, gap, min_g));
  }
  return o;
}

Outcome check_sphere_calculus() {
  const SphereGrid g = SphereGrid::make(32, 1.0);
  const SphericalSpectrum cos_theta = sh_analyze(SphereField::from_function(g, [](double th, double) { return std::cos(th); }));
  const CovariantTensorField hess = covariant_hessian(cos_theta, 2);
  double hess_gap = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const SymMatrix m = frame_matrix(hess, p);
    const double c = std::cos(g.theta(static_cast<int>(p / g.nlon())));
    hess_gap = std::max({hess_gap, std::abs(m(0, 0) + c), std::abs(m(1, 1) + c), std::abs(m(0, 1))});
  }

  double decay = 0.0;
  const double t = 0.07;
  for (auto [l, m] : {std::pair{1, 0}, {2, 1}, {3, 3}, {5, 2}, {8, 0}}) {
    const SphericalSpectrum y = sphere_heat_propagate(sphere_harmonic(g, l, m), t);
    const SphericalSpectrum back = sh_analyze(sh_synthesize(y));
    const double exact = std::exp(-l * (l + 1) * t);
    decay = std::max(decay, std::abs(back.at(l, m) - exact) / exact);
  }

  const SphericalSpectrum r = random_sphere_spectrum(g, 32, 9);
  const SphericalSpectrum rt = sh_analyze(sh_synthesize(r));
  double round_trip = 0.0;
  for (std::size_t i = 0; i < r.coefficients().size(); ++i)
    round_trip = std::max(round_trip, std::abs(r.coefficients()[i] - rt.coefficients()[i]));

  const CovariantTensorField dg = covariant_derivative(metric_tensor(SphereGrid::make(32, 1.7), 2));
  double nabla_g = 0.0;
  for (std::size_t p = 0; p < dg.grid.size(); ++p)
    for (int c = 0; c < dg.components(); ++c) nabla_g = std::max(nabla_g, std::abs(frame_component(dg, p, c)));

  Outcome o;
  o.require(hess_gap < 1e-8, fmt::format("Hess cos = -cos g {:.2e}", hess_gap));
  o.require(decay < 1e-8, fmt::format("Y_lm decay rel {:.2e}", decay));
  o.require(round_trip < 1e-10, fmt::format("round trip {:.2e}", round_trip));
  o.require(nabla_g < 1e-9, fmt::format("nabla g {:.2e}", nabla_g));
  return o;
}

Outcome check_commutation() {
  Outcome o;
  double worst = 0.0;
  for (int lmax : {16, 32, 48}) {
    double sup = 0.0;
    for (std::uint64_t seed : {1, 2, 3}) sup = std::max(sup, commutation_residual(random_sphere_spectrum(SphereGrid::make(lmax), 4, seed)).field.sup());
    o.require(sup < 1e-7, fmt::format("L{} {:.2e}", lmax, sup));
    worst = std::max(worst, sup);
  }
  const SphericalSpectrum u = random_sphere_spectrum(SphereGrid::make(32), 4, 1);
  const double right = commutation_residual(u).field.sup();
  const double flipped = commutation_residual(u, true).field.sup();
  const double ratio = flipped / std::max(right, 1e-300);
  o.require(ratio >= 1e3, fmt::format("flipped/correct {:.1e}", ratio));
  return o;
}

Outcome check_sigma2_sphere() {
  Outcome o;
  double res = 0.0, gap = 0.0;
  for (std::uint64_t seed : {1, 2, 3}) {
    const SphericalSpectrum u = random_sphere_spectrum(SphereGrid::make(48), 8, seed);
    res = std::max(res, riemannian_sigma2_residual(u).field.sup());
    gap = std::max(gap, sphere_curvature_term_gap(u));
  }
  o.require(res < 1e-6, fmt::format("residual L48 l<=8 {:.2e}", res));
  o.require(gap < 1e-9, fmt::format("curvature term gap {:.2e}", gap));
  return o;
}

Outcome check_kahler() {
  const ScalarField f = random_torus(4, 32, 8, 21);
  const ScalarField tr = complex_hessian(f).trace();
  const ScalarField lap = spectral_laplacian(f);
  double trace_gap = 0.0;
  for (std::size_t p = 0; p < f.samples.size(); ++p) trace_gap = std::max(trace_gap, std::abs(tr.samples[p] - 0.25 * lap.samples[p]));
  const double res = kahler_sigma2_residual(f).sup();

  // Depends on (x1, y1) only: rank-1 complex Hessian.
  ScalarField r1 = ScalarField::zeros(f.grid);
  for (std::size_t p = 0; p < f.samples.size(); ++p) {
    const auto idx = f.grid.unflatten(p);
    const double x = f.grid.coordinate(0, idx[0]), y = f.grid.coordinate(1, idx[1]);
    r1.samples[p] = std::sin(x + 2.0 * y) + 0.5 * std::cos(3.0 * x - y);
  }
  const HermitianHessianField a = complex_hessian(r1);
  double sigma2 = 0.0;
  for (std::size_t p = 0; p < r1.samples.size(); ++p) sigma2 = std::max(sigma2, std::abs(elementary_symmetric(a.at(p), 2)));
  const double rank1_res = kahler_sigma2_residual(r1).sup();
  Outcome o;
  o.require(trace_gap < 1e-10, fmt::format("trace = Delta/4 {:.2e}", trace_gap));
  o.require(res < 1e-8, fmt::format("sigma_2 residual (m=2, N=32, band 8) {:.2e}", res));
  o.require(sigma2 < 1e-10 && rank1_res < 1e-10, fmt::format("rank-1 sigma_2 {:.1e}, residual {:.1e}", sigma2, rank1_res));
  return o;
}

Outcome check_shrinking(const std::filesystem::path& scratch) {
  Outcome o;
  std::string common;
  bool per_step_ok = true, same = true, recorded = true;
  double r0 = 0.0, r1 = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ExperimentConfig c = catalog_config("shrinking_adjudication");
    c.output_dir = (scratch / fmt::format("shrinking_seed{}", seed)).string();
    RunOptions opts;
    opts.out_root = scratch;
    opts.seed = seed;
    const RunResult run = run_experiment(c, opts);
    const AdjudicationReport& rep = *run.adjudication;
    for (const auto& s : rep.steps) {
      per_step_ok = per_step_ok && (s.verdict == "r0_zero" || s.verdict == "r1_zero");
      r0 = std::max(r0, s.sup_r0);
      r1 = std::max(r1, s.sup_r1);
    }
    if (seed == 1) common = rep.verdict;
    same = same && rep.verdict == common;
    std::ifstream is(run.dir / "summary.json");
    const auto j = nlohmann::json::parse(is, nullptr, false);
    recorded = recorded && !j.is_discarded() && j["verdicts"].value("shrinking_sigma1", "") == rep.verdict;
  }
  o.require(per_step_ok, "exactly one of r0, r1 zero at every step");
  o.require(same, fmt::format("verdict {} for 5 seeds (max r0 {:.2e}, max r1 {:.2e})", common, r0, r1));
  o.require(recorded, "verdict recorded in summary.json");
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Outcome check_determinism(const std::filesystem::path& scratch, const std::vector<CheckResult>& earlier) {
  Outcome o;
  for (const char* name : {"torus_random_flow", "sphere_cos_theta", "kahler_flat"}) {
    std::string bytes[2];
    for (int rep = 0; rep < 2; ++rep) {
      ExperimentConfig c = catalog_config(name);
      c.output_dir = (scratch / fmt::format("{}_run{}", name, rep)).string();
      const RunResult run = run_experiment(c, RunOptions{scratch, std::nullopt});
      bytes[rep] = read_file(run.dir / "monitors.csv");
    }
    o.require(!bytes[0].empty() && bytes[0] == bytes[1], fmt::format("{} CSV bit-identical", name));
  }
  std::vector<int> failed;
  for (const auto& r : earlier)
    if (!r.passed) failed.push_back(r.criterion);
  o.require(failed.empty(), failed.empty() ? fmt::format("{} other checks passed", earlier.size())
                                           : fmt::format("checks {} failed", fmt::join(failed, ",")));
  return o;
}

bool selected(const CheckInfo& info, const std::string& filter) {
  const std::string num = std::to_string(info.criterion);
  return fnmatch(filter.c_str(), info.name.c_str(), 0) == 0 || fnmatch(filter.c_str(), num.c_str(), 0) == 0;
}

}  // namespace

const std::vector<CheckInfo>& check_list() {
  static const std::vector<CheckInfo> list = {
      {1, "algebra", "Newton-transform identities on random matrices"},
      {2, "derivative", "sigma_k directional derivative vs finite differences"},
      {3, "curvature", "curvature-condition contractions vs closed forms"},
      {4, "torus_spectral", "torus heat propagator exactness"},
      {5, "flat_identities", "sigma_k evolution identities on the flat torus"},
      {6, "maximum_principle", "sigma_1 extrema monotone along the flow"},
      {7, "quotient", "quotient G assembled vs reduced form"},
      {8, "sphere_calculus", "spectral calculus on S^2"},
      {9, "commutation", "Hessian-Laplacian commutation on S^2"},
      {10, "sigma2_sphere", "Riemannian sigma_2 identity on S^2"},
      {11, "kahler_flat", "complex Hessian on the flat complex torus"},
      {12, "shrinking_adjudication", "trace evolution on the shrinking sphere"},
      {13, "determinism", "bit-identical reruns and overall status"},
  };
  return list;
}

std::string format_result(const CheckResult& r) {
  return fmt::format("[{}] {:2d} {:<22} {:6.1f}s  {}", r.passed ? "PASS" : "FAIL", r.criterion, r.name, r.seconds, r.detail);
}

std::vector<CheckResult> run_checks(const CheckOptions& opts, const std::function<void(const CheckResult&)>& on_result) {
  const std::filesystem::path scratch = opts.out_root / "check";
  std::vector<CheckResult> results;
  for (const CheckInfo& info : check_list()) {
    if (!selected(info, opts.filter)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      switch (info.criterion) {
        case 1: o = check_algebra(); break;
        case 2: o = check_derivative(); break;
        case 3: o = check_curvature(); break;
        case 4: o = check_torus_spectral(); break;
        case 5: o = check_flat_identities(); break;
        case 6: o = check_maximum_principle(); break;
        case 7: o = check_quotient(); break;
        case 8: o = check_sphere_calculus(); break;
        case 9: o = check_commutation(); break;
        case 10: o = check_sigma2_sphere(); break;
        case 11: o = check_kahler(); break;
        case 12: o = check_shrinking(scratch); break;
        case 13: o = check_determinism(scratch, results); break;
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    CheckResult r{info.criterion, info.name, o.passed, o.detail(),
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace pcflow::excli
