#include "pcflow/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/os.h>

namespace pcflow {

static_assert(std::endian::native == std::endian::little, "snapshot writer assumes a little-endian host");

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::runtime_error("snapshot: truncated header");
  return v;
}

}  // namespace

void write_torus_binary(const std::filesystem::path& path, const ScalarField& f, double t) {
  auto os = open_out(path);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(f.grid.dim));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(f.grid.n));
  for (int a = 0; a < f.grid.dim; ++a) put<double>(os, f.grid.side[a]);
  put<double>(os, t);
  os.write(reinterpret_cast<const char*>(f.samples.data()), static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
}

ScalarField read_torus_binary(const std::filesystem::path& path, double* t) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  const auto dims = get<std::uint64_t>(is);
  const auto n = get<std::uint64_t>(is);
  if (dims < 1 || dims > static_cast<std::uint64_t>(kMaxTorusDim) || n < 4 || n > 4096)
    throw std::runtime_error("snapshot: malformed header");
  std::vector<double> sides(dims);
  for (auto& s : sides) s = get<double>(is);
  const double time = get<double>(is);
  if (t) *t = time;
  ScalarField f = ScalarField::zeros(TorusGrid::make(static_cast<int>(dims), static_cast<int>(n), sides));
  if (!is.read(reinterpret_cast<char*>(f.samples.data()), static_cast<std::streamsize>(f.samples.size() * sizeof(double))))
    throw std::runtime_error("snapshot: truncated samples");
  return f;
}

void write_torus_csv(const std::filesystem::path& path, const ScalarField& f, std::size_t max_points) {
  if (f.samples.size() > max_points) throw std::invalid_argument("write_torus_csv: grid too large for CSV export");
  auto out = fmt::output_file(path.string());
  for (int a = 0; a < f.grid.dim; ++a) out.print("x{},", a);
  out.print("value\n");
  for (std::size_t p = 0; p < f.samples.size(); ++p) {
    const auto idx = f.grid.unflatten(p);
    for (int a = 0; a < f.grid.dim; ++a) out.print("{:.17g},", f.grid.coordinate(a, idx[a]));
    out.print("{:.17g}\n", f.samples[p]);
  }
}

void write_sphere_binary(const std::filesystem::path& path, const SphereField& f, double t) {
  auto os = open_out(path);
  os.write("PCSPHERE", 8);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(f.grid.nlat()));
  put<std::uint64_t>(os, static_cast<std::uint64_t>(f.grid.nlon()));
  put<double>(os, f.grid.radius());
  put<double>(os, t);
  for (int j = 0; j < f.grid.nlat(); ++j) put<double>(os, f.grid.theta(j));
  os.write(reinterpret_cast<const char*>(f.samples.data()), static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
}

void write_sphere_csv(const std::filesystem::path& path, const SphereField& f) {
  auto out = fmt::output_file(path.string());
  out.print("theta,phi,value\n");
  for (int j = 0; j < f.grid.nlat(); ++j)
    for (int k = 0; k < f.grid.nlon(); ++k)
      out.print("{:.17g},{:.17g},{:.17g}\n", f.grid.theta(j), f.grid.phi(k), f.samples[f.grid.index(j, k)]);
}

void write_spectrum_csv(const std::filesystem::path& path, const SphericalSpectrum& s) {
  auto out = fmt::output_file(path.string());
  out.print("l,m,re,im\n");
  for (int l = 0; l <= s.lmax(); ++l)
    for (int m = 0; m <= l; ++m) {
      const auto c = s.at(l, m);
      out.print("{},{},{:.17g},{:.17g}\n", l, m, c.real(), c.imag());
    }
}

}  // namespace pcflow
