#pragma once

// Field snapshot files.
//
// Torus binary, little-endian: u64 dims, u64 N, f64 L[dims], f64 t, then
// N^dims f64 samples in row-major order.
// Sphere binary, little-endian: the 8 bytes "PCSPHERE", u64 nlat, u64 nlon,
// f64 radius, f64 t, f64 theta[nlat], then nlat * nlon f64 samples with phi
// fastest; phi_k = 2 pi k / nlon.

#include <filesystem>
#include <string>

#include "pcflow/sphere.hpp"
#include "pcflow/torus.hpp"

namespace pcflow {

void write_torus_binary(const std::filesystem::path& path, const ScalarField& f, double t);
ScalarField read_torus_binary(const std::filesystem::path& path, double* t = nullptr);
/// Columns x0..x{d-1}, value. Refuses grids above `max_points` nodes.
void write_torus_csv(const std::filesystem::path& path, const ScalarField& f, std::size_t max_points = 1u << 16);

void write_sphere_binary(const std::filesystem::path& path, const SphereField& f, double t);
/// Columns theta, phi, value.
void write_sphere_csv(const std::filesystem::path& path, const SphereField& f);
/// Columns l, m, re, im for m >= 0.
void write_spectrum_csv(const std::filesystem::path& path, const SphericalSpectrum& s);

}  // namespace pcflow
