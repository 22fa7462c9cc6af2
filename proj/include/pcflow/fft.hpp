#pragma once

// Thin thread-safe wrapper over FFTW real-to-complex transforms on
// d-dimensional periodic grids with equal extent per axis.

#include <complex>
#include <span>

namespace pcflow::fft {

/// Number of complex coefficients in the half-spectrum layout
/// (N, ..., N, N/2+1) for `dim` axes of extent `n`.
std::size_t half_spectrum_size(int dim, int n);

/// Unnormalized forward transform. `in` holds n^dim reals in row-major order.
void forward(int dim, int n, std::span<const double> in, std::span<std::complex<double>> out);

/// Unnormalized inverse transform; `in` is not modified.
void inverse(int dim, int n, std::span<const std::complex<double>> in, std::span<double> out);

}  // namespace pcflow::fft
