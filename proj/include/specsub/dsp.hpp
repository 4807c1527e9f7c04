#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specsub/errors.hpp"

namespace specsub {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(std::size_t n);

// N-point DFT via iterative radix-2 FFT with bit-reversal permutation.
// Forward transform is unscaled; fft_inverse carries the 1/N factor.
// Throws ConfigError unless the length is a power of two >= 1.
Spectrum fft_forward(const Spectrum& frame);
Spectrum fft_forward(std::span<const double> real_frame);
Spectrum fft_inverse(const Spectrum& spectrum);

// Direct O(N^2) summation DFT, any length >= 1. Reference path for the
// property tests; shares no code with the radix-2 implementation.
Spectrum dft_oracle(const Spectrum& frame);

// Per-bin magnitudes for bins 0..N/2 of a spectrum of even length N.
// Real inputs make the upper half redundant (X[N-k] = conj(X[k])), so
// the rest of the pipeline works on this half only.
std::vector<double> half_spectrum_magnitudes(const Spectrum& spectrum);

enum class WindowKind {
    SqrtHammingPaper,     // sqrt(1 - 0.85185 cos((2t+1)pi/N))
    SqrtHanning,          // sqrt(0.5 - 0.5 cos((2t+1)pi/N))
    SqrtGaussian,         // sqrt of a Gaussian window, shape 2.5
    SqrtBlackmanHarris3,  // sqrt of the 3-term Blackman-Harris window
};

// Accepts the CLI spellings: sqrt-hamming-paper, sqrt-hanning,
// sqrt-gaussian, sqrt-bh3 (alias sqrt-blackman-harris-3).
WindowKind window_kind_from_name(const std::string& name);
std::string window_kind_name(WindowKind kind);

// Window values for the given length (>= 8). The Hamming variant keeps the
// source coefficient 0.85185 verbatim, which is not the textbook 0.46 window;
// its midpoint is about 1.36, so values above 1 are expected and synthesis
// divides by the COLA constant instead of clipping.
std::vector<double> make_window(WindowKind kind, std::size_t length);

// Squared-window overlap sum C = sum_m w^2(t + m*N/oversampling), the factor
// the analysis+synthesis window pair multiplies the stream by. Throws
// ColaError if the sum varies by more than 1e-6 relative across offsets
// (e.g. sqrt-gaussian at any practical hop, or oversampling 1).
double cola_constant(std::span<const double> window, std::size_t oversampling);
double cola_constant(WindowKind kind, std::size_t length, std::size_t oversampling);

}  // namespace specsub
