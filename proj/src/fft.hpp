#pragma once

// Thin FFTW wrapper. Plans are created once per (size, direction) under a
// lock and executed with the new-array interface, which is thread-safe.

#include <complex>
#include <cstddef>
#include <span>

namespace fluct::detail {

enum class FftSign { forward = -1, backward = +1 };

/// Unnormalised in-place DFT: out_k = sum_j in_j exp(sign * 2 pi i jk / n).
void fft_inplace(std::span<std::complex<double>> data, FftSign sign);

}  // namespace fluct::detail
