#include "fluct/fourier_grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "fluct/errors.hpp"

namespace fluct {

FourierGrid::FourierGrid(std::size_t size, double x_max) : size_(size), x_max_(x_max) {
  if (size < 8 || !std::has_single_bit(size)) {
    throw InvalidParameter("grid size must be a power of two >= 8, got " + std::to_string(size));
  }
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw InvalidParameter("grid half-width x_max must be positive and finite");
  }
  dx_ = 2.0 * x_max_ / static_cast<double>(size_);
  // dxi = 2 pi / (M dx) = pi / x_max.
  dxi_ = std::numbers::pi / x_max_;
}

std::size_t FourierGrid::nearest_x_index(double x) const noexcept {
  const double pos = std::round((x + x_max_) / dx_);
  return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(size_ - 1)));
}

FourierGrid make_grid(std::size_t size, double x_max) { return FourierGrid(size, x_max); }

Spectrum::Spectrum(const FourierGrid& grid) : grid_(grid), values_(grid.size()) {}

Spectrum::Spectrum(const FourierGrid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidParameter("spectrum length " + std::to_string(values_.size()) +
                           " does not match grid size " + std::to_string(grid_.size()));
  }
  if (!all_finite()) throw InvalidParameter("spectrum contains non-finite samples");
}

bool Spectrum::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](const cplx& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

// With x_j = -x_max + j dx and xi_k = (k - M/2) dxi the kernel factorises as
//   exp(i xi_k x_j) = (-1)^j (-1)^k exp(+2 pi i jk / M)
// because dxi * x_max = pi and M/2 is even.
Spectrum dft(const FourierGrid& grid, std::span<const cplx> samples) {
  if (samples.size() != grid.size()) {
    throw InvalidParameter("dft: sample count does not match grid size");
  }
  std::vector<cplx> buf(samples.begin(), samples.end());
  for (std::size_t j = 1; j < buf.size(); j += 2) buf[j] = -buf[j];
  detail::fft_inplace(buf, detail::FftSign::backward);
  const double dx = grid.dx();
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] *= (k % 2 == 0) ? dx : -dx;
  return Spectrum(grid, std::move(buf));
}

std::vector<cplx> idft(const Spectrum& spectrum) {
  const auto& grid = spectrum.grid();
  std::vector<cplx> buf(spectrum.values().begin(), spectrum.values().end());
  for (std::size_t k = 1; k < buf.size(); k += 2) buf[k] = -buf[k];
  detail::fft_inplace(buf, detail::FftSign::forward);
  const double w = grid.dxi() / (2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < buf.size(); ++j) buf[j] *= (j % 2 == 0) ? w : -w;
  return buf;
}

}  // namespace fluct
