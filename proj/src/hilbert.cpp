#include "fluct/hilbert.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "fluct/errors.hpp"

namespace fluct {

namespace {

using KernelSpectrum = std::vector<cplx>;

// FFT of the odd kernel h_m = 2 / (pi m), m odd, laid out for a circular
// convolution of length 2M and pre-divided by 2M.
std::shared_ptr<const KernelSpectrum> kernel_spectrum(std::size_t m_size) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const KernelSpectrum>> cache;

  const std::lock_guard lock(mutex);
  if (auto it = cache.find(m_size); it != cache.end()) return it->second;

  const std::size_t len = 2 * m_size;
  auto kernel = std::make_shared<KernelSpectrum>(len);
  for (std::size_t m = 1; m < m_size; m += 2) {
    const double h = 2.0 / (std::numbers::pi * static_cast<double>(m));
    (*kernel)[m] = h;
    (*kernel)[len - m] = -h;
  }
  detail::fft_inplace(*kernel, detail::FftSign::forward);
  const double scale = 1.0 / static_cast<double>(len);
  for (auto& v : *kernel) v *= scale;
  cache.emplace(m_size, kernel);
  return kernel;
}

std::vector<cplx>& scratch(std::size_t n) {
  thread_local std::vector<cplx> buf;
  buf.assign(n, cplx{});
  return buf;
}

}  // namespace

void sinc_hilbert(std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t m_size = in.size();
  if (out.size() != m_size) throw InvalidParameter("sinc_hilbert: length mismatch");
  const auto kernel = kernel_spectrum(m_size);

  auto& buf = scratch(2 * m_size);
  std::copy(in.begin(), in.end(), buf.begin());
  detail::fft_inplace(buf, detail::FftSign::forward);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= (*kernel)[i];
  detail::fft_inplace(buf, detail::FftSign::backward);
  std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(m_size), out.begin());
}

Spectrum sinc_hilbert(const Spectrum& f) {
  Spectrum out(f.grid());
  sinc_hilbert(f.values(), out.values());
  return out;
}

BarrierShift::BarrierShift(const FourierGrid& grid, double barrier)
    : grid_(grid), barrier_(barrier), phase_(grid.size()) {
  if (!std::isfinite(barrier) || std::abs(barrier) > grid.x_max()) {
    throw DomainError("barrier " + std::to_string(barrier) + " lies outside the grid [-" +
                      std::to_string(grid.x_max()) + ", " + std::to_string(grid.x_max()) + "]");
  }
  for (std::size_t k = 0; k < phase_.size(); ++k) phase_[k] = std::polar(1.0, barrier * grid.xi(k));
}

void plemelj_decompose(std::span<const cplx> in, const BarrierShift& shift, Side side,
                       std::span<cplx> out) {
  const auto phase = shift.phase();
  const std::size_t n = in.size();
  if (phase.size() != n || out.size() != n) {
    throw InvalidParameter("plemelj_decompose: spectrum does not match the barrier grid");
  }
  thread_local std::vector<cplx> shifted;
  shifted.resize(n);
  for (std::size_t k = 0; k < n; ++k) shifted[k] = std::conj(phase[k]) * in[k];
  sinc_hilbert(shifted, shifted);
  // i * H, rotated back, with the sign picking the half-line.
  const cplx factor = side == Side::plus ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = 0.5 * (in[k] + factor * phase[k] * shifted[k]);
  }
}

Spectrum plemelj_decompose(const Spectrum& f, const BarrierShift& shift, Side side) {
  if (!(f.grid() == shift.grid())) {
    throw InvalidParameter("plemelj_decompose: spectrum and barrier use different grids");
  }
  Spectrum out(f.grid());
  plemelj_decompose(f.values(), shift, side, out.values());
  return out;
}

Spectrum plemelj_decompose(const Spectrum& f, double barrier, Side side) {
  return plemelj_decompose(f, BarrierShift(f.grid(), barrier), side);
}

WienerHopfFactors wh_factorise(const Spectrum& symbol) {
  const auto& grid = symbol.grid();
  const std::size_t n = symbol.size();
  std::vector<cplx> log_symbol(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx v = symbol[k];
    if (!(v.real() > 0.0) || !std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw FactorisationError("symbol sample " + std::to_string(k) +
                               " has non-positive real part; the principal log would jump");
    }
    log_symbol[k] = std::log(v);
  }

  // About b = 0 the phases are identically one.
  std::vector<cplx> hilbert(n);
  sinc_hilbert(log_symbol, hilbert);

  WienerHopfFactors factors{Spectrum(grid), Spectrum(grid)};
  constexpr cplx kI{0.0, 1.0};
  for (std::size_t k = 0; k < n; ++k) {
    const cplx ih = kI * hilbert[k];
    factors.plus[k] = std::exp(0.5 * (log_symbol[k] + ih));
    factors.minus[k] = std::exp(0.5 * (log_symbol[k] - ih));
  }
  return factors;
}

}  // namespace fluct
