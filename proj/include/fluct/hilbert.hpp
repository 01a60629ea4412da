#pragma once

#include <span>
#include <vector>

#include "fluct/fourier_grid.hpp"

namespace fluct {

enum class Side { plus, minus };

/// Truncated sinc-expansion Hilbert transform on the frequency nodes:
///
///   H[f](xi_j) = sum_k f(xi_k) (1 - cos(pi (j - k))) / (pi (j - k)),
///
/// with the j = k term equal to zero. Evaluated as a linear convolution with
/// the kernel 2 / (pi m) (odd m) through a zero-padded FFT of length 2M.
Spectrum sinc_hilbert(const Spectrum& f);

/// Span form of sinc_hilbert; `in` and `out` must have the same power-of-two
/// length and may alias.
void sinc_hilbert(std::span<const cplx> in, std::span<cplx> out);

/// Precomputed phases exp(i b xi_k) for decompositions about a log-barrier b.
class BarrierShift {
 public:
  /// Throws DomainError unless |b| <= x_max.
  BarrierShift(const FourierGrid& grid, double barrier);

  double barrier() const noexcept { return barrier_; }
  const FourierGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> phase() const noexcept { return phase_; }

 private:
  FourierGrid grid_;
  double barrier_;
  std::vector<cplx> phase_;
};

/// Generalised Plemelj-Sokhotsky split about the barrier b:
///
///   f_{b+-}(xi) = 1/2 { f(xi) +- exp(i b xi) i H[exp(-i b xi) f](xi) }.
///
/// f_{b+} approximates the transform of the original restricted to x > b.
/// Because the frequency sampling makes the log-price domain periodic with
/// period 2 x_max, "x > b" effectively means b < x < b + x_max.
Spectrum plemelj_decompose(const Spectrum& f, double barrier, Side side);
Spectrum plemelj_decompose(const Spectrum& f, const BarrierShift& shift, Side side);

/// Span form used in the hot loops. `out` may alias `in`.
void plemelj_decompose(std::span<const cplx> in, const BarrierShift& shift, Side side,
                       std::span<cplx> out);

struct WienerHopfFactors {
  Spectrum plus;
  Spectrum minus;
};

/// Multiplicative split symbol = plus * minus obtained by decomposing the
/// principal log of the symbol about b = 0 and exponentiating.
/// Throws FactorisationError when a sample is zero or has Re <= 0.
WienerHopfFactors wh_factorise(const Spectrum& symbol);

}  // namespace fluct
