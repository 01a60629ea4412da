#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fluct {

using cplx = std::complex<double>;

/// Uniform lattice shared by the log-price and frequency domains.
///
///   x_j  = -x_max + j dx,       dx  = 2 x_max / M
///   xi_k = (k - M/2) dxi,       dxi = 2 pi / (M dx)
///
/// so that dx * dxi * M = 2 pi and the discrete transforms below are exact
/// inverses of each other.
class FourierGrid {
 public:
  /// Throws InvalidParameter unless size is a power of two >= 8 and x_max > 0.
  FourierGrid(std::size_t size, double x_max);

  std::size_t size() const noexcept { return size_; }
  double x_max() const noexcept { return x_max_; }
  double dx() const noexcept { return dx_; }
  double dxi() const noexcept { return dxi_; }
  /// Largest |xi_k| on the grid, i.e. (M/2) dxi.
  double xi_max() const noexcept { return 0.5 * static_cast<double>(size_) * dxi_; }

  double x(std::size_t j) const noexcept { return -x_max_ + static_cast<double>(j) * dx_; }
  double xi(std::size_t k) const noexcept {
    return (static_cast<double>(k) - 0.5 * static_cast<double>(size_)) * dxi_;
  }

  /// Index of the x-node nearest to x (clamped to the grid).
  std::size_t nearest_x_index(double x) const noexcept;

  friend bool operator==(const FourierGrid&, const FourierGrid&) = default;

 private:
  std::size_t size_;
  double x_max_;
  double dx_;
  double dxi_;
};

FourierGrid make_grid(std::size_t size, double x_max);

/// Complex samples of a function at the frequency nodes of a grid.
class Spectrum {
 public:
  explicit Spectrum(const FourierGrid& grid);
  /// Throws InvalidParameter on a length mismatch or non-finite sample.
  Spectrum(const FourierGrid& grid, std::vector<cplx> values);

  const FourierGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  const cplx& operator[](std::size_t k) const noexcept { return values_[k]; }
  cplx& operator[](std::size_t k) noexcept { return values_[k]; }

  bool all_finite() const noexcept;

 private:
  FourierGrid grid_;
  std::vector<cplx> values_;
};

/// f^(xi_k) ~ dx * sum_j exp(i xi_k x_j) f(x_j).
Spectrum dft(const FourierGrid& grid, std::span<const cplx> samples);

/// f(x_j) ~ dxi / (2 pi) * sum_k exp(-i xi_k x_j) f^(xi_k).
std::vector<cplx> idft(const Spectrum& spectrum);

}  // namespace fluct
