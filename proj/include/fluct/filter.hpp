#pragma once

#include <vector>

#include "fluct/fourier_grid.hpp"

namespace fluct {

/// Exponential spectral filter sigma(eta) = exp(-decay * eta^order).
struct FilterSpec {
  int order = 12;
  double decay = 36.841361487904734;  // 16 log 10

  /// Throws InvalidParameter unless order is even and positive and decay > 0.
  void validate() const;

  /// True when sigma(+-1) = exp(-decay) is at or below double-precision
  /// epsilon, i.e. the filter vanishes at the grid edge to machine accuracy.
  bool reaches_machine_precision() const noexcept;
};

double exp_filter_value(double eta, const FilterSpec& spec);

/// sigma(xi_k / xi_max) at every frequency node of the grid.
std::vector<double> exp_filter(const FourierGrid& grid, const FilterSpec& spec);

}  // namespace fluct
