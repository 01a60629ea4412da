#include "fluct/filter.hpp"

#include <cmath>
#include <limits>

#include "fluct/errors.hpp"

namespace fluct {

void FilterSpec::validate() const {
  if (order <= 0 || order % 2 != 0) throw InvalidParameter("filter order must be even and positive");
  if (!(decay > 0.0) || !std::isfinite(decay)) throw InvalidParameter("filter decay must be positive");
}

bool FilterSpec::reaches_machine_precision() const noexcept {
  return std::exp(-decay) <= std::numeric_limits<double>::epsilon();
}

double exp_filter_value(double eta, const FilterSpec& spec) {
  return std::exp(-spec.decay * std::pow(eta, spec.order));
}

std::vector<double> exp_filter(const FourierGrid& grid, const FilterSpec& spec) {
  spec.validate();
  std::vector<double> weights(grid.size());
  const double xi_max = grid.xi_max();
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] = exp_filter_value(grid.xi(k) / xi_max, spec);
  }
  return weights;
}

}  // namespace fluct
