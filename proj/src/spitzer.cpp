#include "fluct/spitzer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fluct/errors.hpp"

namespace fluct {

namespace {

constexpr double kTinyMagnitude = 1e-300;

void check_same_grid(const FactorisedSymbol& fs, const BarrierShift& shift) {
  if (!(fs.symbol.grid() == shift.grid())) {
    throw InvalidParameter("barrier shift and symbol live on different grids");
  }
}

void check_filter(const FactorisedSymbol& fs, std::span<const double> filter) {
  if (filter.size() != fs.symbol.size()) {
    throw InvalidParameter("filter length does not match the grid");
  }
}

cplx safe_div(cplx num, cplx den, const char* what) {
  if (std::abs(den) < kTinyMagnitude) {
    throw FactorisationError(std::string("degenerate symbol: |") + what + "| vanishes");
  }
  return num / den;
}

}  // namespace

Spectrum build_symbol_continuous(const LevyModel& model, double damping, const FourierGrid& grid,
                                 cplx s) {
  if (!(s.real() > 0.0)) throw DomainError("continuous symbol needs Re s > 0");
  if (!model.in_strip(cplx{0.0, damping})) {
    throw DomainError("damping " + std::to_string(damping) + " moves xi outside the " +
                      std::string(model.name()) + " analyticity strip");
  }
  std::vector<cplx> v(grid.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = s - model.char_exponent(cplx{grid.xi(k), damping});
  }
  return Spectrum(grid, std::move(v));
}

Spectrum build_symbol_discrete(const LevyModel& model, double damping, const FourierGrid& grid,
                               cplx q, double dt) {
  if (!(std::abs(q) < 1.0)) throw DomainError("discrete symbol needs |q| < 1");
  if (!(dt > 0.0)) throw DomainError("discrete symbol needs dt > 0");
  if (!model.in_strip(cplx{0.0, damping})) {
    throw DomainError("damping " + std::to_string(damping) + " moves xi outside the " +
                      std::string(model.name()) + " analyticity strip");
  }
  std::vector<cplx> v(grid.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = 1.0 - q * std::exp(model.char_exponent(cplx{grid.xi(k), damping}) * dt);
  }
  return Spectrum(grid, std::move(v));
}

FactorisedSymbol factorise_symbol(Spectrum symbol, cplx node) {
  auto factors = wh_factorise(symbol);
  return FactorisedSymbol{node, std::move(symbol), std::move(factors.plus),
                          std::move(factors.minus)};
}

void FixedPointControls::validate() const {
  if (max_iterations < 1) throw InvalidParameter("fixed point: max_iterations must be >= 1");
  if (!(tolerance >= 0.0)) throw InvalidParameter("fixed point: tolerance must be >= 0");
}

SpitzerOutput single_barrier_identity(const FactorisedSymbol& fs, const BarrierShift& lower,
                                      std::span<const double> filter) {
  check_same_grid(fs, lower);
  check_filter(fs, filter);
  const std::size_t n = fs.symbol.size();

  Spectrum out(fs.symbol.grid());
  auto p = out.values();
  for (std::size_t k = 0; k < n; ++k) p[k] = safe_div(filter[k], fs.minus[k], "Phi_-");
  plemelj_decompose(p, lower, Side::plus, p);
  for (std::size_t k = 0; k < n; ++k) p[k] = safe_div(p[k], fs.plus[k], "Phi_+");

  return SpitzerOutput{fs.node, std::move(out), 1, true, {}};
}

SpitzerOutput single_barrier_identity(const FactorisedSymbol& fs, double lower,
                                      const FilterSpec& filter) {
  const auto& grid = fs.symbol.grid();
  return single_barrier_identity(fs, BarrierShift(grid, lower), exp_filter(grid, filter));
}

SpitzerOutput double_barrier_identity(const FactorisedSymbol& fs, const BarrierShift& lower,
                                      const BarrierShift& upper, std::span<const double> filter,
                                      const FixedPointControls& controls) {
  controls.validate();
  check_same_grid(fs, lower);
  check_same_grid(fs, upper);
  check_filter(fs, filter);
  if (!(lower.barrier() < upper.barrier())) {
    throw DomainError("double barrier needs lower < upper");
  }
  const std::size_t n = fs.symbol.size();
  const auto& grid = fs.symbol.grid();

  std::vector<cplx> j_lower(n), j_upper(n), work(n);
  Spectrum current(grid);
  std::vector<cplx> previous(n);

  SpitzerOutput result{fs.node, Spectrum(grid), 0, false, {}};
  for (int it = 1; it <= controls.max_iterations; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      work[k] = safe_div(filter[k] * (1.0 - fs.plus[k] * j_upper[k]), fs.minus[k], "Phi_-");
    }
    plemelj_decompose(work, lower, Side::minus, j_lower);

    for (std::size_t k = 0; k < n; ++k) {
      work[k] = safe_div(filter[k] * (1.0 - fs.minus[k] * j_lower[k]), fs.plus[k], "Phi_+");
    }
    plemelj_decompose(work, upper, Side::plus, j_upper);

    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx v = safe_div(
          filter[k] * (1.0 - fs.minus[k] * j_lower[k] - fs.plus[k] * j_upper[k]), fs.symbol[k],
          "Phi");
      change = std::max(change, std::abs(v - previous[k]));
      current[k] = v;
      previous[k] = v;
    }
    result.iterations = it;
    if (it > 1) {
      result.residuals.push_back(change);
      if (change < controls.tolerance) {
        result.converged = true;
        break;
      }
    }
  }
  result.transform = std::move(current);
  return result;
}

SpitzerOutput double_barrier_identity(const FactorisedSymbol& fs, double lower, double upper,
                                      const FilterSpec& filter,
                                      const FixedPointControls& controls) {
  const auto& grid = fs.symbol.grid();
  if (!(lower < upper)) throw DomainError("double barrier needs lower < upper");
  return double_barrier_identity(fs, BarrierShift(grid, lower), BarrierShift(grid, upper),
                                 exp_filter(grid, filter), controls);
}

}  // namespace fluct
