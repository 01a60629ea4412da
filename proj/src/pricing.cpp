#include "fluct/pricing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "fluct/errors.hpp"
#include "fluct/hilbert.hpp"
#include "parallel.hpp"

namespace fluct {

namespace {

template <class F>
auto run_stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

// exp(w) - 1 without cancellation for small |w|.
cplx expm1_complex(cplx w) {
  const double a = w.real();
  const double b = w.imag();
  const double s = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

// Integral of exp(z x) over [lo, hi].
cplx exp_integral(cplx z, double lo, double hi) {
  if (z == cplx{0.0, 0.0}) return {hi - lo, 0.0};
  return std::exp(z * lo) * expm1_complex(z * (hi - lo)) / z;
}

double place_barrier(double b, const FourierGrid& grid, bool snap, const char* which) {
  if (!(std::abs(b) < grid.x_max())) {
    throw DomainError(std::string(which) + " log-barrier " + std::to_string(b) +
                      " is not inside (-x_max, x_max)");
  }
  return snap ? grid.x(grid.nearest_x_index(b)) : b;
}

// Everything an abscissa evaluation needs, shared read-only across threads.
struct Pipeline {
  const LevyModel& model;
  const FourierGrid& grid;
  const EngineSettings& settings;
  double damping;
  std::optional<BarrierShift> lower;
  std::optional<BarrierShift> upper;
  std::vector<double> filter;

  Pipeline(const LevyModel& m, const FourierGrid& g, const EngineSettings& s, double a,
           const LogContract& logs)
      : model(m), grid(g), settings(s), damping(a) {
    if (logs.lower) lower.emplace(g, *logs.lower);
    if (logs.upper) upper.emplace(g, *logs.upper);
    filter = exp_filter(g, s.filter);
  }

  SpitzerOutput identity(Spectrum symbol, cplx node) const {
    const auto fs = run_stage("factorisation", [&] { return factorise_symbol(std::move(symbol), node); });
    return run_stage("identity", [&] {
      if (lower && upper) {
        return double_barrier_identity(fs, *lower, *upper, filter, settings.fixed_point);
      }
      return single_barrier_identity(fs, *lower, filter);
    });
  }

  SpitzerOutput continuous(cplx s) const {
    auto symbol = run_stage("symbol", [&] { return build_symbol_continuous(model, damping, grid, s); });
    return identity(std::move(symbol), s);
  }

  SpitzerOutput discrete(cplx q, double dt) const {
    auto symbol = run_stage("symbol", [&] { return build_symbol_discrete(model, damping, grid, q, dt); });
    return identity(std::move(symbol), q);
  }
};

// (dxi / 2 pi) sum conj(payoff) * transform: analytic in the node, and its
// inverse is the undiscounted price.
cplx pair_payoff(const Spectrum& payoff, const Spectrum& transform) {
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < payoff.size(); ++k) sum += std::conj(payoff[k]) * transform[k];
  return sum * (payoff.grid().dxi() / (2.0 * std::numbers::pi));
}

void require_barriers(const OptionContract& c, bool need_upper) {
  if (!c.lower) throw InvalidParameter("contract has no lower barrier");
  if (need_upper && !c.upper) throw InvalidParameter("contract has no upper barrier");
  if (!need_upper && c.upper) {
    throw InvalidParameter("single-barrier pricer got a contract with an upper barrier");
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PriceResult price_continuous_impl(const OptionContract& contract, const LevyModel& model,
                                  const FourierGrid& grid, const EngineSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  contract.validate();
  const auto logs = run_stage("contract", [&] {
    return resolve_contract(contract, grid, settings.snap_barriers);
  });
  const Spectrum payoff = run_stage("payoff", [&] { return payoff_transform(contract, logs, grid); });
  const Pipeline pipe(model, grid, settings, contract.damping, logs);
  const auto abscissas = run_stage("inversion", [&] {
    return laplace_abscissas(contract.maturity, settings.euler);
  });

  const std::size_t count = abscissas.nodes.size();
  std::vector<cplx> values(count);
  std::vector<int> iterations(count);
  std::vector<char> converged(count);
  detail::parallel_for(count, settings.threads, [&](std::size_t i) {
    const auto out = pipe.continuous(abscissas.nodes[i]);
    values[i] = pair_payoff(payoff, out.transform);
    iterations[i] = out.iterations;
    converged[i] = out.converged;
  });

  const double undiscounted = run_stage("inversion", [&] {
    return inverse_laplace(values, contract.maturity, settings.euler);
  });

  PriceResult r;
  r.price = std::exp(-model.market().rate * contract.maturity) * undiscounted;
  r.grid_size = grid.size();
  r.iterations = std::move(iterations);
  r.converged = std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; });
  r.runtime_s = seconds_since(start);
  return r;
}

}  // namespace

void OptionContract::validate() const {
  auto finite_positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!finite_positive(spot)) throw InvalidParameter("contract: S0 must be positive");
  if (!finite_positive(strike)) throw InvalidParameter("contract: K must be positive");
  if (!finite_positive(maturity)) throw InvalidParameter("contract: T must be positive");
  if (!std::isfinite(damping)) throw InvalidParameter("contract: damping must be finite");
  if (lower && !(finite_positive(*lower) && *lower < spot)) {
    throw InvalidParameter("contract: L must satisfy 0 < L < S0");
  }
  if (upper && !(std::isfinite(*upper) && *upper > spot)) {
    throw InvalidParameter("contract: U must satisfy U > S0");
  }
  if (lower && upper && !(*lower < *upper)) throw InvalidParameter("contract: L must be below U");
  if (type == OptionType::call && !upper && !(damping < -1.0)) {
    throw InvalidParameter("contract: a call without upper barrier needs damping < -1");
  }
}

LogContract resolve_contract(const OptionContract& contract, const FourierGrid& grid, bool snap) {
  contract.validate();
  LogContract logs;
  logs.strike = std::log(contract.strike / contract.spot);
  if (contract.lower) {
    logs.lower = place_barrier(std::log(*contract.lower / contract.spot), grid, snap, "lower");
  }
  if (contract.upper) {
    logs.upper = place_barrier(std::log(*contract.upper / contract.spot), grid, snap, "upper");
  }
  const double lo = logs.lower.value_or(-grid.x_max());
  const double hi = logs.upper.value_or(grid.x_max());
  if (contract.type == OptionType::call) {
    logs.payoff_lo = std::max(logs.strike, lo);
    logs.payoff_hi = hi;
  } else {
    logs.payoff_lo = lo;
    logs.payoff_hi = std::min(logs.strike, hi);
  }
  return logs;
}

Spectrum payoff_transform(const OptionContract& contract, const LogContract& logs,
                          const FourierGrid& grid) {
  Spectrum out(grid);
  if (!(logs.payoff_lo < logs.payoff_hi)) return out;
  const double theta = contract.type == OptionType::call ? 1.0 : -1.0;
  const double a = contract.damping;
  const double ek = std::exp(logs.strike);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx z{a, grid.xi(k)};
    out[k] = theta * contract.spot *
             (exp_integral(z + 1.0, logs.payoff_lo, logs.payoff_hi) -
              ek * exp_integral(z, logs.payoff_lo, logs.payoff_hi));
  }
  return out;
}

double plancherel_price(const Spectrum& payoff, const Spectrum& phat, double rate,
                        double maturity) {
  if (!(payoff.grid() == phat.grid())) {
    throw InvalidParameter("plancherel_price: spectra live on different grids");
  }
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < payoff.size(); ++k) sum += payoff[k] * std::conj(phat[k]);
  const double dxi = payoff.grid().dxi();
  return std::exp(-rate * maturity) * sum.real() * dxi / (2.0 * std::numbers::pi);
}

int PriceResult::max_iterations() const noexcept {
  return iterations.empty() ? 0 : *std::max_element(iterations.begin(), iterations.end());
}

PriceResult price_european(const OptionContract& contract, const LevyModel& model,
                           const FourierGrid& grid, const EngineSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  OptionContract plain = contract;
  plain.lower.reset();
  plain.upper.reset();
  plain.validate();
  const auto logs = run_stage("contract", [&] {
    return resolve_contract(plain, grid, settings.snap_barriers);
  });
  const Spectrum payoff = run_stage("payoff", [&] { return payoff_transform(plain, logs, grid); });
  const Spectrum phat = run_stage("symbol", [&] {
    std::vector<cplx> v(grid.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      v[k] = model.char_function(cplx{grid.xi(k), plain.damping}, plain.maturity);
    }
    return Spectrum(grid, std::move(v));
  });

  PriceResult r;
  r.price = plancherel_price(payoff, phat, model.market().rate, plain.maturity);
  r.grid_size = grid.size();
  r.runtime_s = seconds_since(start);
  return r;
}

PriceResult price_continuous_single(const OptionContract& contract, const LevyModel& model,
                                    const FourierGrid& grid, const EngineSettings& settings) {
  require_barriers(contract, false);
  return price_continuous_impl(contract, model, grid, settings);
}

PriceResult price_continuous_double(const OptionContract& contract, const LevyModel& model,
                                    const FourierGrid& grid, const EngineSettings& settings) {
  require_barriers(contract, true);
  return price_continuous_impl(contract, model, grid, settings);
}

PriceResult price_discrete(const OptionContract& contract, const LevyModel& model,
                           const FourierGrid& grid, int dates, const EngineSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  if (dates < 1) throw InvalidParameter("price_discrete: need at least one monitoring date");
  contract.validate();
  require_barriers(contract, contract.upper.has_value());
  const auto logs = run_stage("contract", [&] {
    return resolve_contract(contract, grid, settings.snap_barriers);
  });
  const Spectrum payoff = run_stage("payoff", [&] { return payoff_transform(contract, logs, grid); });
  const Pipeline pipe(model, grid, settings, contract.damping, logs);
  const auto contour = run_stage("inversion", [&] { return z_contour(dates, settings.z); });
  const double dt = contract.maturity / dates;

  const std::size_t count = contour.nodes.size();
  std::vector<cplx> values(count);
  std::vector<int> iterations(count);
  std::vector<char> converged(count);
  detail::parallel_for(count, settings.threads, [&](std::size_t i) {
    const auto out = pipe.discrete(contour.nodes[i], dt);
    values[i] = pair_payoff(payoff, out.transform);
    iterations[i] = out.iterations;
    converged[i] = out.converged;
  });

  const double undiscounted = run_stage("inversion", [&] { return inverse_z(values, contour); });

  PriceResult r;
  r.price = std::exp(-model.market().rate * contract.maturity) * undiscounted;
  r.grid_size = grid.size();
  r.dates = dates;
  r.iterations = std::move(iterations);
  r.converged = std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; });
  r.runtime_s = seconds_since(start);
  return r;
}

Spectrum constrained_transform(const OptionContract& contract, const LevyModel& model,
                               const FourierGrid& grid, const EngineSettings& settings) {
  contract.validate();
  require_barriers(contract, contract.upper.has_value());
  const auto logs = run_stage("contract", [&] {
    return resolve_contract(contract, grid, settings.snap_barriers);
  });
  const Pipeline pipe(model, grid, settings, contract.damping, logs);
  const auto abscissas = laplace_abscissas(contract.maturity, settings.euler);
  const auto weights = euler_weights(contract.maturity, settings.euler);

  // Node 2i is s_i, node 2i + 1 its conjugate.
  const std::size_t count = abscissas.nodes.size();
  std::vector<Spectrum> transforms(2 * count, Spectrum(grid));
  detail::parallel_for(2 * count, settings.threads, [&](std::size_t i) {
    const cplx s = abscissas.nodes[i / 2];
    transforms[i] = pipe.continuous(i % 2 == 0 ? s : std::conj(s)).transform;
  });

  Spectrum out(grid);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = 0.5 * weights[i];
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out[k] += w * (transforms[2 * i][k] + transforms[2 * i + 1][k]);
    }
  }
  if (!out.all_finite()) throw StageError("inversion", "non-finite constrained transform");
  return out;
}

}  // namespace fluct
