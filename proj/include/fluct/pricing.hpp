#pragma once

#include <optional>
#include <vector>

#include "fluct/filter.hpp"
#include "fluct/fourier_grid.hpp"
#include "fluct/inversion.hpp"
#include "fluct/levy.hpp"
#include "fluct/spitzer.hpp"

namespace fluct {

enum class OptionType { call, put };

/// Barrier option terms. Missing barriers mean "no barrier on that side".
/// Market rates live in the LevyModel the contract is priced with.
struct OptionContract {
  double spot = 1.0;
  double strike = 1.0;
  std::optional<double> lower;
  std::optional<double> upper;
  double maturity = 1.0;
  OptionType type = OptionType::call;
  double damping = -1.5;  // payoff is multiplied by exp(damping * x)

  /// Throws InvalidParameter naming the violated condition.
  void validate() const;
};

/// Log-moneyness quantities on a particular grid.
struct LogContract {
  double strike = 0.0;
  std::optional<double> lower;  // used by the identities, possibly snapped
  std::optional<double> upper;
  double payoff_lo = 0.0;  // payoff support [payoff_lo, payoff_hi]
  double payoff_hi = 0.0;
};

/// Converts to log coordinates. Barriers must lie strictly inside
/// (-x_max, x_max); with `snap` they are moved to the nearest x-node and the
/// snapped values are used for the payoff too. A missing upper barrier puts
/// the payoff edge at x_max, a missing lower one at -x_max.
LogContract resolve_contract(const OptionContract& contract, const FourierGrid& grid, bool snap);

/// Transform of the damped payoff exp(a x) S0 (theta (e^x - e^k))^+ on
/// [payoff_lo, payoff_hi], in closed form at every frequency node.
Spectrum payoff_transform(const OptionContract& contract, const LogContract& logs,
                          const FourierGrid& grid);

/// exp(-rT) (dxi / 2 pi) sum_k payoff(xi_k) conj(phat(xi_k)).
double plancherel_price(const Spectrum& payoff, const Spectrum& phat, double rate, double maturity);

struct EngineSettings {
  EulerParams euler;
  FilterSpec filter;
  FixedPointControls fixed_point;
  ZControls z;
  bool snap_barriers = true;
  unsigned threads = 0;  // 0 = all hardware threads
};

struct PriceResult {
  double price = 0.0;
  std::size_t grid_size = 0;
  int dates = 0;  // monitoring dates, 0 for continuous monitoring
  double runtime_s = 0.0;
  /// Fixed-point sweeps used at each Laplace abscissa or z-node.
  std::vector<int> iterations;
  bool converged = true;

  int max_iterations() const noexcept;
};

/// Barrier-free price exp(-rT) E[payoff] from the characteristic function.
PriceResult price_european(const OptionContract& contract, const LevyModel& model,
                           const FourierGrid& grid, const EngineSettings& settings);

/// Continuously monitored down-and-out (lower barrier only).
PriceResult price_continuous_single(const OptionContract& contract, const LevyModel& model,
                                    const FourierGrid& grid, const EngineSettings& settings);

/// Continuously monitored double knock-out.
PriceResult price_continuous_double(const OptionContract& contract, const LevyModel& model,
                                    const FourierGrid& grid, const EngineSettings& settings);

/// Knock-out monitored at the `dates` equally spaced dates T/N, 2T/N, ..., T.
/// Single or double barrier according to the contract.
PriceResult price_discrete(const OptionContract& contract, const LevyModel& model,
                           const FourierGrid& grid, int dates, const EngineSettings& settings);

/// Transform at time T of the damped law of the process killed on leaving
/// the barrier corridor of the contract (continuous monitoring), obtained by
/// inverting the Spitzer identities at both s_k and conj(s_k). At xi = 0 and
/// zero damping this is the survival probability.
Spectrum constrained_transform(const OptionContract& contract, const LevyModel& model,
                               const FourierGrid& grid, const EngineSettings& settings);

}  // namespace fluct
