#pragma once

#include <iosfwd>

#include "fluct/config.hpp"

namespace fluct {

/// One-row CSV: model, mode, M, N, price, runtime_s, max_fp_iterations.
/// N is "cont" for continuous monitoring.
void cmd_price(const RunConfig& config, std::ostream& csv);

/// CSV of M, price, error_vs_selfref, runtime_s over experiment.M_sweep, the
/// error being measured against the same configuration at experiment.M_ref.
void cmd_convergence(const RunConfig& config, std::ostream& csv);

/// CSV of N, M, price_discrete, price_continuous, gap over experiment.N_sweep.
void cmd_compare_discrete(const RunConfig& config, std::ostream& csv);

/// CSV of t, recovered, exact, abs_error for the delayed unit step
/// exp(-tau s) / s inverted with the configured Euler parameters.
void cmd_laplace_test(const RunConfig& config, std::ostream& csv);

/// Price of the configured contract at grid size m and monitoring mode
/// (dates = 0 selects continuous monitoring).
PriceResult price_with(const RunConfig& config, std::size_t m, int dates);

}  // namespace fluct
