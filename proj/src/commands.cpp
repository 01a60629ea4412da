#include "fluct/commands.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "fluct/errors.hpp"
#include "fluct/inversion.hpp"

namespace fluct {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void require_discrete_mode(const RunConfig& config) {
  if (!is_discrete(config.experiment.mode)) {
    throw ConfigError(config.source, 0, "[experiment]: compare-discrete needs a discrete mode");
  }
}

}  // namespace

PriceResult price_with(const RunConfig& config, std::size_t m, int dates) {
  config.require_pricing_sections();
  const LevyModel model = config.model();
  const FourierGrid grid(m, config.x_max);
  const auto& contract = *config.contract;
  if (dates > 0) return price_discrete(contract, model, grid, dates, config.engine);
  if (contract.upper) return price_continuous_double(contract, model, grid, config.engine);
  return price_continuous_single(contract, model, grid, config.engine);
}

void cmd_price(const RunConfig& config, std::ostream& csv) {
  config.require_pricing_sections();
  const auto& ex = config.experiment;
  int dates = 0;
  if (is_discrete(ex.mode)) {
    if (ex.dates < 1) throw ConfigError(config.source, 0, "[experiment]: discrete modes need N");
    dates = ex.dates;
  }
  const auto r = price_with(config, config.grid_size, dates);
  csv << "model,mode,M,N,price,runtime_s,max_fp_iterations\n";
  csv << config.model_name << ',' << mode_name(ex.mode) << ',' << r.grid_size << ','
      << (dates > 0 ? std::to_string(dates) : std::string("cont")) << ',' << num(r.price) << ','
      << num(r.runtime_s) << ',' << r.max_iterations() << '\n';
}

void cmd_convergence(const RunConfig& config, std::ostream& csv) {
  config.require_pricing_sections();
  const auto& ex = config.experiment;
  if (ex.m_sweep.empty()) throw ConfigError(config.source, 0, "[experiment]: M_sweep is empty");
  if (ex.m_reference == 0) throw ConfigError(config.source, 0, "[experiment]: M_ref is missing");
  if (ex.m_reference < ex.m_sweep.back()) {
    throw ConfigError(config.source, 0, "[experiment]: M_ref must not be below the sweep");
  }
  const int dates = is_discrete(ex.mode) ? ex.dates : 0;
  if (is_discrete(ex.mode) && dates < 1) {
    throw ConfigError(config.source, 0, "[experiment]: discrete modes need N");
  }
  const auto reference_result = price_with(config, ex.m_reference, dates);
  const double reference = reference_result.price;
  csv << "M,price,error_vs_selfref,runtime_s\n";
  for (std::size_t m : ex.m_sweep) {
    const auto r = m == ex.m_reference ? reference_result : price_with(config, m, dates);
    csv << m << ',' << num(r.price) << ',' << num(std::abs(r.price - reference)) << ','
        << num(r.runtime_s) << '\n';
  }
}

void cmd_compare_discrete(const RunConfig& config, std::ostream& csv) {
  config.require_pricing_sections();
  require_discrete_mode(config);
  const auto& ex = config.experiment;
  if (ex.n_sweep.empty()) throw ConfigError(config.source, 0, "[experiment]: N_sweep is empty");
  const double continuous = price_with(config, config.grid_size, 0).price;
  csv << "N,M,price_discrete,price_continuous,gap\n";
  for (int n : ex.n_sweep) {
    const double discrete = price_with(config, config.grid_size, n).price;
    csv << n << ',' << config.grid_size << ',' << num(discrete) << ',' << num(continuous) << ','
        << num(std::abs(discrete - continuous)) << '\n';
  }
}

void cmd_laplace_test(const RunConfig& config, std::ostream& csv) {
  const auto& ex = config.experiment;
  if (ex.t_values.empty()) throw ConfigError(config.source, 0, "[experiment]: t_values is empty");
  const double tau = ex.tau;
  const auto step = [tau](cplx s) { return std::exp(-tau * s) / s; };
  csv << "t,recovered,exact,abs_error\n";
  for (double t : ex.t_values) {
    const double recovered = inverse_laplace(step, t, config.engine.euler);
    const double exact = t > tau ? 1.0 : 0.0;
    csv << num(t) << ',' << num(recovered) << ',' << num(exact) << ','
        << num(std::abs(recovered - exact)) << '\n';
  }
}

}  // namespace fluct
