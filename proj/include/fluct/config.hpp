#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluct/levy.hpp"
#include "fluct/pricing.hpp"

namespace fluct {

/// Malformed or inconsistent run configuration. `line()` is 0 when the
/// problem is not tied to one line (missing section, cross-key invariant).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

enum class PricingMode { continuous_single, continuous_double, discrete_single, discrete_double };

std::string_view mode_name(PricingMode mode);
bool is_discrete(PricingMode mode);

struct ExperimentConfig {
  PricingMode mode = PricingMode::continuous_single;
  int dates = 0;                      // N for the discrete modes
  std::vector<std::size_t> m_sweep;   // convergence
  std::size_t m_reference = 0;        // convergence self-reference
  std::vector<int> n_sweep;           // compare-discrete
  double tau = 10.0;                  // laplace-test step delay
  std::vector<double> t_values;       // laplace-test evaluation times
  std::string output;
};

struct RunConfig {
  std::string source;
  std::string model_name;
  std::optional<ProcessParams> process;
  std::optional<MarketParams> market;
  std::optional<OptionContract> contract;
  std::size_t grid_size = std::size_t{1} << 17;
  double x_max = 16.0;
  EngineSettings engine;
  ExperimentConfig experiment;

  /// Throws ConfigError unless the model, market and contract sections were
  /// all given.
  void require_pricing_sections() const;
  LevyModel model() const;
};

/// Parses the sectioned key = value format documented in docs/config.md.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

}  // namespace fluct
