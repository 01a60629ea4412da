#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fluct/commands.hpp"
#include "fluct/errors.hpp"

namespace {

enum ExitCode { ok = 0, config_error = 2, numeric_error = 3 };

using Command = void (*)(const fluct::RunConfig&, std::ostream&);

int run(Command command, const std::string& config_path, const std::string& out_override,
        int threads) {
  fluct::RunConfig config;
  try {
    config = fluct::load_config(config_path);
    if (threads >= 0) config.engine.threads = static_cast<unsigned>(threads);
  } catch (const fluct::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  }

  // Rows are buffered so that a failing run leaves no partial CSV behind.
  std::ostringstream csv;
  try {
    command(config, csv);
  } catch (const fluct::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const fluct::StageError& e) {
    std::cerr << "numeric error in stage '" << e.stage() << "': " << e.what() << '\n';
    return numeric_error;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return numeric_error;
  }

  const std::string out = out_override.empty() ? config.experiment.output : out_override;
  if (out.empty() || out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream file(out);
    if (!(file << csv.str())) {
      std::cerr << "cannot write " << out << '\n';
      return config_error;
    }
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barrier option pricing with Wiener-Hopf factorisation and Spitzer identities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  int threads = -1;

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"price", "price one contract and write a one-row CSV", fluct::cmd_price},
      {"convergence", "error against a self-reference over a sweep of grid sizes",
       fluct::cmd_convergence},
      {"compare-discrete", "discrete against continuous monitoring over a sweep of dates",
       fluct::cmd_compare_discrete},
      {"laplace-test", "invert the transform of a delayed unit step", fluct::cmd_laplace_test},
  };

  Command chosen = nullptr;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config,-c", config_path, "run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out,-o", out, "CSV output path (overrides [experiment] output)");
    sub->add_option("--threads,-t", threads, "worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    sub->callback([&chosen, command = s.command] { chosen = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : config_error;
  }
  return run(chosen, config_path, out, threads);
}
