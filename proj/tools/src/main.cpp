#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "singosc/errors.hpp"

namespace {

constexpr int kConfigError = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant and Wei-Norman toolkit for the singular time-dependent oscillator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "INI run configuration (defaults apply when omitted)");
  app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_option("--tol", tol, "ODE and evolution tolerance (overrides [tolerance])");
  app.add_option("--seed", seed, "Seed for randomized suite instances");

  using Command = int (*)(const singosc::cli::RunConfig&, std::ostream&);
  const std::pair<const char*, std::pair<const char*, Command>> commands[] = {
      {"verify", {"Run the property suites and write verify.csv", singosc::cli::cmd_verify}},
      {"invariant", {"Invariant trajectories from every route and their deviations", singosc::cli::cmd_invariant}},
      {"evolve", {"Populations, squeeze parameter and phases of the evolved vacuum", singosc::cli::cmd_evolve}},
      {"spectrum", {"Energy levels and eigenfunctions at t0", singosc::cli::cmd_spectrum}},
      {"powerlaw", {"Closed-form invariant for a power-law profile", singosc::cli::cmd_powerlaw}},
  };
  Command selected = nullptr;
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.first);
    const Command fn = entry.second;
    sub->callback([&selected, fn] { selected = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  singosc::cli::RunConfig config;
  try {
    if (!config_path.empty()) config = singosc::cli::load_config(config_path);
    if (out_dir) config.output_dir = *out_dir;
    if (tol) config.ode_tol = config.evolution_tol = *tol;
    if (seed) config.seed = *seed;
    singosc::cli::validate(config);
  } catch (const singosc::cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  }

  try {
    return selected(config, std::cout);
  } catch (const singosc::cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const singosc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
