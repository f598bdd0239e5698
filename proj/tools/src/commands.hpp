#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace singosc::cli {

struct SuiteResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

/// Runs the property suites on the configured system. Library errors inside
/// a suite are caught and reported as failures of that suite.
std::vector<SuiteResult> run_verify_suites(const RunConfig& config);

// Each command writes its tables into config.output_dir together with a
// `<command>.meta` sidecar (config echo and integrator step counts) and
// returns the process exit status.
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_invariant(const RunConfig& config, std::ostream& log);
int cmd_evolve(const RunConfig& config, std::ostream& log);
int cmd_spectrum(const RunConfig& config, std::ostream& log);
int cmd_powerlaw(const RunConfig& config, std::ostream& log);

}  // namespace singosc::cli
