#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "singosc/profile.hpp"

namespace singosc::cli {

/// Raised for unreadable or invalid configurations (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One run of the driver. Serialized as INI with one section per concern:
///
///   [profile]   kind = constant|power_law|sampled, omega0, alpha, path,
///               initial_omega (frequency before t0; 0 means omega(t0))
///   [physics]   coupling, branch = plus|minus|auto
///   [algebra]   truncation
///   [grid]      q_max, n_points
///   [span]      t0, t1, samples
///   [tolerance] ode, evolution
///   [spectrum]  levels
///   [verify]    coherent_z, seed
///   [output]    dir
struct RunConfig {
  std::string profile_kind = "constant";
  double omega0 = 1.0;
  double alpha = 0.0;
  std::string sample_path;
  double initial_omega = 0.0;

  double coupling = 0.0;
  std::string branch = "auto";

  int truncation = 64;

  double q_max = 12.0;
  int n_points = 2000;

  double t0 = 0.0;
  double t1 = 1.0;
  int samples = 21;

  double ode_tol = 1e-10;
  double evolution_tol = 1e-10;

  int levels = 6;

  double coherent_z = 0.5;
  std::uint64_t seed = 1;

  std::string output_dir = "singosc-out";

  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
void write_config(std::ostream& out, const RunConfig& config);

/// Throws ConfigError naming the first violated precondition.
void validate(const RunConfig& config);

/// Bargmann index selected by `branch`; auto means the plus branch.
double selected_bargmann_index(const RunConfig& config);

/// The reflecting origin carries the minus branch at c = 0.
bool uses_reflecting_origin(const RunConfig& config);

/// Builds the frequency profile (reads the sample table for `sampled`).
FrequencyProfile make_profile(const RunConfig& config);

/// Frequency that defines the initial vacuum and the K-basis.
double reference_omega(const RunConfig& config, const FrequencyProfile& profile);

}  // namespace singosc::cli
