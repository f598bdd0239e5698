#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "singosc/errors.hpp"
#include "singosc/states.hpp"

namespace singosc::cli {

namespace pt = boost::property_tree;

namespace {

template <typename T>
T read(const pt::ptree& tree, const char* key, T fallback) {
  if (!tree.get_optional<std::string>(key)) return fallback;
  try {
    return tree.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError(std::string("config: cannot parse value of '") + key + "'");
  }
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  static const std::vector<std::string> known = {"profile", "physics",  "algebra", "grid",  "span",
                                                 "tolerance", "spectrum", "verify",  "output", "run"};
  // [run] carries the statistics of a .meta file, which is otherwise a valid config.
  for (const auto& [section, _] : tree) {
    if (std::find(known.begin(), known.end(), section) == known.end()) {
      throw ConfigError("config: unknown section [" + section + "]");
    }
  }
  RunConfig c;
  c.profile_kind = read(tree, "profile.kind", c.profile_kind);
  c.omega0 = read(tree, "profile.omega0", c.omega0);
  c.alpha = read(tree, "profile.alpha", c.alpha);
  c.sample_path = read(tree, "profile.path", c.sample_path);
  c.initial_omega = read(tree, "profile.initial_omega", c.initial_omega);
  c.coupling = read(tree, "physics.coupling", c.coupling);
  c.branch = read(tree, "physics.branch", c.branch);
  c.truncation = read(tree, "algebra.truncation", c.truncation);
  c.q_max = read(tree, "grid.q_max", c.q_max);
  c.n_points = read(tree, "grid.n_points", c.n_points);
  c.t0 = read(tree, "span.t0", c.t0);
  c.t1 = read(tree, "span.t1", c.t1);
  c.samples = read(tree, "span.samples", c.samples);
  c.ode_tol = read(tree, "tolerance.ode", c.ode_tol);
  c.evolution_tol = read(tree, "tolerance.evolution", c.evolution_tol);
  c.levels = read(tree, "spectrum.levels", c.levels);
  c.coherent_z = read(tree, "verify.coherent_z", c.coherent_z);
  c.seed = read(tree, "verify.seed", c.seed);
  c.output_dir = read(tree, "output.dir", c.output_dir);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  return parse_config(in);
}

void write_config(std::ostream& out, const RunConfig& c) {
  out << "[profile]\n"
      << "kind = " << c.profile_kind << "\n"
      << "omega0 = " << number(c.omega0) << "\n"
      << "alpha = " << number(c.alpha) << "\n"
      << "path = " << c.sample_path << "\n"
      << "initial_omega = " << number(c.initial_omega) << "\n\n"
      << "[physics]\n"
      << "coupling = " << number(c.coupling) << "\n"
      << "branch = " << c.branch << "\n\n"
      << "[algebra]\n"
      << "truncation = " << c.truncation << "\n\n"
      << "[grid]\n"
      << "q_max = " << number(c.q_max) << "\n"
      << "n_points = " << c.n_points << "\n\n"
      << "[span]\n"
      << "t0 = " << number(c.t0) << "\n"
      << "t1 = " << number(c.t1) << "\n"
      << "samples = " << c.samples << "\n\n"
      << "[tolerance]\n"
      << "ode = " << number(c.ode_tol) << "\n"
      << "evolution = " << number(c.evolution_tol) << "\n\n"
      << "[spectrum]\n"
      << "levels = " << c.levels << "\n\n"
      << "[verify]\n"
      << "coherent_z = " << number(c.coherent_z) << "\n"
      << "seed = " << c.seed << "\n\n"
      << "[output]\n"
      << "dir = " << c.output_dir << "\n";
}

void validate(const RunConfig& c) {
  if (!(c.coupling > -0.125)) {
    throw ConfigError("config: coupling must satisfy c > -1/8 (got " + number(c.coupling) + ")");
  }
  if (c.branch != "plus" && c.branch != "minus" && c.branch != "auto") {
    throw ConfigError("config: branch must be plus, minus or auto");
  }
  if (c.branch == "minus" && c.coupling != 0.0) {
    throw ConfigError("config: branch = minus needs c = 0, the only coupling with a grid realization of k0 = 1/4");
  }
  if (c.profile_kind != "constant" && c.profile_kind != "power_law" && c.profile_kind != "sampled") {
    throw ConfigError("config: profile kind must be constant, power_law or sampled");
  }
  if (c.truncation < 8) throw ConfigError("config: truncation must be at least 8");
  if (!(c.q_max > 0.0)) throw ConfigError("config: q_max must be positive");
  if (c.n_points < 64) throw ConfigError("config: n_points must be at least 64");
  if (!(c.t1 >= c.t0)) throw ConfigError("config: span requires t1 >= t0");
  if (c.samples < 2) throw ConfigError("config: samples must be at least 2");
  for (double tol : {c.ode_tol, c.evolution_tol}) {
    if (!(tol >= 1e-14 && tol <= 1e-4)) throw ConfigError("config: tolerances must lie in [1e-14, 1e-4]");
  }
  if (c.levels < 1 || c.levels > c.truncation) throw ConfigError("config: levels must lie in [1, truncation]");
  if (!(c.coherent_z >= 0.0)) throw ConfigError("config: coherent_z must be non-negative");
  if (!(c.initial_omega >= 0.0)) throw ConfigError("config: initial_omega must be non-negative");
  const FrequencyProfile profile = make_profile(c);
  try {
    profile.check_span(c.t0, c.t1);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!(profile.omega_sq(c.t0) > 0.0) && c.initial_omega == 0.0) {
    throw ConfigError("config: omega^2(t0) must be positive unless initial_omega is set");
  }
}

double selected_bargmann_index(const RunConfig& c) {
  return bargmann_index(c.coupling, c.branch == "minus" ? Branch::minus : Branch::plus);
}

bool uses_reflecting_origin(const RunConfig& c) { return c.branch == "minus"; }

FrequencyProfile make_profile(const RunConfig& c) {
  try {
    if (c.profile_kind == "constant") return FrequencyProfile::constant(c.omega0);
    if (c.profile_kind == "power_law") return FrequencyProfile::power_law(c.omega0, c.alpha);
    std::ifstream in(c.sample_path);
    if (!in) throw ConfigError("config: cannot open sample table '" + c.sample_path + "'");
    std::vector<double> ts, ws;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      for (char& ch : line) {
        if (ch == ',') ch = ' ';
      }
      std::istringstream row(line);
      double t = 0.0;
      double w = 0.0;
      if (!(row >> t >> w)) {
        if (ts.empty()) continue;  // header
        throw ConfigError("config: malformed row in sample table: " + line);
      }
      ts.push_back(t);
      ws.push_back(w);
    }
    return FrequencyProfile::sampled(ts, ws);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

double reference_omega(const RunConfig& c, const FrequencyProfile& profile) {
  return c.initial_omega > 0.0 ? c.initial_omega : std::sqrt(profile.omega_sq(c.t0));
}

}  // namespace singosc::cli
