#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <utility>

#include "singosc/algebra.hpp"
#include "singosc/errors.hpp"
#include "singosc/evolution.hpp"
#include "singosc/invariant.hpp"
#include "singosc/oracle.hpp"
#include "singosc/states.hpp"

namespace singosc::cli {

namespace {

namespace fs = std::filesystem;

std::ofstream open_table(const RunConfig& config, const std::string& name) {
  fs::create_directories(config.output_dir);
  std::ofstream out(fs::path(config.output_dir) / name);
  if (!out) throw Error("cannot write " + (fs::path(config.output_dir) / name).string());
  out.precision(17);
  return out;
}

// INI sidecar: a [run] section followed by the full configuration.
void write_meta(const RunConfig& config, const std::string& command,
                const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream out = open_table(config, command + ".meta");
  out << "[run]\ncommand = " << command << "\n";
  for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
  out << "\n";
  write_config(out, config);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

GTriple initial_triple(const RunConfig& config, const FrequencyProfile& profile) {
  const double w = reference_omega(config, profile);
  return {1.0, 0.0, w * w};
}

double pointwise_deviation(const GTriple& a, const GTriple& b) {
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(x)); };
  return std::max({rel(a.minus, b.minus), rel(a.zero, b.zero), rel(a.plus, b.plus)});
}

RadialGrid make_grid(const RunConfig& config) {
  return {config.q_max, config.n_points,
          uses_reflecting_origin(config) ? OriginBoundary::reflecting : OriginBoundary::dirichlet};
}

// Leading block that is checked or written out. A squeeze with tanh r near 0.6
// still leaks weight past row N/4 of a truncation, so the margin is wider.
Eigen::Index interior(const RunConfig& config) { return std::max<Eigen::Index>(2, config.truncation / 6); }

struct Routes {
  InvariantTrajectory ode;
  InvariantTrajectory ermakov;
  InvariantTrajectory classical;
  std::size_t ermakov_steps = 0;
};

Routes invariant_routes(const RunConfig& config, const FrequencyProfile& profile) {
  const GTriple g = initial_triple(config, profile);
  const auto samples = static_cast<std::size_t>(config.samples);
  Routes r;
  r.ode = integrate_invariant_ode(profile, g, config.t0, config.t1, config.ode_tol, samples);
  const auto erm = solve_ermakov(profile, g, config.t0, config.t1, config.ode_tol, samples);
  r.ermakov = g_from_ermakov(erm);
  r.ermakov_steps = erm.steps;
  r.classical = propagate_invariant_trajectory(profile, g, config.t0, config.t1, config.ode_tol, samples);
  return r;
}

SuiteResult run_suite(const std::string& name, double threshold, const std::function<double(std::string&)>& body) {
  SuiteResult s;
  s.name = name;
  s.threshold = threshold;
  try {
    s.measured = body(s.note);
    s.pass = s.measured <= threshold;
  } catch (const TruncationError& e) {
    s.measured = std::numeric_limits<double>::infinity();
    s.note = std::string("truncation tail: ") + e.what();
  } catch (const Error& e) {
    s.measured = std::numeric_limits<double>::infinity();
    s.note = e.what();
  }
  return s;
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(const RunConfig& config) {
  validate(config);
  const FrequencyProfile profile = make_profile(config);
  const double k0 = selected_bargmann_index(config);
  const double w_ref = reference_omega(config, profile);
  const auto rep = build_discrete_series(k0, config.truncation);
  std::mt19937_64 rng(config.seed);
  std::vector<SuiteResult> out;

  // Products of K+- entries reach ~N^2, so above N = 64 the closure residual
  // is bounded by rounding of the stored entries rather than by 1e-12.
  const double n2 = static_cast<double>(config.truncation) * config.truncation;
  const double structure_bound =
      config.truncation > 64 ? std::max(1e-12, 4.0 * std::numeric_limits<double>::epsilon() * n2) : 1e-12;
  out.push_back(run_suite("structure_constants", structure_bound, [&](std::string& note) {
    if (structure_bound > 1e-12) note = "threshold is the double-precision floor 4 eps N^2";
    return verify_su11_structure(rep, 2);
  }));

  out.push_back(run_suite("casimir_identity", 1e-14, [&](std::string& note) {
    std::uniform_real_distribution<double> draw(-0.125, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i) {
      double c = draw(rng);
      if (c == -0.125) c = 0.0;
      const auto k = bargmann_indices(c);
      const double target = -(3.0 - 8.0 * c) / 16.0;
      worst = std::max(worst, std::abs(k.plus * (k.plus - 1.0) - target));
      if (k.minus) worst = std::max(worst, std::abs(*k.minus * (*k.minus - 1.0) - target));
    }
    note = "256 random couplings";
    return worst;
  }));

  Routes routes;
  bool have_routes = false;
  out.push_back(run_suite("invariant_routes", 1e-7, [&](std::string&) {
    routes = invariant_routes(config, profile);
    have_routes = true;
    return std::max({max_route_deviation(routes.ode, routes.ermakov), max_route_deviation(routes.ode, routes.classical),
                     max_route_deviation(routes.ermakov, routes.classical)});
  }));
  out.push_back(run_suite("invariant_determinant", 1e-8, [&](std::string&) {
    if (!have_routes) throw Error("routes unavailable");
    return std::max({routes.ode.determinant_drift(), routes.ermakov.determinant_drift(),
                     routes.classical.determinant_drift()});
  }));

  out.push_back(run_suite("squeeze_conjugation", 1e-6, [&](std::string& note) {
    const auto traj = integrate_invariant_ode(profile, initial_triple(config, profile), config.t0, config.t1,
                                              config.ode_tol, 2);
    const auto sc = squeeze_coefficients(traj.at(1), w_ref);
    const auto sp = squeeze_parameter(sc.u0, sc.uplus);
    const ComplexMatrix u = evolution_operator(rep, profile, w_ref, config.t0, config.t1, config.evolution_tol);
    const ComplexMatrix s = squeeze_operator(rep, sp.xi);
    note = "|xi| = " + num(sp.r());
    return leading_block_norm(u * rep.k0 * u.adjoint() - s.adjoint() * rep.k0 * s, interior(config));
  }));

  const double w_t0 = std::sqrt(profile.omega_sq(config.t0));
  const RadialGrid grid = make_grid(config);
  out.push_back(run_suite("grid_spectrum", 1e-4, [&](std::string& note) {
    const auto ops = build_grid_operators(grid, config.coupling);
    const RealVector ev = grid_spectrum(ops, w_t0 * w_t0, config.levels);
    double worst = 0.0;
    for (int n = 0; n < config.levels; ++n) {
      const double exact = 2.0 * w_t0 * (n + k0);
      worst = std::max(worst, std::abs(ev[n] - exact) / exact);
    }
    note = "relative, n < " + std::to_string(config.levels);
    return worst;
  }));
  out.push_back(run_suite("eigenfunction_orthonormality", 1e-8, [&](std::string&) {
    std::vector<RealVector> phi;
    for (int n = 0; n < config.levels; ++n) phi.push_back(eigenfunction(n, k0, w_t0, grid));
    double worst = 0.0;
    for (int a = 0; a < config.levels; ++a) {
      for (int b = 0; b <= a; ++b) {
        worst = std::max(worst, std::abs(grid.spacing() * phi[a].dot(phi[b]) - (a == b ? 1.0 : 0.0)));
      }
    }
    return worst;
  }));

  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  out.push_back(run_suite("barut_girardello", 1e-10, [&](std::string& note) {
    const cplx z = std::polar(config.coherent_z, angle(rng));
    const auto s = barut_girardello_state(rep, z);
    note = "|z| = " + num(config.coherent_z);
    return (rep.kminus * s.amplitudes - z * s.amplitudes).head(rep.dim - 1).norm();
  }));
  out.push_back(run_suite("perelomov", 1e-8, [&](std::string& note) {
    const cplx z = std::polar(std::tanh(config.coherent_z), angle(rng));
    const auto p = perelomov_state(rep, z);
    const ComplexMatrix s = squeeze_operator(rep, perelomov_squeeze_parameter(z));
    note = "|z| = " + num(std::abs(z)) + ", infidelity";
    return std::abs(1.0 - std::norm(s.col(0).dot(p.amplitudes)));
  }));
  return out;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  const auto results = run_verify_suites(config);
  std::ofstream report = open_table(config, "verify.csv");
  report << "suite,measured,threshold,status,note\n";
  int failures = 0;
  for (const auto& r : results) {
    report << r.name << "," << r.measured << "," << r.threshold << "," << (r.pass ? "pass" : "fail") << ",\""
           << r.note << "\"\n";
    log << (r.pass ? "PASS " : "FAIL ") << r.name << "  measured " << r.measured << "  threshold " << r.threshold;
    if (!r.note.empty()) log << "  (" << r.note << ")";
    log << "\n";
    if (!r.pass) ++failures;
  }
  write_meta(config, "verify", {{"suites", std::to_string(results.size())}, {"failures", std::to_string(failures)}});
  return failures == 0 ? 0 : 1;
}

int cmd_invariant(const RunConfig& config, std::ostream& log) {
  validate(config);
  const FrequencyProfile profile = make_profile(config);
  const Routes r = invariant_routes(config, profile);
  {
    auto f = open_table(config, "invariant_ode.csv");
    write_csv(f, r.ode);
  }
  {
    auto f = open_table(config, "invariant_ermakov.csv");
    write_csv(f, r.ermakov);
  }
  {
    auto f = open_table(config, "invariant_classical.csv");
    write_csv(f, r.classical);
  }
  auto dev = open_table(config, "invariant_deviations.csv");
  dev << "t,ode_vs_ermakov,ode_vs_classical,ermakov_vs_classical\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < r.ode.size(); ++i) {
    const double a = pointwise_deviation(r.ode.at(i), r.ermakov.at(i));
    const double b = pointwise_deviation(r.ode.at(i), r.classical.at(i));
    const double c = pointwise_deviation(r.ermakov.at(i), r.classical.at(i));
    worst = std::max({worst, a, b, c});
    dev << r.ode.times[i] << "," << a << "," << b << "," << c << "\n";
  }
  write_meta(config, "invariant",
             {{"steps_ode", std::to_string(r.ode.steps)},
              {"steps_ermakov", std::to_string(r.ermakov_steps)},
              {"steps_classical", std::to_string(r.classical.steps)},
              {"max_route_deviation", num(worst)},
              {"determinant_drift", num(r.ode.determinant_drift())}});
  log << "invariant: " << r.ode.size() << " samples, max route deviation " << worst << "\n";
  return 0;
}

int cmd_evolve(const RunConfig& config, std::ostream& log) {
  validate(config);
  const FrequencyProfile profile = make_profile(config);
  const double k0 = selected_bargmann_index(config);
  const double w_ref = reference_omega(config, profile);
  const auto rep = build_discrete_series(k0, config.truncation);
  const auto samples = static_cast<std::size_t>(config.samples);
  constexpr std::size_t kRefine = 20;

  const auto dense = integrate_invariant_ode(profile, initial_triple(config, profile), config.t0, config.t1,
                                             config.ode_tol, (samples - 1) * kRefine + 1);
  const PhaseFactors pf = phase_factors(dense, profile, w_ref);
  const auto wk = integrate_wei_norman_K(profile, w_ref, config.t0, config.t1, config.ode_tol, KRoute::riccati, samples);
  const Eigen::Index block = interior(config);

  auto pops = open_table(config, "populations.csv");
  auto squeeze = open_table(config, "squeeze.csv");
  auto phases = open_table(config, "phases.csv");
  pops << "t";
  for (int n = 0; n < config.levels; ++n) pops << ",p" << n;
  pops << "\n";
  squeeze << "t,xi_re,xi_im,abs_xi,population_deviation\n";
  phases << "t,h,eps,theta,theta_half\n";

  double worst_population = 0.0;
  ComplexMatrix u_final;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = wk.times[i];
    const ComplexMatrix u = assemble_U_K(rep, wk.kplus[i], wk.k0[i], wk.kminus[i]);
    const std::size_t j = i * kRefine;
    const auto sc = squeeze_coefficients(dense.at(j), w_ref);
    const auto sp = squeeze_parameter(sc.u0, sc.uplus);
    const ComplexMatrix predicted = squeeze_disentangled(rep, -sp.xi);
    double deviation = 0.0;
    for (Eigen::Index n = 0; n < block; ++n) {
      deviation = std::max(deviation, std::abs(std::norm(u(n, 0)) - std::norm(predicted(n, 0))));
    }
    worst_population = std::max(worst_population, deviation);
    pops << t;
    for (int n = 0; n < config.levels; ++n) pops << "," << std::norm(u(n, 0));
    pops << "\n";
    squeeze << t << "," << sp.xi.real() << "," << sp.xi.imag() << "," << sp.r() << "," << deviation << "\n";
    phases << t << "," << pf.h[j] << "," << pf.eps[j] << "," << pf.theta[j] << "," << pf.theta_half[j] << "\n";
    if (i + 1 == samples) u_final = u;
  }

  const auto direct = direct_evolution_run(rep, profile, w_ref, config.t0, config.t1, config.evolution_tol);
  const double route_gap = leading_block_norm(u_final - direct.u, block);
  {
    // Interior block of U(t1), row-major, complex entries as re,im pairs.
    auto f = open_table(config, "evolution_operator.csv");
    for (Eigen::Index r = 0; r < block; ++r) {
      for (Eigen::Index c = 0; c < block; ++c) {
        f << (c == 0 ? "" : ",") << u_final(r, c).real() << "," << u_final(r, c).imag();
      }
      f << "\n";
    }
  }
  write_meta(config, "evolve",
             {{"bargmann_index", num(k0)},
              {"reference_omega", num(w_ref)},
              {"steps_invariant", std::to_string(dense.steps)},
              {"steps_wei_norman", std::to_string(wk.steps)},
              {"steps_direct", std::to_string(direct.steps)},
              {"interior_block", std::to_string(block)},
              {"max_population_deviation", num(worst_population)},
              {"wei_norman_vs_direct", num(route_gap)}});
  log << "evolve: |xi(t1)| written to squeeze.csv; population deviation " << worst_population
      << ", Wei-Norman vs direct " << route_gap << "\n";
  return 0;
}

int cmd_spectrum(const RunConfig& config, std::ostream& log) {
  validate(config);
  const FrequencyProfile profile = make_profile(config);
  const double k0 = selected_bargmann_index(config);
  const double w = std::sqrt(profile.omega_sq(config.t0));
  const RadialGrid grid = make_grid(config);
  const auto ops = build_grid_operators(grid, config.coupling);
  const RealVector ev = grid_spectrum(ops, w * w, config.levels);

  auto table = open_table(config, "spectrum.csv");
  table << "n,exact,grid,relative_deviation\n";
  double worst = 0.0;
  std::vector<RealVector> phi;
  for (int n = 0; n < config.levels; ++n) {
    const double exact = 2.0 * w * (n + k0);
    const double rel = std::abs(ev[n] - exact) / exact;
    worst = std::max(worst, rel);
    table << n << "," << exact << "," << ev[n] << "," << rel << "\n";
    phi.push_back(eigenfunction(n, k0, w, grid));
  }
  auto ef = open_table(config, "eigenfunctions.csv");
  ef << "q";
  for (int n = 0; n < config.levels; ++n) ef << ",phi" << n;
  ef << "\n";
  for (Eigen::Index i = 0; i < grid.n_points; ++i) {
    ef << grid.q(i);
    for (const auto& p : phi) ef << "," << p[i];
    ef << "\n";
  }
  write_meta(config, "spectrum",
             {{"bargmann_index", num(k0)}, {"omega", num(w)}, {"max_relative_deviation", num(worst)}});
  log << "spectrum: E0 = " << 2.0 * w * k0 << ", grid deviation " << worst << "\n";
  return 0;
}

int cmd_powerlaw(const RunConfig& config, std::ostream& log) {
  validate(config);
  if (config.profile_kind != "power_law") throw ConfigError("config: powerlaw needs profile kind = power_law");
  const FrequencyProfile profile = make_profile(config);
  const auto samples = static_cast<std::size_t>(config.samples);
  const double c1 = power_law_c1(config.omega0, config.alpha, config.t0, 1.0);
  const auto closed = power_law_trajectory(config.omega0, config.alpha, c1, config.t0, config.t1, samples);
  const auto numeric = integrate_invariant_ode(profile, closed.at(0), config.t0, config.t1, config.ode_tol, samples);

  auto f = open_table(config, "powerlaw.csv");
  f << "t,g_minus,g_0,g_plus,determinant,ode_residual,deviation_from_ode\n";
  double worst_residual = 0.0;
  double worst_deviation = 0.0;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const GTriple g = closed.at(i);
    const double res = power_law_ode_residual(config.omega0, config.alpha, c1, closed.times[i]);
    const double dev = pointwise_deviation(g, numeric.at(i));
    worst_residual = std::max(worst_residual, res);
    worst_deviation = std::max(worst_deviation, dev);
    f << closed.times[i] << "," << g.minus << "," << g.zero << "," << g.plus << "," << g.determinant() << "," << res
      << "," << dev << "\n";
  }
  write_meta(config, "powerlaw",
             {{"c1", num(c1)},
              {"steps_ode", std::to_string(numeric.steps)},
              {"max_ode_residual", num(worst_residual)},
              {"max_deviation_from_ode", num(worst_deviation)}});
  log << "powerlaw: c1 = " << c1 << ", residual " << worst_residual << ", deviation from ODE " << worst_deviation
      << "\n";
  return 0;
}

}  // namespace singosc::cli
