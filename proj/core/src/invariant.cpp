#include "singosc/invariant.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "ode_driver.hpp"
#include "singosc/errors.hpp"
#include "singosc/special.hpp"

namespace singosc {

namespace {

void check_tol(double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-4)) throw DomainError("tolerance must lie in [1e-14, 1e-4]");
}

void check_span(const FrequencyProfile& profile, double t0, double t1) {
  if (!(t1 >= t0)) throw DomainError("time span must satisfy t1 >= t0");
  profile.check_span(t0, t1);
}

using Pair = std::array<double, 4>;

// Two solutions of x'' + omega^2 x = 0 packed as (x1, x1', x2, x2').
struct LinearPair {
  const FrequencyProfile* profile;
  void operator()(const Pair& y, Pair& dy, double t) const {
    const double w2 = profile->omega_sq(t);
    dy[0] = y[1];
    dy[1] = -w2 * y[0];
    dy[2] = y[3];
    dy[3] = -w2 * y[2];
  }
};

}  // namespace

GTriple hamiltonian_triple(const FrequencyProfile& profile, double t0) { return {1.0, 0.0, profile.omega_sq(t0)}; }

void InvariantTrajectory::push(double t, const GTriple& g) {
  times.push_back(t);
  gminus.push_back(g.minus);
  g0.push_back(g.zero);
  gplus.push_back(g.plus);
}

double InvariantTrajectory::determinant_drift() const {
  if (times.empty()) return 0.0;
  const double d0 = at(0).determinant();
  double worst = 0.0;
  for (std::size_t i = 1; i < size(); ++i) worst = std::max(worst, std::abs(at(i).determinant() - d0));
  return worst / std::max(std::abs(d0), 1e-300);
}

double max_route_deviation(const InvariantTrajectory& a, const InvariantTrajectory& b) {
  if (a.size() != b.size()) throw DomainError("max_route_deviation: trajectories have different lengths");
  double worst = 0.0;
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(x)); };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i]))) {
      throw DomainError("max_route_deviation: time grids differ");
    }
    worst = std::max({worst, rel(a.gminus[i], b.gminus[i]), rel(a.g0[i], b.g0[i]), rel(a.gplus[i], b.gplus[i])});
  }
  return worst;
}

InvariantTrajectory integrate_invariant_ode(const FrequencyProfile& profile, const GTriple& g_init, double t0,
                                            double t1, double tol, std::size_t samples) {
  check_tol(tol);
  check_span(profile, t0, t1);
  if (!(g_init.minus > 0.0)) throw DomainError("integrate_invariant_ode: g_minus must be positive");
  using State = std::array<double, 3>;
  auto rhs = [&profile](const State& g, State& dg, double t) {
    const double w2 = profile.omega_sq(t);
    dg[0] = -2.0 * g[1];
    dg[1] = w2 * g[0] - g[2];
    dg[2] = 2.0 * w2 * g[1];
  };
  const auto times = detail::uniform_times(t0, t1, samples);
  InvariantTrajectory traj;
  traj.times.reserve(times.size());
  const auto stats = detail::drive(
      rhs, State{g_init.minus, g_init.zero, g_init.plus}, times, tol,
      [&](const State& g, std::size_t k) { traj.push(times[k], {g[0], g[1], g[2]}); },
      [](const State& g, double t) {
        if (!(g[0] > 0.0)) throw SingularInvariantError("g_minus reached zero during integration", t);
      });
  traj.steps = stats.accepted;
  return traj;
}

ErmakovSolution solve_ermakov(const FrequencyProfile& profile, double rho0, double rhodot0, double t0, double t1,
                              double tol, std::size_t samples) {
  check_tol(tol);
  check_span(profile, t0, t1);
  if (!(rho0 > 0.0)) throw DomainError("solve_ermakov: rho0 must be positive");
  // x1 = (rho0, rhodot0), x2 = (0, 1/rho0): Wronskian x1 x2' - x2 x1' = 1,
  // and rho = |(x1, x2)| starts at (rho0, rhodot0).
  const Pair init{rho0, rhodot0, 0.0, 1.0 / rho0};
  const auto times = detail::uniform_times(t0, t1, samples);
  ErmakovSolution sol;
  const auto stats = detail::drive(
      LinearPair{&profile}, init, times, tol,
      [&](const Pair& y, std::size_t k) {
        const double t = times[k];
        const double w2 = profile.omega_sq(t);
        const double r2 = y[0] * y[0] + y[2] * y[2];
        const double r = std::sqrt(r2);
        const double xv = y[0] * y[1] + y[2] * y[3];
        const double v2 = y[1] * y[1] + y[3] * y[3];
        const double rd = xv / r;
        sol.times.push_back(t);
        sol.rho.push_back(r);
        sol.rhodot.push_back(rd);
        // d/dt (x.x'/rho) with x'' = -omega^2 x.
        sol.rhoddot.push_back((v2 - w2 * r2) / r - rd * rd / r);
      },
      [](const Pair&, double) {});
  sol.steps = stats.accepted;
  return sol;
}

ErmakovSolution solve_ermakov(const FrequencyProfile& profile, const GTriple& g_init, double t0, double t1,
                              double tol, std::size_t samples) {
  const double det = g_init.determinant();
  if (!(g_init.minus > 0.0)) throw DomainError("solve_ermakov: g_minus must be positive");
  if (!(det > 0.0)) throw DomainError("solve_ermakov: g+ g- - g0^2 must be positive");
  const double s = std::sqrt(det);
  const double rho0 = std::sqrt(g_init.minus / s);
  const double rhodot0 = -g_init.zero / (s * rho0);
  ErmakovSolution sol = solve_ermakov(profile, rho0, rhodot0, t0, t1, tol, samples);
  sol.scale = s;
  return sol;
}

double ermakov_residual(const ErmakovSolution& sol, const FrequencyProfile& profile) {
  double worst = 0.0;
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    const double r = sol.rho[i];
    const double res = sol.rhoddot[i] + profile.omega_sq(sol.times[i]) * r - 1.0 / (r * r * r);
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

InvariantTrajectory g_from_ermakov(const ErmakovSolution& sol) {
  InvariantTrajectory traj;
  const double s = sol.scale;
  for (std::size_t i = 0; i < sol.times.size(); ++i) {
    const double r = sol.rho[i];
    const double rd = sol.rhodot[i];
    traj.push(sol.times[i], {s * r * r, -s * r * rd, s * (rd * rd + 1.0 / (r * r))});
  }
  traj.steps = sol.steps;
  return traj;
}

std::vector<ClassicalTransition> classical_transitions(const FrequencyProfile& profile, double t0, double t1,
                                                       double tol, std::size_t samples, std::size_t* steps) {
  check_tol(tol);
  check_span(profile, t0, t1);
  const auto times = detail::uniform_times(t0, t1, samples);
  std::vector<ClassicalTransition> out;
  out.reserve(times.size());
  const auto stats = detail::drive(
      LinearPair{&profile}, Pair{1.0, 0.0, 0.0, 1.0}, times, tol,
      [&](const Pair& y, std::size_t) { out.push_back({y[3], y[1], y[0], y[2]}); }, [](const Pair&, double) {});
  if (steps != nullptr) *steps = stats.accepted;
  return out;
}

ClassicalTransition classical_transition(const FrequencyProfile& profile, double t0, double t1, double tol) {
  if (t1 == t0) {
    check_tol(tol);
    profile.check_span(t0, t1);
    return {};
  }
  return classical_transitions(profile, t0, t1, tol, 2).back();
}

GTriple propagate_invariant(const ClassicalTransition& tr, const GTriple& g) {
  const double p0 = tr.p0, p1 = tr.p1, q0 = tr.q0, q1 = tr.q1;
  return {q0 * q0 * g.minus - 2.0 * q1 * q0 * g.zero + q1 * q1 * g.plus,
          -p1 * q0 * g.minus + (p0 * q0 + p1 * q1) * g.zero - p0 * q1 * g.plus,
          p1 * p1 * g.minus - 2.0 * p1 * p0 * g.zero + p0 * p0 * g.plus};
}

InvariantTrajectory propagate_invariant_trajectory(const FrequencyProfile& profile, const GTriple& g_init, double t0,
                                                   double t1, double tol, std::size_t samples) {
  std::size_t steps = 0;
  const auto trans = classical_transitions(profile, t0, t1, tol, samples, &steps);
  const auto times = detail::uniform_times(t0, t1, samples);
  InvariantTrajectory traj;
  for (std::size_t i = 0; i < trans.size(); ++i) traj.push(times[i], propagate_invariant(trans[i], g_init));
  traj.steps = steps;
  return traj;
}

GTriple power_law_invariant(double omega0, double alpha, double c1, double t) {
  if (!(t > 0.0)) throw DomainError("power_law_invariant: t must be positive");
  if (!(omega0 > 0.0)) throw DomainError("power_law_invariant: omega0 must be positive");
  if (!(alpha > -2.0)) throw DomainError("power_law_invariant: alpha must exceed -2");
  const double nu = 1.0 / (2.0 + alpha);
  const double z = 2.0 * omega0 * std::pow(t, (2.0 + alpha) / 2.0) / (2.0 + alpha);
  const double j = special::bessel_j(nu, z);
  const double n = special::bessel_y(nu, z);
  // nu Z_nu(z) + z Z'_nu(z) = z Z_{nu-1}(z).
  const double dj = z * special::bessel_j(nu - 1.0, z);
  const double dn = z * special::bessel_y(nu - 1.0, z);
  const double half_pi = 0.5 * std::numbers::pi;
  const double base = 2.0 * omega0 / (2.0 + alpha);
  const double g_minus = half_pi * std::pow(base, alpha * nu) * c1 * std::pow(z, 2.0 * nu) * (j * j + n * n);
  const double g_zero = -half_pi * omega0 * c1 * (dj * j + dn * n);
  const double g_plus = half_pi * std::pow(omega0, 2.0 * nu + 1.0) * std::pow(2.0 / (2.0 + alpha), -alpha * nu) * c1 *
                        std::pow(z, -2.0 * nu) * (dj * dj + dn * dn);
  return {g_minus, g_zero, g_plus};
}

double power_law_c1(double omega0, double alpha, double t0, double g_minus0) {
  if (!(g_minus0 > 0.0)) throw DomainError("power_law_c1: g_minus must be positive");
  return g_minus0 / power_law_invariant(omega0, alpha, 1.0, t0).minus;
}

double power_law_ode_residual(double omega0, double alpha, double c1, double t, double dt) {
  if (!(t - 2.0 * dt > 0.0)) throw DomainError("power_law_ode_residual: stencil leaves t > 0");
  const auto g = [&](double s) { return power_law_invariant(omega0, alpha, c1, s); };
  const GTriple gm2 = g(t - 2.0 * dt), gm1 = g(t - dt), gp1 = g(t + dt), gp2 = g(t + 2.0 * dt);
  // Fourth-order centered difference.
  const auto d = [&](double GTriple::*m) {
    return (gm2.*m - 8.0 * (gm1.*m) + 8.0 * (gp1.*m) - gp2.*m) / (12.0 * dt);
  };
  const GTriple c = g(t);
  const double w2 = omega0 * omega0 * std::pow(t, alpha);
  const double r1 = d(&GTriple::minus) + 2.0 * c.zero;
  const double r2 = d(&GTriple::zero) - (w2 * c.minus - c.plus);
  const double r3 = d(&GTriple::plus) - 2.0 * w2 * c.zero;
  const double scale = std::max({1.0, std::abs(c.minus), std::abs(c.zero), std::abs(c.plus)});
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)}) / scale;
}

InvariantTrajectory power_law_trajectory(double omega0, double alpha, double c1, double t0, double t1,
                                         std::size_t samples) {
  InvariantTrajectory traj;
  for (double t : detail::uniform_times(t0, t1, samples)) traj.push(t, power_law_invariant(omega0, alpha, c1, t));
  return traj;
}

void write_csv(std::ostream& os, const InvariantTrajectory& traj) {
  const auto old = os.precision(17);
  os << "t,g_minus,g_0,g_plus,omega0_sq\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << traj.times[i] << ',' << traj.gminus[i] << ',' << traj.g0[i] << ',' << traj.gplus[i] << ','
       << traj.at(i).determinant() << '\n';
  }
  os.precision(old);
}

}  // namespace singosc
