#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "singosc/profile.hpp"

namespace singosc {

/// Coefficients of the invariant I = g- L- + g0 L0 + g+ L+.
struct GTriple {
  double minus = 1.0;
  double zero = 0.0;
  double plus = 1.0;

  /// g+ g- - g0^2, the conserved omega0^2.
  double determinant() const { return plus * minus - zero * zero; }
};

/// Invariant at t0 equal to the instantaneous Hamiltonian: (1, 0, omega^2(t0)).
GTriple hamiltonian_triple(const FrequencyProfile& profile, double t0);

struct InvariantTrajectory {
  std::vector<double> times;
  std::vector<double> gminus;
  std::vector<double> g0;
  std::vector<double> gplus;
  std::size_t steps = 0;  // accepted integrator steps, 0 for closed forms

  std::size_t size() const { return times.size(); }
  GTriple at(std::size_t i) const { return {gminus[i], g0[i], gplus[i]}; }
  void push(double t, const GTriple& g);
  /// max_i |det_i - det_0| / |det_0|.
  double determinant_drift() const;
};

/// Max over samples and components of |a - b| / max(1, |a|). Both
/// trajectories must share their time grid.
double max_route_deviation(const InvariantTrajectory& a, const InvariantTrajectory& b);

/// Integrates g-dot = (-2 g0, omega^2 g- - g+, 2 omega^2 g0) with adaptive
/// dopri5 (absolute = relative tolerance = tol) and records `samples`
/// equally spaced times on [t0, t1]. Throws SingularInvariantError if g-
/// reaches zero.
InvariantTrajectory integrate_invariant_ode(const FrequencyProfile& profile, const GTriple& g_init, double t0,
                                            double t1, double tol, std::size_t samples = 101);

/// Solution of rho'' + omega^2 rho = 1/rho^3 built from two solutions of
/// x'' + omega^2 x = 0 with unit Wronskian.
struct ErmakovSolution {
  std::vector<double> times;
  std::vector<double> rho;
  std::vector<double> rhodot;
  /// rho'' evaluated from the linear solutions (not from the Ermakov equation).
  std::vector<double> rhoddot;
  /// Overall factor s in g = s (rho^2, -rho rho', rho'^2 + 1/rho^2); 1 unless
  /// the solution was seeded from a triple with determinant other than 1.
  double scale = 1.0;
  std::size_t steps = 0;
};

ErmakovSolution solve_ermakov(const FrequencyProfile& profile, double rho0, double rhodot0, double t0, double t1,
                              double tol, std::size_t samples = 101);

/// Ermakov solution reproducing an arbitrary triple with positive determinant
/// (scale = sqrt(det)).
ErmakovSolution solve_ermakov(const FrequencyProfile& profile, const GTriple& g_init, double t0, double t1,
                              double tol, std::size_t samples = 101);

/// max_i |rho'' + omega^2 rho - 1/rho^3|.
double ermakov_residual(const ErmakovSolution& sol, const FrequencyProfile& profile);

InvariantTrajectory g_from_ermakov(const ErmakovSolution& sol);

/// Propagator of x'' + omega^2 x = 0 from t0 to t1:
/// x(t1) = Q0 x(t0) + Q1 p(t0), p(t1) = P1 x(t0) + P0 p(t0).
struct ClassicalTransition {
  double p0 = 1.0;
  double p1 = 0.0;
  double q0 = 1.0;
  double q1 = 0.0;

  double determinant() const { return p0 * q0 - p1 * q1; }
};

ClassicalTransition classical_transition(const FrequencyProfile& profile, double t0, double t1, double tol);

/// Transitions from t0 to every time of a uniform grid on [t0, t1].
std::vector<ClassicalTransition> classical_transitions(const FrequencyProfile& profile, double t0, double t1,
                                                       double tol, std::size_t samples, std::size_t* steps = nullptr);

GTriple propagate_invariant(const ClassicalTransition& trans, const GTriple& g_init);

InvariantTrajectory propagate_invariant_trajectory(const FrequencyProfile& profile, const GTriple& g_init, double t0,
                                                   double t1, double tol, std::size_t samples = 101);

/// Closed-form invariant for omega^2 = omega0^2 t^alpha (Bessel family).
GTriple power_law_invariant(double omega0, double alpha, double c1, double t);

/// c1 giving g-(t0) = g_minus0.
double power_law_c1(double omega0, double alpha, double t0, double g_minus0);

/// Residual of the invariant ODE for the closed form, using centered
/// differences with step dt.
double power_law_ode_residual(double omega0, double alpha, double c1, double t, double dt = 1e-4);

InvariantTrajectory power_law_trajectory(double omega0, double alpha, double c1, double t0, double t1,
                                         std::size_t samples = 101);

/// Columns t, g_minus, g_0, g_plus, omega0_sq at 17 significant digits.
void write_csv(std::ostream& os, const InvariantTrajectory& traj);

}  // namespace singosc
