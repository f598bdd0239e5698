#pragma once

#include <functional>
#include <vector>

#include "singosc/algebra.hpp"
#include "singosc/invariant.hpp"
#include "singosc/linalg.hpp"
#include "singosc/profile.hpp"

namespace singosc {

struct ClassicalState {
  double q = 1.0;
  double p = 0.0;
  double t = 0.0;
};

/// Integrates q'' + omega^2 q - 2c/q^3 = 0 and records `samples` equally
/// spaced states. CollisionError (carrying the time) if q drops below q_floor.
std::vector<ClassicalState> classical_trajectory(const FrequencyProfile& profile, double c, double q0, double p0,
                                                 double t0, double t1, double tol, std::size_t samples = 101,
                                                 double q_floor = 1e-6);

/// p^2/2 + omega^2 q^2/2 + c/q^2.
double classical_energy(const ClassicalState& s, double omega_sq, double c);

/// g- (p^2/2 + c/q^2) + g0 p q + g+ q^2/2.
double classical_invariant(const GTriple& g, double c, const ClassicalState& s);

/// Crank-Nicolson propagation of i psi' = (P2/2 + omega^2(t) Q2/2 + SING) psi
/// with the Hamiltonian at each step midpoint. `observe(t, psi)` (optional)
/// runs at t0 and after every step.
ComplexVector schrodinger_grid_evolution(const GridOperators& ops, const FrequencyProfile& profile,
                                         const ComplexVector& psi0, double t0, double t1, double dt,
                                         const std::function<void(double, const ComplexVector&)>& observe = {});

/// Overlaps with the discrete-series basis |n> = (-1)^n Phi_n (Laguerre
/// eigenfunctions at frequency omega0), n < dim.
struct SeriesProjection {
  ComplexVector amplitudes;
  /// Grid norm^2 not captured by the first dim/2 levels.
  double tail = 0.0;
};

/// TruncationError if the tail beyond dim/2 exceeds max_tail.
SeriesProjection project_onto_series(const RadialGrid& grid, const ComplexVector& psi, double k0, double omega0,
                                     Eigen::Index dim, double max_tail = 1e-6);

/// Grid state with the given discrete-series amplitudes.
ComplexVector series_to_grid(const RadialGrid& grid, const ComplexVector& amplitudes, double k0, double omega0);

/// Lowest `count` eigenvalues of the grid Hamiltonian at omega^2.
RealVector grid_spectrum(const GridOperators& ops, double omega_sq, Eigen::Index count);

/// <psi| g- L- + g0 L0 + g+ L+ |psi> on the grid (psi normalized).
double invariant_expectation(const GridOperators& ops, const GTriple& g, const ComplexVector& psi);

}  // namespace singosc
