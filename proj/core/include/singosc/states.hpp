#pragma once

#include <optional>
#include <vector>

#include "singosc/algebra.hpp"
#include "singosc/invariant.hpp"
#include "singosc/linalg.hpp"
#include "singosc/profile.hpp"

namespace singosc {

struct BargmannIndices {
  std::optional<double> minus;  // present only when positive
  double plus = 0.75;
};

/// k = (1 +- sqrt(1/4 + 2c)) / 2. DomainError for c <= -1/8.
BargmannIndices bargmann_indices(double c);

enum class Branch { plus, minus };

/// Selected Bargmann index; DomainError if the minus branch does not exist.
double bargmann_index(double c, Branch branch);

struct StateVector {
  double bargmann_index = 0.0;
  ComplexVector amplitudes;
};

/// Eigenstate of K- with eigenvalue z: c_n ~ z^n sqrt(Gamma(2k0)/(n! Gamma(n+2k0))),
/// normalized. TruncationError when |c_{N-1}|^2 > 1e-10.
StateVector barut_girardello_state(const DiscreteSeriesRep& rep, cplx z);

/// Squeezed vacuum S(zeta)|0> with z = e^{i arg zeta} tanh|zeta|:
/// c_n = (1-|z|^2)^k0 sqrt(Gamma(n+2k0)/(n! Gamma(2k0))) z^n. DomainError
/// for |z| >= 1, TruncationError when |c_{N-1}|^2 > 1e-10.
StateVector perelomov_state(const DiscreteSeriesRep& rep, cplx z);

/// zeta with |zeta| = atanh|z| and the phase of z.
cplx perelomov_squeeze_parameter(cplx z);

/// Phi_n(q) ~ exp(-x/2) x^(k0-1/4) L_n^(2k0-1)(x), x = omega0 q^2 / g_minus,
/// normalized on the grid (sum Phi^2 h = 1). ResolutionError when the mass
/// beyond q_max exceeds 1e-8 or the grid cannot resolve the oscillations.
RealVector eigenfunction(int n, double k0, double omega0, const RadialGrid& grid);
RealVector time_dependent_eigenfunction(int n, double k0, double omega0, double g_minus, const RadialGrid& grid);

/// exp(-i g0 q^2 / (2 g-)) on the grid: the momentum shift p -> p + (g0/g-) q.
ComplexVector momentum_shift_phase(const GTriple& g, const RadialGrid& grid);

/// Eigenfunction of the invariant g- L- + g0 L0 + g+ L+ (eigenvalue
/// 2 omega0 (n + k0), omega0^2 = g+ g- - g0^2).
ComplexVector invariant_eigenfunction(int n, double k0, const GTriple& g, const RadialGrid& grid);

struct PhaseFactors {
  std::vector<double> times;
  /// (omega0^2 + g0^2 + omega^2 g-^2) / (omega0 g-).
  std::vector<double> h;
  /// (g-/omega0) d/dt (g0/g-); h - eps = 2 omega0 / g-.
  std::vector<double> eps;
  /// Half of eps, the (g-/2 omega0) d/dt (g0/g-) variant.
  std::vector<double> eps_half;
  /// int (h - eps) dt and int (h - eps_half) dt from times[0] (trapezoid).
  std::vector<double> theta;
  std::vector<double> theta_half;

  /// Accumulated phase of level n at sample i: exp(-i theta (n + k0)).
  cplx phase(std::size_t i, int n, double k0) const;
};

/// Requires a trajectory dense enough for trapezoid accumulation.
PhaseFactors phase_factors(const InvariantTrajectory& traj, const FrequencyProfile& profile, double omega0);

/// (omega0^2 + g0^2 + omega^2 g-^2) / (omega0 g-) * (n + k0).
double hamiltonian_expectation(int n, double k0, const GTriple& g, double omega_sq, double omega0);

/// Grid inner product h * sum conj(a) b.
cplx grid_inner(const RadialGrid& grid, const ComplexVector& a, const ComplexVector& b);

}  // namespace singosc
