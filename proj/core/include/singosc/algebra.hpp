#pragma once

#include <functional>

#include "singosc/linalg.hpp"

namespace singosc {

/// Truncated lowest-weight (positive discrete series) representation of
/// su(1,1) on |n, k0>, n = 0 .. dim-1.
struct DiscreteSeriesRep {
  double bargmann_index = 0.0;
  Eigen::Index dim = 0;
  ComplexMatrix k0;
  ComplexMatrix kplus;
  ComplexMatrix kminus;
};

/// K0 = diag(n + k0), <n+1|K+|n> = sqrt((n+1)(n+2k0)), K- = K+^dagger.
DiscreteSeriesRep build_discrete_series(double k0, Eigen::Index dim);

/// Max entrywise residual of [K0,K+/-] = +/-K+/- and [K+,K-] = -2K0 over
/// rows/columns with index < dim - edge_buffer.
double verify_su11_structure(const DiscreteSeriesRep& rep, Eigen::Index edge_buffer);

/// Casimir K0^2 - (K+K- + K-K+)/2, averaged over the interior diagonal
/// (index < dim - 1). Equals k0 (k0 - 1).
double casimir_value(const DiscreteSeriesRep& rep);

/// Matrix of the Casimir operator.
ComplexMatrix casimir_matrix(const DiscreteSeriesRep& rep);

enum class OriginBoundary {
  // Nodes q_i = i h, i = 1..n, psi(0) = 0. Selects the k0 > 1/2 branch.
  dirichlet,
  // Nodes q_i = (i - 1/2) h with an even mirror across q = 0. Only for c = 0,
  // where it carries the k0 = 1/4 (even) states.
  reflecting,
};

/// Uniform grid on the half-line (0, q_max], psi(q_max + h) = 0.
struct RadialGrid {
  double q_max = 12.0;
  Eigen::Index n_points = 512;
  OriginBoundary origin = OriginBoundary::dirichlet;

  double spacing() const { return q_max / static_cast<double>(n_points); }
  double q(Eigen::Index i) const;
  RealVector points() const;
  void validate() const;
};

/// Finite-difference representation of the L-basis on a radial grid. All
/// operators are tridiagonal. The dilation operator (pq + qp)/2 is stored via
/// its real antisymmetric generator: D = -i * dilation.
struct GridOperators {
  RadialGrid grid;
  double coupling = 0.0;
  RealTridiagonal q2;
  RealTridiagonal p2;
  RealTridiagonal sing;
  RealTridiagonal dilation;

  /// (pq + qp)/2 as a Hermitian tridiagonal matrix.
  ComplexTridiagonal d() const;
  /// L- = p^2/2 + c/q^2.
  RealTridiagonal l_minus() const;
  /// L+ = q^2/2.
  RealTridiagonal l_plus() const;
  /// Hamiltonian p^2/2 + omega^2 q^2/2 + c/q^2.
  RealTridiagonal hamiltonian(double omega_sq) const;
  /// g- L- + g0 L0 + g+ L+.
  ComplexTridiagonal invariant(double g_minus, double g_zero, double g_plus) const;
};

GridOperators build_grid_operators(const RadialGrid& grid, double c);

/// Grid realization of the rescaled su(1,1) basis at frequency omega0.
struct GridKBasis {
  double omega0 = 1.0;
  RealTridiagonal k0;
  RealTridiagonal kplus;
  RealTridiagonal kminus;
};

GridKBasis k_basis_from_grid(const GridOperators& ops, double omega0);

/// <psi| K0^2 - (K+K- + K-K+)/2 |psi> for a normalized grid state. The
/// default probe is the lowest eigenvector of K0.
double casimir_value(const GridKBasis& basis);
double casimir_value(const GridKBasis& basis, const ComplexVector& probe);

/// Smooth test function q^4 exp(-q^2/2) sampled on the grid, unit grid norm
/// (sum |f|^2 h = 1). Used to measure operator identities away from the
/// singular origin.
ComplexVector smooth_probe(const RadialGrid& grid);

/// Grid L2 norm: sqrt(h * sum |v|^2).
double grid_norm(const RadialGrid& grid, const ComplexVector& v);

struct RelationResiduals {
  double raise = 0.0;
  double lower = 0.0;
  double close = 0.0;
  double max() const;
};

/// Residuals of [(i/2)L0, L+-] = +-L+- and [L+, L-] = 2 (i/2) L0 applied to a
/// probe (grid L2 norm).
RelationResiduals su2_relation_residuals(const GridOperators& ops, const ComplexVector& probe);

/// Diagnostic: residuals of the su(1,1) relations evaluated on
/// Gamma0 = L0/2, Gamma+- = -2 L- +- L+/8. No closure is asserted.
RelationResiduals gamma_basis_residual(const GridOperators& ops, const ComplexVector& probe);
RelationResiduals gamma_basis_residual(const GridOperators& ops);

}  // namespace singosc
