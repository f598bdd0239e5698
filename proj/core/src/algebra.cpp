#include "singosc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "singosc/errors.hpp"

namespace singosc {

DiscreteSeriesRep build_discrete_series(double k0, Eigen::Index dim) {
  if (!(k0 > 0.0)) throw DomainError("build_discrete_series: Bargmann index must be positive");
  if (dim < 2) throw DomainError("build_discrete_series: dimension must be at least 2");
  DiscreteSeriesRep rep;
  rep.bargmann_index = k0;
  rep.dim = dim;
  rep.k0 = ComplexMatrix::Zero(dim, dim);
  rep.kplus = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) {
    rep.k0(n, n) = static_cast<double>(n) + k0;
    if (n + 1 < dim) {
      const double nd = static_cast<double>(n);
      rep.kplus(n + 1, n) = std::sqrt((nd + 1.0) * (nd + 2.0 * k0));
    }
  }
  rep.kminus = rep.kplus.adjoint();
  return rep;
}

double verify_su11_structure(const DiscreteSeriesRep& rep, Eigen::Index edge_buffer) {
  if (edge_buffer < 0 || edge_buffer >= rep.dim) throw DomainError("verify_su11_structure: edge_buffer out of range");
  const ComplexMatrix& k0 = rep.k0;
  const ComplexMatrix& kp = rep.kplus;
  const ComplexMatrix& km = rep.kminus;
  const Eigen::Index n = rep.dim - edge_buffer;
  const ComplexMatrix r_plus = k0 * kp - kp * k0 - kp;
  const ComplexMatrix r_minus = k0 * km - km * k0 + km;
  const ComplexMatrix r_close = kp * km - km * kp + 2.0 * k0;
  return std::max({max_abs(r_plus.topLeftCorner(n, n)), max_abs(r_minus.topLeftCorner(n, n)),
                   max_abs(r_close.topLeftCorner(n, n))});
}

ComplexMatrix casimir_matrix(const DiscreteSeriesRep& rep) {
  return rep.k0 * rep.k0 - 0.5 * (rep.kplus * rep.kminus + rep.kminus * rep.kplus);
}

double casimir_value(const DiscreteSeriesRep& rep) {
  const ComplexMatrix c = casimir_matrix(rep);
  double sum = 0.0;
  for (Eigen::Index n = 0; n + 1 < rep.dim; ++n) sum += c(n, n).real();
  return sum / static_cast<double>(rep.dim - 1);
}

double RadialGrid::q(Eigen::Index i) const {
  const double h = spacing();
  return origin == OriginBoundary::dirichlet ? static_cast<double>(i + 1) * h : (static_cast<double>(i) + 0.5) * h;
}

RealVector RadialGrid::points() const {
  RealVector p(n_points);
  for (Eigen::Index i = 0; i < n_points; ++i) p[i] = q(i);
  return p;
}

void RadialGrid::validate() const {
  if (!(q_max > 0.0)) throw DomainError("RadialGrid: q_max must be positive");
  if (n_points < 64) throw DomainError("RadialGrid: n_points must be at least 64");
}

ComplexTridiagonal GridOperators::d() const {
  ComplexTridiagonal t = to_complex(dilation);
  t *= cplx{0.0, -1.0};
  return t;
}

RealTridiagonal GridOperators::l_minus() const { return 0.5 * p2 + sing; }

RealTridiagonal GridOperators::l_plus() const { return 0.5 * q2; }

RealTridiagonal GridOperators::hamiltonian(double omega_sq) const { return 0.5 * p2 + sing + (0.5 * omega_sq) * q2; }

ComplexTridiagonal GridOperators::invariant(double g_minus, double g_zero, double g_plus) const {
  ComplexTridiagonal t = to_complex(g_minus * l_minus() + g_plus * l_plus());
  ComplexTridiagonal dz = d();
  dz *= cplx{g_zero, 0.0};
  t += dz;
  return t;
}

GridOperators build_grid_operators(const RadialGrid& grid, double c) {
  grid.validate();
  if (!(c > -0.125)) throw DomainError("build_grid_operators: coupling must satisfy c > -1/8");
  if (grid.origin == OriginBoundary::reflecting && c != 0.0) {
    throw DomainError("build_grid_operators: reflecting origin requires c = 0");
  }
  const auto n = static_cast<std::size_t>(grid.n_points);
  const double h = grid.spacing();
  GridOperators ops;
  ops.grid = grid;
  ops.coupling = c;
  ops.q2 = RealTridiagonal(n);
  ops.p2 = RealTridiagonal(n);
  ops.sing = RealTridiagonal(n);
  ops.dilation = RealTridiagonal(n);
  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t i = 0; i < n; ++i) {
    const double qi = grid.q(static_cast<Eigen::Index>(i));
    ops.q2.diag[i] = qi * qi;
    ops.sing.diag[i] = c / (qi * qi);
    ops.p2.diag[i] = 2.0 * inv_h2;
    if (i + 1 < n) {
      ops.p2.lower[i] = -inv_h2;
      ops.p2.upper[i] = -inv_h2;
      const double qn = grid.q(static_cast<Eigen::Index>(i + 1));
      // (Q Dc + Dc Q)/2 with the central difference Dc.
      const double a = (qi + qn) / (4.0 * h);
      ops.dilation.upper[i] = a;
      ops.dilation.lower[i] = -a;
    }
  }
  if (grid.origin == OriginBoundary::reflecting) ops.p2.diag[0] = inv_h2;
  return ops;
}

GridKBasis k_basis_from_grid(const GridOperators& ops, double omega0) {
  if (!(omega0 > 0.0)) throw DomainError("k_basis_from_grid: omega0 must be positive");
  GridKBasis basis;
  basis.omega0 = omega0;
  const RealTridiagonal pos = (0.5 * omega0) * ops.q2;
  const RealTridiagonal kin = (0.5 / omega0) * ops.p2 + (1.0 / omega0) * ops.sing;
  basis.k0 = 0.5 * (pos + kin);
  // K+- = (X -+ i D)/2 with X = pos - kin and i D = dilation.
  const RealTridiagonal x = pos + (-1.0) * kin;
  basis.kplus = 0.5 * (x + (-1.0) * ops.dilation);
  basis.kminus = 0.5 * (x + ops.dilation);
  return basis;
}

ComplexVector smooth_probe(const RadialGrid& grid) {
  ComplexVector f(grid.n_points);
  for (Eigen::Index i = 0; i < grid.n_points; ++i) {
    const double q = grid.q(i);
    f[i] = std::pow(q, 4) * std::exp(-0.5 * q * q);
  }
  return f / grid_norm(grid, f);
}

double grid_norm(const RadialGrid& grid, const ComplexVector& v) { return std::sqrt(grid.spacing()) * v.norm(); }

double casimir_value(const GridKBasis& basis, const ComplexVector& probe) {
  const ComplexVector k0v = basis.k0.apply(probe);
  const ComplexVector kpv = basis.kplus.apply(probe);
  const ComplexVector kmv = basis.kminus.apply(probe);
  // K+^T = K-, so <K+K-> = |K- psi|^2 and <K-K+> = |K+ psi|^2.
  const double norm2 = probe.squaredNorm();
  return (k0v.squaredNorm() - 0.5 * (kmv.squaredNorm() + kpv.squaredNorm())) / norm2;
}

double casimir_value(const GridKBasis& basis) {
  const RealVector ev = symmetric_tridiagonal_eigenvalues(basis.k0);
  const RealVector v = symmetric_tridiagonal_eigenvector(basis.k0, ev[0]);
  return casimir_value(basis, v.cast<cplx>());
}

double RelationResiduals::max() const { return std::max({raise, lower, close}); }

namespace {

template <typename A, typename B>
ComplexVector commutator_apply(const A& a, const B& b, const ComplexVector& f) {
  return a.apply(ComplexVector(b.apply(f))) - b.apply(ComplexVector(a.apply(f)));
}

}  // namespace

RelationResiduals su2_relation_residuals(const GridOperators& ops, const ComplexVector& probe) {
  // M = (i/2) L0 = dilation / 2.
  const RealTridiagonal m = 0.5 * ops.dilation;
  const RealTridiagonal lp = ops.l_plus();
  const RealTridiagonal lm = ops.l_minus();
  RelationResiduals r;
  r.raise = grid_norm(ops.grid, commutator_apply(m, lp, probe) - lp.apply(probe));
  r.lower = grid_norm(ops.grid, commutator_apply(m, lm, probe) + lm.apply(probe));
  r.close = grid_norm(ops.grid, commutator_apply(lp, lm, probe) - 2.0 * m.apply(probe));
  return r;
}

RelationResiduals gamma_basis_residual(const GridOperators& ops, const ComplexVector& probe) {
  ComplexTridiagonal g0 = ops.d();
  g0 *= cplx{0.5, 0.0};
  const ComplexTridiagonal gp = to_complex((-2.0) * ops.l_minus() + 0.125 * ops.l_plus());
  const ComplexTridiagonal gm = to_complex((-2.0) * ops.l_minus() + (-0.125) * ops.l_plus());
  RelationResiduals r;
  r.raise = grid_norm(ops.grid, commutator_apply(g0, gp, probe) - gp.apply(probe));
  r.lower = grid_norm(ops.grid, commutator_apply(g0, gm, probe) + gm.apply(probe));
  r.close = grid_norm(ops.grid, commutator_apply(gp, gm, probe) + 2.0 * g0.apply(probe));
  return r;
}

RelationResiduals gamma_basis_residual(const GridOperators& ops) {
  return gamma_basis_residual(ops, smooth_probe(ops.grid));
}

}  // namespace singosc
