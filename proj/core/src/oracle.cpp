#include "singosc/oracle.hpp"

#include <array>
#include <cmath>

#include "ode_driver.hpp"
#include "format.hpp"
#include "singosc/errors.hpp"
#include "singosc/states.hpp"

namespace singosc {

std::vector<ClassicalState> classical_trajectory(const FrequencyProfile& profile, double c, double q0, double p0,
                                                 double t0, double t1, double tol, std::size_t samples,
                                                 double q_floor) {
  if (!(q0 > 0.0)) throw DomainError("classical_trajectory: q0 must be positive");
  if (!(t1 >= t0)) throw DomainError("classical_trajectory: t1 must not precede t0");
  if (!(tol >= 1e-14 && tol <= 1e-4)) throw DomainError("tolerance must lie in [1e-14, 1e-4]");
  profile.check_span(t0, t1);
  using State = std::array<double, 2>;
  auto rhs = [&](const State& s, State& ds, double t) {
    ds[0] = s[1];
    ds[1] = -profile.omega_sq(t) * s[0] + 2.0 * c / (s[0] * s[0] * s[0]);
  };
  const auto times = detail::uniform_times(t0, t1, samples);
  std::vector<ClassicalState> out;
  double q_prev = q0;
  double t_prev = t0;
  try {
    detail::drive(
        rhs, State{q0, p0}, times, tol, [&](const State& s, std::size_t k) { out.push_back({s[0], s[1], times[k]}); },
        [&](const State& s, double t) {
          if (!(s[0] > q_floor)) {
            // Linear interpolation inside the step that crossed the floor.
            const double frac = (q_prev - q_floor) / (q_prev - s[0]);
            throw CollisionError("classical trajectory reached the origin", t_prev + frac * (t - t_prev));
          }
          q_prev = s[0];
          t_prev = t;
        });
  } catch (const IntegratorError&) {
    // An attractive c/q^2 drives the step size to zero as q -> 0.
    throw CollisionError("classical trajectory collapsed onto the origin", t_prev);
  }
  return out;
}

double classical_energy(const ClassicalState& s, double omega_sq, double c) {
  return 0.5 * s.p * s.p + 0.5 * omega_sq * s.q * s.q + c / (s.q * s.q);
}

double classical_invariant(const GTriple& g, double c, const ClassicalState& s) {
  return g.minus * (0.5 * s.p * s.p + c / (s.q * s.q)) + g.zero * s.p * s.q + 0.5 * g.plus * s.q * s.q;
}

ComplexVector schrodinger_grid_evolution(const GridOperators& ops, const FrequencyProfile& profile,
                                         const ComplexVector& psi0, double t0, double t1, double dt,
                                         const std::function<void(double, const ComplexVector&)>& observe) {
  if (psi0.size() != ops.grid.n_points) throw DomainError("schrodinger_grid_evolution: state size mismatch");
  if (!(dt > 0.0)) throw DomainError("schrodinger_grid_evolution: dt must be positive");
  if (!(t1 >= t0)) throw DomainError("schrodinger_grid_evolution: t1 must not precede t0");
  profile.check_span(t0, t1);
  const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
  const double h = steps == 0 ? 0.0 : (t1 - t0) / static_cast<double>(steps);
  ComplexVector psi = psi0;
  if (observe) observe(t0, psi);
  const ComplexTridiagonal base_kin = to_complex(0.5 * ops.p2 + ops.sing);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t_mid = t0 + (static_cast<double>(k) + 0.5) * h;
    const double w2 = profile.omega_sq(t_mid);
    ComplexTridiagonal hm = base_kin;
    for (std::size_t i = 0; i < hm.size(); ++i) hm.diag[i] += 0.5 * w2 * ops.q2.diag[i];
    // (1 + i h H/2) psi_new = (1 - i h H/2) psi.
    ComplexTridiagonal lhs = hm;
    lhs *= cplx{0.0, 0.5 * h};
    for (auto& d : lhs.diag) d += 1.0;
    const ComplexVector rhs = psi - cplx{0.0, 0.5 * h} * hm.apply(psi);
    psi = solve_tridiagonal(lhs, rhs);
    if (!psi.allFinite()) throw Error("schrodinger_grid_evolution: linear solve produced non-finite values");
    if (observe) observe(t0 + static_cast<double>(k + 1) * h, psi);
  }
  return psi;
}

SeriesProjection project_onto_series(const RadialGrid& grid, const ComplexVector& psi, double k0, double omega0,
                                     Eigen::Index dim, double max_tail) {
  if (dim < 2) throw DomainError("project_onto_series: dim must be at least 2");
  SeriesProjection proj;
  proj.amplitudes.resize(dim);
  const double norm2 = grid_inner(grid, psi, psi).real();
  double captured = 0.0;
  for (Eigen::Index n = 0; n < dim; ++n) {
    const RealVector phi = eigenfunction(static_cast<int>(n), k0, omega0, grid);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    proj.amplitudes[n] = sign * grid.spacing() * phi.cast<cplx>().dot(psi);
    if (n < dim / 2) captured += std::norm(proj.amplitudes[n]);
  }
  proj.tail = std::max(0.0, norm2 - captured);
  if (proj.tail > max_tail) {
    throw TruncationError("grid state has mass " + detail::sci(proj.tail) + " beyond level " +
                          std::to_string(dim / 2) + "; raise the truncation");
  }
  return proj;
}

ComplexVector series_to_grid(const RadialGrid& grid, const ComplexVector& amplitudes, double k0, double omega0) {
  ComplexVector psi = ComplexVector::Zero(grid.n_points);
  for (Eigen::Index n = 0; n < amplitudes.size(); ++n) {
    if (amplitudes[n] == cplx{}) continue;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    psi += (sign * amplitudes[n]) * eigenfunction(static_cast<int>(n), k0, omega0, grid).cast<cplx>();
  }
  return psi;
}

RealVector grid_spectrum(const GridOperators& ops, double omega_sq, Eigen::Index count) {
  const RealVector all = symmetric_tridiagonal_eigenvalues(ops.hamiltonian(omega_sq));
  return all.head(std::min(count, all.size()));
}

double invariant_expectation(const GridOperators& ops, const GTriple& g, const ComplexVector& psi) {
  return grid_inner(ops.grid, psi, ops.invariant(g.minus, g.zero, g.plus).apply(psi)).real() /
         grid_inner(ops.grid, psi, psi).real();
}

}  // namespace singosc
