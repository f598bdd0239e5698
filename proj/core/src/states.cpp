#include "singosc/states.hpp"

#include <cmath>

#include "format.hpp"
#include "singosc/errors.hpp"
#include "singosc/special.hpp"

namespace singosc {

BargmannIndices bargmann_indices(double c) {
  if (!(c > -0.125)) throw DomainError("Bargmann index requires c > -1/8 (fall to the center)");
  const double root = std::sqrt(0.25 + 2.0 * c);
  BargmannIndices k;
  k.plus = 0.5 * (1.0 + root);
  const double minus = 0.5 * (1.0 - root);
  if (minus > 0.0) k.minus = minus;
  return k;
}

double bargmann_index(double c, Branch branch) {
  const auto k = bargmann_indices(c);
  if (branch == Branch::plus) return k.plus;
  if (!k.minus) throw DomainError("the minus Bargmann branch is not positive for this coupling (needs c < 3/8)");
  return *k.minus;
}

namespace {

// Normalizes log-magnitude/phase amplitudes without overflow and checks the
// truncation tail.
StateVector from_log_amplitudes(double k0, const RealVector& log_mag, const RealVector& phase) {
  const double top = log_mag.maxCoeff();
  StateVector s;
  s.bargmann_index = k0;
  s.amplitudes.resize(log_mag.size());
  for (Eigen::Index n = 0; n < log_mag.size(); ++n) s.amplitudes[n] = std::polar(std::exp(log_mag[n] - top), phase[n]);
  s.amplitudes.normalize();
  const double tail = std::norm(s.amplitudes[s.amplitudes.size() - 1]);
  if (tail > 1e-10) {
    throw TruncationError("coherent state truncation tail " + detail::sci(tail) +
                          " exceeds 1e-10; raise the representation dimension");
  }
  return s;
}

}  // namespace

StateVector barut_girardello_state(const DiscreteSeriesRep& rep, cplx z) {
  const double k0 = rep.bargmann_index;
  RealVector log_mag(rep.dim), phase(rep.dim);
  const double log_z = z == cplx{} ? 0.0 : std::log(std::abs(z));
  for (Eigen::Index n = 0; n < rep.dim; ++n) {
    const double nd = static_cast<double>(n);
    if (z == cplx{}) {
      log_mag[n] = n == 0 ? 0.0 : -1e300;
    } else {
      log_mag[n] = nd * log_z + 0.5 * special::log_ladder_norm(static_cast<int>(n), k0);
    }
    phase[n] = nd * std::arg(z);
  }
  return from_log_amplitudes(k0, log_mag, phase);
}

StateVector perelomov_state(const DiscreteSeriesRep& rep, cplx z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("perelomov_state: |z| must be below 1 (non-normalizable)");
  const double k0 = rep.bargmann_index;
  RealVector log_mag(rep.dim), phase(rep.dim);
  const double log_z = z == cplx{} ? 0.0 : std::log(std::abs(z));
  const double pre = k0 * std::log1p(-std::norm(z));
  for (Eigen::Index n = 0; n < rep.dim; ++n) {
    const double nd = static_cast<double>(n);
    if (z == cplx{}) {
      log_mag[n] = n == 0 ? 0.0 : -1e300;
    } else {
      log_mag[n] = pre + nd * log_z +
                   0.5 * (std::lgamma(nd + 2.0 * k0) - std::lgamma(nd + 1.0) - std::lgamma(2.0 * k0));
    }
    phase[n] = nd * std::arg(z);
  }
  return from_log_amplitudes(k0, log_mag, phase);
}

cplx perelomov_squeeze_parameter(cplx z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("perelomov_squeeze_parameter: |z| must be below 1");
  if (z == cplx{}) return {};
  return std::polar(std::atanh(std::abs(z)), std::arg(z));
}

RealVector time_dependent_eigenfunction(int n, double k0, double omega0, double g_minus, const RadialGrid& grid) {
  if (n < 0) throw DomainError("eigenfunction: n must be >= 0");
  if (!(k0 > 0.0)) throw DomainError("eigenfunction: k0 must be positive");
  if (!(omega0 > 0.0)) throw DomainError("eigenfunction: omega0 must be positive");
  if (!(g_minus > 0.0)) throw DomainError("eigenfunction: g_minus must be positive");
  grid.validate();
  const double scale = omega0 / g_minus;
  const double h = grid.spacing();
  const double kmax = 2.0 * std::sqrt(scale * (n + k0));
  if (h * kmax > 1.0) throw ResolutionError("eigenfunction: grid spacing too coarse for level " + std::to_string(n));
  const double a = 2.0 * k0 - 1.0;
  auto value = [&](double q) {
    const double x = scale * q * q;
    return std::exp(-0.5 * x + (k0 - 0.25) * std::log(x)) * special::laguerre(n, a, x);
  };
  RealVector phi(grid.n_points);
  for (Eigen::Index i = 0; i < grid.n_points; ++i) phi[i] = value(grid.q(i));
  const double inside = phi.squaredNorm();
  // Mass beyond q_max, continuing the grid until the Gaussian is negligible.
  double outside = 0.0;
  const double q_end = std::sqrt((4.0 * n + 4.0 * k0 + 90.0) / scale);
  for (Eigen::Index i = grid.n_points; grid.q(i) < q_end; ++i) {
    const double v = value(grid.q(i));
    outside += v * v;
  }
  if (!(inside > 0.0) || outside > 1e-8 * (inside + outside)) {
    throw ResolutionError("eigenfunction: mass beyond q_max exceeds 1e-8 for level " + std::to_string(n));
  }
  return phi / std::sqrt(h * inside);
}

RealVector eigenfunction(int n, double k0, double omega0, const RadialGrid& grid) {
  return time_dependent_eigenfunction(n, k0, omega0, 1.0, grid);
}

ComplexVector momentum_shift_phase(const GTriple& g, const RadialGrid& grid) {
  if (!(g.minus > 0.0)) throw DomainError("momentum_shift_phase: g_minus must be positive");
  ComplexVector v(grid.n_points);
  for (Eigen::Index i = 0; i < grid.n_points; ++i) {
    const double q = grid.q(i);
    v[i] = std::exp(cplx{0.0, -g.zero * q * q / (2.0 * g.minus)});
  }
  return v;
}

ComplexVector invariant_eigenfunction(int n, double k0, const GTriple& g, const RadialGrid& grid) {
  const double det = g.determinant();
  if (!(det > 0.0)) throw DomainError("invariant_eigenfunction: g+ g- - g0^2 must be positive");
  const RealVector chi = time_dependent_eigenfunction(n, k0, std::sqrt(det), g.minus, grid);
  return momentum_shift_phase(g, grid).cwiseProduct(chi.cast<cplx>());
}

cplx PhaseFactors::phase(std::size_t i, int n, double k0) const {
  return std::exp(cplx{0.0, -theta[i] * (static_cast<double>(n) + k0)});
}

PhaseFactors phase_factors(const InvariantTrajectory& traj, const FrequencyProfile& profile, double omega0) {
  if (!(omega0 > 0.0)) throw DomainError("phase_factors: omega0 must be positive");
  PhaseFactors pf;
  pf.times = traj.times;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const GTriple g = traj.at(i);
    if (!(g.minus > 0.0)) throw SingularInvariantError("phase_factors: g_minus must stay positive", traj.times[i]);
    const double w2 = profile.omega_sq(traj.times[i]);
    pf.h.push_back((omega0 * omega0 + g.zero * g.zero + w2 * g.minus * g.minus) / (omega0 * g.minus));
    // d/dt (g0/g-) from the invariant equations of motion.
    const double ratio_dot = ((w2 * g.minus - g.plus) * g.minus + 2.0 * g.zero * g.zero) / (g.minus * g.minus);
    pf.eps.push_back(g.minus / omega0 * ratio_dot);
    pf.eps_half.push_back(0.5 * pf.eps.back());
  }
  pf.theta.assign(traj.size(), 0.0);
  pf.theta_half.assign(traj.size(), 0.0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double dt = traj.times[i] - traj.times[i - 1];
    pf.theta[i] = pf.theta[i - 1] + 0.5 * dt * (pf.h[i] - pf.eps[i] + pf.h[i - 1] - pf.eps[i - 1]);
    pf.theta_half[i] =
        pf.theta_half[i - 1] + 0.5 * dt * (pf.h[i] - pf.eps_half[i] + pf.h[i - 1] - pf.eps_half[i - 1]);
  }
  return pf;
}

double hamiltonian_expectation(int n, double k0, const GTriple& g, double omega_sq, double omega0) {
  if (!(g.minus > 0.0)) throw DomainError("hamiltonian_expectation: g_minus must be positive");
  return (omega0 * omega0 + g.zero * g.zero + omega_sq * g.minus * g.minus) / (omega0 * g.minus) *
         (static_cast<double>(n) + k0);
}

cplx grid_inner(const RadialGrid& grid, const ComplexVector& a, const ComplexVector& b) {
  return grid.spacing() * a.dot(b);
}

}  // namespace singosc
