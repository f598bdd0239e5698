#include "singosc/evolution.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ode_driver.hpp"
#include "singosc/errors.hpp"

namespace singosc {

namespace {

void check_tol(double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-4)) throw DomainError("tolerance must lie in [1e-14, 1e-4]");
}

void check_span(const FrequencyProfile& profile, double t0, double t1) {
  if (!(t1 >= t0)) throw DomainError("time span must satisfy t1 >= t0");
  profile.check_span(t0, t1);
}

// log of prod_{j=n}^{n+m-1} sqrt((j+1)(j+2k0)).
double log_ladder_product(Eigen::Index n, Eigen::Index m, double k0) {
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(m);
  return 0.5 * (std::lgamma(nd + md + 1.0) - std::lgamma(nd + 1.0) + std::lgamma(nd + md + 2.0 * k0) -
                std::lgamma(nd + 2.0 * k0));
}

constexpr double kMaxLog = 700.0;

}  // namespace

WeiNormanL integrate_wei_norman_L(const FrequencyProfile& profile, double t0, double t1, double tol,
                                  std::size_t samples) {
  check_tol(tol);
  check_span(profile, t0, t1);
  using State = std::array<double, 3>;  // x, x', int dt/x^2
  auto rhs = [&profile](const State& s, State& ds, double t) {
    ds[0] = s[1];
    ds[1] = -profile.omega_sq(t) * s[0];
    ds[2] = 1.0 / (s[0] * s[0]);
  };
  const auto times = detail::uniform_times(t0, t1, samples);
  WeiNormanL wn;
  const auto stats = detail::drive(
      rhs, State{1.0, 0.0, 0.0}, times, tol,
      [&](const State& s, std::size_t k) {
        wn.times.push_back(times[k]);
        wn.lplus.emplace_back(s[1] / s[0], 0.0);
        wn.l0.emplace_back(-2.0 * std::log(s[0]), 0.0);
        wn.lminus.emplace_back(-s[2], 0.0);
      },
      [](const State& s, double t) {
        if (!(s[0] > 1e-8)) {
          throw CoordinateSingularityError("Wei-Norman L coordinates are singular: x(t) reached zero", t);
        }
      });
  wn.steps = stats.accepted;
  return wn;
}

ComplexVector apply_wei_norman_L(const GridOperators& ops, const WeiNormanL& wn, std::size_t index,
                                 const ComplexVector& psi) {
  if (index >= wn.times.size()) throw DomainError("apply_wei_norman_L: sample index out of range");
  const double lp = wn.lplus[index].real();
  const double l0 = wn.l0[index].real();
  const double lm = wn.lminus[index].real();
  // exp(i l- L-) = exp(-i tau L-) with tau = -l-.
  ComplexVector v = expm_action_hermitian(to_complex(ops.l_minus()), -lm, psi);
  // exp(l0 M) with M = A/2 equals exp(-i tau T) for T = iA, tau = l0/2.
  ComplexTridiagonal t_dil = to_complex(ops.dilation);
  t_dil *= kI;
  v = expm_action_hermitian(t_dil, 0.5 * l0, v);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] *= std::exp(kI * (0.5 * lp * ops.q2.diag[static_cast<std::size_t>(i)]));
  }
  return v;
}

std::size_t WeiNormanK::index_of(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
  }
  throw DomainError("WeiNormanK: no coefficients stored at t = " + std::to_string(t));
}

WeiNormanK integrate_wei_norman_K(const FrequencyProfile& profile, double omega0, double t0, double t1, double tol,
                                  KRoute route, std::size_t samples) {
  check_tol(tol);
  check_span(profile, t0, t1);
  if (!(omega0 > 0.0)) throw DomainError("integrate_wei_norman_K: omega0 must be positive");
  const auto times = detail::uniform_times(t0, t1, samples);
  const double w02 = omega0 * omega0;
  auto coeffs = [&](double t) {
    const double w2 = profile.omega_sq(t);
    return std::pair{omega0 + w2 / omega0, w2 / omega0 - omega0};
  };
  WeiNormanK wn;
  wn.omega0 = omega0;
  auto push = [&](double t, cplx kp, cplx k0, cplx km) {
    wn.times.push_back(t);
    wn.kplus.push_back(kp);
    wn.k0.push_back(k0);
    wn.kminus.push_back(km);
  };
  detail::DriveStats stats;
  if (route == KRoute::linearized) {
    // y, y', k0, k- as complex pairs.
    using State = std::array<double, 8>;
    auto rhs = [&](const State& s, State& ds, double t) {
      const double w2 = profile.omega_sq(t);
      if (std::abs(w2 - w02) < 1e-6 * w02) {
        throw DegenerateCoefficientError("K-basis coefficients degenerate: omega^2 = omega0^2", t);
      }
      const auto [a, b] = coeffs(t);
      const double bdot = profile.omega_sq_derivative(t) / omega0;
      const cplx y{s[0], s[1]}, yd{s[2], s[3]}, k0{s[4], s[5]};
      const cplx ydd = -(kI * a - bdot / b) * yd + 0.25 * b * b * y;
      const cplx k0d = -2.0 * yd / y - kI * a;
      const cplx kmd = -0.5 * b * std::exp(k0);
      ds = {yd.real(), yd.imag(), ydd.real(), ydd.imag(), k0d.real(), k0d.imag(), kmd.real(), kmd.imag()};
    };
    stats = detail::drive(
        rhs, State{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, times, tol,
        [&](const State& s, std::size_t k) {
          const double t = times[k];
          const double b = coeffs(t).second;
          const cplx y{s[0], s[1]}, yd{s[2], s[3]};
          push(t, -(2.0 / b) * yd / y, {s[4], s[5]}, {s[6], s[7]});
        },
        [](const State&, double) {});
  } else {
    using State = std::array<double, 6>;
    auto rhs = [&](const State& s, State& ds, double t) {
      const auto [a, b] = coeffs(t);
      const cplx kp{s[0], s[1]}, k0{s[2], s[3]};
      const cplx kpd = 0.5 * b * (kp * kp - 1.0) - kI * a * kp;
      const cplx k0d = b * kp - kI * a;
      const cplx kmd = -0.5 * b * std::exp(k0);
      ds = {kpd.real(), kpd.imag(), k0d.real(), k0d.imag(), kmd.real(), kmd.imag()};
    };
    stats = detail::drive(
        rhs, State{0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, times, tol,
        [&](const State& s, std::size_t k) { push(times[k], {s[0], s[1]}, {s[2], s[3]}, {s[4], s[5]}); },
        [](const State&, double) {});
  }
  wn.steps = stats.accepted;
  return wn;
}

ComplexMatrix hamiltonian_in_rep(const DiscreteSeriesRep& rep, double omega_sq, double omega0) {
  if (!(omega0 > 0.0)) throw DomainError("hamiltonian_in_rep: omega0 must be positive");
  const double a = omega0 + omega_sq / omega0;
  const double b = omega_sq / omega0 - omega0;
  return a * rep.k0 + (0.5 * b) * (rep.kplus + rep.kminus);
}

ComplexMatrix ladder_exponential(const DiscreteSeriesRep& rep, cplx x, bool raising) {
  const Eigen::Index n = rep.dim;
  ComplexMatrix e = ComplexMatrix::Identity(n, n);
  if (x == cplx{}) return e;
  const double log_abs = std::log(std::abs(x));
  const double phase = std::arg(x);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (Eigen::Index m = 1; col + m < n; ++m) {
      const double md = static_cast<double>(m);
      const double log_mag = md * log_abs - std::lgamma(md + 1.0) + log_ladder_product(col, m, rep.bargmann_index);
      if (log_mag > kMaxLog) throw RangeError("ladder exponential overflows double precision");
      const cplx v = std::polar(std::exp(log_mag), md * phase);
      if (raising) {
        e(col + m, col) = v;
      } else {
        e(col, col + m) = v;
      }
    }
  }
  return e;
}

ComplexMatrix assemble_U_K(const DiscreteSeriesRep& rep, cplx kplus, cplx k0, cplx kminus) {
  const Eigen::Index n = rep.dim;
  ComplexVector diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double level = static_cast<double>(i) + rep.bargmann_index;
    if (std::abs(k0.real() * level) > kMaxLog) throw RangeError("exp(k0 K0) overflows double precision");
    diag[i] = std::exp(k0 * level);
  }
  const ComplexMatrix lower = ladder_exponential(rep, kI * kplus, true);
  const ComplexMatrix upper = ladder_exponential(rep, kI * kminus, false);
  return lower * diag.asDiagonal() * upper;
}

ComplexMatrix assemble_U_K(const DiscreteSeriesRep& rep, const WeiNormanK& wn, double t) {
  const std::size_t i = wn.index_of(t);
  return assemble_U_K(rep, wn.kplus[i], wn.k0[i], wn.kminus[i]);
}

namespace {

// exp(-i h H) for real symmetric tridiagonal H (the representation of
// a K0 + b (K+ + K-)/2).
ComplexMatrix unitary_step(const DiscreteSeriesRep& rep, double a, double b, double h) {
  const Eigen::Index n = rep.dim;
  RealVector diag(n);
  RealVector sub(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) diag[i] = a * (static_cast<double>(i) + rep.bargmann_index);
  for (Eigen::Index i = 0; i + 1 < n; ++i) sub[i] = 0.5 * b * rep.kplus(i + 1, i).real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw IntegratorError("direct_evolution: eigensolver failed");
  const ComplexVector phases = (cplx{0.0, -h} * es.eigenvalues().cast<cplx>()).array().exp();
  const ComplexMatrix v = es.eigenvectors().cast<cplx>();
  return v * phases.asDiagonal() * v.transpose();
}

ComplexMatrix magnus_cf4(const DiscreteSeriesRep& rep, const FrequencyProfile& profile, double omega0, double t0,
                         double t1, std::size_t steps) {
  static const double s3 = std::sqrt(3.0);
  const double c1 = 0.5 - s3 / 6.0, c2 = 0.5 + s3 / 6.0;
  // Later exponential (applied second) weights the later node more.
  const double w_early = 0.25 + s3 / 6.0, w_late = 0.25 - s3 / 6.0;
  const double h = (t1 - t0) / static_cast<double>(steps);
  auto ab = [&](double t) {
    const double w2 = profile.omega_sq(t);
    return std::pair{omega0 + w2 / omega0, w2 / omega0 - omega0};
  };
  ComplexMatrix u = ComplexMatrix::Identity(rep.dim, rep.dim);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + h * static_cast<double>(k);
    const auto [a1, b1] = ab(t + c1 * h);
    const auto [a2, b2] = ab(t + c2 * h);
    const ComplexMatrix first = unitary_step(rep, w_early * a1 + w_late * a2, w_early * b1 + w_late * b2, h);
    const ComplexMatrix second = unitary_step(rep, w_late * a1 + w_early * a2, w_late * b1 + w_early * b2, h);
    u = (second * (first * u)).eval();
  }
  return u;
}

}  // namespace

DirectEvolutionResult direct_evolution_run(const DiscreteSeriesRep& rep, const FrequencyProfile& profile,
                                           double omega0, double t0, double t1, double tol) {
  check_tol(tol);
  check_span(profile, t0, t1);
  if (!(omega0 > 0.0)) throw DomainError("direct_evolution: omega0 must be positive");
  DirectEvolutionResult res;
  if (t1 == t0) {
    res.u = ComplexMatrix::Identity(rep.dim, rep.dim);
    return res;
  }
  const Eigen::Index block = std::max<Eigen::Index>(1, rep.dim / 2);
  std::size_t steps = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(4.0 * (t1 - t0))));
  ComplexMatrix coarse = magnus_cf4(rep, profile, omega0, t0, t1, steps);
  for (int doubling = 0; doubling < 16; ++doubling) {
    steps *= 2;
    ComplexMatrix fine = magnus_cf4(rep, profile, omega0, t0, t1, steps);
    const double diff = leading_block_norm(fine - coarse, block);
    if (diff <= tol) {
      res.u = std::move(fine);
      res.steps = steps;
      res.error_estimate = diff / 15.0;
      return res;
    }
    coarse = std::move(fine);
  }
  throw IntegratorError("direct_evolution: step size underflow before reaching the tolerance");
}

ComplexMatrix direct_evolution(const DiscreteSeriesRep& rep, const FrequencyProfile& profile, double omega0,
                               double t0, double t1, double tol) {
  return direct_evolution_run(rep, profile, omega0, t0, t1, tol).u;
}

ComplexMatrix evolution_operator(const DiscreteSeriesRep& rep, const FrequencyProfile& profile, double omega0,
                                 double t0, double t1, double tol) {
  constexpr double kUnitarityGuard = 1e-6;
  try {
    ComplexMatrix u;
    try {
      const auto wn = integrate_wei_norman_K(profile, omega0, t0, t1, tol, KRoute::linearized, 2);
      u = assemble_U_K(rep, wn, t1);
    } catch (const DegenerateCoefficientError&) {
      const auto wn = integrate_wei_norman_K(profile, omega0, t0, t1, tol, KRoute::riccati, 2);
      u = assemble_U_K(rep, wn, t1);
    }
    const Eigen::Index b = std::max<Eigen::Index>(2, rep.dim / 4);
    const ComplexMatrix gram = (u.topRows(b) * u.topRows(b).adjoint()).eval();
    if ((gram - ComplexMatrix::Identity(b, b)).cwiseAbs().maxCoeff() <= kUnitarityGuard) return u;
    return direct_evolution(rep, profile, omega0, t0, t1, tol);
  } catch (const RangeError&) {
    return direct_evolution(rep, profile, omega0, t0, t1, tol);
  } catch (const IntegratorError&) {
    return direct_evolution(rep, profile, omega0, t0, t1, tol);
  }
}

std::array<cplx, 3> closed_form_nu_coefficients(const GTriple& g, double omega0) {
  const double gm = g.minus, g0 = g.zero, w = omega0;
  const cplx nu0 = 0.5 * (-gm + 1.0 / gm - kI * g0 / (w * gm) - g0 * g0 / (w * w * gm));
  auto nu_pm = [&](double s) {
    return 0.5 * (gm + s / gm - s * kI * g0 / (2.0 * w * gm) - s * kI * g0 / w - s * g0 * g0 / (2.0 * w * w * gm));
  };
  return {nu0, nu_pm(1.0), nu_pm(-1.0)};
}

SqueezeParameter squeeze_parameter(double u0, cplx uplus) {
  if (!(u0 > 0.0)) throw DomainError("squeeze_parameter: u0 must be positive");
  const double ratio = 2.0 * std::abs(uplus) / u0;
  if (!(ratio < 1.0)) throw DomainError("squeeze_parameter: 2|u+|/u0 must be below 1 (non-normalizable squeeze)");
  const double r = 0.5 * std::atanh(ratio);
  SqueezeParameter sp;
  sp.xi = uplus == cplx{} ? cplx{} : std::polar(r, std::arg(uplus));
  return sp;
}

ComplexMatrix squeeze_operator(const DiscreteSeriesRep& rep, cplx xi) {
  // G = xi K+ - conj(xi) K- is anti-Hermitian; exp(G) = exp(-i (iG)).
  const ComplexMatrix h = kI * (xi * rep.kplus - std::conj(xi) * rep.kminus);
  return expm_hermitian(h, cplx{0.0, -1.0});
}

ComplexMatrix squeeze_disentangled(const DiscreteSeriesRep& rep, cplx xi) {
  const double r = std::abs(xi);
  const cplx z = r == 0.0 ? cplx{} : std::polar(std::tanh(r), std::arg(xi));
  const double log_scale = std::log1p(-std::norm(z));
  ComplexVector diag(rep.dim);
  for (Eigen::Index i = 0; i < rep.dim; ++i) diag[i] = std::exp(log_scale * (static_cast<double>(i) + rep.bargmann_index));
  return ladder_exponential(rep, z, true) * diag.asDiagonal() * ladder_exponential(rep, -std::conj(z), false);
}

std::array<cplx, 3> k_basis_coefficients(const DiscreteSeriesRep& rep, const ComplexMatrix& x) {
  const double k0 = rep.bargmann_index;
  const double s = std::sqrt(2.0 * k0);
  return {x(0, 0) / k0, x(1, 0) / s, x(0, 1) / s};
}

SqueezeCoefficients squeeze_coefficients(const GTriple& g, double omega0) {
  if (!(g.minus > 0.0)) throw DomainError("squeeze_coefficients: g_minus must be positive");
  if (!(omega0 > 0.0)) throw DomainError("squeeze_coefficients: omega0 must be positive");
  SqueezeCoefficients sc;
  const double w2 = omega0 * omega0;
  sc.u0 = 0.5 * (g.minus + g.plus / w2);
  sc.uplus = cplx{0.25 * (g.plus / w2 - g.minus), g.zero / (2.0 * omega0)};
  sc.uminus = std::conj(sc.uplus);

  // Conjugation route for the nu's. The truncation must hold S|0> to
  // roundoff: |z|^dim below 1e-18.
  const double det = g.determinant() / w2;
  if (det > 0.0) {
    const double norm = std::sqrt(det);
    const SqueezeParameter sp = squeeze_parameter(sc.u0 / norm, sc.uplus / norm);
    const double z = std::tanh(sp.r());
    Eigen::Index dim = 48;
    if (z > 0.0) dim = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::ceil(-41.5 / std::log(z))) + 16, 48, 600);
    const DiscreteSeriesRep rep = build_discrete_series(0.75, dim);
    const ComplexMatrix s = squeeze_operator(rep, sp.xi);
    const auto nu = k_basis_coefficients(rep, s.adjoint() * rep.kplus * s);
    sc.nu0 = nu[0];
    sc.nuplus = nu[1];
    sc.numinus = nu[2];
    const auto closed = closed_form_nu_coefficients(g, omega0);
    sc.closed_form_nu_residual = std::max({std::abs(closed[0] - sc.nu0), std::abs(closed[1] - sc.nuplus),
                                       std::abs(closed[2] - sc.numinus)});
  } else {
    sc.closed_form_nu_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return sc;
}

}  // namespace singosc
