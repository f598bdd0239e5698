// Acceptance run: one PASS/FAIL line per criterion with the measured values.
//
//   acceptance            run criteria 1..9
//   acceptance 4 7        run a subset
//
// Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "singosc/algebra.hpp"
#include "singosc/errors.hpp"
#include "singosc/evolution.hpp"
#include "singosc/invariant.hpp"
#include "singosc/oracle.hpp"
#include "singosc/states.hpp"

using namespace singosc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const char* fmt, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, value);
    if (!detail.empty()) detail += "; ";
    detail += buf;
    if (!ok) {
      detail += " [x]";
      pass = false;
    }
  }
  void note(const char* fmt, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, fmt, value);
    if (!detail.empty()) detail += "; ";
    detail += buf;
  }
};

FrequencyProfile sine_sampled(double t0, double t1) {
  std::vector<double> ts, ws;
  for (int i = 0; i < 2001; ++i) {
    const double t = t0 + (t1 - t0) * i / 2000.0;
    ts.push_back(t);
    ws.push_back(1.5 + 0.5 * std::sin(0.7 * t));
  }
  return FrequencyProfile::sampled(ts, ws);
}

// Interior block used for every truncated-operator comparison.
constexpr Eigen::Index kRepDim = 96;
constexpr Eigen::Index kInterior = 16;

struct Scenario {
  const char* name;
  FrequencyProfile profile;
  double t0;
  double t1;
};

// Vacuum of the unit-frequency oscillator, then omega^2 = 4; and a power law
// starting where omega = 1.
std::vector<Scenario> scenarios() {
  return {{"quench", FrequencyProfile::constant(2.0), 0.0, 0.7},
          {"power_law(2)", FrequencyProfile::power_law(1.0, 2.0), 1.0, 1.7}};
}

Outcome criterion1() {
  Outcome out;
  double worst = 0.0;
  for (double c : {0.0, 0.5, 1.0, 2.0}) {
    const auto k = bargmann_indices(c);
    worst = std::max(worst, verify_su11_structure(build_discrete_series(k.plus, 256), 2));
    if (k.minus) worst = std::max(worst, verify_su11_structure(build_discrete_series(*k.minus, 256), 2));
  }
  out.require(worst <= 1e-12, "structure residual N=256 (edge buffer 2) %.3e", worst);

  double small = 0.0;
  for (double c : {0.0, 0.5, 1.0, 2.0}) {
    small = std::max(small, verify_su11_structure(build_discrete_series(bargmann_indices(c).plus, 64), 2));
  }
  out.note("N=64 %.3e", small);

  double identity = 0.0;
  for (int i = 1; i <= 4125; ++i) {
    const double c = -0.125 + i * 0.001;
    const auto k = bargmann_indices(c);
    const double target = -(3.0 - 8.0 * c) / 16.0;
    identity = std::max(identity, std::abs(k.plus * (k.plus - 1.0) - target));
    if (k.minus) identity = std::max(identity, std::abs(*k.minus * (*k.minus - 1.0) - target));
  }
  out.require(identity <= 1e-14, "casimir identity on (-1/8, 4] %.3e", identity);
  const double rep_casimir = std::abs(casimir_value(build_discrete_series(1.25, 16)) - 0.3125);
  out.note("matrix casimir c=1 N=16 %.3e", rep_casimir);
  return out;
}

Outcome criterion2() {
  Outcome out;
  const Scenario cases[] = {{"constant", FrequencyProfile::constant(1.3), 0.0, 10.0},
                            {"power_law(1)", FrequencyProfile::power_law(1.0, 1.0), 1.0, 11.0},
                            {"power_law(2)", FrequencyProfile::power_law(1.0, 2.0), 1.0, 11.0},
                            {"sampled", sine_sampled(0.0, 10.0), 0.0, 10.0}};
  double route = 0.0;
  double drift = 0.0;
  for (const auto& s : cases) {
    const GTriple g = hamiltonian_triple(s.profile, s.t0);
    const auto ode = integrate_invariant_ode(s.profile, g, s.t0, s.t1, 1e-12);
    const auto erm = g_from_ermakov(solve_ermakov(s.profile, g, s.t0, s.t1, 1e-12));
    const auto cls = propagate_invariant_trajectory(s.profile, g, s.t0, s.t1, 1e-12);
    route = std::max({route, max_route_deviation(ode, erm), max_route_deviation(ode, cls),
                      max_route_deviation(erm, cls)});
    drift = std::max({drift, ode.determinant_drift(), erm.determinant_drift(), cls.determinant_drift()});
  }
  out.require(route <= 1e-7, "route deviation %.3e", route);
  out.require(drift <= 1e-8, "determinant drift %.3e", drift);
  return out;
}

Outcome criterion3() {
  Outcome out;
  double residual = 0.0;
  for (auto [alpha, w0] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {2.0, 2.0}}) {
    for (int i = 0; i <= 40; ++i) {
      residual = std::max(residual, power_law_ode_residual(w0, alpha, 1.0, 0.5 + 0.1 * i));
    }
  }
  out.require(residual <= 1e-6, "closed-form ODE residual %.3e", residual);
  double flat = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double t = 0.25 + 0.3 * i;
    const GTriple g = power_law_invariant(1.0, 0.0, 1.0, t);
    flat = std::max({flat, std::abs(g.minus - 1.0), std::abs(g.zero)});
  }
  out.require(flat <= 1e-10, "alpha=0 deviation from constant g- %.3e", flat);
  return out;
}

Outcome criterion4() {
  Outcome out;
  const auto rep = build_discrete_series(0.75, kRepDim);
  double diff = 0.0;
  double unitarity = 0.0;
  for (const auto& s : scenarios()) {
    const auto direct = direct_evolution_run(rep, s.profile, 1.0, s.t0, s.t1, 1e-10);
    const auto wn = integrate_wei_norman_K(s.profile, 1.0, s.t0, s.t1, 1e-12, KRoute::riccati, 2);
    const ComplexMatrix uk = assemble_U_K(rep, wn, s.t1);
    diff = std::max(diff, leading_block_norm(direct.u - uk, kInterior));
    unitarity = std::max({unitarity, unitarity_defect(direct.u, kInterior), unitarity_defect(uk, kInterior)});
  }
  out.require(diff <= 1e-6, "|U_WN - U_direct| interior %.3e", diff);
  out.require(unitarity <= 1e-8, "unitarity %.3e", unitarity);

  // Grid L-route against the K-route populations of the evolved vacuum,
  // Richardson-extrapolated in the grid spacing.
  const auto prof = FrequencyProfile::power_law(1.0, 2.0);
  const double t1 = 1.5;
  const auto wl = integrate_wei_norman_L(prof, 1.0, t1, 1e-12, 2);
  const auto wk = integrate_wei_norman_K(prof, 1.0, 1.0, t1, 1e-12, KRoute::riccati, 2);
  double pop = 0.0;
  for (double c : {0.0, 1.0}) {
    const double k0 = bargmann_indices(c).plus;
    const ComplexMatrix uk = assemble_U_K(build_discrete_series(k0, 64), wk, t1);
    std::vector<RealVector> p;
    for (Eigen::Index n : {1024, 2048}) {
      const RadialGrid grid{16.0, n};
      const auto ops = build_grid_operators(grid, c);
      const ComplexVector psi = apply_wei_norman_L(ops, wl, 1, eigenfunction(0, k0, 1.0, grid).cast<cplx>());
      p.push_back(project_onto_series(grid, psi, k0, 1.0, 40).amplitudes.head(20).cwiseAbs2());
    }
    const RealVector extrapolated = (4.0 * p[1] - p[0]) / 3.0;
    for (Eigen::Index n = 0; n < 20; ++n) pop = std::max(pop, std::abs(extrapolated[n] - std::norm(uk(n, 0))));
  }
  out.require(pop <= 1e-6, "L-route population deviation %.3e", pop);
  return out;
}

Outcome criterion5() {
  Outcome out;
  const auto rep = build_discrete_series(0.75, kRepDim);
  double diff = 0.0;
  double r = 0.0;
  for (const auto& s : scenarios()) {
    const auto traj = integrate_invariant_ode(s.profile, {1.0, 0.0, 1.0}, s.t0, s.t1, 1e-12, 2);
    const auto sc = squeeze_coefficients(traj.at(1), 1.0);
    const auto sp = squeeze_parameter(sc.u0, sc.uplus);
    const ComplexMatrix sq = squeeze_operator(rep, sp.xi);
    const ComplexMatrix u = direct_evolution(rep, s.profile, 1.0, s.t0, s.t1, 1e-10);
    const ComplexMatrix lhs = u * rep.k0 * u.adjoint();
    const ComplexMatrix rhs = sq.adjoint() * rep.k0 * sq;
    diff = std::max(diff, leading_block_norm(lhs - rhs, kInterior));
    r = std::max(r, sp.r());
  }
  out.require(diff <= 1e-6, "|U K0 U+ - S+ K0 S| interior %.3e", diff);
  out.note("largest |xi| %.3f", r);
  return out;
}

// Fourth-order residual of the continuum eigenfunction against the radial
// Hamiltonian, on nodes away from both ends.
double eigen_residual(const RealVector& phi, const RadialGrid& grid, double c, double omega0, double e) {
  const double h = grid.spacing();
  const Eigen::Index n = phi.size();
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index i = 2; i + 2 < n; ++i) {
    const double q = grid.q(i);
    const double d2 = (-phi[i - 2] + 16.0 * phi[i - 1] - 30.0 * phi[i] + 16.0 * phi[i + 1] - phi[i + 2]) / (12.0 * h * h);
    const double r = -0.5 * d2 + (0.5 * omega0 * omega0 * q * q + c / (q * q)) * phi[i] - e * phi[i];
    num += r * r;
    den += phi[i] * phi[i];
  }
  return std::sqrt(num / den) / e;
}

Outcome criterion6() {
  Outcome out;
  double spectrum_error = 0.0;
  double ortho = 0.0;
  double resid = 0.0;
  for (double c : {0.0, 1.0}) {
    const double k0 = bargmann_indices(c).plus;
    const RadialGrid grid{12.0, 8000};
    const auto ops = build_grid_operators(grid, c);
    const RealVector ev = grid_spectrum(ops, 1.0, 11);
    for (int n = 0; n <= 10; ++n) spectrum_error = std::max(spectrum_error, std::abs(ev[n] - 2.0 * (n + k0)) / (2.0 * (n + k0)));

    std::vector<RealVector> phi;
    for (int n = 0; n <= 10; ++n) phi.push_back(eigenfunction(n, k0, 1.0, grid));
    for (int a = 0; a <= 10; ++a) {
      for (int b = 0; b <= a; ++b) {
        const double ip = grid.spacing() * phi[a].dot(phi[b]);
        ortho = std::max(ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
      resid = std::max(resid, eigen_residual(phi[a], grid, c, 1.0, 2.0 * (a + k0)));
    }
  }
  out.require(spectrum_error <= 1e-5, "grid spectrum relative error n<=10 %.3e", spectrum_error);
  out.require(ortho <= 1e-8, "orthonormality %.3e", ortho);
  out.require(resid <= 1e-5, "eigenfunction residual %.3e", resid);
  return out;
}

Outcome criterion7() {
  Outcome out;
  const auto rep = build_discrete_series(0.75, 160);
  double bg = 0.0;
  for (cplx z : {cplx{0.5, 0.0}, cplx{1.0, -2.0}, cplx{-3.0, 1.5}}) {
    const auto s = barut_girardello_state(rep, z);
    const ComplexVector lowered = rep.kminus * s.amplitudes;
    bg = std::max(bg, (lowered - z * s.amplitudes).head(rep.dim - 1).norm());
  }
  out.require(bg <= 1e-10, "Barut-Girardello |K- v - z v| %.3e", bg);
  double infidelity = 0.0;
  for (cplx z : {cplx{0.3, 0.2}, cplx{-0.6, 0.1}, cplx{0.0, 0.75}}) {
    const auto p = perelomov_state(rep, z);
    const ComplexMatrix sq = squeeze_operator(rep, perelomov_squeeze_parameter(z));
    infidelity = std::max(infidelity, 1.0 - std::norm(sq.col(0).dot(p.amplitudes)));
  }
  out.require(infidelity <= 1e-8, "Perelomov infidelity %.3e", infidelity);
  return out;
}

struct GridRun {
  RealVector populations;
  double invariant_variation = 0.0;
  double tail = 0.0;
};

// Crank-Nicolson evolution of the unit-frequency vacuum, tracking the
// invariant expectation at every trajectory sample.
GridRun grid_run(const Scenario& s, double c, const RadialGrid& grid, std::size_t steps) {
  const double k0 = bargmann_indices(c).plus;
  const auto ops = build_grid_operators(grid, c);
  constexpr std::size_t kSamples = 71;
  const auto traj = integrate_invariant_ode(s.profile, {1.0, 0.0, 1.0}, s.t0, s.t1, 1e-12, kSamples);
  const std::size_t stride = steps / (kSamples - 1);
  double lo = 1e300;
  double hi = -1e300;
  std::size_t k = 0;
  const ComplexVector psi = schrodinger_grid_evolution(
      ops, s.profile, eigenfunction(0, k0, 1.0, grid).cast<cplx>(), s.t0, s.t1,
      (s.t1 - s.t0) / static_cast<double>(steps), [&](double, const ComplexVector& v) {
        if (k % stride == 0) {
          const double e = invariant_expectation(ops, traj.at(k / stride), v);
          lo = std::min(lo, e);
          hi = std::max(hi, e);
        }
        ++k;
      });
  const auto proj = project_onto_series(grid, psi, k0, 1.0, 40);
  return {proj.amplitudes.head(20).cwiseAbs2(), (hi - lo) / std::abs(hi), proj.tail};
}

Outcome criterion8() {
  Outcome out;
  const Scenario quench = scenarios()[0];
  const auto traj = integrate_invariant_ode(quench.profile, {1.0, 0.0, 1.0}, quench.t0, quench.t1, 1e-12, 2);
  const auto sc = squeeze_coefficients(traj.at(1), 1.0);
  const auto sp = squeeze_parameter(sc.u0, sc.uplus);
  double pop = 0.0;
  for (double c : {0.0, 1.0}) {
    const double k0 = bargmann_indices(c).plus;
    const ComplexMatrix sdag = squeeze_disentangled(build_discrete_series(k0, 120), -sp.xi);
    const auto run = grid_run(quench, c, RadialGrid{16.0, 4096}, 1400);
    for (Eigen::Index n = 0; n < 20; ++n) pop = std::max(pop, std::abs(run.populations[n] - std::norm(sdag(n, 0))));
  }
  out.require(pop <= 1e-4, "quench populations vs |<n|S+|0>|^2 %.3e", pop);

  // Exact invariant eigenstates with their accumulated phase, against the
  // directly evolved representation.
  const auto rep = build_discrete_series(0.75, kRepDim);
  const RadialGrid grid{24.0, 8192};
  double phase = 0.0;
  double halved = 0.0;
  for (const auto& s : scenarios()) {
    const auto traj_dense = integrate_invariant_ode(s.profile, {1.0, 0.0, 1.0}, s.t0, s.t1, 1e-12, 2001);
    const auto pf = phase_factors(traj_dense, s.profile, 1.0);
    const std::size_t last = traj_dense.size() - 1;
    const GTriple g = traj_dense.at(last);
    const ComplexMatrix u = direct_evolution(rep, s.profile, 1.0, s.t0, s.t1, 1e-10);
    for (int n : {0, 1, 2, 3}) {
      const auto proj = project_onto_series(grid, invariant_eigenfunction(n, 0.75, g, grid), 0.75, 1.0, 80);
      ComplexVector v = ComplexVector::Zero(kRepDim);
      v.head(80) = proj.amplitudes;
      // Column n of U is the evolved |n> = (-1)^n Phi_n.
      const cplx amp = v.dot(u.col(n)) * (n % 2 == 0 ? 1.0 : -1.0);
      phase = std::max(phase, std::abs(std::arg(amp / pf.phase(last, n, 0.75))));
      halved = std::max(halved, std::abs(std::arg(amp * std::exp(cplx{0.0, pf.theta_half[last] * (n + 0.75)}))));
    }
  }
  out.require(phase <= 1e-4, "exact-state phase error %.3e", phase);
  out.note("with the halved eps term %.3e", halved);
  return out;
}

Outcome criterion9() {
  Outcome out;
  double variation = 0.0;
  const auto sc = scenarios();
  variation = std::max(variation, grid_run(sc[0], 0.0, RadialGrid{16.0, 8192}, 2800).invariant_variation);
  variation = std::max(variation, grid_run(sc[1], 1.0, RadialGrid{16.0, 8192}, 2800).invariant_variation);
  out.require(variation <= 1e-5, "relative variation of <I> %.3e", variation);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty()) {
    for (int k = 1; k <= static_cast<int>(criteria.size()); ++k) selected.push_back(k);
  }

  int failures = 0;
  for (int k : selected) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d: %s  %s  (%.1f s)\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
