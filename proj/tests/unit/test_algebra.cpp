#include <doctest.h>

#include <cmath>
#include <limits>

#include "singosc/algebra.hpp"
#include "singosc/errors.hpp"

using namespace singosc;

TEST_CASE("discrete series matrices at k0 = 3/4") {
  const auto rep = build_discrete_series(0.75, 4);
  for (int n = 0; n < 4; ++n) CHECK(rep.k0(n, n).real() == doctest::Approx(0.75 + n));
  CHECK(max_abs(rep.k0 - rep.k0.adjoint()) == 0.0);
  CHECK(max_abs(rep.kminus - rep.kplus.adjoint()) == 0.0);

  ComplexVector e0 = ComplexVector::Zero(4);
  e0[0] = 1.0;
  CHECK((rep.kminus * e0).norm() == 0.0);
  CHECK(rep.kplus(1, 0).real() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
}

TEST_CASE("ladder entries reproduce the norms of (K+)^n |0>") {
  // Oracle: from [K-, K+] = 2 K0 alone, |K+^n|0>|^2 = n! Gamma(n + 2k0) / Gamma(2k0).
  const double k0 = 0.75;
  const auto rep = build_discrete_series(k0, 12);
  ComplexVector v = ComplexVector::Zero(12);
  v[0] = 1.0;
  double log_norm2 = 0.0;
  for (int n = 1; n < 12; ++n) {
    v = rep.kplus * v;
    log_norm2 += std::log(static_cast<double>(n)) + std::log(n - 1 + 2.0 * k0);
    CHECK(std::log(v.squaredNorm()) == doctest::Approx(log_norm2).epsilon(1e-13));
    // Positive real components.
    CHECK(v[n].real() > 0.0);
    CHECK(v[n].imag() == 0.0);
  }
}

TEST_CASE("interior structure relations hold, the truncation edge does not") {
  for (double k0 : {0.25, 0.75, 1.25}) {
    for (Eigen::Index n : {16, 64}) {
      CHECK(verify_su11_structure(build_discrete_series(k0, n), 2) <= 1e-12);
    }
    // At N = 256 the entries of K+ K- reach ~6.5e4, so a double-precision
    // representation carries an absolute closure error of a few ulps of
    // that size. The bound below is 4 eps N^2.
    const double bound = 4.0 * std::numeric_limits<double>::epsilon() * 256.0 * 256.0;
    CHECK(verify_su11_structure(build_discrete_series(k0, 256), 2) <= bound);
  }
  const auto rep = build_discrete_series(0.75, 64);
  const double edge = verify_su11_structure(rep, 0);
  CHECK(edge >= 1.0);
  // The (N-1, N-1) entry of [K+,K-] + 2K0 is (N-1)(N-2+2k0) + 2(N-1+k0).
  CHECK(edge == doctest::Approx(63.0 * 63.5 + 2.0 * 63.75));
}

TEST_CASE("casimir on the discrete series") {
  CHECK(casimir_value(build_discrete_series(0.25, 64)) == doctest::Approx(-0.1875).epsilon(1e-14));
  CHECK(casimir_value(build_discrete_series(1.25, 64)) == doctest::Approx(0.3125).epsilon(1e-14));
  const ComplexMatrix c = casimir_matrix(build_discrete_series(0.75, 32));
  for (int n = 0; n < 31; ++n) CHECK(c(n, n).real() == doctest::Approx(0.75 * -0.25).epsilon(1e-13));
}

TEST_CASE("invalid discrete-series parameters") {
  CHECK_THROWS_AS(build_discrete_series(0.0, 4), DomainError);
  CHECK_THROWS_AS(build_discrete_series(-0.5, 4), DomainError);
  CHECK_THROWS_AS(build_discrete_series(0.75, 1), DomainError);
  CHECK_THROWS_AS(verify_su11_structure(build_discrete_series(0.75, 4), 4), DomainError);
}

TEST_CASE("grid operators are Hermitian and carry c/q^2") {
  const RadialGrid grid{16.0, 512};
  const auto ops0 = build_grid_operators(grid, 0.0);
  for (double s : ops0.sing.diag) CHECK(s == 0.0);

  const auto ops = build_grid_operators(grid, 1.0);
  CHECK(max_abs(ops.q2.dense().cast<cplx>() - ops.q2.dense().transpose().cast<cplx>()) == 0.0);
  CHECK(max_abs(ops.p2.dense().cast<cplx>() - ops.p2.dense().transpose().cast<cplx>()) == 0.0);
  const ComplexMatrix d = ops.d().dense();
  CHECK(max_abs(d - d.adjoint()) == 0.0);
  // q = 1 is node 32 (h = 1/32).
  CHECK(grid.q(31) == 1.0);
  CHECK(ops.sing.diag[31] == 1.0);
  for (Eigen::Index i = 0; i < grid.n_points; ++i) {
    CHECK(ops.sing.diag[static_cast<std::size_t>(i)] == doctest::Approx(1.0 / (grid.q(i) * grid.q(i))));
  }
}

TEST_CASE("coupling at or below -1/8 falls to the centre") {
  const RadialGrid grid{12.0, 128};
  CHECK_THROWS_AS(build_grid_operators(grid, -0.125), DomainError);
  CHECK_THROWS_AS(build_grid_operators(grid, -0.2), DomainError);
  CHECK_NOTHROW(build_grid_operators(grid, -0.12));
  CHECK_THROWS_AS(build_grid_operators(RadialGrid{12.0, 32}, 0.0), DomainError);
  CHECK_THROWS_AS(build_grid_operators(RadialGrid{12.0, 128, OriginBoundary::reflecting}, 1.0), DomainError);
}

TEST_CASE("grid L-basis relations converge at second order") {
  double prev = 0.0;
  for (Eigen::Index n : {512, 1024, 2048}) {
    const RadialGrid grid{12.0, n};
    const auto ops = build_grid_operators(grid, 0.0);
    const auto r = su2_relation_residuals(ops, smooth_probe(grid));
    // [L+, L-] = 2 (i/2) L0 holds exactly for this discretization.
    CHECK(r.close < 1e-9);
    if (prev > 0.0) CHECK(prev / r.max() >= 3.5);
    prev = r.max();
  }
  // Same with the singular term switched on.
  const auto r1 = su2_relation_residuals(build_grid_operators(RadialGrid{12.0, 512}, 1.0), smooth_probe(RadialGrid{12.0, 512}));
  const auto r2 = su2_relation_residuals(build_grid_operators(RadialGrid{12.0, 1024}, 1.0), smooth_probe(RadialGrid{12.0, 1024}));
  CHECK(r1.max() / r2.max() >= 3.5);
}

TEST_CASE("rescaled grid basis") {
  const RadialGrid grid{12.0, 1200};
  const auto ops = build_grid_operators(grid, 0.0);
  const auto basis = k_basis_from_grid(ops, 1.0);
  CHECK(max_abs(basis.kplus.dense().transpose().cast<cplx>() - basis.kminus.dense().cast<cplx>()) == 0.0);
  CHECK(max_abs(basis.k0.dense().transpose().cast<cplx>() - basis.k0.dense().cast<cplx>()) == 0.0);

  // Odd oscillator levels 3/2, 7/2, 11/2 (2 K0 = H, spacing 2) on the Dirichlet half-line.
  const RealVector ev = symmetric_tridiagonal_eigenvalues(basis.k0);
  for (int n = 0; n < 3; ++n) CHECK(2.0 * ev[n] == doctest::Approx(1.5 + 2.0 * n).epsilon(1e-4));

  // Even levels 1/2, 5/2, 9/2 with the reflecting origin.
  const RadialGrid refl{12.0, 1200, OriginBoundary::reflecting};
  const auto even = k_basis_from_grid(build_grid_operators(refl, 0.0), 1.0);
  const RealVector ev_even = symmetric_tridiagonal_eigenvalues(even.k0);
  for (int n = 0; n < 3; ++n) CHECK(2.0 * ev_even[n] == doctest::Approx(0.5 + 2.0 * n).epsilon(1e-4));
}

TEST_CASE("lowest grid level with the singular term, dense eigensolve") {
  // c = 1: k0 = (1 + sqrt(1/4 + 2))/2 = 1.25, so 2 K0 has lowest eigenvalue 2.5.
  const RadialGrid grid{10.0, 400};
  const auto basis = k_basis_from_grid(build_grid_operators(grid, 1.0), 1.0);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(basis.k0.dense());
  CHECK(2.0 * es.eigenvalues()[0] == doctest::Approx(2.5).epsilon(2e-3));
  const RealVector tri = symmetric_tridiagonal_eigenvalues(basis.k0);
  CHECK(tri[0] == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-12));
}

TEST_CASE("grid casimir converges to -3/16 at c = 0") {
  const RadialGrid grid{12.0, 2048};
  const auto basis = k_basis_from_grid(build_grid_operators(grid, 0.0), 1.0);
  CHECK(std::abs(casimir_value(basis) + 0.1875) <= 1e-4);
  // c = 1 gives -(3 - 8)/16 = 5/16.
  const auto basis1 = k_basis_from_grid(build_grid_operators(grid, 1.0), 1.0);
  CHECK(std::abs(casimir_value(basis1) - 0.3125) <= 1e-3);
}

TEST_CASE("gamma basis diagnostic converges with the grid") {
  for (double c : {0.0, 1.0}) {
    std::vector<double> r;
    for (Eigen::Index n : {400, 800, 1600}) {
      const RadialGrid grid{12.0, n};
      r.push_back(gamma_basis_residual(build_grid_operators(grid, c)).max());
    }
    CHECK(std::isfinite(r[0]));
    // Richardson: successive differences shrink by about 4.
    CHECK(std::abs(r[1] - r[2]) < std::abs(r[0] - r[1]) / 3.0);
    MESSAGE("gamma residual c=" << c << ": " << r[2]);
  }
}
