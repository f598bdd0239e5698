#include <doctest.h>

#include <cmath>

#include "singosc/linalg.hpp"
#include "singosc/special.hpp"

using namespace singosc;

TEST_CASE("thomas solve matches dense solve") {
  ComplexTridiagonal t(6);
  for (std::size_t i = 0; i < 6; ++i) {
    t.diag[i] = cplx{4.0 + i, 0.5};
    if (i < 5) {
      t.lower[i] = cplx{-1.0, 0.2 * i};
      t.upper[i] = cplx{0.7, -0.1};
    }
  }
  ComplexVector rhs(6);
  rhs << 1, 2, cplx(0, 1), 4, -1, 0.5;
  const ComplexVector x = solve_tridiagonal(t, rhs);
  const ComplexVector ref = t.dense().partialPivLu().solve(rhs);
  CHECK((x - ref).norm() < 1e-13);
}

TEST_CASE("chebyshev exponential action agrees with dense exponential") {
  RealTridiagonal t(40);
  for (std::size_t i = 0; i < 40; ++i) {
    t.diag[i] = 0.3 * i + std::sin(1.0 * i);
    if (i < 39) t.lower[i] = t.upper[i] = -1.5 + 0.01 * i;
  }
  const ComplexTridiagonal tc = to_complex(t);
  ComplexVector v = ComplexVector::Zero(40);
  v[3] = 1.0;
  v[10] = cplx(0.0, 2.0);
  for (double tau : {0.37, -2.5, 11.0}) {
    const ComplexVector got = expm_action_hermitian(tc, tau, v);
    const ComplexVector ref = expm_hermitian(tc.dense(), cplx(0.0, -tau)) * v;
    CHECK((got - ref).norm() < 1e-11);
  }
}

TEST_CASE("pade and eigen paths of the exponential agree on a Hermitian generator") {
  ComplexMatrix h = ComplexMatrix::Random(8, 8);
  h = (h + h.adjoint()).eval();
  const ComplexMatrix a = expm(cplx(0.0, -0.8) * h);
  const ComplexMatrix b = expm_hermitian(h, cplx(0.0, -0.8));
  CHECK(max_abs(a - b) < 1e-12);
  CHECK(unitarity_defect(a, 8) < 1e-12);
}

TEST_CASE("tridiagonal eigenpairs") {
  RealTridiagonal t(50);
  for (std::size_t i = 0; i < 50; ++i) {
    t.diag[i] = 2.0;
    if (i < 49) t.lower[i] = t.upper[i] = -1.0;
  }
  const RealVector ev = symmetric_tridiagonal_eigenvalues(t);
  // Eigenvalues of the 1D Dirichlet Laplacian: 2 - 2 cos(k pi/(n+1)).
  for (int k = 1; k <= 50; ++k) {
    CHECK(ev[k - 1] == doctest::Approx(2.0 - 2.0 * std::cos(k * M_PI / 51.0)).epsilon(1e-12));
  }
  const RealVector v = symmetric_tridiagonal_eigenvector(t, ev[0]);
  const ComplexVector vc = v.cast<cplx>();
  const ComplexVector r = t.apply(vc) - ev[0] * vc;
  CHECK(r.norm() < 1e-10);
}

TEST_CASE("laguerre recurrence against closed forms") {
  const double a = 0.5;
  const double x = 1.7;
  const auto l = special::laguerre_sequence(3, a, x);
  CHECK(l[0] == doctest::Approx(1.0));
  CHECK(l[1] == doctest::Approx(1.0 + a - x));
  CHECK(l[2] == doctest::Approx(0.5 * (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0))));
  CHECK(l[3] == doctest::Approx((-x * x * x + 3.0 * (a + 3.0) * x * x - 3.0 * (a + 2.0) * (a + 3.0) * x +
                                 (a + 1.0) * (a + 2.0) * (a + 3.0)) /
                                6.0));
}

TEST_CASE("half-order bessel identities") {
  for (double z : {0.3, 1.0, 4.5}) {
    const double j = special::bessel_j(0.5, z);
    const double y = special::bessel_y(0.5, z);
    CHECK(j * j + y * y == doctest::Approx(2.0 / (M_PI * z)).epsilon(1e-13));
    // Negative order through reflection: J_{-1/2}(z) = sqrt(2/(pi z)) cos z.
    CHECK(special::bessel_j(-0.5, z) == doctest::Approx(std::sqrt(2.0 / (M_PI * z)) * std::cos(z)).epsilon(1e-13));
  }
}
