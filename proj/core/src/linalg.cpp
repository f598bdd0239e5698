#include "singosc/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

#include "singosc/errors.hpp"

namespace singosc {

ComplexTridiagonal to_complex(const RealTridiagonal& t) {
  ComplexTridiagonal c;
  c.lower.assign(t.lower.begin(), t.lower.end());
  c.diag.assign(t.diag.begin(), t.diag.end());
  c.upper.assign(t.upper.begin(), t.upper.end());
  return c;
}

ComplexVector solve_tridiagonal(const ComplexTridiagonal& t, const ComplexVector& rhs) {
  const std::size_t n = t.size();
  if (static_cast<std::size_t>(rhs.size()) != n) throw DomainError("solve_tridiagonal: size mismatch");
  std::vector<cplx> c_prime(n);
  ComplexVector x(static_cast<Eigen::Index>(n));
  cplx denom = t.diag[0];
  if (std::abs(denom) == 0.0) throw Error("solve_tridiagonal: zero pivot");
  c_prime[0] = n > 1 ? t.upper[0] / denom : cplx{};
  x[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = t.diag[i] - t.lower[i - 1] * c_prime[i - 1];
    if (std::abs(denom) == 0.0) throw Error("solve_tridiagonal: zero pivot");
    if (i + 1 < n) c_prime[i] = t.upper[i] / denom;
    const auto ii = static_cast<Eigen::Index>(i);
    x[ii] = (rhs[ii] - t.lower[i - 1] * x[ii - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const auto ii = static_cast<Eigen::Index>(i);
    x[ii] -= c_prime[i] * x[ii + 1];
  }
  return x;
}

ComplexMatrix expm(const ComplexMatrix& a) { return a.exp(); }

ComplexMatrix expm_hermitian(const ComplexMatrix& h, cplx factor) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error("expm_hermitian: eigensolver failed");
  ComplexVector phases = (factor * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// J_0(x) ... J_{kmax}(x) by Miller's backward recurrence, normalized with
// J_0 + 2 sum J_{2k} = 1.
std::vector<double> bessel_j_sequence(double x, int kmax) {
  std::vector<double> j(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  const int start = kmax + 20 + static_cast<int>(std::sqrt(40.0 * kmax));
  double next = 0.0;
  double cur = 1e-300;
  double norm = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= kmax) j[static_cast<std::size_t>(k)] = cur;
    if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * cur;
    if (k == 0) break;
    const double prev = 2.0 * k / x * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      const double s = 1e-250;
      cur *= s;
      next *= s;
      norm *= s;
      for (int m = k; m <= std::min(kmax, start); ++m) j[static_cast<std::size_t>(m)] *= s;
    }
  }
  for (auto& v : j) v /= norm;
  return j;
}

}  // namespace

ComplexVector expm_action_hermitian(const ComplexTridiagonal& t, double tau, const ComplexVector& v) {
  if (tau == 0.0) return v;
  const std::size_t n = t.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.lower[i - 1]);
    if (i + 1 < n) radius += std::abs(t.upper[i]);
    lo = std::min(lo, t.diag[i].real() - radius);
    hi = std::max(hi, t.diag[i].real() + radius);
  }
  const double center = 0.5 * (hi + lo);
  const double half_width = std::max(0.5 * (hi - lo), 1e-300) * (1.0 + 1e-12);
  const double x = std::abs(tau) * half_width;
  const int kmax = static_cast<int>(x + 10.0 * std::cbrt(x) + 30.0);
  const auto bessel = bessel_j_sequence(x, kmax);

  auto scaled_apply = [&](const ComplexVector& w) -> ComplexVector {
    return (t.apply(w) - center * w) / half_width;
  };

  // exp(-i s y) = J0(s) + 2 sum (-i)^k J_k(s) T_k(y), with s = |tau| r;
  // negative tau is conjugate phases, i.e. (+i)^k.
  const cplx unit = tau > 0 ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
  ComplexVector w_prev = v;
  ComplexVector w_cur = scaled_apply(v);
  ComplexVector result = bessel[0] * v + 2.0 * unit * bessel[1] * w_cur;
  cplx coef = unit;
  for (int k = 2; k <= kmax; ++k) {
    ComplexVector w_next = 2.0 * scaled_apply(w_cur) - w_prev;
    coef *= unit;
    result += 2.0 * coef * bessel[static_cast<std::size_t>(k)] * w_next;
    w_prev = std::move(w_cur);
    w_cur = std::move(w_next);
  }
  return std::exp(cplx{0.0, -tau * center}) * result;
}

ComplexMatrix leading_block(const ComplexMatrix& m, Eigen::Index n) {
  n = std::min({n, m.rows(), m.cols()});
  return m.topLeftCorner(n, n);
}

double leading_block_norm(const ComplexMatrix& m, Eigen::Index n) {
  const ComplexMatrix block = leading_block(m, n);
  if (block.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(block);
  return svd.singularValues()(0);
}

double unitarity_defect(const ComplexMatrix& u, Eigen::Index n) {
  const ComplexMatrix gram = u.adjoint() * u;
  return leading_block_norm(gram - ComplexMatrix::Identity(u.cols(), u.cols()), n);
}

RealVector symmetric_tridiagonal_eigenvalues(const RealTridiagonal& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  RealVector diag = Eigen::Map<const RealVector>(t.diag.data(), n);
  RealVector sub = Eigen::Map<const RealVector>(t.lower.data(), n - 1);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("symmetric_tridiagonal_eigenvalues: no convergence");
  return es.eigenvalues();
}

RealVector symmetric_tridiagonal_eigenvector(const RealTridiagonal& t, double eigenvalue) {
  const std::size_t n = t.size();
  ComplexTridiagonal shifted = to_complex(t);
  const double scale = std::max(1.0, std::abs(eigenvalue));
  const double shift = eigenvalue - 1e-10 * scale;
  for (auto& d : shifted.diag) d -= shift;
  ComplexVector v = ComplexVector::Ones(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v[static_cast<Eigen::Index>(i)] += 1e-3 * std::sin(0.37 * static_cast<double>(i));
  v.normalize();
  for (int iter = 0; iter < 4; ++iter) {
    v = solve_tridiagonal(shifted, v);
    v.normalize();
  }
  RealVector out = v.real();
  // Fix the sign so the largest-magnitude component is positive.
  Eigen::Index imax = 0;
  out.cwiseAbs().maxCoeff(&imax);
  if (out[imax] < 0.0) out = -out;
  return out / out.norm();
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

}  // namespace singosc
