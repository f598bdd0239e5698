#pragma once

#include <Eigen/Dense>

#include <complex>
#include <type_traits>
#include <cstddef>
#include <vector>

namespace singosc {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Tridiagonal matrix stored as three bands. `lower[i]` sits at (i+1, i),
/// `upper[i]` at (i, i+1).
template <typename Scalar>
struct Tridiagonal {
  std::vector<Scalar> lower;
  std::vector<Scalar> diag;
  std::vector<Scalar> upper;

  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t n)
      : lower(n > 0 ? n - 1 : 0, Scalar{}), diag(n, Scalar{}), upper(n > 0 ? n - 1 : 0, Scalar{}) {}

  std::size_t size() const { return diag.size(); }

  template <typename VecScalar>
  Eigen::Matrix<decltype(Scalar{} * VecScalar{}), Eigen::Dynamic, 1> apply(
      const Eigen::Matrix<VecScalar, Eigen::Dynamic, 1>& v) const {
    using Out = decltype(Scalar{} * VecScalar{});
    const std::size_t n = size();
    Eigen::Matrix<Out, Eigen::Dynamic, 1> out(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      Out acc = diag[i] * v[static_cast<Eigen::Index>(i)];
      if (i > 0) acc += lower[i - 1] * v[static_cast<Eigen::Index>(i - 1)];
      if (i + 1 < n) acc += upper[i] * v[static_cast<Eigen::Index>(i + 1)];
      out[static_cast<Eigen::Index>(i)] = acc;
    }
    return out;
  }

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, i) = diag[static_cast<std::size_t>(i)];
      if (i + 1 < n) {
        m(i + 1, i) = lower[static_cast<std::size_t>(i)];
        m(i, i + 1) = upper[static_cast<std::size_t>(i)];
      }
    }
    return m;
  }

  Tridiagonal adjoint() const {
    Tridiagonal t;
    t.diag.resize(diag.size());
    t.lower.resize(upper.size());
    t.upper.resize(lower.size());
    for (std::size_t i = 0; i < diag.size(); ++i) t.diag[i] = conj_scalar(diag[i]);
    for (std::size_t i = 0; i < lower.size(); ++i) {
      t.lower[i] = conj_scalar(upper[i]);
      t.upper[i] = conj_scalar(lower[i]);
    }
    return t;
  }

  Tridiagonal& operator+=(const Tridiagonal& o) {
    for (std::size_t i = 0; i < diag.size(); ++i) diag[i] += o.diag[i];
    for (std::size_t i = 0; i < lower.size(); ++i) {
      lower[i] += o.lower[i];
      upper[i] += o.upper[i];
    }
    return *this;
  }

  Tridiagonal& operator*=(Scalar s) {
    for (auto& x : diag) x *= s;
    for (auto& x : lower) x *= s;
    for (auto& x : upper) x *= s;
    return *this;
  }

 private:
  static Scalar conj_scalar(const Scalar& s) {
    if constexpr (std::is_same_v<Scalar, cplx>) {
      return std::conj(s);
    } else {
      return s;
    }
  }
};

using RealTridiagonal = Tridiagonal<double>;
using ComplexTridiagonal = Tridiagonal<cplx>;

template <typename Scalar>
Tridiagonal<Scalar> operator+(Tridiagonal<Scalar> a, const Tridiagonal<Scalar>& b) {
  a += b;
  return a;
}

template <typename Scalar>
Tridiagonal<Scalar> operator*(Scalar s, Tridiagonal<Scalar> a) {
  a *= s;
  return a;
}

ComplexTridiagonal to_complex(const RealTridiagonal& t);

/// Solves T x = rhs by the Thomas algorithm (no pivoting).
ComplexVector solve_tridiagonal(const ComplexTridiagonal& t, const ComplexVector& rhs);

/// exp(A) for a general complex matrix (Pade scaling-and-squaring).
ComplexMatrix expm(const ComplexMatrix& a);

/// exp(factor * H) for Hermitian H, via its eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, cplx factor);

/// exp(-i * tau * T) v for Hermitian tridiagonal T, by Chebyshev expansion.
/// Accurate to roughly machine precision.
ComplexVector expm_action_hermitian(const ComplexTridiagonal& t, double tau, const ComplexVector& v);

/// Leading n x n block.
ComplexMatrix leading_block(const ComplexMatrix& m, Eigen::Index n);

/// Spectral norm of the leading n x n block.
double leading_block_norm(const ComplexMatrix& m, Eigen::Index n);

/// ||U^dagger U - I|| restricted to the leading n x n block.
double unitarity_defect(const ComplexMatrix& u, Eigen::Index n);

/// All eigenvalues (ascending) of a real symmetric tridiagonal matrix.
RealVector symmetric_tridiagonal_eigenvalues(const RealTridiagonal& t);

/// Unit eigenvector for an (accurately known) eigenvalue, by inverse iteration.
RealVector symmetric_tridiagonal_eigenvector(const RealTridiagonal& t, double eigenvalue);

double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = 0.0);

}  // namespace singosc
