#include "singosc/special.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>

#include "singosc/errors.hpp"

namespace singosc::special {

std::vector<double> laguerre_sequence(int nmax, double a, double x) {
  if (nmax < 0) throw DomainError("laguerre_sequence: nmax must be >= 0");
  std::vector<double> l(static_cast<std::size_t>(nmax) + 1);
  l[0] = 1.0;
  if (nmax >= 1) l[1] = 1.0 + a - x;
  for (int n = 1; n < nmax; ++n) {
    const auto i = static_cast<std::size_t>(n);
    l[i + 1] = ((2.0 * n + 1.0 + a - x) * l[i] - (n + a) * l[i - 1]) / (n + 1.0);
  }
  return l;
}

double laguerre(int n, double a, double x) { return laguerre_sequence(n, a, x).back(); }

double bessel_j(double nu, double z) {
  if (!(z > 0.0)) throw DomainError("bessel_j: argument must be positive");
  return boost::math::cyl_bessel_j(nu, z);
}

double bessel_y(double nu, double z) {
  if (!(z > 0.0)) throw DomainError("bessel_y: argument must be positive");
  return boost::math::cyl_neumann(nu, z);
}

double log_ladder_norm(int n, double k0) {
  return std::lgamma(2.0 * k0) - std::lgamma(n + 1.0) - std::lgamma(n + 2.0 * k0);
}

}  // namespace singosc::special
