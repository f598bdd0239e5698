#pragma once

#include <vector>

namespace singosc::special {

// Generalized Laguerre polynomials L_0^{(a)}(x) ... L_{nmax}^{(a)}(x) by the
// three-term recurrence. Real a > -1.
std::vector<double> laguerre_sequence(int nmax, double a, double x);

double laguerre(int n, double a, double x);

// Bessel functions of real order (negative orders allowed) for z > 0.
double bessel_j(double nu, double z);
double bessel_y(double nu, double z);

// log(Gamma(2k0) / (n! Gamma(n + 2k0))), the squared-norm factor that turns
// (K_+)^n |0> into |n>.
double log_ladder_norm(int n, double k0);

}  // namespace singosc::special
