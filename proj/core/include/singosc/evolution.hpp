#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "singosc/algebra.hpp"
#include "singosc/invariant.hpp"
#include "singosc/linalg.hpp"
#include "singosc/profile.hpp"

namespace singosc {

/// Disentangling coordinates of U = exp(i l+ L+) exp(l0 M) exp(i l- L-),
/// M = (i/2) L0. For this Hamiltonian all three are real.
struct WeiNormanL {
  std::vector<double> times;
  std::vector<cplx> lplus;
  std::vector<cplx> l0;
  std::vector<cplx> lminus;
  std::size_t steps = 0;
};

/// Solves l+' + l+^2 + omega^2 = 0, l0' + 2 l+ = 0, l-' + exp(l0) = 0 with
/// zero initial values through x'' + omega^2 x = 0, x(t0) = 1, x'(t0) = 0:
/// l+ = x'/x, l0 = -2 ln x, l- = -int dt / x^2. Throws
/// CoordinateSingularityError at a zero of x.
WeiNormanL integrate_wei_norman_L(const FrequencyProfile& profile, double t0, double t1, double tol,
                                  std::size_t samples = 101);

/// Applies exp(i l+ L+) exp(l0 M) exp(i l- L-) to a grid state, using sample
/// `index` of `wn`.
ComplexVector apply_wei_norman_L(const GridOperators& ops, const WeiNormanL& wn, std::size_t index,
                                 const ComplexVector& psi);

/// Disentangling coordinates of U = exp(i k+ K+) exp(k0 K0) exp(i k- K-) in
/// the rescaled basis at frequency omega0.
struct WeiNormanK {
  double omega0 = 1.0;
  std::vector<double> times;
  std::vector<cplx> kplus;
  std::vector<cplx> k0;
  std::vector<cplx> kminus;
  std::size_t steps = 0;

  /// Index of the sample at time t (exact match up to rounding).
  std::size_t index_of(double t) const;
};

enum class KRoute {
  /// k+ = -(2/b) y'/y with y'' + (i a - b'/b) y' - (b^2/4) y = 0.
  linearized,
  /// Direct integration of the Riccati system; valid through b = 0.
  riccati,
};

/// With H = a K0 + b (K+ + K-)/2, a = omega0 + omega^2/omega0,
/// b = omega^2/omega0 - omega0:
///   k+' = (b/2)(k+^2 - 1) - i a k+,  k0' = b k+ - i a,  k-' = -(b/2) exp(k0).
/// The linearized route throws DegenerateCoefficientError where
/// |omega^2 - omega0^2| < 1e-6 omega0^2.
WeiNormanK integrate_wei_norman_K(const FrequencyProfile& profile, double omega0, double t0, double t1, double tol,
                                  KRoute route = KRoute::linearized, std::size_t samples = 101);

/// (omega0 + omega^2/omega0) K0 + (omega^2/omega0 - omega0)(K+ + K-)/2.
ComplexMatrix hamiltonian_in_rep(const DiscreteSeriesRep& rep, double omega_sq, double omega0);

/// exp(x K+) (raising) or exp(x K-) evaluated entrywise from the closed form
/// of the powers of the ladder operators. Exact in any truncation.
ComplexMatrix ladder_exponential(const DiscreteSeriesRep& rep, cplx x, bool raising);

/// exp(i k+ K+) exp(k0 K0) exp(i k- K-) at time t. Throws RangeError if
/// exp(k0 K0) overflows.
ComplexMatrix assemble_U_K(const DiscreteSeriesRep& rep, const WeiNormanK& wn, double t);
ComplexMatrix assemble_U_K(const DiscreteSeriesRep& rep, cplx kplus, cplx k0, cplx kminus);

struct DirectEvolutionResult {
  ComplexMatrix u;
  std::size_t steps = 0;
  double error_estimate = 0.0;
};

/// Integrates i dU/dt = H(t) U with a fourth-order commutator-free Magnus
/// stepper (two Hermitian exponentials per step), doubling the step count
/// until successive results differ by at most tol on the leading block of
/// half the dimension.
DirectEvolutionResult direct_evolution_run(const DiscreteSeriesRep& rep, const FrequencyProfile& profile,
                                           double omega0, double t0, double t1, double tol);
ComplexMatrix direct_evolution(const DiscreteSeriesRep& rep, const FrequencyProfile& profile, double omega0,
                               double t0, double t1, double tol);

/// Evolution operator by the K-route: linearized where possible, the Riccati
/// system where omega^2 touches omega0^2. Direct integration is the fallback
/// when the disentangled factors overflow, the coefficients diverge, or the
/// assembled matrix loses unitarity on its leading N/4 block by more than
/// 1e-6. The K-route entries are exact in any truncation but are sums of
/// large cancelling terms once |k-| grows past one, which is what the
/// unitarity check catches.
ComplexMatrix evolution_operator(const DiscreteSeriesRep& rep, const FrequencyProfile& profile, double omega0,
                                 double t0, double t1, double tol);

/// K_{c,0} = u0 K0 + u+ K+ + u- K-, K_{c,+} = nu0 K0 + nu+ K+ + nu- K-.
struct SqueezeCoefficients {
  double u0 = 1.0;
  cplx uplus;
  cplx uminus;
  cplx nu0;
  cplx nuplus;
  cplx numinus;
  /// max |nu_closed - nu| of closed_form_nu_coefficients against the
  /// conjugation route (reported, not asserted).
  double closed_form_nu_residual = 0.0;
};

/// u0 = (g- + g+/omega0^2)/2, u+ = (g+/omega0^2 - g-)/4 + i g0/(2 omega0),
/// u- = conj(u+), i.e. I/(2 omega0) in the K-basis. The nu-coefficients come
/// from S^dagger K+ S with S built from the u's.
SqueezeCoefficients squeeze_coefficients(const GTriple& g, double omega0);

/// (nu0, nu+, nu-) written directly in terms of g. Agrees with the
/// conjugation route only for special triples; kept for comparison.
std::array<cplx, 3> closed_form_nu_coefficients(const GTriple& g, double omega0);

struct SqueezeParameter {
  cplx xi;
  double r() const { return std::abs(xi); }
  double phase() const { return std::arg(xi); }
};

/// |xi| = atanh(2|u+|/u0)/2, arg xi = arg u+. DomainError if 2|u+| >= u0.
SqueezeParameter squeeze_parameter(double u0, cplx uplus);

/// exp(xi K+ - conj(xi) K-) by Hermitian eigendecomposition.
ComplexMatrix squeeze_operator(const DiscreteSeriesRep& rep, cplx xi);

/// exp(z K+) exp(ln(1 - |z|^2) K0) exp(-conj(z) K-) with z = e^{i arg xi}
/// tanh|xi|; the same operator in normal-ordered form.
ComplexMatrix squeeze_disentangled(const DiscreteSeriesRep& rep, cplx xi);

/// Matrix coefficients (c0, c+, c-) of X ~ c0 K0 + c+ K+ + c- K- read off
/// the (0,0), (1,0) and (0,1) entries.
std::array<cplx, 3> k_basis_coefficients(const DiscreteSeriesRep& rep, const ComplexMatrix& x);

}  // namespace singosc
