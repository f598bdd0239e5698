#pragma once

#include <memory>
#include <string>
#include <vector>

namespace singosc {

/// Squared frequency omega^2(t) driving the oscillator.
class FrequencyProfile {
 public:
  enum class Kind { constant, power_law, sampled };

  /// omega^2(t) = omega0^2.
  static FrequencyProfile constant(double omega0);
  /// omega^2(t) = omega0^2 t^alpha, defined for t > 0.
  static FrequencyProfile power_law(double omega0, double alpha);
  /// Table of (t, omega^2) with monotone cubic (PCHIP) interpolation.
  static FrequencyProfile sampled(std::vector<double> times, std::vector<double> omega_sq);

  Kind kind() const { return kind_; }
  double omega0() const { return omega0_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& sample_times() const { return times_; }
  const std::vector<double>& sample_values() const { return values_; }

  double omega_sq(double t) const;
  double omega_sq_derivative(double t) const;

  /// Throws DomainError unless omega^2 is defined on [t0, t1].
  void check_span(double t0, double t1) const;

  std::string describe() const;

 private:
  struct Interpolant;

  Kind kind_ = Kind::constant;
  double omega0_ = 1.0;
  double alpha_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
  std::shared_ptr<const Interpolant> interp_;
};

}  // namespace singosc
