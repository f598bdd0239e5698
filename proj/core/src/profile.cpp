#include "singosc/profile.hpp"

// pchip.hpp in Boost 1.74 calls isnan unqualified; fpclassify provides it.
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>

#include <cmath>
#include <sstream>

#include "singosc/errors.hpp"

namespace singosc {

struct FrequencyProfile::Interpolant {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

FrequencyProfile FrequencyProfile::constant(double omega0) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("constant profile: omega0 must be positive");
  FrequencyProfile p;
  p.kind_ = Kind::constant;
  p.omega0_ = omega0;
  return p;
}

FrequencyProfile FrequencyProfile::power_law(double omega0, double alpha) {
  if (!(omega0 > 0.0)) throw DomainError("power_law profile: omega0 must be positive");
  if (!(alpha > -2.0)) throw DomainError("power_law profile: alpha must exceed -2");
  FrequencyProfile p;
  p.kind_ = Kind::power_law;
  p.omega0_ = omega0;
  p.alpha_ = alpha;
  return p;
}

FrequencyProfile FrequencyProfile::sampled(std::vector<double> times, std::vector<double> omega_sq) {
  if (times.size() != omega_sq.size()) throw DomainError("sampled profile: column lengths differ");
  if (times.size() < 4) throw DomainError("sampled profile: need at least 4 samples");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(omega_sq[i])) throw DomainError("sampled profile: non-finite entry");
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("sampled profile: times must increase strictly");
  }
  FrequencyProfile p;
  p.kind_ = Kind::sampled;
  p.times_ = times;
  p.values_ = omega_sq;
  p.omega0_ = std::sqrt(std::abs(omega_sq.front()));
  p.interp_ = std::make_shared<const Interpolant>(
      Interpolant{boost::math::interpolators::pchip<std::vector<double>>(std::move(times), std::move(omega_sq))});
  return p;
}

double FrequencyProfile::omega_sq(double t) const {
  switch (kind_) {
    case Kind::constant:
      return omega0_ * omega0_;
    case Kind::power_law:
      if (!(t > 0.0)) throw DomainError("power_law profile evaluated at t <= 0");
      return omega0_ * omega0_ * std::pow(t, alpha_);
    case Kind::sampled:
      if (t < times_.front() || t > times_.back()) throw DomainError("sampled profile evaluated outside its table");
      return interp_->spline(t);
  }
  return 0.0;
}

double FrequencyProfile::omega_sq_derivative(double t) const {
  switch (kind_) {
    case Kind::constant:
      return 0.0;
    case Kind::power_law:
      if (!(t > 0.0)) throw DomainError("power_law profile evaluated at t <= 0");
      return alpha_ * omega0_ * omega0_ * std::pow(t, alpha_ - 1.0);
    case Kind::sampled:
      if (t < times_.front() || t > times_.back()) throw DomainError("sampled profile evaluated outside its table");
      return interp_->spline.prime(t);
  }
  return 0.0;
}

void FrequencyProfile::check_span(double t0, double t1) const {
  if (!std::isfinite(t0) || !std::isfinite(t1)) throw DomainError("time span must be finite");
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  if (kind_ == Kind::power_law && !(lo > 0.0)) throw DomainError("power_law profile requires t > 0 on the span");
  if (kind_ == Kind::sampled && (lo < times_.front() || hi > times_.back())) {
    throw DomainError("span leaves the sampled profile table");
  }
}

std::string FrequencyProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::constant:
      os << "constant omega0=" << omega0_;
      break;
    case Kind::power_law:
      os << "power_law omega0=" << omega0_ << " alpha=" << alpha_;
      break;
    case Kind::sampled:
      os << "sampled n=" << times_.size() << " t=[" << times_.front() << ", " << times_.back() << "]";
      break;
  }
  return os.str();
}

}  // namespace singosc
