#pragma once

// Adaptive dopri5 stepping that lands exactly on requested output times and
// lets the caller inspect every accepted step.

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "singosc/errors.hpp"

namespace singosc::detail {

struct DriveStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

// Integrates sys from times.front() through every entry of `times` (which must
// be monotone in one direction). `record(x, k)` is called at times[k];
// `check(x, t)` after every accepted step and may throw.
template <typename State, typename System, typename Record, typename Check>
DriveStats drive(System&& sys, State x, const std::vector<double>& times, double tol, Record&& record,
                 Check&& check) {
  namespace odeint = boost::numeric::odeint;
  DriveStats stats;
  if (times.empty()) return stats;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(tol, tol);
  double t = times.front();
  record(x, std::size_t{0});
  const double total = std::abs(times.back() - times.front());
  const double dir = times.back() >= times.front() ? 1.0 : -1.0;
  double dt = dir * std::max(total * 1e-3, 1e-6);
  const double min_step = std::max(total, 1.0) * 1e-14;
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double target = times[k];
    while (dir * (target - t) > 0.0) {
      const double remaining = target - t;
      double h = dir * std::min(std::abs(dt), std::abs(remaining));
      const bool last = std::abs(h) == std::abs(remaining);
      const double h_try = h;
      const auto res = stepper.try_step(sys, x, t, h);
      if (res == odeint::fail) {
        ++stats.rejected;
        dt = h;
        if (std::abs(dt) < min_step) throw IntegratorError("adaptive integrator: step size underflow");
        continue;
      }
      ++stats.accepted;
      if (last) t = target;
      // Keep the suggested step unless we only shortened it to hit a target.
      if (!(last && std::abs(h_try) < std::abs(dt))) dt = h;
      check(x, t);
    }
    record(x, k);
  }
  return stats;
}

inline std::vector<double> uniform_times(double t0, double t1, std::size_t samples) {
  if (samples < 2) samples = 2;
  std::vector<double> ts(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    ts[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  ts.back() = t1;
  return ts;
}

}  // namespace singosc::detail
