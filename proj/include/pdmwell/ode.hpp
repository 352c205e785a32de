#pragma once

// Thin driver around Boost.Odeint's controlled Runge-Kutta-Fehlberg 7(8) stepper.
// The step loop is ours so that step-size underflow and step budgets surface as
// ContinuationFailure instead of hanging.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <boost/numeric/odeint.hpp>

#include "pdmwell/error.hpp"

namespace pdmwell::ode {

struct Tolerance {
  double abs = 1e-13;
  double rel = 1e-12;
};

struct DriverOptions {
  Tolerance tol{};
  double initial_step = 1e-3;
  double max_step = 2e-2;
  std::size_t max_steps = 2'000'000;
};

/// Stateful adaptive driver: keeps the stepper and the last accepted step size
/// between calls so that a trajectory can be advanced point by point.
template <std::size_t N>
class Driver {
 public:
  using State = std::array<double, N>;

  explicit Driver(const DriverOptions& opt = {}) : opt_(opt), dt_(opt.initial_step) {}

  /// Advances y from t to t1 (either direction), calling observer(y, t) after
  /// every accepted step. The observer may rescale y (the problem must be
  /// linear for that to make sense). On return t == t1.
  template <class Rhs, class Observer>
  void advance(Rhs&& rhs, State& y, double& t, double t1, Observer&& observer) {
    namespace odeint = boost::numeric::odeint;
    if (t == t1) return;
    const double dir = t1 > t ? 1.0 : -1.0;
    // odeint compares the step limit with the sign of dt, so each direction needs its own stepper.
    if (!stepper_ || dir != dir_) {
      stepper_.emplace(odeint::make_controlled(opt_.tol.abs, opt_.tol.rel, dir * opt_.max_step,
                                               odeint::runge_kutta_fehlberg78<State>()));
      dir_ = dir;
    }
    auto system = [&rhs](const State& s, State& ds, double tt) { rhs(s, ds, tt); };
    double dt = dir * std::min(std::abs(dt_), std::abs(t1 - t));
    while (dir * (t1 - t) > 0.0) {
      if (dir * (t + dt - t1) > 0.0) dt = t1 - t;
      const double t_prev = t;
      const auto result = stepper_->try_step(system, y, t, dt);
      if (++attempts_ > opt_.max_steps) throw ContinuationFailure("ODE step budget exhausted", t);
      if (result == odeint::fail) {
        if (std::abs(dt) < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
          throw ContinuationFailure("ODE step size underflow", t_prev);
        continue;
      }
      for (double v : y)
        if (!std::isfinite(v)) throw ContinuationFailure("ODE state is not finite", t_prev);
      ++accepted_;
      // Snap to the target when the remaining gap is pure rounding.
      if (std::abs(t1 - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t1)))
        t = t1;
      if (dir * (t1 - t) > 0.0) dt_ = dt;
      observer(y, t);
    }
  }

  template <class Rhs>
  void advance(Rhs&& rhs, State& y, double& t, double t1) {
    advance(std::forward<Rhs>(rhs), y, t, t1, [](const State&, double) {});
  }

  std::size_t accepted_steps() const { return accepted_; }

 private:
  using Controlled = decltype(boost::numeric::odeint::make_controlled(
      0.0, 0.0, 0.0, boost::numeric::odeint::runge_kutta_fehlberg78<State>()));

  DriverOptions opt_;
  std::optional<Controlled> stepper_;
  double dir_ = 0.0;
  double dt_;
  std::size_t accepted_ = 0;
  std::size_t attempts_ = 0;
};

/// Integrates y' = rhs(y, t) from t0 to t1 (either direction). `observer(y, t)`
/// is called after every accepted step, including the final one.
/// Returns the number of accepted steps.
template <std::size_t N, class Rhs, class Observer>
std::size_t integrate(Rhs&& rhs, std::array<double, N>& y, double t0, double t1,
                      const DriverOptions& opt, Observer&& observer) {
  Driver<N> driver(opt);
  double t = t0;
  driver.advance(std::forward<Rhs>(rhs), y, t, t1, std::forward<Observer>(observer));
  return driver.accepted_steps();
}

template <std::size_t N, class Rhs>
std::size_t integrate(Rhs&& rhs, std::array<double, N>& y, double t0, double t1,
                      const DriverOptions& opt) {
  return integrate(std::forward<Rhs>(rhs), y, t0, t1, opt, [](const auto&, double) {});
}

}  // namespace pdmwell::ode
