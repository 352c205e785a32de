#pragma once

// Local Frobenius solutions of the confluent and general Heun equations.
//
// Confluent Heun, argument order (alpha, beta, gamma, delta, eta):
//   H'' + (alpha + (beta+1)/xi + (gamma+1)/(xi-1)) H'
//       + (mu/xi + nu/(xi-1)) H = 0,
//   mu = (alpha - beta - gamma + alpha beta - beta gamma)/2 - eta,
//   nu = (alpha + beta + gamma + alpha gamma + beta gamma)/2 + delta + eta,
// with Hc(...; 0) = 1. The second local solution is xi^{-beta} Hc(alpha, -beta, ...).
//
// General Heun, Hg(a, q; alpha, beta, gamma, delta; t):
//   H'' + (gamma/t + delta/(t-1) + eps/(t-a)) H' + (alpha beta t - q)/(t (t-1) (t-a)) H = 0,
//   alpha + beta + 1 = gamma + delta + eps.

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

#include "pdmwell/error.hpp"
#include "pdmwell/hypergeometric.hpp"
#include "pdmwell/ode.hpp"

namespace pdmwell {

template <class T>
concept HeunScalar = std::is_same_v<T, double> || std::is_same_v<T, std::complex<double>>;

template <HeunScalar T>
struct ConfluentHeunParams {
  T alpha;
  T beta;
  T gamma;
  T delta;
  T eta;

  ConfluentHeunParams(T alpha, T beta, T gamma, T delta, T eta)
      : alpha(alpha), beta(beta), gamma(gamma), delta(delta), eta(eta) {
    const std::complex<double> b(beta);
    if (b.imag() == 0.0 && b.real() < 0.0 && b.real() == std::floor(b.real()))
      throw InvalidParams("Hc: beta must not be a negative integer");
    for (std::complex<double> v : {std::complex<double>(alpha), b, std::complex<double>(gamma),
                                   std::complex<double>(delta), std::complex<double>(eta)})
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw InvalidParams("Hc: parameters must be finite");
  }

  T mu() const { return 0.5 * (alpha - beta - gamma + alpha * beta - beta * gamma) - eta; }
  T nu() const { return 0.5 * (alpha + beta + gamma + alpha * gamma + beta * gamma) + delta + eta; }

  /// Coefficients P, Q of H'' + P H' + Q H = 0 at xi.
  std::pair<T, T> coefficients(double xi) const {
    const T p = alpha + (beta + 1.0) / xi + (gamma + 1.0) / (xi - 1.0);
    const T q = mu() / xi + nu() / (xi - 1.0);
    return {p, q};
  }
};

template <HeunScalar T>
struct HeunValue {
  T value;
  T derivative;
};

/// Frobenius series of Hc about xi = 0: value, first and second derivative,
/// each summed term by term. Valid for |xi| < 1 (distance to the other regular
/// singularity).
template <HeunScalar T>
std::array<T, 3> heun_c_series_jet(const ConfluentHeunParams<T>& p, double xi) {
  if (!(std::abs(xi) < 1.0)) throw OutOfRadius("Hc series requires |xi| < 1");
  const T mu = p.mu();
  const T nu = p.nu();
  const T s = p.beta + p.gamma + 1.0 - p.alpha;

  T c_prev = 0.0;
  T c = 1.0;
  T value = 1.0;
  T deriv = 0.0;
  T second = 0.0;
  double xn1 = 0.0;  // xi^(n-1)
  double xn = 1.0;   // xi^n
  double scale = 1.0;
  int small = 0;
  for (int n = 0; n < detail::series_max_terms; ++n) {
    const double nd = n;
    const T num = (nd * (nd + s) - mu) * c + (p.alpha * (nd - 1.0) + mu + nu) * c_prev;
    const T c_next = num / ((nd + 1.0) * (nd + 1.0 + p.beta));
    const T d2term = (nd + 1.0) * nd * c_next * xn1;  // second derivative of c_{n+1} xi^{n+1}
    const T dterm = (nd + 1.0) * c_next * xn;
    xn1 = xn;
    xn *= xi;
    const T term = c_next * xn;
    value += term;
    deriv += dterm;
    second += d2term;
    scale = std::max({scale, std::abs(value), std::abs(deriv), std::abs(second)});
    if (std::abs(term) < 1e-16 * scale && std::abs(dterm) < 1e-16 * scale && std::abs(d2term) < 1e-16 * scale) {
      if (++small >= 3) return {value, deriv, second};
    } else {
      small = 0;
    }
    c_prev = c;
    c = c_next;
  }
  throw ConvergenceFailure("Hc series did not converge");
}

template <HeunScalar T>
HeunValue<T> heun_c_series_with_derivative(const ConfluentHeunParams<T>& p, double xi) {
  const auto j = heun_c_series_jet(p, xi);
  return {j[0], j[1]};
}

template <HeunScalar T>
T heun_c_series(const ConfluentHeunParams<T>& p, double xi) {
  return heun_c_series_with_derivative(p, xi).value;
}

/// Hc and its derivative at any xi in [0, 1): the series up to xi = 1/2, then
/// adaptive integration of the defining ODE. `tol` bounds the relative error.
template <HeunScalar T>
HeunValue<T> heun_c_continue(const ConfluentHeunParams<T>& p, double xi_target, double tol = 1e-10) {
  if (!(xi_target >= 0.0 && xi_target < 1.0))
    throw OutOfRadius("Hc continuation requires 0 <= xi < 1");
  constexpr double match = 0.5;
  const auto start = heun_c_series_with_derivative(p, std::min(xi_target, match));
  if (xi_target <= match) return start;

  ode::DriverOptions opt;
  const double scale = std::max(1.0, std::abs(start.value));
  opt.tol = {1e-2 * tol * scale, 1e-2 * tol};
  opt.initial_step = 1e-3;
  opt.max_step = 1e-2;

  if constexpr (std::is_same_v<T, double>) {
    std::array<double, 2> y{start.value, start.derivative};
    ode::integrate(
        [&p](const std::array<double, 2>& s, std::array<double, 2>& ds, double xi) {
          const auto [P, Q] = p.coefficients(xi);
          ds[0] = s[1];
          ds[1] = -P * s[1] - Q * s[0];
        },
        y, match, xi_target, opt);
    return {y[0], y[1]};
  } else {
    std::array<double, 4> y{start.value.real(), start.value.imag(), start.derivative.real(),
                            start.derivative.imag()};
    ode::integrate(
        [&p](const std::array<double, 4>& s, std::array<double, 4>& ds, double xi) {
          const auto [P, Q] = p.coefficients(xi);
          const T h(s[0], s[1]);
          const T dh(s[2], s[3]);
          const T d2h = -P * dh - Q * h;
          ds[0] = s[2];
          ds[1] = s[3];
          ds[2] = d2h.real();
          ds[3] = d2h.imag();
        },
        y, match, xi_target, opt);
    return {T(y[0], y[1]), T(y[2], y[3])};
  }
}

struct GeneralHeunParams {
  double d_sing;
  double q_acc;
  double alpha;
  double beta;
  double gamma;
  double delta;
  double epsilon;

  GeneralHeunParams(double d_sing, double q_acc, double alpha, double beta, double gamma,
                    double delta, double epsilon)
      : d_sing(d_sing), q_acc(q_acc), alpha(alpha), beta(beta), gamma(gamma), delta(delta),
        epsilon(epsilon) {
    if (std::abs(alpha + beta + 1.0 - (gamma + delta + epsilon)) > 1e-12)
      throw InvalidParams("general Heun: fuchsian relation alpha + beta + 1 = gamma + delta + eps violated");
    if (d_sing == 0.0 || d_sing == 1.0) throw InvalidParams("general Heun: singularity must differ from 0 and 1");
  }
};

enum class HeunPoint { zero, one };

namespace detail {

/// Hg(a, q; alpha, beta, gamma, delta; t) about t = 0, exponent 0.
inline double heun_g_series(double a, double q, double alpha, double beta, double gamma,
                            double delta, double t) {
  if (is_nonpositive_integer(gamma)) throw InvalidParams("general Heun: gamma is a non-positive integer");
  if (!(std::abs(t) < std::min(1.0, std::abs(a)))) throw OutOfRadius("general Heun series out of radius");
  const double eps = alpha + beta + 1.0 - gamma - delta;
  double c_prev = 1.0;
  double c = q / (a * gamma);
  double tn = t;
  double sum = 1.0 + c * t;
  SeriesStop stop;
  for (int j = 1; j < series_max_terms; ++j) {
    const double jd = j;
    const double Q = jd * ((jd - 1.0 + gamma) * (1.0 + a) + a * delta + eps);
    const double P = (jd - 1.0 + alpha) * (jd - 1.0 + beta);
    const double c_next = ((Q + q) * c - P * c_prev) / (a * (jd + 1.0) * (jd + gamma));
    tn *= t;
    const double term = c_next * tn;
    sum += term;
    if (stop.done(term, sum)) return sum;
    c_prev = c;
    c = c_next;
  }
  throw ConvergenceFailure("general Heun series did not converge");
}

}  // namespace detail

/// Exponent-0 local solution about y = 0 (t = y) or y = 1 (t = 1 - y), normalized to 1.
inline double heun_general_local(const GeneralHeunParams& p, HeunPoint around, double t) {
  if (around == HeunPoint::zero)
    return detail::heun_g_series(p.d_sing, p.q_acc, p.alpha, p.beta, p.gamma, p.delta, t);
  return detail::heun_g_series(1.0 - p.d_sing, p.alpha * p.beta - p.q_acc, p.alpha, p.beta, p.delta,
                               p.gamma, t);
}

}  // namespace pdmwell
