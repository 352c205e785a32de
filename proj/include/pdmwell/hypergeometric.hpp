#pragma once

// Gauss hypergeometric 2F1(a, b; c; x) on [0, 1): power series for x <= 1/2,
// the 1 - x connection formulas above that (logarithmic variants when c - a - b
// is an integer), and the x -> 1 limit used by the quantization conditions.

#include <cmath>
#include <limits>

#include <boost/math/special_functions/digamma.hpp>

#include "pdmwell/error.hpp"

namespace pdmwell {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

/// 1 / Gamma(x), zero at the poles.
inline double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

struct Hypergeometric2F1Params {
  double a;
  double b;
  double c;

  Hypergeometric2F1Params(double a, double b, double c) : a(a), b(b), c(c) {
    if (is_nonpositive_integer(c)) throw InvalidParams("2F1: c must not be a non-positive integer");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
      throw InvalidParams("2F1: parameters must be finite");
  }

  bool is_polynomial() const { return is_nonpositive_integer(a) || is_nonpositive_integer(b); }
};

namespace detail {

inline constexpr int series_max_terms = 10'000;

/// Stops once three consecutive terms fall below 1e-16 of the largest partial sum.
class SeriesStop {
 public:
  bool done(double term, double sum) {
    scale_ = std::max(scale_, std::abs(sum));
    if (std::abs(term) < 1e-16 * scale_) {
      ++small_;
    } else {
      small_ = 0;
    }
    return small_ >= 3;
  }

 private:
  double scale_ = 0.0;
  int small_ = 0;
};

inline double f21_series(double a, double b, double c, double x) {
  double term = 1.0;
  double sum = 1.0;
  SeriesStop stop;
  for (int n = 0; n < series_max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    sum += term;
    if (term == 0.0 && (is_nonpositive_integer(a + n) || is_nonpositive_integer(b + n))) return sum;
    if (stop.done(term, sum)) return sum;
  }
  throw ConvergenceFailure("2F1 series did not converge");
}

inline double euler_gamma() { return 0.57721566490153286061; }

/// 2F1(a, b; a + b + m; x) for integer m >= 0 and w = 1 - x in (0, 1/2).
inline double f21_log_case(double a, double b, int m, double x) {
  using boost::math::digamma;
  const double w = 1.0 - x;
  const double lw = std::log(w);
  const double c = a + b + m;

  if (m == 0) {
    const double pre = std::tgamma(c) * rgamma(a) * rgamma(b);
    double coef = 1.0;  // (a)_n (b)_n / (n!)^2
    double psi_n1 = -euler_gamma();
    double psi_a = digamma(a);
    double psi_b = digamma(b);
    double wn = 1.0;
    double sum = 0.0;
    SeriesStop stop;
    for (int n = 0; n < series_max_terms; ++n) {
      const double term = coef * (2.0 * psi_n1 - psi_a - psi_b - lw) * wn;
      sum += term;
      if (n > 2 && stop.done(term, sum)) return pre * sum;
      coef *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0));
      psi_n1 += 1.0 / (n + 1.0);
      psi_a += 1.0 / (a + n);
      psi_b += 1.0 / (b + n);
      wn *= w;
    }
    throw ConvergenceFailure("2F1 logarithmic series did not converge");
  }

  // Finite part.
  double finite = 0.0;
  {
    double coef = 1.0;  // (a)_n (b)_n / (n! (1-m)_n)
    double wn = 1.0;
    for (int n = 0; n < m; ++n) {
      finite += coef * wn;
      coef *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n));
      wn *= w;
    }
    finite *= std::tgamma(static_cast<double>(m)) * std::tgamma(c) * rgamma(a + m) * rgamma(b + m);
  }

  const double pre = std::tgamma(c) * rgamma(a) * rgamma(b);
  if (pre == 0.0) return finite;

  double coef = 1.0 / std::tgamma(m + 1.0);  // (a+m)_n (b+m)_n / (n! (n+m)!)
  double psi_n1 = -euler_gamma();
  double psi_nm1 = digamma(m + 1.0);
  double psi_a = digamma(a + m);
  double psi_b = digamma(b + m);
  double wn = 1.0;
  double sum = 0.0;
  SeriesStop stop;
  for (int n = 0; n < series_max_terms; ++n) {
    const double term = coef * (lw - psi_n1 - psi_nm1 + psi_a + psi_b) * wn;
    sum += term;
    if (n > 2 && stop.done(term, sum)) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (x - 1)^m = (-w)^m
      return finite - sign * std::pow(w, m) * pre * sum;
    }
    coef *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0));
    psi_n1 += 1.0 / (n + 1.0);
    psi_nm1 += 1.0 / (n + m + 1.0);
    psi_a += 1.0 / (a + m + n);
    psi_b += 1.0 / (b + m + n);
    wn *= w;
  }
  throw ConvergenceFailure("2F1 logarithmic series did not converge");
}

}  // namespace detail

/// 2F1(a, b; c; xi) for 0 <= xi < 1 (any xi in [0, 1] for the polynomial case).
inline double gauss_2f1(const Hypergeometric2F1Params& p, double xi) {
  if (p.is_polynomial()) {
    if (!(xi >= 0.0 && xi <= 1.0)) throw InvalidParams("2F1: argument outside [0, 1]");
    return detail::f21_series(p.a, p.b, p.c, xi);
  }
  if (!(xi >= 0.0 && xi < 1.0)) throw InvalidParams("2F1: argument outside [0, 1)");
  if (xi <= 0.5) return detail::f21_series(p.a, p.b, p.c, xi);

  const double a = p.a;
  const double b = p.b;
  const double c = p.c;
  const double m = c - a - b;
  const double mi = std::round(m);
  if (std::abs(m - mi) < 1e-10) {
    if (mi >= 0.0) return detail::f21_log_case(a, b, static_cast<int>(mi), xi);
    // Euler: 2F1(a,b;c;x) = (1-x)^{c-a-b} 2F1(c-a, c-b; c; x).
    return std::pow(1.0 - xi, m) * gauss_2f1(Hypergeometric2F1Params(c - a, c - b, c), xi);
  }

  const double w = 1.0 - xi;
  const double gc = std::tgamma(c);
  double result = 0.0;
  const double A = gc * std::tgamma(m) * rgamma(c - a) * rgamma(c - b);
  if (A != 0.0) result += A * detail::f21_series(a, b, 1.0 - m, w);
  const double B = gc * std::tgamma(-m) * rgamma(a) * rgamma(b);
  if (B != 0.0) result += B * std::pow(w, m) * detail::f21_series(c - a, c - b, 1.0 + m, w);
  return result;
}

inline double gauss_2f1(double a, double b, double c, double xi) {
  return gauss_2f1(Hypergeometric2F1Params(a, b, c), xi);
}

/// lim_{xi -> 1^-} 2F1(a, b; c; xi) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).
inline double gauss_2f1_limit_at_1(const Hypergeometric2F1Params& p) {
  const double m = p.c - p.a - p.b;
  if (!(m > 0.0)) throw DivergentLimit("2F1 diverges at 1 unless c - a - b > 0");
  return std::tgamma(p.c) * std::tgamma(m) * rgamma(p.c - p.a) * rgamma(p.c - p.b);
}

}  // namespace pdmwell
