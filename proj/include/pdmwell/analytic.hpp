#pragma once

// Closed-form spectra and eigenfunctions for the exactly solvable members:
// (0,0), (-2,0), the (2,0) member at depth 3/4, and the Heun forms quoted for
// (0,2), (2,4) and (1,1) (evaluated at an externally quantized energy).

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "pdmwell/error.hpp"
#include "pdmwell/heun.hpp"
#include "pdmwell/hypergeometric.hpp"
#include "pdmwell/model.hpp"
#include "pdmwell/transforms.hpp"

namespace pdmwell::analytic {

/// Ecal_n = n(n+1), n = 1..n_max. Odd n are even states, even n are odd states.
inline std::vector<Eigenpair> spectrum_00(int n_max) {
  if (n_max < 1) throw InvalidParams("spectrum_00: n_max must be >= 1");
  std::vector<Eigenpair> out;
  out.reserve(n_max);
  for (int n = 1; n <= n_max; ++n)
    out.push_back({n - 1, n % 2 == 1 ? Parity::even : Parity::odd, double(n) * (n + 1.0),
                   Provenance::analytic, 0.0});
  return out;
}

/// Unnormalized (0,0) eigenfunction with quantum number n >= 1.
inline double eigenfunction_00(int n, double x) {
  if (n < 1) throw InvalidParams("eigenfunction_00: n must be >= 1");
  const double t = std::tanh(x);
  if (n % 2 == 1) return gauss_2f1(0.5 * n, -0.5 * (n + 1), 0.5, t * t);
  return t * gauss_2f1(0.5 * (n + 1), -0.5 * n, 1.5, t * t);
}

/// Exponents and hypergeometric parameters of the accepted (-2,0) branch.
struct BranchParams {
  double vcal0;
  double ecal;
  double mu;
  double nu;
  double a;
  double b;
  double c;
};

/// mu = 1/2 + sqrt(1 - 4 Vcal0)/2, nu = 3/2, and a, b, c at energy `ecal`.
inline BranchParams m20_branch(double vcal0, double ecal) {
  if (vcal0 > 0.25) throw InvalidParams("(-2,0) branch requires Vcal0 <= 1/4");
  const double mu = 0.5 + 0.5 * std::sqrt(1.0 - 4.0 * vcal0);
  const double nu = 1.5;
  const double disc = ecal + 0.25 - vcal0;
  if (disc < 0.0) throw InvalidParams("(-2,0) branch: energy below the real-parameter range");
  const double r = 0.5 * std::sqrt(disc);
  return {vcal0, ecal, mu, nu, 0.5 * (mu + nu) - r, 0.5 * (mu + nu) + r, mu + 0.5};
}

/// Ecal_n = 4(n+1)((n+1) + sqrt(1/4 - Vcal0)), n = 0..n_max.
inline std::vector<Eigenpair> spectrum_m20(double vcal0, int n_max) {
  if (vcal0 > 0.25) throw ComplexSpectrum("(-2,0) spectrum is real only for Vcal0 <= 1/4");
  if (n_max < 0) throw InvalidParams("spectrum_m20: n_max must be >= 0");
  const double s = std::sqrt(0.25 - vcal0);
  std::vector<Eigenpair> out;
  for (int n = 0; n <= n_max; ++n) {
    const double k = n + 1.0;
    out.push_back({n, Parity::even, 4.0 * k * (k + s), Provenance::analytic, 0.0});
  }
  return out;
}

/// tanh^mu|x| sech^2 x 2F1(-n, b; c; tanh^2 x), extended evenly to x < 0.
/// The branch must sit at a quantized energy (a = -n).
inline double eigenfunction_m20(const BranchParams& branch, int n, double x) {
  if (branch.vcal0 > 0.25) throw InvalidParams("(-2,0) branch requires Vcal0 <= 1/4");
  if (n < 0 || std::abs(branch.a + n) > 1e-9)
    throw InvalidParams("(-2,0) eigenfunction requires a = -n (series cut)");
  if (x == 0.0) return 0.0;
  const double t = std::abs(std::tanh(x));
  const double s = sech(x);
  return std::pow(t, branch.mu) * s * s * gauss_2f1(-double(n), branch.b, branch.c, t * t);
}

/// The depth at which (2,0) has a constant effective potential 1/2.
inline constexpr double special_20_depth = 0.75;

/// Ecal_m = m^2 + 1/2, m = 1..n_max; cos((2k+1) z) even, sin(2k z) odd.
inline std::vector<Eigenpair> spectrum_20_special(int n_max) {
  if (n_max < 1) throw InvalidParams("spectrum_20_special: n_max must be >= 1");
  std::vector<Eigenpair> out;
  for (int m = 1; m <= n_max; ++m)
    out.push_back({m - 1, m % 2 == 1 ? Parity::even : Parity::odd, double(m) * m + 0.5,
                   Provenance::analytic, 0.0});
  return out;
}

/// z-space eigenfunction of the special (2,0) member, unnormalized.
inline double phi_20_special(int m, double z) {
  if (m < 1) throw InvalidParams("(2,0) special: m must be >= 1");
  return m % 2 == 1 ? std::cos(m * z) : std::sin(m * z);
}

/// x-space eigenfunction sech^{1/2}(x) phi(z(x)), unnormalized.
inline double eigenfunction_20_special(int m, double x) {
  return phi_to_psi([m](double z) { return phi_20_special(m, z); }, x);
}

/// Analytic spectrum of `prob` when one exists; std::nullopt otherwise.
/// (0,0) with nonzero depth is the zero-depth spectrum shifted by -Vcal0.
inline std::optional<std::vector<Eigenpair>> analytic_spectrum(const DimensionlessProblem& prob,
                                                               int n_levels) {
  if (n_levels < 1) throw InvalidParams("n_levels must be >= 1");
  const Member m = prob.member();
  if (m == Member{0, 0}) {
    auto levels = spectrum_00(n_levels);
    for (auto& e : levels) e.energy -= prob.vcal0();
    return levels;
  }
  if (m == Member{-2, 0}) return spectrum_m20(prob.vcal0(), n_levels - 1);
  if (m == Member{2, 0} && std::abs(prob.vcal0() - special_20_depth) < 1e-12)
    return spectrum_20_special(n_levels);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Heun forms. Each returns the unnormalized x-space eigenfunction for a given
// (externally quantized) energy.

/// (0,2): psi = sech^2 x Hc(0, -+1/2, 1, Vcal0/4, 1/2 - (E + Vcal0)/4; tanh^2 x),
/// times tanh x for the odd state.
inline double heun_form_02(double vcal0, double ecal, Parity parity, double x, double tol = 1e-10) {
  const double t = std::tanh(x);
  const double s = sech(x);
  const double eta = 0.5 - 0.25 * (ecal + vcal0);
  const bool odd = parity == Parity::odd;
  const ConfluentHeunParams<double> p(0.0, odd ? 0.5 : -0.5, 1.0, 0.25 * vcal0, eta);
  const double h = heun_c_continue(p, t * t, tol).value;
  return (odd ? t : 1.0) * s * s * h;
}

/// (2,4): psi = sech^2 x exp(alpha tanh^2 x / 2) Hc(alpha, -+1/2, 1, 0, 1/2 - E/4; tanh^2 x)
/// with alpha = -sqrt(-Vcal0) (imaginary for Vcal0 > 0). Evaluated in complex
/// arithmetic; the real part is returned (the imaginary part vanishes analytically).
inline double heun_form_24(double vcal0, double ecal, Parity parity, double x, double tol = 1e-10) {
  using cd = std::complex<double>;
  const double t = std::tanh(x);
  const double s = sech(x);
  const cd alpha = -std::sqrt(cd(-vcal0, 0.0));
  const bool odd = parity == Parity::odd;
  const ConfluentHeunParams<cd> p(alpha, cd(odd ? 0.5 : -0.5), cd(1.0), cd(0.0), cd(0.5 - 0.25 * ecal));
  const cd h = heun_c_continue(p, t * t, tol).value;
  const cd psi = (odd ? t : 1.0) * s * s * std::exp(0.5 * alpha * t * t) * h;
  return psi.real();
}

/// Same as heun_form_24 but returning the complex value, for diagnostics.
inline std::complex<double> heun_form_24_complex(double vcal0, double ecal, Parity parity, double x,
                                                 double tol = 1e-10) {
  using cd = std::complex<double>;
  const double t = std::tanh(x);
  const double s = sech(x);
  const cd alpha = -std::sqrt(cd(-vcal0, 0.0));
  const bool odd = parity == Parity::odd;
  const ConfluentHeunParams<cd> p(alpha, cd(odd ? 0.5 : -0.5), cd(1.0), cd(0.0), cd(0.5 - 0.25 * ecal));
  const cd h = heun_c_continue(p, t * t, tol).value;
  return (odd ? t : 1.0) * s * s * std::exp(0.5 * alpha * t * t) * h;
}

/// (1,1): psi = u Hc(0, 1, -1, -2 Vcal0, 1/2 + Vcal0 - E; u), u = (1 + tanh x)/2.
/// The delta and eta signs belong to the potential -Vcal0 tanh x with this u.
inline double eigenfunction_11(double vcal0, double ecal, double x, double tol = 1e-10) {
  const double u = 1.0 / (1.0 + std::exp(-2.0 * x));
  const ConfluentHeunParams<double> p(0.0, 1.0, -1.0, -2.0 * vcal0, 0.5 + vcal0 - ecal);
  return u * heun_c_continue(p, u, tol).value;
}

}  // namespace pdmwell::analytic
