#pragma once

// Finite-difference validation oracles. Two independent discretizations:
//   z_space      -phi'' + Vcal(z) phi = E phi on (-pi/2, pi/2), Dirichlet ends;
//   x_space_pdm  -(hbar^2/2)(psi'/m)' + V psi = E psi on [-L, L] in physical units,
//                with 1/m harmonically averaged at the half points.
// Members with p < 0 are solved on the half line with a Dirichlet wall at the origin.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "pdmwell/error.hpp"
#include "pdmwell/model.hpp"
#include "pdmwell/transforms.hpp"
#include "pdmwell/tridiagonal.hpp"

namespace pdmwell {

enum class OracleScheme { z_space, x_space_pdm };

inline const char* to_string(OracleScheme s) { return s == OracleScheme::z_space ? "z_space" : "x_space_pdm"; }

struct OracleConfig {
  double domain_half_width_x = 20.0;  // in units of d
  int n_points = 4000;
  OracleScheme scheme = OracleScheme::z_space;

  void validate() const {
    if (n_points < 100) throw InvalidParams("oracle: n_points must be >= 100");
    if (n_points > 2'000'000) throw InvalidParams("oracle: n_points is unreasonably large");
    if (!(domain_half_width_x > 0.0) || !std::isfinite(domain_half_width_x))
      throw InvalidParams("oracle: domain_half_width_x must be positive");
  }
};

namespace detail {

inline bool half_line(Member m) { return m.p < 0; }

inline SymTridiagonal z_space_matrix(const DimensionlessProblem& prob, int n) {
  const bool half = half_line(prob.member());
  const double a = half ? 0.0 : -half_pi;
  const double h = (half_pi - a) / (n + 1);
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.assign(n - 1, -1.0 / (h * h));
  for (int i = 0; i < n; ++i) {
    const double z = a + (i + 1) * h;
    t.diag[i] = 2.0 / (h * h) + effective_potential_raw(prob.member(), prob.vcal0(), z);
  }
  return t;
}

// Returned eigenvalues are physical; the caller divides by the energy scale.
inline SymTridiagonal x_space_matrix(const DimensionlessProblem& prob, int n, double half_width) {
  const PotentialSpec& spec = prob.spec();
  const bool half = half_line(prob.member());
  const double L = half_width * spec.d();
  const double a = half ? 0.0 : -L;
  const double h = (L - a) / (n + 1);
  const double c = 0.5 * spec.hbar() * spec.hbar() / (h * h);

  // kappa[i] = 1/m at the half point between nodes i-1 and i (node -1 and n are the walls).
  std::vector<double> kappa(n + 1);
  double m_prev = mass_profile(spec, a);
  for (int i = 0; i <= n; ++i) {
    const double m_next = mass_profile(spec, a + (i + 1) * h);
    kappa[i] = 0.5 * (1.0 / m_prev + 1.0 / m_next);
    m_prev = m_next;
  }
  SymTridiagonal t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = a + (i + 1) * h;
    t.diag[i] = c * (kappa[i] + kappa[i + 1]) + potential_x(spec, x);
    if (i + 1 < n) t.off[i] = -c * kappa[i + 1];
  }
  return t;
}

inline std::vector<Eigenpair> label_oracle_levels(const DimensionlessProblem& prob,
                                                  const std::vector<double>& energies, double err) {
  const Member m = prob.member();
  std::vector<Eigenpair> out;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    Parity parity = Parity::none;
    if (half_line(m))
      parity = Parity::even;
    else if (m.p % 2 == 0)
      parity = i % 2 == 0 ? Parity::even : Parity::odd;
    out.push_back({static_cast<int>(i), parity, energies[i], Provenance::oracle, err});
  }
  return out;
}

inline std::vector<double> oracle_energies(const DimensionlessProblem& prob, int n_levels,
                                           const OracleConfig& cfg, int n_points) {
  if (cfg.scheme == OracleScheme::z_space)
    return lowest_eigenvalues(z_space_matrix(prob, n_points), n_levels);
  auto e = lowest_eigenvalues(x_space_matrix(prob, n_points, cfg.domain_half_width_x), n_levels);
  for (double& v : e) v = prob.to_dimensionless(v);
  return e;
}

}  // namespace detail

/// Lowest `n_levels` dimensionless eigenvalues from the chosen matrix scheme.
inline std::vector<Eigenpair> oracle_spectrum(const DimensionlessProblem& prob, int n_levels,
                                              const OracleConfig& cfg = {}) {
  cfg.validate();
  if (n_levels < 1) throw InvalidParams("n_levels must be >= 1");
  return detail::label_oracle_levels(prob, detail::oracle_energies(prob, n_levels, cfg, cfg.n_points), 0.0);
}

/// Leading order of the grid error. Second order for smooth problems; near the
/// (-2,0) origin the eigenfunction behaves like z^mu and the error drops to
/// h^(2 mu - 1) when mu < 3/2.
inline double oracle_error_order(const DimensionlessProblem& prob) {
  if (prob.member().p >= 0) return 2.0;
  if (prob.vcal0() > 0.25) throw ComplexSpectrum("(-2,0): the spectrum is not real for Vcal0 > 1/4");
  const double mu = 0.5 + std::sqrt(0.25 - prob.vcal0());
  return std::min(2.0, 2.0 * mu - 1.0);
}

/// Two resolutions (n and 2n+1 interior points, i.e. h and h/2) combined by
/// Richardson extrapolation at the leading error order. Eigenpair.err is the
/// distance between the extrapolated and the fine-grid value.
inline std::vector<Eigenpair> oracle_spectrum_richardson(const DimensionlessProblem& prob, int n_levels,
                                                         const OracleConfig& cfg = {}) {
  cfg.validate();
  if (n_levels < 1) throw InvalidParams("n_levels must be >= 1");
  const double f = std::pow(2.0, oracle_error_order(prob));
  const auto coarse = detail::oracle_energies(prob, n_levels, cfg, cfg.n_points);
  const auto fine = detail::oracle_energies(prob, n_levels, cfg, 2 * cfg.n_points + 1);
  std::vector<double> extrap(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) extrap[i] = (f * fine[i] - coarse[i]) / (f - 1.0);
  auto out = detail::label_oracle_levels(prob, extrap, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].err = std::abs(extrap[i] - fine[i]);
  return out;
}

}  // namespace pdmwell
