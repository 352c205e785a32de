#pragma once

// Shooting quantization in z-space.
//
// Symmetric members are shot outward from z = 0 with parity data; the (-2,0)
// member starts at z0 = delta on the regular Frobenius branch z^mu; (1,1) is
// shot from both walls and matched at z = 0 through Pruefer angles.
//
// Every shot also counts the interior zeros of phi. By Sturm oscillation the
// count is the number of eigenvalues (of that parity) below E, so brackets and
// bisection work on an integer staircase and close doublets cannot be skipped.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include <boost/math/special_functions/zeta.hpp>

#include "pdmwell/error.hpp"
#include "pdmwell/model.hpp"
#include "pdmwell/ode.hpp"
#include "pdmwell/transforms.hpp"

namespace pdmwell {

/// Fewer levels than requested were found inside the search window.
class IncompleteSpectrum : public Error {
 public:
  IncompleteSpectrum(const std::string& what, std::vector<Eigenpair> partial)
      : Error(what), partial_(std::move(partial)) {}
  const std::vector<Eigenpair>& partial() const { return partial_; }

 private:
  std::vector<Eigenpair> partial_;
};

/// Boundary condition imposed at z = pi/2 - delta.
///   dirichlet     phi = 0;
///   regular_tail  phi'/phi matches the regular wall solution t^lambda, t = pi/2 - |z|;
///   automatic     dirichlet unless lambda < 3/2, where the Dirichlet cut costs O(delta^(2 lambda - 1)).
enum class WallCondition { dirichlet, regular_tail, automatic };

struct ShootingConfig {
  double delta = 1e-6;  // wall position pi/2 - delta
  WallCondition wall = WallCondition::automatic;
  int grid_n = 20'000;  // initial step is (pi/2)/grid_n; the controller adapts from there
  std::optional<double> e_min;
  std::optional<double> e_max;
  std::optional<double> scan_step;  // default 1e-3 (e_max - e_min)
  double tol = 1e-10;

  void validate() const {
    if (!(delta > 0.0 && delta < 1e-2)) throw InvalidParams("shooting: delta must be in (0, 1e-2)");
    if (!(tol > 0.0)) throw InvalidParams("shooting: tol must be positive");
    if (grid_n < 10) throw InvalidParams("shooting: grid_n must be >= 10");
    if (e_min && e_max && !(*e_min < *e_max)) throw InvalidParams("shooting: e_min must be below e_max");
    if (scan_step && !(*scan_step > 0.0)) throw InvalidParams("shooting: scan_step must be positive");
  }
};

/// Outcome of one shot: the wall mismatch divided by the running max |phi|
/// (phi itself for a Dirichlet wall), and the number of eigenvalues of the
/// channel below the shot energy, read off the Pruefer angle at the wall.
struct ShotResult {
  double endpoint = 0.0;
  int count = 0;
};

namespace detail {

inline constexpr double rescale_above = 1e100;

inline bool is_symmetric(Member m) { return m.p >= 0 && m.p % 2 == 0; }

/// Regular Frobenius exponent of the (-2,0) member at z = 0.
inline double frobenius_mu(double vcal0) {
  if (vcal0 > 0.25) throw ComplexSpectrum("(-2,0): the spectrum is not real for Vcal0 > 1/4");
  return 0.5 + std::sqrt(0.25 - vcal0);
}

/// Exponent lambda of the regular solution t^lambda at the walls.
inline double wall_exponent(const DimensionlessProblem& prob) {
  // Only (2,0) changes the 1/t^2 coefficient 3/4 of the centrifugal-like wall.
  if (prob.member() == Member{2, 0}) return 0.5 + std::sqrt(1.0 - prob.vcal0());
  return 1.5;
}

inline bool regular_tail(const DimensionlessProblem& prob, const ShootingConfig& cfg) {
  if (cfg.wall == WallCondition::automatic) return wall_exponent(prob) < 1.5 - 1e-12;
  return cfg.wall == WallCondition::regular_tail;
}

/// (phi, dphi/dz) at z = pi/2 - delta for integration away from the right wall.
inline std::array<double, 2> wall_data(const DimensionlessProblem& prob, const ShootingConfig& cfg) {
  if (regular_tail(prob, cfg)) return {cfg.delta / wall_exponent(prob), -1.0};
  return {0.0, -1.0};
}

/// Pruefer angle of atan2(phi, phi') continued through `zeros` zeros of phi,
/// for a solution that starts non-negative and heads upward.
inline double pruefer_angle(const std::array<double, 2>& y, int zeros) {
  const double s = zeros % 2 == 0 ? 1.0 : -1.0;
  return zeros * std::numbers::pi + std::atan2(s * y[0], s * y[1]);
}

inline double min_effective_potential(const DimensionlessProblem& prob, double delta) {
  const double b = half_pi - delta;
  const double a = prob.member().p < 0 ? 1e-2 : (prob.member() == Member{1, 1} ? -b : 0.0);
  double vmin = std::numeric_limits<double>::infinity();
  constexpr int samples = 4000;
  for (int i = 0; i <= samples; ++i) {
    const double z = a + (b - a) * i / samples;
    vmin = std::min(vmin, effective_potential_raw(prob.member(), prob.vcal0(), z));
  }
  return vmin;
}

inline ode::DriverOptions shooting_options(const ShootingConfig& cfg, double ecal, double vmin) {
  ode::DriverOptions opt;
  opt.tol = {1e-13, 1e-12};
  opt.initial_step = half_pi / cfg.grid_n;
  // Keep a few steps per local wavelength so no zero crossing is stepped over.
  const double k = std::sqrt(std::max(1.0, ecal - vmin));
  opt.max_step = std::min(2e-2, 0.5 / k);
  return opt;
}

/// Tracks zeros of phi between accepted steps and keeps |phi| bounded.
class ZeroCounter {
 public:
  void operator()(std::array<double, 2>& y, double) {
    const int s = (y[0] > 0.0) - (y[0] < 0.0);
    if (s != 0) {
      if (last_ != 0 && s != last_) ++zeros_;
      last_ = s;
    }
    const double mag = std::abs(y[0]);
    if (mag > rescale_above) {
      y[0] /= rescale_above;
      y[1] /= rescale_above;
      running_max_ /= rescale_above;
    }
    running_max_ = std::max(running_max_, std::abs(y[0]));
  }

  void start(const std::array<double, 2>& y) {
    last_ = (y[0] > 0.0) - (y[0] < 0.0);
    if (last_ == 0) last_ = (y[1] > 0.0) - (y[1] < 0.0);
    running_max_ = std::abs(y[0]);
  }

  int zeros() const { return zeros_; }
  double running_max() const { return running_max_; }

 private:
  int last_ = 0;
  int zeros_ = 0;
  double running_max_ = 0.0;
};

struct SchroedingerRhs {
  Member member;
  double vcal0;
  double ecal;

  void operator()(const std::array<double, 2>& y, std::array<double, 2>& dy, double z) const {
    dy[0] = y[1];
    dy[1] = (effective_potential_raw(member, vcal0, z) - ecal) * y[0];
  }
};

struct SideShot {
  std::array<double, 2> y;  // (phi, phi') at the matching point
  int zeros = 0;
  double running_max = 0.0;
};

/// Integrates from `from` to `to` with initial data y0.
inline SideShot shoot_side(const DimensionlessProblem& prob, double ecal, double from, double to,
                           std::array<double, 2> y0, const ode::DriverOptions& opt) {
  SchroedingerRhs rhs{prob.member(), prob.vcal0(), ecal};
  ZeroCounter counter;
  counter.start(y0);
  ode::integrate(rhs, y0, from, to, opt, counter);
  if (!std::isfinite(y0[0]) || !std::isfinite(y0[1])) throw NumericalOverflow("shooting: state overflowed");
  return {y0, counter.zeros(), std::max(counter.running_max(), std::abs(y0[0]))};
}

inline ShotResult shoot_from_origin(const DimensionlessProblem& prob, double ecal, Parity parity,
                                    const ShootingConfig& cfg, double vmin) {
  const double b = half_pi - cfg.delta;
  auto opt = shooting_options(cfg, ecal, vmin);
  double z0 = 0.0;
  std::array<double, 2> y0{};
  if (prob.member().p < 0) {
    if (parity != Parity::even)
      throw SingularOrigin("(-2,0): only the regular branch (even extension) exists at z = 0");
    const double mu = frobenius_mu(prob.vcal0());
    z0 = cfg.delta;
    y0 = {1.0, mu / z0};
    opt.initial_step = std::min(opt.initial_step, 1e-2 * z0);
  } else if (parity == Parity::even) {
    y0 = {1.0, 0.0};
  } else if (parity == Parity::odd) {
    y0 = {0.0, 1.0};
  } else {
    throw InvalidParams("shoot_parity: parity must be even or odd");
  }
  const SideShot s = shoot_side(prob, ecal, z0, b, y0, opt);
  const double scale = s.running_max > 0.0 ? s.running_max : 1.0;
  const auto w = wall_data(prob, cfg);
  // The wall condition is reached at angle pi - eps (mod pi), eps = atan(phi_w / |phi'_w|).
  const double eps = std::atan2(w[0], -w[1]);
  const int count = static_cast<int>(std::floor((pruefer_angle(s.y, s.zeros) + eps) / std::numbers::pi));
  // Wronskian with the wall data: zero exactly when the wall condition holds.
  const double mismatch = s.y[0] * (-w[1]) + s.y[1] * w[0];
  return {mismatch / scale, count};
}

}  // namespace detail

/// Wall mismatch and eigenvalue count of the parity shot at energy `ecal`.
inline ShotResult shoot_parity_detail(const DimensionlessProblem& prob, double ecal, Parity parity,
                                      const ShootingConfig& cfg = {}) {
  cfg.validate();
  if (prob.member() == Member{1, 1}) throw InvalidParams("shoot_parity: (1,1) has no parity; use shoot_two_sided");
  return detail::shoot_from_origin(prob, ecal, parity, cfg,
                                   detail::min_effective_potential(prob, cfg.delta));
}

/// phi(pi/2 - delta) / max|phi| for the parity-seeded solution (the regular-tail
/// mismatch when that wall condition is active). A zero in ecal is an eigenvalue.
inline double shoot_parity(const DimensionlessProblem& prob, double ecal, Parity parity,
                           const ShootingConfig& cfg = {}) {
  return shoot_parity_detail(prob, ecal, parity, cfg).endpoint;
}

/// Two-sided shot for members without parity. `theta` is the sum of the left
/// and right Pruefer angles at z = 0: it increases with ecal, eigenvalues sit at
/// theta = (k+1) pi, and floor(theta / pi) counts the eigenvalues below ecal.
/// `wronskian` is the normalized mismatch sin(theta).
struct TwoSidedShot {
  double theta = 0.0;
  double wronskian = 0.0;
};

namespace detail {

inline TwoSidedShot shoot_two_sided(const DimensionlessProblem& prob, double ecal, const ShootingConfig& cfg,
                                    double vmin) {
  const double b = half_pi - cfg.delta;
  const auto opt = shooting_options(cfg, ecal, vmin);
  const auto w = wall_data(prob, cfg);
  const SideShot left = shoot_side(prob, ecal, -b, 0.0, {w[0], -w[1]}, opt);
  const SideShot right = shoot_side(prob, ecal, b, 0.0, w, opt);
  // Angles measured in the direction of integration (phi' -> -phi' on the right).
  const double th_l = pruefer_angle(left.y, left.zeros);
  const double th_r = pruefer_angle({right.y[0], -right.y[1]}, right.zeros);
  const double nl = std::hypot(left.y[0], left.y[1]);
  const double nr = std::hypot(right.y[0], right.y[1]);
  const double wr = (left.y[0] * right.y[1] - left.y[1] * right.y[0]) / (nl * nr);
  return {th_l + th_r, wr};
}

}  // namespace detail

inline TwoSidedShot shoot_two_sided(const DimensionlessProblem& prob, double ecal, const ShootingConfig& cfg = {}) {
  cfg.validate();
  return detail::shoot_two_sided(prob, ecal, cfg, detail::min_effective_potential(prob, cfg.delta));
}

namespace detail {

/// One independent quantization channel: a parity sector, the (-2,0) half line,
/// or the full (1,1) interval.
class Channel {
 public:
  Channel(const DimensionlessProblem& prob, Parity parity, const ShootingConfig& cfg, double vmin)
      : prob_(prob), parity_(parity), cfg_(cfg), vmin_(vmin) {}

  Parity parity() const { return parity_; }

  /// Number of eigenvalues of this channel strictly below ecal.
  int count(double ecal) const {
    if (parity_ == Parity::none) {
      const auto s = shoot_two_sided(prob_, ecal, cfg_, vmin_);
      return static_cast<int>(std::floor(s.theta / std::numbers::pi));
    }
    return shoot_from_origin(prob_, ecal, parity_, cfg_, vmin_).count;
  }

 private:
  const DimensionlessProblem& prob_;
  Parity parity_;
  const ShootingConfig& cfg_;
  double vmin_;
};

struct Probe {
  double e;
  int count;
};

/// Bisects the k-th root (0-based count jump k -> k+1) inside [lo, hi].
inline Eigenpair bisect_level(const Channel& ch, Probe lo, Probe hi, int k, double tol) {
  while (0.5 * (hi.e - lo.e) > tol) {
    const double mid = 0.5 * (lo.e + hi.e);
    if (mid <= lo.e || mid >= hi.e) break;
    const int c = ch.count(mid);
    if (c > k)
      hi = {mid, c};
    else
      lo = {mid, c};
  }
  return {k, ch.parity(), 0.5 * (lo.e + hi.e), Provenance::shooting, 0.5 * (hi.e - lo.e)};
}

}  // namespace detail

/// Lowest `n_levels` eigenvalues by shooting. Eigenpair.n is the global level
/// index (for (-2,0) the number of nodes on the half line); Eigenpair.err is the
/// final bisection half-width.
inline std::vector<Eigenpair> find_spectrum(const DimensionlessProblem& prob, int n_levels,
                                            const ShootingConfig& cfg = {}) {
  cfg.validate();
  if (n_levels < 1) throw InvalidParams("n_levels must be >= 1");
  const Member m = prob.member();
  if (m.p < 0) detail::frobenius_mu(prob.vcal0());

  const double vmin = detail::min_effective_potential(prob, cfg.delta);
  std::vector<detail::Channel> channels;
  if (m == Member{1, 1})
    channels.emplace_back(prob, Parity::none, cfg, vmin);
  else if (m.p < 0)
    channels.emplace_back(prob, Parity::even, cfg, vmin);
  else {
    channels.emplace_back(prob, Parity::even, cfg, vmin);
    channels.emplace_back(prob, Parity::odd, cfg, vmin);
  }
  auto total = [&](double e) {
    int c = 0;
    for (const auto& ch : channels) c += ch.count(e);
    return c;
  };

  double e_lo = 0.0;
  if (cfg.e_min) {
    e_lo = *cfg.e_min;
  } else {
    e_lo = std::min(vmin, 0.0) - 1.0;
    for (int i = 0; total(e_lo) > 0; ++i) {
      if (i > 60) throw ConvergenceFailure("find_spectrum: no lower bound for the spectrum");
      e_lo -= 2.0 * (std::abs(e_lo) + 1.0);
    }
  }
  const int offset = total(e_lo);

  double e_hi = 0.0;
  if (cfg.e_max) {
    e_hi = *cfg.e_max;
  } else {
    double width = 10.0;
    e_hi = e_lo + width;
    for (int i = 0; total(e_hi) - offset < n_levels; ++i) {
      if (i > 60) throw ConvergenceFailure("find_spectrum: could not enclose the requested levels");
      width *= 2.0;
      e_hi = e_lo + width;
    }
  }

  const double step = cfg.scan_step ? *cfg.scan_step : 1e-3 * (e_hi - e_lo);
  const int n_probes = static_cast<int>(std::ceil((e_hi - e_lo) / step));
  if (n_probes > 10'000'000) throw InvalidParams("find_spectrum: scan_step too small for the window");

  std::vector<Eigenpair> levels;
  for (const auto& ch : channels) {
    std::vector<detail::Probe> probes;
    probes.reserve(n_probes + 1);
    for (int i = 0; i <= n_probes; ++i) {
      const double e = i == n_probes ? e_hi : e_lo + i * step;
      probes.push_back({e, ch.count(e)});
    }
    const int k_first = probes.front().count;
    const int k_last = probes.back().count;
    std::size_t j = 0;
    for (int k = k_first; k < k_last; ++k) {
      while (probes[j + 1].count <= k) ++j;
      levels.push_back(detail::bisect_level(ch, probes[j], probes[j + 1], k, cfg.tol));
    }
  }
  std::sort(levels.begin(), levels.end(), [](const Eigenpair& a, const Eigenpair& b) { return a.energy < b.energy; });
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (m.p < 0) break;  // half line: n already equals the node count
    levels[i].n = offset + static_cast<int>(i);
  }

  if (detail::is_symmetric(m)) {
    for (const auto& l : levels)
      if (l.parity != (l.n % 2 == 0 ? Parity::even : Parity::odd))
        throw AnomalousOrdering("find_spectrum: parity alternation violated at level " + std::to_string(l.n));
  }

  if (static_cast<int>(levels.size()) < n_levels)
    throw IncompleteSpectrum("find_spectrum: only " + std::to_string(levels.size()) + " of " +
                                 std::to_string(n_levels) + " levels inside the search window",
                             std::move(levels));
  levels.resize(n_levels);
  return levels;
}

/// Sampling grid for eigenfunctions; x is measured in units of d.
struct SampleGrid {
  double x_max = 12.0;
  int points = 4801;

  void validate() const {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw InvalidParams("sample grid: x_max must be positive");
    if (points < 3) throw InvalidParams("sample grid: need at least 3 points");
  }
};

namespace detail {

/// Integrates from `from` to `to` and records phi at `targets`, which must be
/// ordered along the direction of travel and lie within the interval.
/// Rescaling keeps the recorded values and the final state on one scale.
struct Recorded {
  std::vector<double> phi;
  std::array<double, 2> end;
};

inline Recorded record_phi(const DimensionlessProblem& prob, double ecal, const ode::DriverOptions& opt,
                           std::array<double, 2> y, double from, double to,
                           const std::vector<double>& targets) {
  ode::Driver<2> driver(opt);
  SchroedingerRhs rhs{prob.member(), prob.vcal0(), ecal};
  Recorded out;
  out.phi.reserve(targets.size());
  auto rescale = [&out](std::array<double, 2>& s, double) {
    if (std::abs(s[0]) > rescale_above || std::abs(s[1]) > rescale_above) {
      s[0] /= rescale_above;
      s[1] /= rescale_above;
      for (double& v : out.phi) v /= rescale_above;
    }
  };
  double z = from;
  for (double zt : targets) {
    driver.advance(rhs, y, z, zt, rescale);
    out.phi.push_back(y[0]);
  }
  driver.advance(rhs, y, z, to, rescale);
  out.end = y;
  return out;
}

/// Scale c minimizing |a - c b| over (phi, phi').
inline double match_scale(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double den = b[0] * b[0] + b[1] * b[1];
  if (!(den > 0.0)) throw NumericalOverflow("eigenfunction matching: degenerate state");
  return (a[0] * b[0] + a[1] * b[1]) / den;
}

/// Outermost classical turning point in [lo, hi], or the midpoint if Vcal > E throughout.
inline double outer_turning_point(const DimensionlessProblem& prob, double ecal, double lo, double hi) {
  constexpr int samples = 4000;
  double zm = 0.5 * (lo + hi);
  for (int i = 0; i <= samples; ++i) {
    const double z = lo + (hi - lo) * i / samples;
    if (effective_potential_raw(prob.member(), prob.vcal0(), z) <= ecal) zm = z;
  }
  return std::clamp(zm, lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo));
}

/// phi at the ascending, non-negative `z` values for the parity and half-line
/// channels: outward from the origin and inward from the wall, matched at the
/// outer turning point so that both legs run in their stable direction.
inline std::vector<double> phi_one_sided(const DimensionlessProblem& prob, double ecal, Parity parity,
                                         const ShootingConfig& cfg, double vmin, const std::vector<double>& z) {
  const double b = half_pi - cfg.delta;
  auto opt = shooting_options(cfg, ecal, vmin);
  const bool half = prob.member().p < 0;
  double z0 = 0.0;
  std::array<double, 2> y0{1.0, 0.0};
  double mu = 0.0;
  if (half) {
    mu = frobenius_mu(prob.vcal0());
    z0 = cfg.delta;
    y0 = {1.0, mu / z0};
    opt.initial_step = std::min(opt.initial_step, 1e-2 * z0);
  } else if (parity == Parity::odd) {
    y0 = {0.0, 1.0};
  } else if (parity != Parity::even) {
    throw InvalidParams("eigenfunction_numeric: symmetric members need a parity");
  }
  const double zm = outer_turning_point(prob, ecal, z0, b);

  std::vector<double> out_targets;
  std::vector<double> in_targets;
  for (double v : z) {
    if (v >= z0 && v < zm) out_targets.push_back(v);
    if (v >= zm && v < b) in_targets.push_back(v);
  }
  std::reverse(in_targets.begin(), in_targets.end());
  auto outward = record_phi(prob, ecal, opt, y0, z0, zm, out_targets);
  opt.initial_step = half_pi / cfg.grid_n;
  auto inward = record_phi(prob, ecal, opt, wall_data(prob, cfg), b, zm, in_targets);
  const double c = match_scale(outward.end, inward.end);

  std::vector<double> phi(z.size(), 0.0);
  std::size_t io = 0;
  std::size_t ii = in_targets.size();
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double v = z[k];
    if (v < z0)
      phi[k] = std::pow(v / z0, mu);  // Frobenius branch below the start point (half line only)
    else if (v < zm)
      phi[k] = outward.phi[io++];
    else if (v < b)
      phi[k] = c * inward.phi[--ii];
  }
  return phi;
}

inline int count_sign_changes(const std::vector<double>& v, std::size_t from, double threshold) {
  int changes = 0;
  int last = 0;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (std::abs(v[i]) <= threshold) continue;
    const int s = v[i] > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

}  // namespace detail

/// Re-integrates at pair.energy, maps back to x, normalizes to unit norm in x
/// (trapezoid rule) and checks that the node count equals pair.n. For (-2,0)
/// nodes are counted on the half line x > 0.
inline WavefunctionSamples eigenfunction_numeric(const DimensionlessProblem& prob, const Eigenpair& pair,
                                                 const ShootingConfig& cfg = {}, const SampleGrid& grid = {}) {
  cfg.validate();
  grid.validate();
  const Member m = prob.member();
  const double vmin = detail::min_effective_potential(prob, cfg.delta);
  const double ecal = pair.energy;
  const double b = half_pi - cfg.delta;

  WavefunctionSamples out;
  const int n = grid.points;
  out.grid_x.resize(n);
  out.grid_z.resize(n);
  for (int i = 0; i < n; ++i) {
    // Built from the centre outward so that the grid is exactly symmetric.
    const double x = grid.x_max * (2.0 * i - (n - 1)) / (n - 1);
    out.grid_x[i] = x;
    out.grid_z[i] = x_to_z(x).value();
  }
  const int mid = n / 2;  // first index with x >= 0
  std::vector<double> z_pos(out.grid_z.begin() + mid, out.grid_z.end());
  for (double& v : z_pos) v = std::abs(v);  // x = 0 may carry a -0.0

  out.phi.assign(n, 0.0);
  if (m == Member{1, 1}) {
    auto opt = detail::shooting_options(cfg, ecal, vmin);
    const auto w = detail::wall_data(prob, cfg);
    std::vector<double> right_targets(z_pos.rbegin(), z_pos.rend());
    std::erase_if(right_targets, [b](double v) { return v >= b || v <= 0.0; });
    std::vector<double> left_targets;
    for (int i = 0; i < mid; ++i)
      if (out.grid_z[i] > -b) left_targets.push_back(out.grid_z[i]);
    auto right = detail::record_phi(prob, ecal, opt, w, b, 0.0, right_targets);
    auto left = detail::record_phi(prob, ecal, opt, {w[0], -w[1]}, -b, 0.0, left_targets);
    const double c = detail::match_scale(left.end, right.end);
    std::size_t il = 0;
    for (int i = 0; i < mid; ++i)
      if (out.grid_z[i] > -b) out.phi[i] = left.phi[il++];
    std::size_t ir = right_targets.size();
    for (int i = mid; i < n; ++i) {
      const double z = out.grid_z[i];
      if (z <= 0.0)
        out.phi[i] = left.end[0];
      else if (z < b)
        out.phi[i] = c * right.phi[--ir];
    }
  } else {
    const bool half = m.p < 0;
    const auto phi_pos = detail::phi_one_sided(prob, ecal, pair.parity, cfg, vmin, z_pos);
    const double sign = (half || pair.parity == Parity::even) ? 1.0 : -1.0;
    for (int i = mid; i < n; ++i) out.phi[i] = phi_pos[i - mid];
    for (int i = 0; i < mid; ++i) out.phi[i] = sign * out.phi[n - 1 - i];
    if (n % 2 == 1 && sign < 0.0) out.phi[mid] = 0.0;
  }

  out.psi.resize(n);
  for (int i = 0; i < n; ++i) out.psi[i] = std::sqrt(sech(out.grid_x[i])) * out.phi[i];

  std::vector<double> dens(n);
  for (int i = 0; i < n; ++i) dens[i] = out.psi[i] * out.psi[i];
  double norm2 = detail::trapezoid(out.grid_x, dens);
  if (m.p < 0 && n % 2 == 1 && mid + 1 < n) {
    // psi^2 ~ g0 |x|^(2 mu) at the origin. The trapezoid rule overshoots such a
    // kink by zeta(-2 mu) g0 h^(2 mu + 1) on each side (Navot's extension of
    // Euler-Maclaurin); the next term is O(h^(2 mu + 3)).
    const double s = 2.0 * detail::frobenius_mu(prob.vcal0());
    const double h = out.grid_x[mid + 1] - out.grid_x[mid];
    const double g0 = dens[mid + 1] / std::pow(h, s);
    norm2 -= 2.0 * boost::math::zeta(-s) * g0 * std::pow(h, s + 1.0);
  }
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw NumericalOverflow("eigenfunction_numeric: degenerate norm");
  double pmax = 0.0;
  for (double v : out.psi) pmax = std::max(pmax, std::abs(v));
  // Sign convention: the outermost lobe on the right is positive.
  double tail = 0.0;
  for (int i = n - 1; i >= 0 && tail == 0.0; --i)
    if (std::abs(out.psi[i]) > 1e-6 * pmax) tail = out.psi[i];
  const double c = (tail < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2);
  for (int i = 0; i < n; ++i) {
    out.psi[i] *= c;
    out.phi[i] *= c;
  }
  out.norm_const = std::abs(c);

  const std::size_t from = m.p < 0 ? static_cast<std::size_t>(mid) : 0;
  out.nodes = detail::count_sign_changes(out.psi, from, 1e-9 * pmax * std::abs(c));
  if (out.nodes != pair.n)
    throw QuantizationMisindex("eigenfunction_numeric: found " + std::to_string(out.nodes) +
                               " nodes for level " + std::to_string(pair.n));
  return out;
}

}  // namespace pdmwell
