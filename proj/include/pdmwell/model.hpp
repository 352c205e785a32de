#pragma once

// Potential family V_{p,q}(x) = -V0 sinh^p(x/d) / cosh^q(x/d) with the solitonic
// mass m(x) = m0 sech^2(x/d), plus the dimensionless problem descriptor shared
// by the rest of the library.

#include <array>
#include <cmath>
#include <concepts>
#include <string>
#include <vector>

#include "pdmwell/error.hpp"

namespace pdmwell {

/// Exponents (p, q) selecting one member of the family.
struct Member {
  int p = 0;
  int q = 0;

  friend constexpr bool operator==(Member, Member) = default;

  std::string to_string() const { return std::to_string(p) + "," + std::to_string(q); }
};

inline constexpr std::array<Member, 6> supported_members{
    {{0, 0}, {-2, 0}, {0, 2}, {2, 0}, {2, 4}, {1, 1}}};

inline constexpr bool is_supported(Member m) {
  for (auto s : supported_members)
    if (s == m) return true;
  return false;
}

enum class Parity { even, odd, none };
enum class Provenance { analytic, shooting, oracle };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    default: return "none";
  }
}

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::analytic: return "analytic";
    case Provenance::shooting: return "shooting";
    default: return "oracle";
  }
}

/// Physical description of one family member. Validated on construction.
class PotentialSpec {
 public:
  PotentialSpec(Member member, double V0, double d = 1.0, double m0 = 1.0, double hbar = 1.0)
      : member_(member), V0_(V0), d_(d), m0_(m0), hbar_(hbar) {
    if (!is_supported(member))
      throw UnsupportedFamilyMember("unsupported family member (" + member.to_string() + ")");
    if (!(d > 0.0) || !(m0 > 0.0) || !(hbar > 0.0))
      throw InvalidParams("d, m0 and hbar must be positive");
    if (!std::isfinite(V0) || !std::isfinite(d) || !std::isfinite(m0) || !std::isfinite(hbar))
      throw InvalidParams("physical parameters must be finite");
  }

  Member member() const { return member_; }
  int p() const { return member_.p; }
  int q() const { return member_.q; }
  double V0() const { return V0_; }
  double d() const { return d_; }
  double m0() const { return m0_; }
  double hbar() const { return hbar_; }

 private:
  Member member_;
  double V0_;
  double d_;
  double m0_;
  double hbar_;
};

/// The z-space constant-mass problem. `vcal0` is the dimensionless depth
/// 2 m0 d^2 V0 / hbar^2 and `energy_scale` converts dimensionless energies to
/// physical ones (E = energy_scale * Ecal).
class DimensionlessProblem {
 public:
  explicit DimensionlessProblem(const PotentialSpec& spec)
      : spec_(spec),
        energy_scale_(spec.hbar() * spec.hbar() / (2.0 * spec.m0() * spec.d() * spec.d())),
        vcal0_(spec.V0() / energy_scale_) {
    if (!std::isfinite(vcal0_) || !std::isfinite(energy_scale_) || !(energy_scale_ > 0.0))
      throw InvalidParams("dimensionless depth or energy scale is not finite");
    // (2,0) deeper than 3/4 turns the tan^2 wall around; the problem is no longer confining.
    if (spec.member() == Member{2, 0} && vcal0_ > 0.75 * (1.0 + 1e-12))
      throw NonConfining("(2,0) requires Vcal0 <= 3/4");
  }

  const PotentialSpec& spec() const { return spec_; }
  Member member() const { return spec_.member(); }
  double vcal0() const { return vcal0_; }
  double energy_scale() const { return energy_scale_; }

  double to_physical(double ecal) const { return ecal * energy_scale_; }
  double to_dimensionless(double energy) const { return energy / energy_scale_; }

 private:
  PotentialSpec spec_;
  double energy_scale_;
  double vcal0_;
};

inline DimensionlessProblem make_problem(const PotentialSpec& spec) {
  return DimensionlessProblem(spec);
}

/// Dimensionless shortcut: picks V0 so that the dimensionless depth equals `vcal0`
/// with m0 = d = hbar = 1.
inline DimensionlessProblem make_problem(Member member, double vcal0) {
  return DimensionlessProblem(PotentialSpec(member, 0.5 * vcal0));
}

struct Eigenpair {
  int n = 0;
  Parity parity = Parity::none;
  double energy = 0.0;  // dimensionless
  Provenance provenance = Provenance::analytic;
  double err = 0.0;
};

struct WavefunctionSamples {
  std::vector<double> grid_x;
  std::vector<double> grid_z;
  std::vector<double> psi;
  std::vector<double> phi;
  double norm_const = 1.0;
  int nodes = 0;
};

inline double sech(double x) { return 1.0 / std::cosh(x); }

/// m0 sech^2(x/d).
inline double mass_profile(const PotentialSpec& spec, double x) {
  const double s = sech(x / spec.d());
  return spec.m0() * s * s;
}

namespace detail {

inline double ipow(double base, int e) {
  double r = 1.0;
  const bool neg = e < 0;
  for (int i = 0; i < (neg ? -e : e); ++i) r *= base;
  return neg ? 1.0 / r : r;
}

/// Dimensionless shape sinh^p(x) / cosh^q(x) for x already scaled by d.
inline double shape_x(Member m, double x) {
  if (m.p < 0 && x == 0.0)
    throw SingularPoint("potential (" + m.to_string() + ") is singular at x = 0");
  return ipow(std::sinh(x), m.p) / ipow(std::cosh(x), m.q);
}

}  // namespace detail

/// -V0 sinh^p(x/d) / cosh^q(x/d).
inline double potential_x(const PotentialSpec& spec, double x) {
  return -spec.V0() * detail::shape_x(spec.member(), x / spec.d());
}

/// Solitonic mass profile with closed-form derivatives.
struct SolitonMass {
  double m0 = 1.0;
  double d = 1.0;

  explicit SolitonMass(const PotentialSpec& spec) : m0(spec.m0()), d(spec.d()) {}
  SolitonMass(double m0, double d) : m0(m0), d(d) {}

  double value(double x) const {
    const double s = sech(x / d);
    return m0 * s * s;
  }
  double first(double x) const {
    const double s = sech(x / d);
    return -2.0 * m0 / d * s * s * std::tanh(x / d);
  }
  double second(double x) const {
    const double s = sech(x / d);
    const double t = std::tanh(x / d);
    return 2.0 * m0 / (d * d) * s * s * (2.0 * t * t - s * s);
  }
};

template <class M>
concept MassFunction = requires(const M& m, double x) {
  { m.value(x) } -> std::convertible_to<double>;
  { m.first(x) } -> std::convertible_to<double>;
  { m.second(x) } -> std::convertible_to<double>;
};

/// Ordering-dependent kinematic potential U_K for the von Roos family with
/// exponents (alpha, gamma). Vanishes for the Ben-Daniel--Duke orderings.
template <MassFunction M>
double kinematic_potential(const M& mass, double alpha, double gamma, double x,
                           double hbar = 1.0) {
  const double m = mass.value(x);
  const double m1 = mass.first(x);
  const double m2 = mass.second(x);
  const double c1 = alpha + gamma - 1.0;
  const double c2 = 1.0 - alpha * gamma - alpha - gamma;
  if (c1 == 0.0 && c2 == 0.0) return 0.0;
  return -hbar * hbar / (4.0 * m * m * m) * (c1 * 0.5 * m * m2 + c2 * m1 * m1);
}

}  // namespace pdmwell
