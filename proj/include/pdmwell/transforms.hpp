#pragma once

// Exact maps between the physical line and the bounded z-interval:
// sech x = cos z, i.e. z = gd(x) = atan(sinh x), and psi = sech^{1/2}(x) phi(z).

#include <cmath>
#include <numbers>

#include "pdmwell/error.hpp"
#include "pdmwell/model.hpp"

namespace pdmwell {

inline constexpr double half_pi = std::numbers::pi / 2.0;

/// Point of the open interval (-pi/2, pi/2). Out-of-range values are rejected.
class ZPoint {
 public:
  explicit ZPoint(double z) : z_(z) {
    if (!(std::abs(z) < half_pi)) throw OutOfDomain("z must lie in (-pi/2, pi/2)");
  }
  double value() const { return z_; }
  operator double() const { return z_; }

 private:
  double z_;
};

/// z = sign(x) arccos(sech x), evaluated as atan(sinh x) for accuracy.
inline ZPoint x_to_z(double x) {
  double z = std::atan(std::sinh(x));
  // Rounding can land exactly on the double nearest pi/2 for |x| >~ 37.
  if (std::abs(z) >= half_pi) z = std::copysign(std::nextafter(half_pi, 0.0), x);
  return ZPoint(z);
}

/// x = sign(z) arcsech(cos z) = asinh(tan z).
inline double z_to_x(ZPoint z) { return std::asinh(std::tan(z.value())); }

namespace detail {

/// -Vcal0 tan^p z cos^q z written per member to avoid tan overflow and 0/0.
inline double depth_term(Member m, double z) {
  if (m == Member{0, 0}) return 1.0;
  if (m == Member{-2, 0}) {
    if (z == 0.0) throw SingularPoint("(-2,0) effective potential is singular at z = 0");
    const double c = std::cos(z) / std::sin(z);
    return c * c;
  }
  if (m == Member{0, 2}) {
    const double c = std::cos(z);
    return c * c;
  }
  if (m == Member{2, 0}) {
    const double t = std::tan(z);
    return t * t;
  }
  if (m == Member{2, 4}) {
    const double sc = std::sin(z) * std::cos(z);
    return sc * sc;
  }
  if (m == Member{1, 1}) return std::sin(z);
  throw UnsupportedFamilyMember("unsupported family member (" + m.to_string() + ")");
}

/// Effective potential without the domain guard; used in hot integration loops.
inline double effective_potential_raw(Member m, double vcal0, double z) {
  const double t = std::tan(z);
  if (m == Member{2, 0}) return 0.5 + (0.75 - vcal0) * t * t;  // keeps the 3/4 cancellation exact
  return 0.5 + 0.75 * t * t - vcal0 * depth_term(m, z);
}

}  // namespace detail

/// Largest |z| accepted by effective_potential.
inline constexpr double z_guard = half_pi - 1e-8;

/// 1/2 + (3/4) tan^2 z - Vcal0 tan^p z cos^q z.
inline double effective_potential(const DimensionlessProblem& prob, ZPoint z) {
  if (std::abs(z.value()) > z_guard) throw OutOfDomain("z too close to +-pi/2");
  return detail::effective_potential_raw(prob.member(), prob.vcal0(), z.value());
}

enum class WellShape { single, double_well, triple, funnel, infinite_double };

inline const char* to_string(WellShape s) {
  switch (s) {
    case WellShape::single: return "single";
    case WellShape::double_well: return "double";
    case WellShape::triple: return "triple";
    case WellShape::funnel: return "funnel";
    default: return "infinite_double";
  }
}

/// Shape of the z-space well. The quartic-flat boundary depths (3/4 and -81/4
/// for (2,4), -3/4 for (0,2)) classify as single.
inline WellShape classify_well(const DimensionlessProblem& prob) {
  const double v = prob.vcal0();
  const Member m = prob.member();
  if (m == Member{2, 4}) {
    if (v > 0.75) return WellShape::double_well;
    if (v < -81.0 / 4.0) return WellShape::triple;
    return WellShape::single;
  }
  if (m == Member{0, 2}) return v >= -0.75 ? WellShape::single : WellShape::double_well;
  if (m == Member{-2, 0}) {
    if (v > 0.0) return WellShape::funnel;
    if (v < 0.0) return WellShape::infinite_double;
    return WellShape::single;
  }
  return WellShape::single;
}

/// sech^{1/2}(x) * phi(z(x)).
template <class PhiFn>
double phi_to_psi(PhiFn&& phi, double x) {
  return std::sqrt(sech(x)) * phi(x_to_z(x).value());
}

}  // namespace pdmwell
