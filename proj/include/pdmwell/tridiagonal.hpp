#pragma once

// Eigenvalues of a real symmetric tridiagonal matrix by Sturm-sequence bisection.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "pdmwell/error.hpp"

namespace pdmwell {

struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples rows i and i+1

  std::size_t size() const { return diag.size(); }
};

namespace detail {

class SturmCounter {
 public:
  explicit SturmCounter(const SymTridiagonal& t) : t_(t), off2_(t.off.size()) {
    if (t.diag.empty() || t.off.size() + 1 != t.diag.size())
      throw InvalidParams("tridiagonal matrix has inconsistent dimensions");
    double norm = 0.0;
    for (std::size_t i = 0; i < t.off.size(); ++i) {
      off2_[i] = t.off[i] * t.off[i];
      norm = std::max(norm, std::abs(t.off[i]));
    }
    for (double d : t.diag) norm = std::max(norm, std::abs(d));
    pivmin_ = std::numeric_limits<double>::min() * std::max(1.0, norm * norm);
  }

  /// Number of eigenvalues strictly below lambda.
  std::size_t count_below(double lambda) const {
    std::size_t count = 0;
    double q = t_.diag[0] - lambda;
    if (std::abs(q) < pivmin_) q = -pivmin_;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < t_.diag.size(); ++i) {
      q = t_.diag[i] - lambda - off2_[i - 1] / q;
      if (std::abs(q) < pivmin_) q = -pivmin_;
      if (q < 0.0) ++count;
    }
    return count;
  }

 private:
  const SymTridiagonal& t_;
  std::vector<double> off2_;
  double pivmin_;
};

}  // namespace detail

/// Gershgorin enclosure [lo, hi] of the spectrum.
inline std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = t.diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

/// The k lowest eigenvalues in ascending order, each bisected until the bracket
/// is no wider than a few ulps of the eigenvalue.
inline std::vector<double> lowest_eigenvalues(const SymTridiagonal& t, std::size_t k) {
  const detail::SturmCounter counter(t);
  k = std::min(k, t.size());
  auto [glo, ghi] = gershgorin_bounds(t);
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(glo), std::abs(ghi)));
  glo -= pad;
  ghi += pad;

  std::vector<double> out;
  out.reserve(k);
  double floor_lo = glo;
  for (std::size_t j = 0; j < k; ++j) {
    double lo = floor_lo;
    double hi = ghi;
    // Cheap upper bracket: grow from lo until the count exceeds j.
    for (double step = std::max(1.0, std::abs(lo) * 1e-3);; step *= 2.0) {
      const double trial = lo + step;
      if (trial >= ghi) break;
      if (counter.count_below(trial) > j) {
        hi = trial;
        break;
      }
    }
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
        break;
      if (counter.count_below(mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
    floor_lo = lo;
  }
  return out;
}

}  // namespace pdmwell
