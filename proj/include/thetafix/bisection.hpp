#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace thetafix {

struct RootSearch {
  bool found = false;
  double t = 0.0;         // smallest root found, or best point seen otherwise
  double residual = 0.0;  // |f(t)|
};

/// Locates the smallest root of a continuous f on [lo, hi].
///
/// Scans `intervals` equal subintervals for |f| <= ftol or a sign change,
/// then bisects the first bracket until |f(mid)| <= ftol. Only continuity is
/// assumed; a bracket that does not close (a jump) is skipped and the scan
/// continues.
template <class F>
RootSearch find_first_root(F&& f, double lo, double hi, std::size_t intervals, double ftol,
                           std::size_t max_bisections = 200) {
  RootSearch best{false, lo, std::numeric_limits<double>::infinity()};
  auto consider = [&](double t, double ft) {
    if (std::abs(ft) < best.residual) best = {false, t, std::abs(ft)};
  };

  double t_prev = lo;
  double f_prev = f(lo);
  consider(t_prev, f_prev);
  if (std::abs(f_prev) <= ftol) return {true, lo, std::abs(f_prev)};

  for (std::size_t k = 1; k <= intervals; ++k) {
    const double t = k == intervals
                         ? hi
                         : lo + (hi - lo) * static_cast<double>(k) /
                                    static_cast<double>(intervals);
    const double ft = f(t);
    consider(t, ft);
    if (std::abs(ft) <= ftol) return {true, t, std::abs(ft)};

    if ((f_prev < 0.0) != (ft < 0.0)) {
      double a = t_prev;
      double b = t;
      const bool neg_at_a = f_prev < 0.0;
      for (std::size_t i = 0; i < max_bisections; ++i) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid);
        consider(mid, fm);
        if (std::abs(fm) <= ftol) return {true, mid, std::abs(fm)};
        if ((fm < 0.0) == neg_at_a)
          a = mid;
        else
          b = mid;
      }
    }
    t_prev = t;
    f_prev = ft;
  }
  return best;
}

}  // namespace thetafix
