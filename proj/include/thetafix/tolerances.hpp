#pragma once

namespace thetafix {

// Every non-strict real comparison a <= b is tested as a <= b + kTolerance.
inline constexpr double kTolerance = 1e-9;
// Strict comparisons a < b are tested as a <= b - kStrictTolerance.
inline constexpr double kStrictTolerance = 1e-12;
// Allowed |f(s,t) - f(t,s)| for symmetric functions.
inline constexpr double kSymmetryTolerance = 0.0;

inline bool leq_tol(double a, double b) { return a <= b + kTolerance; }
inline bool less_strict(double a, double b) { return a <= b - kStrictTolerance; }

}  // namespace thetafix
