#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "thetafix/catalog.hpp"
#include "thetafix/spaces.hpp"

namespace thetafix {

inline constexpr double kDefaultSolveTolerance = 1e-9;
inline constexpr std::size_t kDefaultMaxIterations = 10'000;

/// x_0, ..., x_N with x_{n+1} = T(x_n) and steps[n] = d(x_n, x_{n+1}).
struct PicardTrace {
  Point start;
  std::vector<Point> iterates;  // iterates.front() == start
  std::vector<double> steps;    // size() == iterates.size() - 1

  bool operator==(const PicardTrace&) const = default;
};

enum class FixedPointStatus { Converged, MaxIterations, ExactFixedPoint };

struct FixedPointResult {
  FixedPointStatus status = FixedPointStatus::MaxIterations;
  Point candidate;
  double residual = 0.0;  // d(z, Tz)
  std::size_t iterations = 0;
  PicardTrace trace;

  bool converged() const { return status != FixedPointStatus::MaxIterations; }
  bool operator==(const FixedPointResult&) const = default;
};

/// Iterates T from x0 and stops when
///   - T(x_n) == x_n exactly            -> ExactFixedPoint, z = x_n
///   - d(x_n, x_{n+1}) <= tol           -> Converged, z = x_{n+1}
///   - max_iter applications performed  -> MaxIterations, z = last iterate
/// The residual d(z, Tz) is reported but never used to stop.
FixedPointResult picard_iterate(const ThetaMetricSpace& space, const SelfMap& map,
                                const Point& x0, double tol = kDefaultSolveTolerance,
                                std::size_t max_iter = kDefaultMaxIterations);

struct RegularityReport {
  bool monotone = false;  // d_{n+1} <= d_n + kTolerance for every n
  double final_step = 0.0;
  bool regular = false;   // final_step <= tol

  bool operator==(const RegularityReport&) const = default;
};

/// Throws InvalidArgument when the trace has fewer than 2 steps.
RegularityReport asymptotic_regularity(const PicardTrace& trace, double tol);

/// C_n estimates: for each n in [0, N], the largest d(x_i, x_j) with
/// i, j in [n, N]. Non-increasing in n, and a lower bound on the infinite-tail
/// supremum.
std::vector<double> cauchy_diagnostic(const PicardTrace& trace, const ThetaMetricSpace& space);

struct UniquenessVerdict {
  bool all_converged = false;
  double max_pairwise_distance = 0.0;  // between candidates
  bool unique = false;  // all converged and max distance <= 10 * tol

  bool operator==(const UniquenessVerdict&) const = default;
};

struct UniquenessReport : UniquenessVerdict {
  std::vector<FixedPointResult> runs;  // one per start, in input order
};

/// Runs picard_iterate from each start. Needs at least 2 starts.
UniquenessReport uniqueness_probe(const ThetaMetricSpace& space, const SelfMap& map,
                                  std::span<const Point> starts,
                                  double tol = kDefaultSolveTolerance,
                                  std::size_t max_iter = kDefaultMaxIterations);

std::string_view to_string(FixedPointStatus s);

}  // namespace thetafix
