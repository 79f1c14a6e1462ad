#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "thetafix/axioms.hpp"
#include "thetafix/catalog.hpp"
#include "thetafix/sampling.hpp"
#include "thetafix/spaces.hpp"

namespace thetafix {

/// Minimum of a per-pair margin over the sampled pairs of a domain.
struct MarginReport {
  std::size_t pair_count = 0;
  double min_margin = 0.0;
  /// Minimum over pairs with x != y (+inf when there are none).
  double min_margin_distinct = 0.0;
  std::optional<std::pair<Point, Point>> argmin;  // first pair attaining min_margin
  Verdict verdict = Verdict::HoldsOnSamples;
  /// min_margin fell in [-kTolerance, 0) and was accepted as float noise.
  bool clamped = false;

  bool nonnegative() const { return verdict == Verdict::HoldsOnSamples; }
  bool operator==(const MarginReport&) const = default;
};

/// Points over which margins are taken: every label of a finite domain, or
/// plan.pair_points equispaced points of an interval together with the map's
/// breakpoints, sorted.
std::vector<Point> sample_points(const ThetaMetricSpace& space, const SelfMap& map,
                                 const SamplePlan& plan);

/// M(x,y) = max{ d(x,y), d(x,Tx), d(y,Ty) }.
double m_value(const ThetaMetricSpace& space, const SelfMap& map, const Point& x,
               const Point& y);

/// min over sampled (x,y) of zeta(d(Tx,Ty), d(x,y)).
MarginReport z_margin(const ThetaMetricSpace& space, const SelfMap& map,
                      const SimulationFunction& zeta, const SamplePlan& plan);

/// min over sampled (x,y) of zeta(d(Tx,Ty), M(x,y)).
MarginReport modified_z_margin(const ThetaMetricSpace& space, const SelfMap& map,
                               const SimulationFunction& zeta, const SamplePlan& plan);

/// min over sampled x != y of d(x,y) - d(Tx,Ty). Holds iff that minimum
/// exceeds kStrictTolerance (strict contractivity).
MarginReport contractivity_check(const ThetaMetricSpace& space, const SelfMap& map,
                                 const SamplePlan& plan);

}  // namespace thetafix
