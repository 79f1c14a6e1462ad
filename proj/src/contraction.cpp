#include "thetafix/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thetafix/errors.hpp"
#include "thetafix/tolerances.hpp"

namespace thetafix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Walks every ordered pair of `points` in row-major order and reduces
// `margin(x, Tx, y, Ty)` to its minimum.
template <class MarginFn>
MarginReport reduce_pairs(const SelfMap& map, const std::vector<Point>& points, bool distinct_only,
                          MarginFn&& margin) {
  std::vector<Point> images;
  images.reserve(points.size());
  for (const auto& p : points) images.push_back(map.apply(p));

  MarginReport r;
  r.min_margin = kInf;
  r.min_margin_distinct = kInf;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      const bool same = points[i] == points[j];
      if (same && distinct_only) continue;
      const double m = margin(points[i], images[i], points[j], images[j]);
      ++r.pair_count;
      if (m < r.min_margin || (std::isnan(m) && !std::isnan(r.min_margin))) {
        r.min_margin = m;
        r.argmin = std::pair{points[i], points[j]};
      }
      if (!same && (m < r.min_margin_distinct || std::isnan(m))) r.min_margin_distinct = m;
    }
  return r;
}

void finish_nonnegative(MarginReport& r) {
  const bool ok = r.pair_count == 0 || r.min_margin >= -kTolerance;
  r.verdict = ok ? Verdict::HoldsOnSamples : Verdict::Violated;
  r.clamped = ok && r.min_margin < 0.0;
}

}  // namespace

std::vector<Point> sample_points(const ThetaMetricSpace& space, const SelfMap& map,
                                 const SamplePlan& plan) {
  const auto& dom = space.domain();
  if (!(map.domain == dom)) throw DomainMismatch("self-map '" + map.name + "' lives on a different domain");
  std::vector<Point> out;
  if (dom.is_finite()) {
    for (std::size_t i = 0; i < dom.size(); ++i) out.push_back(Point::label(i));
    return out;
  }
  plan.validate();
  auto xs = linspace(dom.lower(), dom.upper(), plan.pair_points);
  for (double b : map.breakpoints)
    if (b >= dom.lower() && b <= dom.upper()) xs.push_back(b);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) out.push_back(Point::coord(x));
  return out;
}

double m_value(const ThetaMetricSpace& space, const SelfMap& map, const Point& x,
               const Point& y) {
  return std::max({space.distance(x, y), space.distance(x, map.apply(x)),
                   space.distance(y, map.apply(y))});
}

MarginReport z_margin(const ThetaMetricSpace& space, const SelfMap& map,
                      const SimulationFunction& zeta, const SamplePlan& plan) {
  const auto points = sample_points(space, map, plan);
  auto r = reduce_pairs(map, points, false,
                        [&](const Point& x, const Point& tx, const Point& y, const Point& ty) {
                          return zeta.eval(space.distance(tx, ty), space.distance(x, y));
                        });
  finish_nonnegative(r);
  return r;
}

MarginReport modified_z_margin(const ThetaMetricSpace& space, const SelfMap& map,
                               const SimulationFunction& zeta, const SamplePlan& plan) {
  const auto points = sample_points(space, map, plan);
  auto r = reduce_pairs(
      map, points, false,
      [&](const Point& x, const Point& tx, const Point& y, const Point& ty) {
        const double m = std::max(
            {space.distance(x, y), space.distance(x, tx), space.distance(y, ty)});
        return zeta.eval(space.distance(tx, ty), m);
      });
  finish_nonnegative(r);
  return r;
}

MarginReport contractivity_check(const ThetaMetricSpace& space, const SelfMap& map,
                                 const SamplePlan& plan) {
  const auto points = sample_points(space, map, plan);
  auto r = reduce_pairs(map, points, true,
                        [&](const Point& x, const Point& tx, const Point& y, const Point& ty) {
                          return space.distance(x, y) - space.distance(tx, ty);
                        });
  r.verdict = (r.pair_count == 0 || r.min_margin > kStrictTolerance) ? Verdict::HoldsOnSamples
                                                                     : Verdict::Violated;
  r.clamped = false;
  return r;
}

}  // namespace thetafix
