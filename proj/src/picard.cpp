#include "thetafix/picard.hpp"

#include <algorithm>
#include <cmath>

#include "thetafix/errors.hpp"
#include "thetafix/tolerances.hpp"

namespace thetafix {

std::string_view to_string(FixedPointStatus s) {
  switch (s) {
    case FixedPointStatus::Converged:
      return "converged";
    case FixedPointStatus::MaxIterations:
      return "max-iterations";
    case FixedPointStatus::ExactFixedPoint:
      return "exact-fixed-point";
  }
  return "max-iterations";
}

FixedPointResult picard_iterate(const ThetaMetricSpace& space, const SelfMap& map,
                                const Point& x0, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw InvalidArgument("picard tolerance must be > 0");
  if (max_iter == 0) throw InvalidArgument("picard needs max_iter > 0");
  space.domain().require(x0);

  FixedPointResult result;
  result.trace.start = x0;
  result.trace.iterates.push_back(x0);

  Point x = x0;
  for (std::size_t n = 0; n < max_iter; ++n) {
    Point next = map.apply(x);
    const double step = space.distance(x, next);
    result.trace.iterates.push_back(next);
    result.trace.steps.push_back(step);
    result.iterations = n + 1;

    if (next == x) {
      result.status = FixedPointStatus::ExactFixedPoint;
      result.candidate = x;
      break;
    }
    if (step <= tol) {
      result.status = FixedPointStatus::Converged;
      result.candidate = next;
      break;
    }
    x = next;
  }
  if (result.status == FixedPointStatus::MaxIterations)
    result.candidate = result.trace.iterates.back();

  result.residual = space.distance(result.candidate, map.apply(result.candidate));
  return result;
}

RegularityReport asymptotic_regularity(const PicardTrace& trace, double tol) {
  const auto& d = trace.steps;
  if (d.size() < 2)
    throw InvalidArgument("asymptotic regularity needs a trace with at least 2 steps, got " +
                          std::to_string(d.size()));
  RegularityReport r;
  r.monotone = true;
  for (std::size_t n = 0; n + 1 < d.size(); ++n)
    if (!leq_tol(d[n + 1], d[n])) {
      r.monotone = false;
      break;
    }
  r.final_step = d.back();
  r.regular = r.final_step <= tol;
  return r;
}

std::vector<double> cauchy_diagnostic(const PicardTrace& trace, const ThetaMetricSpace& space) {
  const auto& xs = trace.iterates;
  std::vector<double> c(xs.size(), 0.0);
  // c[n] = max(c[n+1], max_{j > n} d(x_n, x_j)), swept from the tail.
  for (std::size_t n = xs.size(); n-- > 0;) {
    double row = 0.0;
    for (std::size_t j = n + 1; j < xs.size(); ++j)
      row = std::max(row, space.distance(xs[n], xs[j]));
    c[n] = n + 1 < xs.size() ? std::max(c[n + 1], row) : 0.0;
  }
  return c;
}

UniquenessReport uniqueness_probe(const ThetaMetricSpace& space, const SelfMap& map,
                                  std::span<const Point> starts, double tol,
                                  std::size_t max_iter) {
  if (starts.size() < 2)
    throw InvalidArgument("uniqueness probe needs at least 2 starts");
  UniquenessReport r;
  r.runs.reserve(starts.size());
  for (const auto& x0 : starts) r.runs.push_back(picard_iterate(space, map, x0, tol, max_iter));

  r.all_converged = std::all_of(r.runs.begin(), r.runs.end(),
                                [](const FixedPointResult& f) { return f.converged(); });
  r.max_pairwise_distance = 0.0;
  for (std::size_t i = 0; i < r.runs.size(); ++i)
    for (std::size_t j = i + 1; j < r.runs.size(); ++j)
      r.max_pairwise_distance = std::max(
          r.max_pairwise_distance, space.distance(r.runs[i].candidate, r.runs[j].candidate));
  r.unique = r.all_converged && r.max_pairwise_distance <= 10.0 * tol;
  return r;
}

}  // namespace thetafix
