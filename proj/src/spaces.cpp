#include "thetafix/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "thetafix/errors.hpp"

namespace thetafix {

std::size_t Point::index() const {
  if (const auto* l = std::get_if<Label>(&value_)) return l->index;
  throw DomainMismatch("point " + format_real(std::get<double>(value_)) +
                       " is a coordinate, not a label");
}

double Point::coordinate() const {
  if (const auto* x = std::get_if<double>(&value_)) return *x;
  throw DomainMismatch("point #" + std::to_string(std::get<Label>(value_).index) +
                       " is a label, not a coordinate");
}

PointDomain PointDomain::finite(std::vector<std::string> labels) {
  if (labels.empty()) throw ParameterError("finite domain needs at least one label");
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw ParameterError("empty label in finite domain");
    if (!seen.insert(l).second) throw ParameterError("duplicate label '" + l + "'");
  }
  PointDomain d;
  d.finite_ = true;
  d.labels_ = std::move(labels);
  return d;
}

PointDomain PointDomain::interval(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper))
    throw ParameterError("interval bounds must be finite");
  if (!(lower < upper))
    throw ParameterError("interval needs lower < upper, got [" + format_real(lower) +
                         ", " + format_real(upper) + "]");
  PointDomain d;
  d.lower_ = lower;
  d.upper_ = upper;
  return d;
}

bool PointDomain::contains(const Point& p) const {
  if (finite_) return p.is_label() && p.index() < labels_.size();
  if (p.is_label()) return false;
  const double x = p.coordinate();
  return x >= lower_ && x <= upper_;
}

void PointDomain::require(const Point& p) const {
  if (contains(p)) return;
  if (finite_) {
    if (!p.is_label())
      throw DomainMismatch("coordinate " + format_real(p.coordinate()) +
                           " given to a finite domain");
    throw DomainMismatch("label index " + std::to_string(p.index()) +
                         " out of range for a domain of " +
                         std::to_string(labels_.size()) + " points");
  }
  if (p.is_label()) throw DomainMismatch("label given to an interval domain");
  throw DomainMismatch("coordinate " + format_real(p.coordinate()) + " outside [" +
                       format_real(lower_) + ", " + format_real(upper_) + "]");
}

std::optional<std::size_t> PointDomain::find_label(std::string_view name) const {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::string PointDomain::describe(const Point& p) const {
  if (p.is_label()) {
    if (finite_ && p.index() < labels_.size()) return labels_[p.index()];
    return "#" + std::to_string(p.index());
  }
  return format_real(p.coordinate());
}

double theta_eval(const BAction& action, double s, double t) {
  if (!(s >= 0.0) || !(t >= 0.0))
    throw DomainError("B-action '" + action.name + "' evaluated at negative argument (" +
                      format_real(s) + ", " + format_real(t) + ")");
  return action.eval(s, t);
}

ThetaMetricSpace ThetaMetricSpace::finite(PointDomain domain, std::vector<double> table,
                                          BAction action) {
  if (!domain.is_finite()) throw ParameterError("distance table needs a finite domain");
  const std::size_t n = domain.size();
  if (table.size() != n * n)
    throw ParameterError("distance table has " + std::to_string(table.size()) +
                         " entries, expected " + std::to_string(n * n));
  const auto labels = domain.labels();
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i * n + i] != 0.0)
      throw ParameterError("d(" + labels[i] + "," + labels[i] + ") must be 0");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = table[i * n + j];
      if (!std::isfinite(d) || d < 0.0)
        throw ParameterError("d(" + labels[i] + "," + labels[j] +
                             ") must be a finite nonnegative real");
      if (i != j && d == 0.0)
        throw ParameterError("d(" + labels[i] + "," + labels[j] +
                             ") is 0 for distinct points");
      if (d != table[j * n + i])
        throw ParameterError("distance table is not symmetric at (" + labels[i] + "," +
                             labels[j] + ")");
    }
  }
  ThetaMetricSpace space(std::move(domain), std::move(action));
  space.metric_name_ = "table";
  space.table_ = std::move(table);
  return space;
}

ThetaMetricSpace ThetaMetricSpace::interval(PointDomain domain, std::string metric_name,
                                            IntervalMetric metric, BAction action) {
  if (domain.is_finite()) throw ParameterError("closed-form metric needs an interval domain");
  if (!metric) throw ParameterError("interval space needs a metric function");
  ThetaMetricSpace space(std::move(domain), std::move(action));
  space.metric_name_ = std::move(metric_name);
  space.metric_ = std::move(metric);
  return space;
}

ThetaMetricSpace ThetaMetricSpace::euclidean(double lower, double upper, BAction action) {
  return interval(PointDomain::interval(lower, upper), "euclidean",
                  [](double x, double y) { return std::abs(x - y); }, std::move(action));
}

double ThetaMetricSpace::distance(const Point& x, const Point& y) const {
  domain_.require(x);
  domain_.require(y);
  if (domain_.is_finite()) return table_[x.index() * domain_.size() + y.index()];
  return metric_(x.coordinate(), y.coordinate());
}

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace thetafix
