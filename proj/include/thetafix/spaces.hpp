#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace thetafix {

/// Index of a point in a finite domain.
struct Label {
  std::size_t index = 0;
  bool operator==(const Label&) const = default;
};

/// An element of a PointDomain: either a label index or a real coordinate.
class Point {
 public:
  Point() : value_(0.0) {}

  static Point label(std::size_t index) { return Point(Label{index}); }
  static Point coord(double x) { return Point(x); }

  bool is_label() const { return std::holds_alternative<Label>(value_); }
  std::size_t index() const;
  double coordinate() const;

  bool operator==(const Point&) const = default;

 private:
  explicit Point(Label l) : value_(l) {}
  explicit Point(double x) : value_(x) {}

  std::variant<Label, double> value_;
};

/// The carrier set X: a finite list of labels or a closed real interval.
class PointDomain {
 public:
  static PointDomain finite(std::vector<std::string> labels);
  static PointDomain interval(double lower, double upper);

  bool is_finite() const { return finite_; }
  std::size_t size() const { return labels_.size(); }
  std::span<const std::string> labels() const { return labels_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  bool contains(const Point& p) const;
  /// Throws DomainMismatch unless contains(p).
  void require(const Point& p) const;

  std::optional<std::size_t> find_label(std::string_view name) const;
  /// Label name for finite points, shortest round-trip decimal otherwise.
  std::string describe(const Point& p) const;

  bool operator==(const PointDomain&) const = default;

 private:
  PointDomain() = default;

  bool finite_ = false;
  std::vector<std::string> labels_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

/// A B-action: continuous symmetric operation on [0,inf) that stands in for
/// "+" in the triangle inequality.
struct BAction {
  std::string name;
  std::vector<double> params;
  std::function<double(double, double)> eval;
};

/// Evaluates action at (s, t). Throws DomainError for negative or NaN input.
double theta_eval(const BAction& action, double s, double t);

/// A set with a distance d satisfying d(x,y) <= theta(d(x,z), d(z,y)).
///
/// Finite spaces hold the full symmetric table, validated on construction
/// (zero diagonal, positive finite off-diagonal entries, symmetric). Interval
/// spaces hold a closed-form distance.
class ThetaMetricSpace {
 public:
  using IntervalMetric = std::function<double(double, double)>;

  /// `table` is row-major |labels| x |labels|.
  static ThetaMetricSpace finite(PointDomain domain, std::vector<double> table,
                                 BAction action);
  static ThetaMetricSpace interval(PointDomain domain, std::string metric_name,
                                   IntervalMetric metric, BAction action);
  /// [lower, upper] with d(x,y) = |x - y|.
  static ThetaMetricSpace euclidean(double lower, double upper, BAction action);

  const PointDomain& domain() const { return domain_; }
  const BAction& action() const { return action_; }
  const std::string& metric_name() const { return metric_name_; }
  /// Row-major distance table; empty for interval spaces.
  std::span<const double> table() const { return table_; }

  /// Throws DomainMismatch if either point lies outside the domain.
  double distance(const Point& x, const Point& y) const;

 private:
  ThetaMetricSpace(PointDomain domain, BAction action)
      : domain_(std::move(domain)), action_(std::move(action)) {}

  PointDomain domain_;
  BAction action_;
  std::string metric_name_;
  std::vector<double> table_;
  IntervalMetric metric_;
};

inline double distance(const ThetaMetricSpace& space, const Point& x,
                       const Point& y) {
  return space.distance(x, y);
}

/// Shortest decimal string that parses back to exactly x.
std::string format_real(double x);

}  // namespace thetafix
