#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetafix/catalog.hpp"
#include "thetafix/sampling.hpp"
#include "thetafix/spaces.hpp"

namespace thetafix {

/// How a sample's lhs is compared with its rhs.
///   Exact      lhs <= rhs
///   LessEqual  lhs <= rhs + kTolerance
///   Less       lhs <= rhs - kStrictTolerance   (a strict a < b)
enum class Relation { Exact, LessEqual, Less };

/// One evaluated sample of an axiom: the inputs plus both sides of its
/// inequality. `args` holds reals (coordinates, s/t values, sequence
/// parameters); `labels` names finite-domain points when there are any.
struct Witness {
  std::vector<double> args;
  std::vector<std::string> labels;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::LessEqual;

  double slack() const { return rhs - lhs; }
  bool violated() const;
  bool operator==(const Witness&) const = default;
};

enum class Verdict { HoldsOnSamples, Violated };

struct AxiomVerdict {
  std::string axiom;  // "B1", "theta3", "zeta2", ...
  Verdict verdict = Verdict::HoldsOnSamples;
  std::size_t samples = 0;
  double worst_margin = 0.0;  // min slack over all samples
  Witness worst;              // first sample attaining worst_margin
  std::optional<Witness> witness;  // first violating sample in canonical order

  bool holds() const { return verdict == Verdict::HoldsOnSamples; }
  bool operator==(const AxiomVerdict&) const = default;
};

struct AxiomReport {
  std::string subject;  // "b-action", "theta-metric" or "simulation"
  std::string name;     // catalog name of the checked object
  std::vector<AxiomVerdict> verdicts;
  /// Sampling-plan diagnostics that do not bear on the verdicts.
  std::vector<std::string> flags;

  bool all_hold() const;
  /// Throws InvalidArgument if the axiom was not checked.
  const AxiomVerdict& at(std::string_view axiom) const;
  bool operator==(const AxiomReport&) const = default;
};

/// B1 (zero and symmetry), B2 (strict monotonicity, refutation over sampled
/// quadruples), B3 (scan-then-bisect for t with theta(t,s) = r), B4.
AxiomReport check_b_action(const BAction& action, const SamplePlan& plan);

/// theta1-theta3. Finite spaces enumerate every pair and triple and ignore
/// the plan; interval spaces use the plan's grid plus seeded random samples.
AxiomReport check_theta_metric(const ThetaMetricSpace& space, const SamplePlan& plan);

/// zeta1 exactly, zeta2 on grid and random pairs, zeta3 on the sequence
/// families of `sequences`.
AxiomReport check_simulation(const SimulationFunction& zeta, const SamplePlan& plan,
                             const SequencePlan& sequences = {});

/// Sample values used by the B-action and simulation checks: the plan grid
/// on [0, upper] followed by plan.random_count seeded values.
std::vector<double> axis_samples(const SamplePlan& plan);

/// Tail maximum of zeta(t_n, s_n) over n in [from, to] for the family
/// t_n = L(1 + alpha/n), s_n = L(1 + beta/n). Returns {max, n at max}.
std::pair<double, std::size_t> zeta_tail_max(const SimulationFunction& zeta, double limit,
                                            double alpha, double beta, std::size_t from,
                                            std::size_t to);

std::string_view to_string(Verdict v);
std::string_view to_string(Relation r);

}  // namespace thetafix
