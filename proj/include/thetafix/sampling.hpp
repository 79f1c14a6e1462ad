#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace thetafix {

/// Where axiom and margin checks look. Same plan, same samples.
struct SamplePlan {
  double step = 0.1;            // grid spacing on [0, upper]
  double upper = 10.0;          // grid range upper bound
  std::size_t random_count = 200;
  std::uint64_t seed = 42;
  std::size_t pair_points = 101;  // equispaced points per interval domain for margins

  /// Throws ParameterError on a non-positive step/upper or fewer than 2 pair points.
  void validate() const;
  bool operator==(const SamplePlan&) const = default;
};

/// Sequence families t_n = L(1 + a/n), s_n = L(1 + b/n) for the zeta3 check.
struct SequencePlan {
  std::vector<double> limits{0.5, 1.0, 5.0};
  std::vector<double> coefficients{-1.0, 0.0, 1.0};
  std::size_t tail_start = 100;
  std::size_t tail_length = 1000;

  void validate() const;
  bool operator==(const SequencePlan&) const = default;
};

/// 0, step, 2*step, ... up to upper (upper itself is always included).
std::vector<double> grid_values(double lower, double upper, double step);

/// `count` equispaced points on [lower, upper], both ends included.
std::vector<double> linspace(double lower, double upper, std::size_t count);

/// Deterministic uniform reals in [lower, upper). `stream` separates
/// independent draws from the same plan seed.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t stream);
  double uniform(double lower, double upper);

 private:
  std::mt19937_64 engine_;
};

std::vector<double> random_values(const SamplePlan& plan, double lower, double upper,
                                  std::size_t count, std::uint64_t stream);

}  // namespace thetafix
