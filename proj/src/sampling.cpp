#include "thetafix/sampling.hpp"

#include <cmath>
#include <string>

#include "thetafix/errors.hpp"
#include "thetafix/spaces.hpp"

namespace thetafix {

void SamplePlan::validate() const {
  if (!(step > 0.0) || !std::isfinite(step))
    throw ParameterError("sample plan step must be > 0, got " + format_real(step));
  if (!(upper > 0.0) || !std::isfinite(upper))
    throw ParameterError("sample plan upper bound must be > 0, got " + format_real(upper));
  if (upper / step > 1e6) throw ParameterError("sample plan grid exceeds 1e6 points");
  if (pair_points < 2) throw ParameterError("sample plan needs at least 2 pair points");
}

void SequencePlan::validate() const {
  if (limits.empty()) throw ParameterError("sequence plan needs at least one limit");
  for (double l : limits)
    if (!(l > 0.0) || !std::isfinite(l))
      throw ParameterError("sequence limit must be a finite real > 0, got " + format_real(l));
  if (coefficients.empty())
    throw ParameterError("sequence plan needs at least one approach coefficient");
  if (tail_start < 2) throw ParameterError("sequence tail must start at n >= 2");
  if (tail_length < 1) throw ParameterError("sequence tail length must be >= 1");
  for (double c : coefficients)
    if (!std::isfinite(c) || !(std::abs(c) < static_cast<double>(tail_start)))
      throw ParameterError("approach coefficient " + format_real(c) +
                           " would leave (0, inf) before the tail start");
}

std::vector<double> grid_values(double lower, double upper, double step) {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((upper - lower) / step + 1e-9));
  out.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) {
    const double v = lower + static_cast<double>(k) * step;
    if (v > upper) break;
    out.push_back(v);
  }
  if (out.empty() || out.back() < upper) {
    // land exactly on the bound instead of one ulp short of it
    if (!out.empty() && upper - out.back() < step * 1e-6)
      out.back() = upper;
    else
      out.push_back(upper);
  }
  return out;
}

std::vector<double> linspace(double lower, double upper, std::size_t count) {
  std::vector<double> out;
  if (count == 0) return out;
  if (count == 1) return {lower};
  out.reserve(count);
  const double span = upper - lower;
  for (std::size_t k = 0; k + 1 < count; ++k)
    out.push_back(lower + span * static_cast<double>(k) / static_cast<double>(count - 1));
  out.push_back(upper);
  return out;
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(seed ^ (stream * 0x9E3779B97F4A7C15ULL)) {}

double SampleStream::uniform(double lower, double upper) {
  // 53 random mantissa bits; std::uniform_real_distribution is not
  // reproducible across standard libraries.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lower + (upper - lower) * u;
}

std::vector<double> random_values(const SamplePlan& plan, double lower, double upper,
                                  std::size_t count, std::uint64_t stream) {
  SampleStream rng(plan.seed, stream);
  std::vector<double> out(count);
  for (auto& v : out) v = rng.uniform(lower, upper);
  return out;
}

}  // namespace thetafix
