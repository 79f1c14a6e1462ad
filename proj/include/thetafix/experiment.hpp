#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetafix/catalog.hpp"
#include "thetafix/picard.hpp"
#include "thetafix/sampling.hpp"
#include "thetafix/spaces.hpp"

namespace thetafix {

enum class Mode { VerifyAxioms, CertifyZ, CertifyModifiedZ, Solve, Full };

std::string_view to_string(Mode m);
/// Throws UnknownKind for an unrecognised mode name.
Mode mode_from_string(std::string_view name);

struct SpaceSpec {
  bool finite = false;
  double lower = 0.0;  // interval only
  double upper = 1.0;
  std::string metric = "euclidean";
  std::vector<std::string> labels;  // finite only
  std::vector<double> table;        // finite only, row-major
  std::string action = "sum";
  std::vector<double> action_params;

  bool operator==(const SpaceSpec&) const = default;
};

struct MapSpec {
  std::string kind;
  std::vector<double> params;
  std::vector<std::string> image;  // finite-table: image label of each domain label

  bool operator==(const MapSpec&) const = default;
};

struct ZetaSpec {
  std::string kind;
  std::vector<double> params;
  std::string aux;

  bool operator==(const ZetaSpec&) const = default;
};

/// One config file: a space, optional map and simulation function, a mode,
/// and the sampling/solver settings.
struct Experiment {
  std::string name = "experiment";
  Mode mode = Mode::Full;
  SpaceSpec space;
  std::optional<MapSpec> map;
  std::optional<ZetaSpec> zeta;
  SamplePlan plan;
  SequencePlan sequences;
  double tol = kDefaultSolveTolerance;
  std::size_t max_iter = kDefaultMaxIterations;
  /// Explicit start points; when empty, start_grid equispaced points of an
  /// interval (default 11) or every label of a finite domain are used.
  std::vector<Point> starts;
  std::size_t start_grid = 0;

  bool operator==(const Experiment&) const = default;
};

/// The catalog objects an Experiment names.
struct Resolved {
  ThetaMetricSpace space;
  std::optional<SelfMap> map;
  std::optional<SimulationFunction> zeta;
  std::vector<Point> starts;
};

/// Builds the space, map, simulation function and start list. Throws the
/// catalog's UnknownKind / ParameterError, or InvalidArgument when the mode
/// needs a map or zeta that the experiment lacks.
Resolved resolve(const Experiment& exp);

/// Parses the sectioned key-value config format (grammar in README.md).
/// Throws ParseError (with line number) for syntax errors, unknown sections
/// or keys, duplicate keys and malformed values; catalog errors propagate
/// as UnknownKind / ParameterError.
Experiment parse_experiment(std::string_view text);

/// Writes `exp` in the config format; parse_experiment of the result
/// reproduces `exp`.
std::string emit_experiment(const Experiment& exp);

/// Parses a real: a decimal literal or a ratio "p/q" of two decimals.
std::optional<double> parse_real(std::string_view token);

}  // namespace thetafix
