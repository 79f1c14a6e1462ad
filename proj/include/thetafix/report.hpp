#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetafix/axioms.hpp"
#include "thetafix/contraction.hpp"
#include "thetafix/experiment.hpp"
#include "thetafix/picard.hpp"

namespace thetafix {

inline constexpr int kReportSchemaVersion = 1;

/// Version stamp written into every report.
std::string_view library_version();

/// One Picard run with the diagnostics computed on its trace.
struct FixedPointRun {
  FixedPointResult result;
  /// Absent when the trace has fewer than 2 steps.
  std::optional<RegularityReport> regularity;
  std::vector<double> cauchy;

  bool operator==(const FixedPointRun&) const = default;
};

struct RunReport {
  int schema_version = kReportSchemaVersion;
  std::string version;
  Experiment experiment;
  std::vector<AxiomReport> axioms;
  std::optional<MarginReport> z_margin;
  std::optional<MarginReport> modified_z_margin;
  std::optional<MarginReport> contractivity;
  std::vector<FixedPointRun> runs;
  std::optional<UniquenessVerdict> uniqueness;
  /// Every verdict the mode asks for came out hold / nonnegative / converged.
  bool passed = false;
  double wall_time_ms = 0.0;

  bool operator==(const RunReport&) const = default;
};

/// Runs the pipeline selected by exp.mode:
///   verify-axioms       B-action, theta-metric and (if present) zeta axioms
///   certify-z           z_margin and contractivity_check
///   certify-modified-z  modified_z_margin
///   solve               picard_iterate from every start, regularity, C_n,
///                       uniqueness (with >= 2 starts)
///   full                all of the above
RunReport run_experiment(const Experiment& exp);

enum class ReportFormat { Json, Human };

std::string emit_report(const RunReport& report, ReportFormat format);
/// Inverse of emit_report(report, ReportFormat::Json).
RunReport parse_report_json(std::string_view json);

/// Columns n, x_n, d_n with one row per Picard step; finite points are
/// written by label.
std::string emit_trace_csv(const FixedPointResult& result, const PointDomain& domain);

}  // namespace thetafix
