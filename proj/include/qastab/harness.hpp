#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qastab/defect.hpp"
#include "qastab/direct.hpp"

namespace qastab {

inline constexpr const char* kToolVersion = "1.0.0";

struct ExperimentConfig {
  std::string function_spec;
  Equation equation = Equation::mixed;
  std::vector<Point> points;
  Strategy strategy = Strategy::forward;
  double tol = 1e-10;
  int n_max = 24;
  /// "empirical", or a control spec (const:EPS, power:THETA,P, custom:FILE).
  std::string control = "empirical";
  std::uint64_t seed = 0;
  std::string csv_path;
  std::string json_path;
  /// Random pairs for the summary sup_defect.
  std::size_t pairs = 1000;
  Interval range{-10.0, 10.0};
};

/// Sets one field from its textual value; keys are the field names.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Flat key=value file; '#' starts a comment, blank lines are skipped.
ExperimentConfig load_config(const std::string& path);

/// Throws InvalidArgument if the config breaks an invariant.
void validate(const ExperimentConfig& cfg);

/// Comma-separated scalars as one-dimensional points.
std::vector<Point> parse_points(std::string_view s);

struct ExperimentRow {
  Point point = Point::zero(1);
  Point q_estimate = Point::zero(1);
  Point a_estimate = Point::zero(1);
  /// ||(f_e(x) - Q(x)) + (f_o(x) - A(x))||
  double residual = 0.0;
  /// Telescoped rhs of both components at their n_used.
  double bound_empirical = 0.0;
  /// Component series for Constant/Power controls; absent otherwise or when
  /// a series diverges.
  std::optional<double> bound_theoretical;
  bool within_bound = false;
  int n_used = 0;
  bool converged = false;

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct ExperimentSummary {
  double sup_defect = 0.0;
  std::string equation;
  std::string strategy;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string function_spec;
  std::string control;
  bool all_converged = false;
  bool all_within_bound = false;

  friend bool operator==(const ExperimentSummary&, const ExperimentSummary&) = default;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  ExperimentSummary summary;

  /// 0 iff every point converged and is within bound, 2 otherwise.
  int exit_status() const noexcept;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

inline constexpr double kWithinBoundSlack = 1e-8;

ExperimentReport run_experiment(const ExperimentConfig& cfg);

std::string report_csv(const ExperimentReport& report);
std::string report_json(const ExperimentReport& report);
ExperimentReport parse_report_json(std::string_view text);

/// Writes each non-empty path; throws Io on failure.
void emit_report(const ExperimentReport& report, const std::string& csv_path,
                 const std::string& json_path);

ExperimentReport read_report_json(const std::string& path);

}  // namespace qastab
