#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spprt/calibration.hpp"
#include "spprt/design.hpp"
#include "spprt/evaluator.hpp"

namespace spprt::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kOk = 0, kConfigError = 2, kCalibrationFailed = 3, kNumericalError = 4 };

/// Writes plan.json, design_summary.json, intervals.csv and sampling_rule.csv.
nlohmann::json cmd_design(const DesignConfig& config, const fs::path& out_dir);

struct EvaluateOptions {
  std::vector<double> thetas;
  Method method = Method::exact;
  std::optional<std::uint64_t> seed;
  long trials = 100000;
  int workers = 1;
  std::optional<double> cost_c0;
  std::optional<double> cost_cu;
  double grid_step = 0.0;
};

/// Writes report.json, report.csv and oc.csv.
nlohmann::json cmd_evaluate(const Plan& plan, const EvaluateOptions& opts, const fs::path& out_dir);

/// Writes plan.json, profile.json and calibration_trace.csv. Throws
/// CalibrationFailed after writing calibration_failed.json.
nlohmann::json cmd_calibrate(const CalibrationSpec& spec, const fs::path& out_dir);

/// Writes oc.csv.
nlohmann::json cmd_oc(const Plan& plan, const std::vector<double>& thetas, int workers, const fs::path& out_dir);

nlohmann::json cmd_simulate(const Plan& plan, double theta, const EvaluateOptions& opts, const fs::path& out_dir);

/// Fixed-sample comparison for one plan; targets default to its achieved errors.
nlohmann::json cmd_compare_fss(const Plan& plan, std::optional<double> alpha, std::optional<double> beta);
/// Same comparison from a saved evaluation report.
nlohmann::json cmd_compare_fss(const nlohmann::json& report, std::optional<double> alpha,
                               std::optional<double> beta);

struct SweepOptions {
  double ln_lambda_min = 3.0;
  double ln_lambda_max = 6.3;
  int points = 9;
  double lambda_unit = 1.0;  // lambda = unit * exp(grid value)
  int workers = 1;
};

/// Writes efficiency_grid.csv with one row per (lambda0, lambda1) pair.
nlohmann::json cmd_compare_fss_sweep(const DesignConfig& base, const SweepOptions& opts, const fs::path& out_dir);

/// Group sizes and success counts observed so far, in order.
using History = std::vector<std::pair<int, int>>;
History parse_history(const std::string& text);

nlohmann::json cmd_next(const Plan& plan, const History& history);

/// Writes intervals.csv, sampling_rule.csv and envelopes.csv.
nlohmann::json cmd_export_plan(const Plan& plan, const fs::path& out_dir);

/// Parses arguments, dispatches, and maps errors to exit codes.
int run(int argc, char** argv);

}  // namespace spprt::cli
