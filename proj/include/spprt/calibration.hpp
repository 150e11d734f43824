#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "spprt/design.hpp"
#include "spprt/evaluator.hpp"

namespace spprt {

struct CalibrationSpec {
  DesignConfig base;  // multipliers in base.params are ignored
  double target_alpha = 0.05;
  double target_beta = 0.05;
  double init_lambda0 = 1.0;
  double init_lambda1 = 1.0;
  int max_iter = 200;
  double dist_tol = 0.01;
  double simplex_scale = 0.25;  // initial simplex edge in log-lambda
  bool restart_on_failure = false;

  void validate() const;
};

/// max{|alpha' - alpha| / alpha, |beta' - beta| / beta}.
double relative_distance(double alpha, double beta, double target_alpha, double target_beta);

/// Designs with the given multipliers and returns the relative distance of
/// the exact error probabilities to the targets; infinity if the design fails.
double calibration_objective(const CalibrationSpec& spec, double lambda0, double lambda1);

struct CalibrationStep {
  int evaluation;
  int iteration;
  double lambda0;
  double lambda1;
  double alpha;
  double beta;
  double objective;
};

struct CalibrationResult {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  std::optional<Plan> plan;
  TestProfile profile;
  double objective = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::vector<CalibrationStep> trace;
};

class CalibrationFailed : public std::runtime_error {
 public:
  CalibrationFailed(const std::string& what, CalibrationResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const CalibrationResult& best() const { return best_; }

 private:
  CalibrationResult best_;
};

/// Nelder-Mead search over (ln lambda0, ln lambda1).
CalibrationResult calibrate(const CalibrationSpec& spec);

}  // namespace spprt
