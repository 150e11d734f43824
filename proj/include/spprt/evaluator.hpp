#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spprt/design.hpp"

namespace spprt {

enum class Method { exact, grid, mc };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

/// Operating characteristics of a plan under one data-generating theta.
struct OperatingPoint {
  double theta = 0.0;
  double p_accept_h0 = 0.0;
  double expected_cost = 0.0;
  double expected_groups = 0.0;
  double expected_observations = 0.0;
  Method method = Method::exact;

  // exact only
  double pruned_mass = 0.0;
  double mass_defect = 0.0;     // worst per-stage deviation from total mass 1
  double tie_stop_mass = 0.0;   // mass stopped exactly at the decision threshold

  // mc only: standard errors of the four estimates
  struct StdErr {
    double p_accept_h0 = 0.0;
    double cost = 0.0;
    double groups = 0.0;
    double observations = 0.0;
  };
  std::optional<StdErr> stderr_;
  long min_groups = 0;
  long max_groups = 0;
};

/// One lattice transition taken by the forward enumeration.
struct LatticeTransition {
  int allowance;  // groups still permitted before the action
  long n;
  long s;
  int action;     // group size taken, or 0 for stop
};

struct ExactOptions {
  /// States with probability below this are dropped and their mass tallied.
  double prune = 0.0;
  /// When set, receives every distinct state visited and the action taken.
  std::vector<LatticeTransition>* transitions = nullptr;
};

OperatingPoint evaluate_exact(const Plan& plan, double theta, const CostModel& cost, const ExactOptions& opts = {});
OperatingPoint evaluate_exact(const Plan& plan, double theta);

struct GridOptions {
  /// Log-z step of the evaluation grid; 0 uses a tenth of the design step.
  /// Acceptance probabilities jump wherever the rule changes, so they need a
  /// finer grid than the concave value function.
  double step = 0.0;
};

OperatingPoint evaluate_grid(const Plan& plan, double theta, const CostModel& cost, const GridOptions& opts = {});

struct SimulationOptions {
  long trials = 100000;
  std::uint64_t seed = 0;
  int workers = 1;
};

OperatingPoint simulate(const Plan& plan, double theta, const CostModel& cost, const SimulationOptions& opts);

struct OcPoint {
  double theta;
  double p_accept_h0;
  std::optional<std::string> error;
};

/// P_theta(accept H0) by exact enumeration; out-of-range thetas are
/// reported per point instead of aborting the sweep.
std::vector<OcPoint> oc_curve(const Plan& plan, std::span<const double> thetas, int workers = 1);

/// Summary under both hypotheses.
struct TestProfile {
  double alpha = 0.0;
  double beta = 0.0;
  double asc0 = 0.0;
  double asc1 = 0.0;
  double asc_gamma = 0.0;
  double exp_groups0 = 0.0;
  double exp_groups1 = 0.0;
  double exp_obs0 = 0.0;
  double exp_obs1 = 0.0;
  Method method = Method::exact;
  std::vector<OcPoint> oc;
  std::optional<OperatingPoint> under_h0;
  std::optional<OperatingPoint> under_h1;
};

/// alpha, beta, ASC and sample-size summaries under H0 and H1. The
/// evaluation cost defaults to the design cost.
TestProfile profile(const Plan& plan, Method method = Method::exact, const CostModel* cost = nullptr,
                    const SimulationOptions& sim = {}, const GridOptions& grid = {});

}  // namespace spprt
