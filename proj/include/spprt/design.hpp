#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spprt/envelope.hpp"
#include "spprt/lr_model.hpp"

namespace spprt {

/// Cost c(m) of observing one group of m items.
class CostModel {
 public:
  /// c(m) = c0 + cu * m.
  static CostModel affine(double c0, double cu);
  /// Explicit c(m) for each listed m.
  static CostModel table(std::map<int, double> costs);

  double operator()(int m) const;
  bool is_affine() const { return affine_; }
  double c0() const { return c0_; }
  double cu() const { return cu_; }
  const std::map<int, double>& entries() const { return table_; }

  /// Positive and strictly increasing over the eligible sizes.
  void validate_for_design(const std::vector<int>& sizes) const;

 private:
  CostModel() = default;
  bool affine_ = true;
  double c0_ = 0.0;
  double cu_ = 0.0;
  std::map<int, double> table_;
};

struct DesignConfig {
  Hypotheses hyp;
  std::vector<int> group_sizes;
  CostModel cost;
  double gamma = 0.5;
  StopRiskParams params;
  int horizon = 2;  // maximum number of groups, K
  double grid_step = 0.1;
  double bisect_tol = 1e-9;
  double bracket_cap = 200.0;

  void validate() const;
};

/// 1 + gamma (z - 1): the likelihood-ratio weighting of the per-group cost.
inline double weighted_cost_factor(double gamma, double z) { return 1.0 + gamma * (z - 1.0); }

/// E_0 U(z * Z_m) for U = env, using a precomputed H0 outcome distribution.
double apply_cost_operator(const Envelope& env, const GroupOutcomeDistribution& dist0, double z);
double apply_cost_operator(const Envelope& env, int m, double z, const Hypotheses& hyp);

struct ContinuationChoice {
  double value;
  int group_size;
};

/// min over m of c(m)(1 + gamma(z - 1)) + E_0 prev(z Z_m); ties go to the
/// smallest m. kernel0 must hold the H0 distributions of config.group_sizes.
ContinuationChoice continuation_value(const DesignConfig& config, const GroupKernel& kernel0,
                                      const Envelope& prev, double z);
ContinuationChoice continuation_value(const DesignConfig& config, const Envelope& prev, double z);

std::optional<Interval> find_continuation_interval(const DesignConfig& config, const GroupKernel& kernel0,
                                                   const Envelope& prev);
std::optional<Interval> find_continuation_interval(const DesignConfig& config, const Envelope& prev);

/// Frozen output of the backward-induction design.
///
/// Allowance j is the number of further groups the plan may still take.
/// envelope(j) approximates the value function with j groups in reserve;
/// envelope(0) is the stop risk itself.
class Plan {
 public:
  Plan(DesignConfig config, int effective_horizon, std::vector<Envelope> envelopes, int first_group,
       std::vector<std::string> warnings = {});

  const DesignConfig& config() const { return config_; }
  int effective_horizon() const { return k_eff_; }
  int first_group() const { return m1_; }
  double threshold() const { return config_.params.threshold(); }
  bool early_exit() const { return k_eff_ < config_.horizon; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  const Envelope& envelope(int allowance) const;
  std::optional<Interval> interval(int allowance) const;

  /// Group size to take next with `allowance` groups in reserve at
  /// likelihood ratio z, or 0 to stop.
  int sampling_rule(int allowance, double z) const;
  /// 1 accepts H1 (lambda0 <= lambda1 z), 0 accepts H0.
  int decide(double z) const;

  const GroupKernel& kernel0() const { return *kernel0_; }

 private:
  DesignConfig config_;
  int k_eff_;
  std::vector<Envelope> envelopes_;
  int m1_;
  std::vector<std::string> warnings_;
  std::shared_ptr<const GroupKernel> kernel0_;
};

/// Backward induction with grid interpolation.
Plan niod(const DesignConfig& config);

/// argmin_m { c(m) + E_0 env(Z_m) }: the size of the first group.
int first_group_size(const DesignConfig& config, const GroupKernel& kernel0, const Envelope& env);

/// Memoized sampling rule on lattice states (n observations, s successes).
/// Safe to share between threads.
class RuleCache {
 public:
  explicit RuleCache(const Plan& plan) : plan_(plan) {}

  int rule(int allowance, long n, long s);
  const Plan& plan() const { return plan_; }

 private:
  const Plan& plan_;
  std::mutex mutex_;
  std::unordered_map<std::uint64_t, int> cache_;
};

}  // namespace spprt
