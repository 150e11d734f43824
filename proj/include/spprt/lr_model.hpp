#pragma once

#include <span>
#include <vector>

namespace spprt {

/// Simple hypotheses H0: theta = theta0 vs H1: theta = theta1 about a
/// Bernoulli success probability.
class Hypotheses {
 public:
  Hypotheses(double theta0, double theta1);

  double theta0() const { return theta0_; }
  double theta1() const { return theta1_; }

  /// Per-success likelihood-ratio factor theta1 / theta0.
  double r() const { return theta1_ / theta0_; }
  /// Per-failure likelihood-ratio factor (1 - theta1) / (1 - theta0).
  double q() const { return (1.0 - theta1_) / (1.0 - theta0_); }
  double log_r() const { return log_r_; }
  double log_q() const { return log_q_; }

  /// True when a success moves the likelihood ratio up.
  bool increasing() const { return theta1_ > theta0_; }

 private:
  double theta0_;
  double theta1_;
  double log_r_;
  double log_q_;
};

/// log of r^s q^(m-s).
double log_lr_factor(const Hypotheses& hyp, int m, int s);
/// r^s q^(m-s), computed in log space.
double lr_factor(const Hypotheses& hyp, int m, int s);

/// log of the cumulative likelihood ratio after n observations with s successes.
/// The value is snapped to a 2^-36 grid so that states reached along
/// different paths compare equal, and ties at the decision threshold are
/// resolved identically everywhere.
double lattice_log_lr(const Hypotheses& hyp, long n, long s);

/// Binomial(m, theta) probabilities for s = 0..m.
std::vector<double> binomial_pmf(int m, double theta);

struct GroupOutcome {
  int successes;
  double log_lr;
  double lr;
  double prob;
  double log_prob;  // finite even where prob underflows
};

/// Distribution of the likelihood-ratio step contributed by one group of m
/// observations, under the data-generating probability theta.
class GroupOutcomeDistribution {
 public:
  GroupOutcomeDistribution(const Hypotheses& hyp, int m, double theta);

  int group_size() const { return m_; }
  double theta() const { return theta_; }
  std::span<const GroupOutcome> entries() const { return entries_; }
  const GroupOutcome& operator[](std::size_t s) const { return entries_[s]; }
  std::size_t size() const { return entries_.size(); }

  /// Outcomes with non-negligible probability, [first, last] inclusive.
  int first_support() const { return first_; }
  int last_support() const { return last_; }

 private:
  int m_;
  double theta_;
  std::vector<GroupOutcome> entries_;
  int first_ = 0;
  int last_ = 0;
};

GroupOutcomeDistribution group_distribution(const Hypotheses& hyp, int m, double theta);

/// Outcome distributions for every eligible group size under one theta.
class GroupKernel {
 public:
  GroupKernel(const Hypotheses& hyp, std::span<const int> sizes, double theta);

  std::span<const int> sizes() const { return sizes_; }
  const GroupOutcomeDistribution& at(std::size_t index) const { return dists_[index]; }
  const GroupOutcomeDistribution& for_size(int m) const;
  double theta() const { return theta_; }

 private:
  double theta_;
  std::vector<int> sizes_;
  std::vector<GroupOutcomeDistribution> dists_;
};

}  // namespace spprt
