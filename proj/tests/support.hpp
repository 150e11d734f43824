#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "spprt/design.hpp"
#include "spprt/evaluator.hpp"

namespace spprt::testing {

inline DesignConfig make_config(double theta0, double theta1, std::vector<int> sizes, CostModel cost, double gamma,
                                double lambda0, double lambda1, int horizon, double h = 0.1) {
  DesignConfig c{Hypotheses(theta0, theta1), std::move(sizes), std::move(cost)};
  c.gamma = gamma;
  c.params = {lambda0, lambda1};
  c.horizon = horizon;
  c.grid_step = h;
  return c;
}

inline std::vector<int> range_sizes(int lo, int hi, int step = 1) {
  std::vector<int> v;
  for (int m = lo; m <= hi; m += step) v.push_back(m);
  return v;
}

// The running example with raw costs c(m) = 1000 + 10 m.
inline DesignConfig majority_config(double lambda0 = 44000.0, double lambda1 = 44000.0) {
  return make_config(0.52, 0.48, range_sizes(10, 600, 10), CostModel::affine(1000.0, 10.0), 0.5, lambda0, lambda1,
                     15, 0.1);
}

// Clinical-trial design: theta 0.3 vs 0.5, one to forty patients per group.
inline DesignConfig trial_config(int horizon, double lambda0, double lambda1) {
  return make_config(0.3, 0.5, range_sizes(1, 40), CostModel::affine(0.0, 1.0), 0.99, lambda0, lambda1, horizon,
                     0.05);
}

// hyp(0.2, 0.8), G = {1, 2}, c(m) = 0.05 m, gamma = 0, unit multipliers.
inline DesignConfig micro_config(int horizon) {
  return make_config(0.2, 0.8, {1, 2}, CostModel::affine(0.0, 0.05), 0.0, 1.0, 1.0, horizon, 0.1);
}

struct PathTotals {
  double p_accept_h0 = 0.0;
  double cost = 0.0;
  double groups = 0.0;
  double observations = 0.0;
  double mass = 0.0;
};

// Brute-force path enumeration without state merging or caching: every
// outcome sequence is followed to its stop with its own probability.
inline PathTotals enumerate_paths(const Plan& plan, double theta, const CostModel& cost) {
  const auto& hyp = plan.config().hyp;
  PathTotals t;
  std::function<void(int, long, long, double, double, int)> walk = [&](int allowance, long n, long s, double p,
                                                                        double paid, int groups) {
    const double z = std::exp(lattice_log_lr(hyp, n, s));
    const int m = allowance == 0 ? 0 : plan.sampling_rule(allowance, z);
    if (m == 0) {
      if (plan.decide(z) == 0) t.p_accept_h0 += p;
      t.cost += p * paid;
      t.groups += p * groups;
      t.observations += p * static_cast<double>(n);
      t.mass += p;
      return;
    }
    const auto pmf = binomial_pmf(m, theta);
    for (int k = 0; k <= m; ++k) {
      if (pmf[k] == 0.0) continue;
      walk(allowance - 1, n + m, s + k, p * pmf[k], paid + cost(m), groups + 1);
    }
  };
  const int m1 = plan.first_group();
  const auto pmf = binomial_pmf(m1, theta);
  for (int k = 0; k <= m1; ++k) walk(plan.effective_horizon() - 1, m1, k, pmf[k], cost(m1), 1);
  return t;
}

// Small random design with at least one continuation level: K <= 4, max(G) <= 20.
struct RandomConfigs {
  explicit RandomConfigs(std::uint64_t seed) : rng(seed) {}

  DesignConfig next() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
      double t0 = 0.15 + 0.6 * u(rng);
      double t1 = t0 + (u(rng) < 0.5 ? -1.0 : 1.0) * (0.1 + 0.2 * u(rng));
      if (t1 <= 0.05 || t1 >= 0.95) continue;
      const int max_g = 4 + static_cast<int>(u(rng) * 17);  // 4..20
      const int step = 1 + static_cast<int>(u(rng) * 3);
      auto sizes = range_sizes(step, max_g, step);
      const double c0 = u(rng) < 0.5 ? 0.0 : 2.0 * u(rng);
      const double lam0 = std::exp(2.0 + 2.5 * u(rng));
      const double lam1 = lam0 * std::exp(-1.0 + 2.0 * u(rng));
      const int k = 2 + static_cast<int>(u(rng) * 3);  // 2..4
      const double gamma = u(rng);
      auto c = make_config(t0, t1, sizes, CostModel::affine(c0, 1.0), gamma, lam0, lam1, k, 0.05);
      try {
        if (niod(c).effective_horizon() < 2) continue;
      } catch (const std::exception&) {
        continue;
      }
      return c;
    }
  }

  std::mt19937_64 rng;
};

}  // namespace spprt::testing
