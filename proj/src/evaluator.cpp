#include "spprt/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "spprt/errors.hpp"

namespace spprt {

std::string to_string(Method m) {
  switch (m) {
    case Method::exact:
      return "exact";
    case Method::grid:
      return "grid";
    case Method::mc:
      return "mc";
  }
  return "exact";
}

Method method_from_string(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "grid") return Method::grid;
  if (name == "mc") return Method::mc;
  throw ConfigError("unknown evaluation method '" + name + "' (expected exact, grid or mc)");
}

namespace {

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("evaluation theta must lie in (0, 1)");
}

// Probability mass over success counts for one cumulative sample size.
struct LatticeRow {
  long s0 = 0;
  std::vector<double> mass;

  void add(long s, std::span<const double> pmf, double weight) {
    const long s_end = s + static_cast<long>(pmf.size());
    if (mass.empty()) {
      s0 = s;
      mass.assign(pmf.size(), 0.0);
    } else if (s < s0 || s_end > s0 + static_cast<long>(mass.size())) {
      const long new_s0 = std::min(s0, s);
      const long new_end = std::max(s0 + static_cast<long>(mass.size()), s_end);
      std::vector<double> grown(static_cast<std::size_t>(new_end - new_s0), 0.0);
      std::copy(mass.begin(), mass.end(), grown.begin() + (s0 - new_s0));
      mass.swap(grown);
      s0 = new_s0;
    }
    double* dst = mass.data() + (s - s0);
    for (std::size_t i = 0; i < pmf.size(); ++i) dst[i] += weight * pmf[i];
  }
};

using Frontier = std::map<long, LatticeRow>;

std::vector<std::vector<double>> pmf_table(const GroupKernel& kernel) {
  std::vector<std::vector<double>> table;
  for (std::size_t i = 0; i < kernel.sizes().size(); ++i) {
    std::vector<double> p;
    for (const auto& e : kernel.at(i).entries()) p.push_back(e.prob);
    table.push_back(std::move(p));
  }
  return table;
}

std::size_t size_index(const Plan& plan, int m) {
  const auto& sizes = plan.config().group_sizes;
  return static_cast<std::size_t>(std::lower_bound(sizes.begin(), sizes.end(), m) - sizes.begin());
}

}  // namespace

OperatingPoint evaluate_exact(const Plan& plan, double theta, const CostModel& cost, const ExactOptions& opts) {
  require_theta(theta);
  const auto& hyp = plan.config().hyp;
  const GroupKernel kernel(hyp, plan.config().group_sizes, theta);
  const auto pmfs = pmf_table(kernel);
  RuleCache rules(plan);
  const double log_threshold = std::log(plan.threshold());

  OperatingPoint out;
  out.theta = theta;
  out.method = Method::exact;
  const int m1 = plan.first_group();
  out.expected_cost = cost(m1);
  out.expected_groups = 1.0;
  out.expected_observations = m1;

  Frontier frontier;
  frontier[m1].add(0, pmfs[size_index(plan, m1)], 1.0);
  double settled = 0.0;  // stopped or pruned so far

  for (int allowance = plan.effective_horizon() - 1; allowance >= 0; --allowance) {
    Frontier next;
    for (const auto& [n, row] : frontier) {
      for (std::size_t i = 0; i < row.mass.size(); ++i) {
        const double p = row.mass[i];
        if (p == 0.0) continue;
        const long s = row.s0 + static_cast<long>(i);
        if (p < opts.prune) {
          out.pruned_mass += p;
          settled += p;
          continue;
        }
        const int m = rules.rule(allowance, n, s);
        if (opts.transitions) opts.transitions->push_back({allowance, n, s, m});
        if (m == 0) {
          const double lz = lattice_log_lr(hyp, n, s);
          if (plan.decide(std::exp(lz)) == 0) out.p_accept_h0 += p;
          if (std::abs(lz - log_threshold) < 1e-12) out.tie_stop_mass += p;
          settled += p;
          continue;
        }
        out.expected_cost += p * cost(m);
        out.expected_groups += p;
        out.expected_observations += p * m;
        next[n + m].add(s, pmfs[size_index(plan, m)], p);
      }
    }
    double live = 0.0;
    for (const auto& [n, row] : next) {
      for (double p : row.mass) live += p;
    }
    out.mass_defect = std::max(out.mass_defect, std::abs(settled + live - 1.0));
    frontier.swap(next);
  }
  return out;
}

OperatingPoint evaluate_exact(const Plan& plan, double theta) {
  return evaluate_exact(plan, theta, plan.config().cost);
}

namespace {

// Grid representation of the acceptance-probability and future-cost
// functions at one allowance.
struct GridLevel {
  std::optional<Interval> interval;
  std::vector<double> nodes;
  std::vector<double> accept;  // P(accept H0 eventually)
  std::vector<double> cost;    // expected future cost
  std::vector<double> groups;
  std::vector<double> obs;
};

struct GridValue {
  double accept;
  double cost;
  double groups;
  double obs;
};

GridValue grid_eval(const GridLevel& level, const Plan& plan, double z) {
  if (!level.interval || !level.interval->contains(z)) {
    return {plan.decide(z) == 0 ? 1.0 : 0.0, 0.0, 0.0, 0.0};
  }
  const auto& x = level.nodes;
  auto it = std::upper_bound(x.begin(), x.end(), z);
  std::size_t hi = static_cast<std::size_t>(it - x.begin());
  if (hi >= x.size()) hi = x.size() - 1;
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double t = (z - x[lo]) / (x[hi] - x[lo]);
  auto lerp = [&](const std::vector<double>& v) { return v[lo] + t * (v[hi] - v[lo]); };
  return {lerp(level.accept), lerp(level.cost), lerp(level.groups), lerp(level.obs)};
}

GridValue expect_next(const GridLevel& level, const Plan& plan, const GroupOutcomeDistribution& dist, double z) {
  GridValue acc{0.0, 0.0, 0.0, 0.0};
  for (int s = dist.first_support(); s <= dist.last_support(); ++s) {
    const auto& e = dist[static_cast<std::size_t>(s)];
    const auto v = grid_eval(level, plan, z * e.lr);
    acc.accept += e.prob * v.accept;
    acc.cost += e.prob * v.cost;
    acc.groups += e.prob * v.groups;
    acc.obs += e.prob * v.obs;
  }
  return acc;
}

}  // namespace

OperatingPoint evaluate_grid(const Plan& plan, double theta, const CostModel& cost, const GridOptions& opts) {
  require_theta(theta);
  const double step = opts.step > 0.0 ? opts.step : 0.1 * plan.config().grid_step;
  const GroupKernel kernel(plan.config().hyp, plan.config().group_sizes, theta);

  GridLevel level;  // allowance 0: stop everywhere
  for (int allowance = 1; allowance < plan.effective_horizon(); ++allowance) {
    GridLevel up;
    up.interval = plan.interval(allowance);
    if (up.interval) {
      up.nodes = build_log_grid(up.interval->a, up.interval->b, step);
      const std::size_t count = up.nodes.size();
      up.accept.resize(count);
      up.cost.resize(count);
      up.groups.resize(count);
      up.obs.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double z = up.nodes[i];
        const int m = plan.sampling_rule(allowance, z);
        const auto v = expect_next(level, plan, kernel.for_size(m), z);
        up.accept[i] = v.accept;
        up.cost[i] = cost(m) + v.cost;
        up.groups[i] = 1.0 + v.groups;
        up.obs[i] = m + v.obs;
      }
    }
    level = std::move(up);
  }

  const int m1 = plan.first_group();
  const auto v = expect_next(level, plan, kernel.for_size(m1), 1.0);
  OperatingPoint out;
  out.theta = theta;
  out.method = Method::grid;
  out.p_accept_h0 = v.accept;
  out.expected_cost = cost(m1) + v.cost;
  out.expected_groups = 1.0 + v.groups;
  out.expected_observations = m1 + v.obs;
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Trajectory {
  double cost = 0.0;
  long groups = 0;
  long obs = 0;
  bool accept_h0 = false;
};

Trajectory run_trial(RuleCache& rules, const CostModel& cost, double theta, std::uint64_t seed, long trial) {
  const Plan& plan = rules.plan();
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
  Trajectory t;
  long successes = 0;
  int m = plan.first_group();
  int allowance = plan.effective_horizon();
  while (m > 0) {
    std::binomial_distribution<long> draw(m, theta);
    successes += draw(rng);
    t.obs += m;
    t.cost += cost(m);
    ++t.groups;
    --allowance;
    m = rules.rule(allowance, t.obs, successes);
  }
  const double z = std::exp(lattice_log_lr(plan.config().hyp, t.obs, successes));
  t.accept_h0 = plan.decide(z) == 0;
  return t;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

}  // namespace

OperatingPoint simulate(const Plan& plan, double theta, const CostModel& cost, const SimulationOptions& opts) {
  require_theta(theta);
  if (opts.trials < 1) throw DomainError("simulation needs at least one trial");
  const auto trials = static_cast<std::size_t>(opts.trials);
  std::vector<Trajectory> results(trials);
  RuleCache rules(plan);

  const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(trials)));
  auto run_block = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = run_trial(rules, cost, theta, opts.seed, static_cast<long>(i));
    }
  };
  if (workers == 1) {
    run_block(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (trials + workers - 1) / static_cast<std::size_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(trials, chunk * static_cast<std::size_t>(w));
      const std::size_t end = std::min(trials, begin + chunk);
      pool.emplace_back(run_block, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  // Reduce in trial order so the result is independent of the worker count.
  std::vector<double> accept(trials), costs(trials), groups(trials), obs(trials);
  OperatingPoint out;
  out.theta = theta;
  out.method = Method::mc;
  out.min_groups = results.front().groups;
  out.max_groups = results.front().groups;
  for (std::size_t i = 0; i < trials; ++i) {
    accept[i] = results[i].accept_h0 ? 1.0 : 0.0;
    costs[i] = results[i].cost;
    groups[i] = static_cast<double>(results[i].groups);
    obs[i] = static_cast<double>(results[i].obs);
    out.min_groups = std::min(out.min_groups, results[i].groups);
    out.max_groups = std::max(out.max_groups, results[i].groups);
  }
  out.p_accept_h0 = mean_of(accept);
  out.expected_cost = mean_of(costs);
  out.expected_groups = mean_of(groups);
  out.expected_observations = mean_of(obs);
  out.stderr_ = OperatingPoint::StdErr{stderr_of(accept, out.p_accept_h0), stderr_of(costs, out.expected_cost),
                                       stderr_of(groups, out.expected_groups),
                                       stderr_of(obs, out.expected_observations)};
  return out;
}

std::vector<OcPoint> oc_curve(const Plan& plan, std::span<const double> thetas, int workers) {
  std::vector<OcPoint> out(thetas.size());
  auto run = [&](std::size_t i) {
    out[i].theta = thetas[i];
    try {
      out[i].p_accept_h0 = evaluate_exact(plan, thetas[i]).p_accept_h0;
    } catch (const DomainError& e) {
      out[i].p_accept_h0 = std::nan("");
      out[i].error = e.what();
    }
  };
  workers = std::max(1, workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < thetas.size(); ++i) run(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < thetas.size(); i += static_cast<std::size_t>(workers)) {
        run(i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

TestProfile profile(const Plan& plan, Method method, const CostModel* cost, const SimulationOptions& sim,
                    const GridOptions& grid) {
  const CostModel& c = cost ? *cost : plan.config().cost;
  const auto& hyp = plan.config().hyp;
  auto run = [&](double theta) {
    switch (method) {
      case Method::grid:
        return evaluate_grid(plan, theta, c, grid);
      case Method::mc:
        return simulate(plan, theta, c, sim);
      case Method::exact:
        break;
    }
    return evaluate_exact(plan, theta, c);
  };
  const auto h0 = run(hyp.theta0());
  const auto h1 = run(hyp.theta1());
  TestProfile p;
  p.method = method;
  p.alpha = 1.0 - h0.p_accept_h0;
  p.beta = h1.p_accept_h0;
  p.asc0 = h0.expected_cost;
  p.asc1 = h1.expected_cost;
  const double gamma = plan.config().gamma;
  p.asc_gamma = (1.0 - gamma) * p.asc0 + gamma * p.asc1;
  p.exp_groups0 = h0.expected_groups;
  p.exp_groups1 = h1.expected_groups;
  p.exp_obs0 = h0.expected_observations;
  p.exp_obs1 = h1.expected_observations;
  p.under_h0 = h0;
  p.under_h1 = h1;
  return p;
}

}  // namespace spprt
