#include "spprt/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spprt/errors.hpp"

namespace spprt {

CostModel CostModel::affine(double c0, double cu) {
  if (!(c0 >= 0.0) || !(cu >= 0.0) || !std::isfinite(c0) || !std::isfinite(cu)) {
    throw ConfigError("affine cost needs finite c0 >= 0 and cu >= 0");
  }
  CostModel c;
  c.affine_ = true;
  c.c0_ = c0;
  c.cu_ = cu;
  return c;
}

CostModel CostModel::table(std::map<int, double> costs) {
  if (costs.empty()) throw ConfigError("cost table is empty");
  for (const auto& [m, v] : costs) {
    if (m < 1) throw ConfigError("cost table keys must be positive group sizes");
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("cost table values must be finite and nonnegative");
  }
  CostModel c;
  c.affine_ = false;
  c.table_ = std::move(costs);
  return c;
}

double CostModel::operator()(int m) const {
  if (affine_) return c0_ + cu_ * m;
  const auto it = table_.find(m);
  if (it == table_.end()) throw DomainError("no cost defined for group size " + std::to_string(m));
  return it->second;
}

void CostModel::validate_for_design(const std::vector<int>& sizes) const {
  double prev = -std::numeric_limits<double>::infinity();
  for (int m : sizes) {
    const double c = (*this)(m);
    if (!(c > 0.0)) throw ConfigError("cost c(" + std::to_string(m) + ") must be positive");
    if (!(c > prev)) throw ConfigError("cost must be strictly increasing over the eligible group sizes");
    prev = c;
  }
}

void DesignConfig::validate() const {
  if (group_sizes.empty()) throw ConfigError("groupSizes must not be empty");
  for (std::size_t i = 0; i < group_sizes.size(); ++i) {
    if (group_sizes[i] < 1) throw ConfigError("groupSizes must be positive integers");
    if (i > 0 && group_sizes[i] <= group_sizes[i - 1]) {
      throw ConfigError("groupSizes must be sorted and distinct");
    }
  }
  cost.validate_for_design(group_sizes);
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (horizon < 1 || horizon > 4096) throw ConfigError("K must lie in [1, 4096]");
  if (!(grid_step > 0.0)) throw ConfigError("gridStep must be positive");
  if (!(bisect_tol > 0.0)) throw ConfigError("bisectTol must be positive");
  if (!(bracket_cap > 0.0)) throw ConfigError("bracketCap must be positive");
}

double apply_cost_operator(const Envelope& env, const GroupOutcomeDistribution& dist0, double z) {
  double total = 0.0;
  const auto entries = dist0.entries();
  for (int s = dist0.first_support(); s <= dist0.last_support(); ++s) {
    const auto& e = entries[static_cast<std::size_t>(s)];
    total += e.prob * env.eval(z * e.lr);
  }
  return total;
}

double apply_cost_operator(const Envelope& env, int m, double z, const Hypotheses& hyp) {
  if (!(z > 0.0)) throw DomainError("cost operator needs z > 0");
  return apply_cost_operator(env, GroupOutcomeDistribution(hyp, m, hyp.theta0()), z);
}

ContinuationChoice continuation_value(const DesignConfig& config, const GroupKernel& kernel0,
                                      const Envelope& prev, double z) {
  const double factor = weighted_cost_factor(config.gamma, z);
  ContinuationChoice best{std::numeric_limits<double>::infinity(), 0};
  const auto sizes = kernel0.sizes();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double v = config.cost(sizes[i]) * factor + apply_cost_operator(prev, kernel0.at(i), z);
    if (v < best.value) best = {v, sizes[i]};
  }
  return best;
}

ContinuationChoice continuation_value(const DesignConfig& config, const Envelope& prev, double z) {
  if (!(z > 0.0)) throw DomainError("continuation value needs z > 0");
  const GroupKernel kernel0(config.hyp, config.group_sizes, config.hyp.theta0());
  return continuation_value(config, kernel0, prev, z);
}

namespace {

// g(z) - C(z) at z = e^lz; positive where another group beats stopping.
double continuation_gain(const DesignConfig& config, const GroupKernel& kernel0, const Envelope& prev,
                         double lz) {
  const double z = std::exp(lz);
  return stop_risk(config.params, z) - continuation_value(config, kernel0, prev, z).value;
}

// Root of the gain between a log-z where it is positive and one where it is not.
double bisect_boundary(const DesignConfig& config, const GroupKernel& kernel0, const Envelope& prev,
                       double inside, double outside) {
  while (std::abs(outside - inside) > config.bisect_tol) {
    const double mid = 0.5 * (inside + outside);
    if (continuation_gain(config, kernel0, prev, mid) > 0.0) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace

std::optional<Interval> find_continuation_interval(const DesignConfig& config, const GroupKernel& kernel0,
                                                   const Envelope& prev) {
  const double h = config.grid_step;
  const double center = std::log(config.params.threshold());
  std::map<long, bool> probes;
  probes[0] = continuation_gain(config, kernel0, prev, center) > 0.0;

  // Walk outward until three consecutive probes fail.
  for (int direction : {+1, -1}) {
    int misses = 0;
    for (long k = 1; misses < 3; ++k) {
      const double lz = center + static_cast<double>(direction * k) * h;
      if (std::abs(lz) > config.bracket_cap) {
        if (probes[direction * (k - 1)]) throw NumericalError("continuation region unbounded within cap");
        break;
      }
      const bool positive = continuation_gain(config, kernel0, prev, lz) > 0.0;
      probes[direction * k] = positive;
      misses = positive ? 0 : misses + 1;
    }
  }

  std::optional<long> lo;
  std::optional<long> hi;
  for (const auto& [k, positive] : probes) {
    if (!positive) continue;
    if (!lo) lo = k;
    hi = k;
  }
  if (!lo) return std::nullopt;

  const double lo_in = center + static_cast<double>(*lo) * h;
  const double hi_in = center + static_cast<double>(*hi) * h;
  const double a = bisect_boundary(config, kernel0, prev, lo_in, lo_in - h);
  const double b = bisect_boundary(config, kernel0, prev, hi_in, hi_in + h);
  if (!(b > a)) return std::nullopt;
  return Interval{std::exp(a), std::exp(b)};
}

std::optional<Interval> find_continuation_interval(const DesignConfig& config, const Envelope& prev) {
  const GroupKernel kernel0(config.hyp, config.group_sizes, config.hyp.theta0());
  return find_continuation_interval(config, kernel0, prev);
}

int first_group_size(const DesignConfig& config, const GroupKernel& kernel0, const Envelope& env) {
  double best = std::numeric_limits<double>::infinity();
  int arg = 0;
  const auto sizes = kernel0.sizes();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double v = config.cost(sizes[i]) + apply_cost_operator(env, kernel0.at(i), 1.0);
    if (v < best) {
      best = v;
      arg = sizes[i];
    }
  }
  return arg;
}

Plan::Plan(DesignConfig config, int effective_horizon, std::vector<Envelope> envelopes, int first_group,
           std::vector<std::string> warnings)
    : config_(std::move(config)),
      k_eff_(effective_horizon),
      envelopes_(std::move(envelopes)),
      m1_(first_group),
      warnings_(std::move(warnings)) {
  config_.validate();
  if (k_eff_ < 1 || k_eff_ > config_.horizon) throw ConfigError("effective horizon out of range");
  if (envelopes_.size() != static_cast<std::size_t>(k_eff_)) {
    throw ConfigError("plan needs one envelope per allowance 0..K_eff-1");
  }
  if (std::find(config_.group_sizes.begin(), config_.group_sizes.end(), m1_) == config_.group_sizes.end()) {
    throw ConfigError("first group size is not eligible");
  }
  kernel0_ = std::make_shared<const GroupKernel>(config_.hyp, config_.group_sizes, config_.hyp.theta0());
}

const Envelope& Plan::envelope(int allowance) const {
  if (allowance < 0 || allowance >= k_eff_) throw DomainError("allowance out of range");
  return envelopes_[static_cast<std::size_t>(allowance)];
}

std::optional<Interval> Plan::interval(int allowance) const {
  if (allowance == 0) return std::nullopt;
  return envelope(allowance).interval();
}

int Plan::sampling_rule(int allowance, double z) const {
  if (allowance < 0 || allowance >= k_eff_) throw DomainError("allowance out of range");
  if (allowance == 0) return 0;
  const auto iv = interval(allowance);
  if (!iv || !iv->contains(z)) return 0;
  return continuation_value(config_, *kernel0_, envelopes_[static_cast<std::size_t>(allowance - 1)], z)
      .group_size;
}

int Plan::decide(double z) const {
  if (z < 0.0) throw DomainError("likelihood ratio must be nonnegative");
  // compared against the stored threshold so that z = lambda0 / lambda1 ties exactly
  return z >= config_.params.threshold() ? 1 : 0;
}

Plan niod(const DesignConfig& config) {
  config.validate();
  const GroupKernel kernel0(config.hyp, config.group_sizes, config.hyp.theta0());
  std::vector<Envelope> envelopes{Envelope(config.params)};
  std::vector<std::string> warnings;
  int k_eff = config.horizon;
  for (int n = 1; n < config.horizon; ++n) {
    const Envelope& prev = envelopes.back();
    const auto iv = find_continuation_interval(config, kernel0, prev);
    if (!iv) {
      k_eff = n;
      if (n > 1) {
        // In exact arithmetic continuation regions only grow with the allowance.
        double gain = 0.0;
        for (std::size_t i = 0; i < prev.nodes().size(); ++i) {
          gain = std::max(gain, stop_risk(config.params, prev.nodes()[i]) - prev.values()[i]);
        }
        std::ostringstream msg;
        msg << "early exit at level " << n << " after a continuation interval at level " << n - 1
            << "; lost continuation gain " << gain << " (bound " << 10.0 * config.grid_step * config.params.lambda0
            << ")";
        warnings.push_back(msg.str());
      }
      break;
    }
    auto nodes = build_log_grid(iv->a, iv->b, config.grid_step);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double c = continuation_value(config, kernel0, prev, nodes[i]).value;
      // The previous level is itself interpolated, so C can overshoot it by
      // the interpolation error; more allowance never costs more.
      values[i] = std::min({stop_risk(config.params, nodes[i]), c, prev.eval(nodes[i])});
    }
    envelopes.emplace_back(config.params, std::move(nodes), std::move(values));
  }
  const int m1 = first_group_size(config, kernel0, envelopes.back());
  return Plan(config, k_eff, std::move(envelopes), m1, std::move(warnings));
}

int RuleCache::rule(int allowance, long n, long s) {
  const double lz = lattice_log_lr(plan_.config().hyp, n, s);
  if (allowance == 0) return 0;
  const auto iv = plan_.interval(allowance);
  if (!iv || !iv->contains(std::exp(lz))) return 0;
  const auto ticks = static_cast<std::int64_t>(std::llround(lz * 68719476736.0));
  const std::uint64_t key =
      (static_cast<std::uint64_t>(ticks + (std::int64_t{1} << 50)) << 12) | static_cast<std::uint64_t>(allowance);
  {
    std::lock_guard lock(mutex_);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const int m = plan_.sampling_rule(allowance, std::exp(lz));
  std::lock_guard lock(mutex_);
  cache_.emplace(key, m);
  return m;
}

}  // namespace spprt
