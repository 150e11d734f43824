// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Indented lines underneath carry the measured values.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "spprt/calibration.hpp"
#include "spprt/cli_commands.hpp"
#include "spprt/fss.hpp"
#include "spprt/plan_io.hpp"
#include "support.hpp"

using namespace spprt;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  // Records a sub-check and prints its measured value.
  bool check(bool ok, const std::string& what) {
    std::printf("    %s %s\n", ok ? "ok  " : "MISS", what.c_str());
    ok_ = ok_ && ok;
    return ok;
  }

  void fail(const std::string& why) { check(false, why); }

  bool finish() const {
    std::printf("[%s] criterion %d: %s\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  int id_;
  std::string title_;
  bool ok_ = true;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int workers() { return static_cast<int>(std::clamp(std::thread::hardware_concurrency(), 4u, 8u)); }

fs::path scratch_path(const std::string& name) { return fs::temp_directory_path() / ("spprt_acceptance_" + name); }

fs::path scratch(const std::string& name) {
  const auto dir = scratch_path(name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool within_rel(double x, double target, double rel) { return std::abs(x / target - 1.0) <= rel; }

// 1. fixed-sample comparator
bool fss_exactness() {
  Criterion c(1, "fixed-sample size 1691 and ASC_FSS 17910 in under 1 s");
  const auto t0 = Clock::now();
  const auto t = np_min_sample_size(Hypotheses(0.52, 0.48), 0.05, 0.05);
  const double elapsed = seconds_since(t0);
  const double asc = relative_efficiency(TestProfile{.asc0 = 1.0, .asc1 = 1.0}, t.n, CostModel::affine(1000, 10))
                         .asc_fss;
  c.check(t.n == 1691, fmt("n = %ld", t.n));
  c.check(asc == 17910.0, fmt("ASC_FSS = %.17g", asc));
  c.check(elapsed < 1.0, fmt("runtime %.3f s", elapsed));
  return c.finish();
}

// 2. majority example end to end
bool majority_end_to_end() {
  Criterion c(2, "majority example calibrated to alpha = beta = 0.05");
  CalibrationSpec spec{testing::majority_config()};
  spec.target_alpha = 0.05;
  spec.target_beta = 0.05;
  // published multipliers are per unit of the 1000 group cost
  spec.init_lambda0 = 44000.0;
  spec.init_lambda1 = 44000.0;
  spec.dist_tol = 0.01;

  CalibrationResult r;
  try {
    r = calibrate(spec);
  } catch (const CalibrationFailed& e) {
    c.fail(e.what());
    return c.finish();
  }
  c.check(r.objective <= 0.01, fmt("objective %.5f at lambda = (%.1f, %.1f), %d evaluations", r.objective,
                                   r.lambda0, r.lambda1, r.evaluations));

  const auto t_design = Clock::now();
  const Plan plan = niod(r.plan->config());
  const double design_s = seconds_since(t_design);
  const auto t_eval = Clock::now();
  const auto p = profile(plan);
  const double eval_s = seconds_since(t_eval);

  c.check(within_rel(p.asc0, 11510, 0.02), fmt("ASC_0 = %.1f (11510 +- 2%%)", p.asc0));
  c.check(within_rel(p.asc1, 11510, 0.02), fmt("ASC_1 = %.1f (11510 +- 2%%)", p.asc1));
  c.check(std::abs(p.exp_groups0 - 2.07) <= 0.1, fmt("E T = %.4f (2.07 +- 0.1)", p.exp_groups0));
  c.check(within_rel(p.exp_obs0, 944, 0.02), fmt("E M = %.2f (944 +- 2%%)", p.exp_obs0));

  int levels = 0;
  for (int j = 1; j < plan.effective_horizon(); ++j) levels += plan.interval(j) ? 1 : 0;
  c.check(levels == 14, fmt("%d continuation-interval levels", levels));

  double worst = 0.0;
  int worst_at = 0;
  for (int j = 5; j + 1 < plan.effective_horizon(); ++j) {
    const auto lo = *plan.interval(j);
    const auto hi = *plan.interval(j + 1);
    const double change = std::max(std::abs(hi.a / lo.a - 1.0), std::abs(hi.b / lo.b - 1.0));
    if (change > worst) {
      worst = change;
      worst_at = j;
    }
  }
  c.check(worst < 0.01, fmt("largest endpoint change between allowances >= 5: %.3f%% (allowance %d to %d)",
                            100 * worst, worst_at, worst_at + 1));
  c.check(design_s < 60.0, fmt("design %.2f s", design_s));
  c.check(eval_s < 120.0, fmt("exact evaluation under both hypotheses %.2f s", eval_s));
  return c.finish();
}

// 3. clinical-trial table
struct TableColumn {
  int horizon;
  double lambda0;
  double lambda1;
  double asn0;
  double asn1;
  double ang0;
  double ang1;
};

bool trial_table() {
  Criterion c(3, "clinical-trial table columns K = 3 and K = 5");
  for (const TableColumn col : {TableColumn{3, 229.7, 79.1, 36.3, 32.9, 1.8, 1.9},
                                TableColumn{5, 230.2, 69.1, 36.0, 30.0, 2.3, 2.7}}) {
    CalibrationSpec spec{testing::trial_config(col.horizon, col.lambda0, col.lambda1)};
    spec.target_alpha = 0.05;
    spec.target_beta = 0.10;
    spec.init_lambda0 = col.lambda0;
    spec.init_lambda1 = col.lambda1;
    CalibrationResult r;
    try {
      r = calibrate(spec);
    } catch (const CalibrationFailed& e) {
      c.fail(fmt("K=%d: %s", col.horizon, e.what()));
      continue;
    }
    const auto& p = r.profile;
    const int k = col.horizon;
    c.check(std::abs(p.alpha - 0.05) <= 0.005, fmt("K=%d alpha = %.4f", k, p.alpha));
    c.check(std::abs(p.beta - 0.10) <= 0.01, fmt("K=%d beta = %.4f", k, p.beta));
    c.check(std::abs(p.exp_obs0 - col.asn0) <= 0.5, fmt("K=%d ASN_0 = %.2f (%.1f +- 0.5)", k, p.exp_obs0, col.asn0));
    c.check(std::abs(p.exp_obs1 - col.asn1) <= 0.5, fmt("K=%d ASN_1 = %.2f (%.1f +- 0.5)", k, p.exp_obs1, col.asn1));
    c.check(std::abs(p.exp_groups0 - col.ang0) <= 0.15,
            fmt("K=%d ANG_0 = %.3f (%.1f +- 0.15)", k, p.exp_groups0, col.ang0));
    c.check(std::abs(p.exp_groups1 - col.ang1) <= 0.15,
            fmt("K=%d ANG_1 = %.3f (%.1f +- 0.15)", k, p.exp_groups1, col.ang1));
    c.check(within_rel(r.lambda0, col.lambda0, 0.15) && within_rel(r.lambda1, col.lambda1, 0.15),
            fmt("K=%d lambda = (%.1f, %.1f) vs (%.1f, %.1f) +- 15%%", k, r.lambda0, r.lambda1, col.lambda0,
                col.lambda1));
  }
  return c.finish();
}

// 4. efficiency grid
bool efficiency_grid() {
  Criterion c(4, "9x9 log-lambda efficiency grid: max R0 2.5 +- 0.2, min R0 1.3 +- 0.15");
  const auto dir = scratch("sweep");
  cli::SweepOptions o;
  o.lambda_unit = 1000.0;
  o.workers = workers();
  const auto t0 = Clock::now();
  const auto out = cli::cmd_compare_fss_sweep(testing::majority_config(1, 1), o, dir);
  const auto& rows = out["rows"];
  c.check(rows.size() == 81, fmt("%zu rows in %.1f s", rows.size(), seconds_since(t0)));

  std::vector<double> alphas;
  std::vector<double> betas;
  for (const auto& r : rows) {
    alphas.push_back(r["alpha"].get<double>());
    betas.push_back(r["beta"].get<double>());
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  const double alpha_med = median(alphas);
  const double beta_med = median(betas);

  const auto by_r0 = [](const auto& a, const auto& b) { return a["R0"].template get<double>() < b["R0"].template get<double>(); };
  const auto& hi = *std::max_element(rows.begin(), rows.end(), by_r0);
  const auto& lo = *std::min_element(rows.begin(), rows.end(), by_r0);
  const double r0_max = hi["R0"].get<double>();
  const double r0_min = lo["R0"].get<double>();
  c.check(std::abs(r0_max - 2.5) <= 0.2, fmt("max R0 = %.3f at alpha = %.4f, beta = %.4f", r0_max,
                                               hi["alpha"].get<double>(), hi["beta"].get<double>()));
  c.check(hi["alpha"].get<double>() <= alpha_med && hi["beta"].get<double>() >= beta_med,
          fmt("max sits at small alpha / large beta (medians %.4f, %.4f)", alpha_med, beta_med));
  c.check(std::abs(r0_min - 1.3) <= 0.15, fmt("min R0 = %.3f at alpha = %.4f, beta = %.4f", r0_min,
                                                lo["alpha"].get<double>(), lo["beta"].get<double>()));
  c.check(lo["alpha"].get<double>() >= alpha_med, "min sits at large alpha");
  return c.finish();
}

// 5. three evaluators against each other, and the interim-advice query
bool oracle_triangle() {
  Criterion c(5, "exact / grid / Monte Carlo agreement and next-step advice on 12 random designs");
  testing::RandomConfigs gen(20240901);
  double worst_p = 0.0;
  double worst_cost = 0.0;
  double coarse_p = 0.0;
  double coarse_cost = 0.0;
  double worst_z = 0.0;
  std::size_t states = 0;
  std::size_t mismatches = 0;
  for (int i = 0; i < 12; ++i) {
    const auto config = gen.next();
    const Plan plan = niod(config);
    for (double theta : {config.hyp.theta0(), config.hyp.theta1()}) {
      const auto e = evaluate_exact(plan, theta, config.cost);
      const auto g = evaluate_grid(plan, theta, config.cost);
      const auto m = simulate(plan, theta, config.cost, {100000, 1000u + static_cast<unsigned>(i), workers()});
      worst_p = std::max(worst_p, std::abs(e.p_accept_h0 - g.p_accept_h0));
      worst_cost = std::max(worst_cost, std::abs(g.expected_cost / e.expected_cost - 1.0));
      const auto coarse = evaluate_grid(plan, theta, config.cost, {config.grid_step});
      coarse_p = std::max(coarse_p, std::abs(e.p_accept_h0 - coarse.p_accept_h0));
      coarse_cost = std::max(coarse_cost, std::abs(coarse.expected_cost / e.expected_cost - 1.0));
      const auto& se = *m.stderr_;
      // constant fields have zero spread; only summation rounding separates them
      auto z = [](double a, double b, double s) {
        if (std::abs(a - b) <= 1e-12 * std::abs(b)) return 0.0;
        return s > 0.0 ? std::abs(a - b) / s : INFINITY;
      };
      worst_z = std::max({worst_z, z(m.p_accept_h0, e.p_accept_h0, se.p_accept_h0),
                          z(m.expected_cost, e.expected_cost, se.cost),
                          z(m.expected_groups, e.expected_groups, se.groups),
                          z(m.expected_observations, e.expected_observations, se.observations)});
    }

    // every history the plan can generate, against the DP transition table
    std::vector<LatticeTransition> transitions;
    evaluate_exact(plan, config.hyp.theta0(), config.cost, {0.0, &transitions});
    std::map<std::tuple<int, long, long>, int> table;
    for (const auto& t : transitions) table[{t.allowance, t.n, t.s}] = t.action;
    cli::History h;
    std::function<void(long, long)> walk = [&](long n, long s) {
      const auto advice = cli::cmd_next(plan, h);
      const int allowance = plan.effective_horizon() - static_cast<int>(h.size());
      const int m = advice["action"] == "stop" ? 0 : advice["nextGroupSize"].get<int>();
      ++states;
      const auto it = table.find({allowance, n, s});
      if (it == table.end() || it->second != m) ++mismatches;
      if (m == 0) return;
      for (int k = 0; k <= m; ++k) {
        h.emplace_back(m, k);
        walk(n + m, s + k);
        h.pop_back();
      }
    };
    const int m1 = cli::cmd_next(plan, {})["nextGroupSize"].get<int>();
    if (m1 != plan.first_group()) ++mismatches;
    for (int k = 0; k <= m1; ++k) {
      h.emplace_back(m1, k);
      walk(m1, k);
      h.pop_back();
    }
  }
  c.check(worst_p <= 1e-3, fmt("max |exact - grid| on P(accept H0) = %.2e", worst_p));
  c.check(worst_cost <= 0.005, fmt("max relative |exact - grid| on cost = %.3f%%", 100 * worst_cost));
  std::printf("    info evaluated on the design grid itself: %.2e on P(accept H0), %.3f%% on cost\n", coarse_p,
              100 * coarse_cost);
  c.check(worst_z <= 4.0, fmt("max |exact - MC| = %.2f standard errors", worst_z));
  c.check(mismatches == 0, fmt("%zu reachable states, %zu advice mismatches", states, mismatches));
  return c.finish();
}

// 6. structural invariants
bool structural() {
  Criterion c(6, "structural invariants on random designs and the majority design");
  const auto t0 = Clock::now();
  testing::RandomConfigs gen(777);
  std::vector<DesignConfig> configs;
  for (int i = 0; i < 30; ++i) configs.push_back(gen.next());
  configs.push_back(testing::majority_config());

  std::size_t monotone = 0, nested = 0, below_g = 0, concave = 0, mass = 0, substitution = 0, tie = 0;
  for (const auto& config : configs) {
    const Plan plan = niod(config);
    const double lam0 = config.params.lambda0;
    for (int j = 1; j < plan.effective_horizon(); ++j) {
      const auto& env = plan.envelope(j);
      const auto& prev = plan.envelope(j - 1);
      const auto& z = env.nodes();
      const auto& v = env.values();
      for (std::size_t i = 0; i < z.size(); ++i) {
        if (env.eval(z[i]) > prev.eval(z[i]) + 1e-9 * lam0) ++monotone;
        if (v[i] < 0.0 || v[i] > stop_risk(config.params, z[i]) + 1e-12) ++below_g;
        if (i > 0 && i + 1 < z.size()) {
          const double w = (z[i] - z[i - 1]) / (z[i + 1] - z[i - 1]);
          if (v[i] < (1.0 - w) * v[i - 1] + w * v[i + 1] - 1e-9 * lam0) ++concave;
        }
      }
      if (j >= 2) {
        const auto inner = *plan.interval(j - 1);
        const auto outer = *plan.interval(j);
        const double slack = 2.0 * config.bisect_tol;
        if (outer.a > inner.a * (1.0 + slack) || outer.b < inner.b * (1.0 - slack)) ++nested;
      }
    }
    for (double theta : {config.hyp.theta0(), config.hyp.theta1()}) {
      const auto e = evaluate_exact(plan, theta, config.cost);
      if (e.mass_defect > 1e-10) ++mass;
      const auto groups = evaluate_exact(plan, theta, CostModel::affine(1.0, 0.0));
      const auto obs = evaluate_exact(plan, theta, CostModel::affine(0.0, 1.0));
      if (std::abs(groups.expected_cost - e.expected_groups) > 1e-12 * e.expected_groups) ++substitution;
      if (std::abs(obs.expected_cost - e.expected_observations) > 1e-12 * e.expected_observations) ++substitution;
    }
    const double zs = plan.threshold();
    if (plan.decide(zs) != 1 || plan.decide(std::nextafter(zs, 0.0)) != 0) ++tie;
  }
  c.check(monotone == 0, fmt("%zu nodes where more allowance raised the value", monotone));
  c.check(nested == 0, fmt("%zu non-nested interval pairs", nested));
  c.check(below_g == 0, fmt("%zu nodes outside [0, g]", below_g));
  c.check(concave == 0, fmt("%zu midpoint-concavity violations", concave));
  c.check(mass == 0, fmt("%zu evaluations with mass defect above 1e-10", mass));
  c.check(substitution == 0, fmt("%zu cost-substitution mismatches", substitution));
  c.check(tie == 0, fmt("%zu designs with a wrong tie-break at z*", tie));
  const double elapsed = seconds_since(t0);
  c.check(elapsed < 600.0, fmt("%zu designs in %.1f s", configs.size(), elapsed));
  return c.finish();
}

// 7. determinism
bool determinism() {
  Criterion c(7, "byte-identical design, calibrate, evaluate and simulate outputs");
  std::vector<std::string> files[2];
  for (int run = 0; run < 2; ++run) {
    const auto dir = scratch("determinism" + std::to_string(run));
    cli::cmd_design(testing::majority_config(), dir / "design");
    const Plan plan = load_plan(dir / "design" / "plan.json");
    cli::cmd_evaluate(plan, {.thetas = {0.5}}, dir / "evaluate");
    CalibrationSpec spec{testing::trial_config(3, 200.0, 90.0)};
    spec.target_alpha = 0.05;
    spec.target_beta = 0.10;
    spec.init_lambda0 = 200.0;
    spec.init_lambda1 = 90.0;
    cli::cmd_calibrate(spec, dir / "calibrate");
    cli::EvaluateOptions sim{.seed = 99, .trials = 50000, .workers = run == 0 ? 1 : workers()};
    cli::cmd_simulate(plan, 0.5, sim, dir / "simulate");
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (entry.is_regular_file()) files[run].push_back(fs::relative(entry.path(), dir).string());
    }
    std::sort(files[run].begin(), files[run].end());
  }
  c.check(files[0] == files[1] && !files[0].empty(), fmt("%zu files per run", files[0].size()));
  std::size_t differ = 0;
  for (const auto& f : files[0]) {
    if (slurp(scratch_path("determinism0") / f) != slurp(scratch_path("determinism1") / f)) {
      ++differ;
      std::printf("    differs: %s\n", f.c_str());
    }
  }
  c.check(differ == 0, fmt("%zu files differ (simulate ran with 1 and %d workers)", differ, workers()));
  return c.finish();
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const std::vector<std::function<bool()>> criteria{fss_exactness, majority_end_to_end, trial_table,
                                                     efficiency_grid, oracle_triangle, structural, determinism};
  int failed = 0;
  for (const auto& run : criteria) {
    try {
      failed += run() ? 0 : 1;
    } catch (const std::exception& e) {
      std::printf("    exception: %s\n[FAIL] criterion aborted\n", e.what());
      ++failed;
    }
  }
  std::printf("%d of %zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(),
              seconds_since(t0));
  return failed == 0 ? 0 : 1;
}
