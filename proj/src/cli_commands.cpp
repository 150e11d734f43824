#include "spprt/cli_commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <exception>
#include <thread>

#include <CLI11.hpp>

#include "spprt/errors.hpp"
#include "spprt/fss.hpp"
#include "spprt/plan_io.hpp"

namespace spprt::cli {

using nlohmann::json;

namespace {

// Minimal RFC-4180 writer: every field here is numeric or a plain token.
class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << "\r\n";
  }

  template <typename... T>
  void row(const T&... fields) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(fields), first = false), ...);
    out_ << "\r\n";
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double x) { return format_exact(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(long x) { return std::to_string(x); }
  static std::string cell(const std::string& x) { return x; }
  static std::string cell(const char* x) { return x; }

  std::ostringstream out_;
};

json interval_table(const Plan& plan) {
  json rows = json::array();
  for (int j = 1; j < plan.effective_horizon(); ++j) {
    const auto iv = plan.interval(j);
    json row{{"allowance", j}, {"stage", plan.effective_horizon() - j}};
    if (iv) {
      row["a"] = iv->a;
      row["b"] = iv->b;
    } else {
      row["a"] = nullptr;
      row["b"] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string intervals_csv(const Plan& plan) {
  Csv csv{"allowance", "stage", "a", "b"};
  for (int j = plan.effective_horizon() - 1; j >= 1; --j) {
    const auto iv = plan.interval(j);
    if (iv) csv.row(j, plan.effective_horizon() - j, iv->a, iv->b);
  }
  return csv.str();
}

std::string sampling_rule_csv(const Plan& plan) {
  Csv csv{"z", "m"};
  const int outer = plan.effective_horizon() - 1;
  if (outer >= 1) {
    for (double z : plan.envelope(outer).nodes()) csv.row(z, plan.sampling_rule(outer, z));
  }
  return csv.str();
}

json design_summary(const Plan& plan) {
  return {{"config", config_to_json(plan.config())},
          {"K", plan.config().horizon},
          {"K_eff", plan.effective_horizon()},
          {"m1", plan.first_group()},
          {"zStar", plan.threshold()},
          {"earlyExit", plan.early_exit()},
          {"warnings", plan.warnings()},
          {"intervals", interval_table(plan)}};
}

CostModel evaluation_cost(const Plan& plan, const EvaluateOptions& opts) {
  if (!opts.cost_c0 && !opts.cost_cu) return plan.config().cost;
  const auto& base = plan.config().cost;
  const double c0 = opts.cost_c0.value_or(base.is_affine() ? base.c0() : 0.0);
  if (!opts.cost_cu && !base.is_affine()) throw ConfigError("--cost-cu is required to override a table cost");
  const double cu = opts.cost_cu.value_or(base.cu());
  return CostModel::affine(c0, cu);
}

OperatingPoint evaluate_point(const Plan& plan, double theta, const CostModel& cost, const EvaluateOptions& opts) {
  switch (opts.method) {
    case Method::grid:
      return evaluate_grid(plan, theta, cost, {opts.grid_step});
    case Method::mc:
      return simulate(plan, theta, cost, {opts.trials, *opts.seed, opts.workers});
    case Method::exact:
      break;
  }
  return evaluate_exact(plan, theta, cost);
}

json profile_report(const Plan& plan, const TestProfile& p) {
  return {{"config", config_to_json(plan.config())},
          {"K_eff", plan.effective_horizon()},
          {"m1", plan.first_group()},
          {"profile", profile_to_json(p)}};
}

}  // namespace

json cmd_design(const DesignConfig& config, const fs::path& out_dir) {
  const Plan plan = niod(config);
  save_plan(plan, out_dir / "plan.json");
  auto summary = design_summary(plan);
  write_text_atomic(out_dir / "design_summary.json", summary.dump(2) + "\n");
  write_text_atomic(out_dir / "intervals.csv", intervals_csv(plan));
  write_text_atomic(out_dir / "sampling_rule.csv", sampling_rule_csv(plan));
  return summary;
}

json cmd_evaluate(const Plan& plan, const EvaluateOptions& opts, const fs::path& out_dir) {
  if (opts.method == Method::mc && !opts.seed) throw ConfigError("method mc requires --seed");
  const CostModel cost = evaluation_cost(plan, opts);
  const SimulationOptions sim{opts.trials, opts.seed.value_or(0), opts.workers};
  TestProfile p = profile(plan, opts.method, &cost, sim, {opts.grid_step});

  Csv oc_csv{"theta", "pAcceptH0", "expectedCost", "expectedGroups", "expectedObservations", "method"};
  json points = json::array();
  for (double theta : opts.thetas) {
    try {
      const auto pt = evaluate_point(plan, theta, cost, opts);
      p.oc.push_back({theta, pt.p_accept_h0, std::nullopt});
      points.push_back(operating_point_to_json(pt));
      oc_csv.row(theta, pt.p_accept_h0, pt.expected_cost, pt.expected_groups, pt.expected_observations,
                 to_string(opts.method));
    } catch (const DomainError& e) {
      p.oc.push_back({theta, std::nan(""), std::string(e.what())});
      points.push_back({{"theta", theta}, {"error", e.what()}});
    }
  }

  json report = profile_report(plan, p);
  report["evaluationCost"] = cost_to_json(cost);
  report["points"] = std::move(points);
  if (opts.method == Method::mc) report["mc"] = {{"seed", *opts.seed}, {"trials", opts.trials}};

  Csv csv{"quantity", "value", "method"};
  const std::string m = to_string(opts.method);
  csv.row("alpha", p.alpha, m);
  csv.row("beta", p.beta, m);
  csv.row("asc0", p.asc0, m);
  csv.row("asc1", p.asc1, m);
  csv.row("ascGamma", p.asc_gamma, m);
  csv.row("expGroups0", p.exp_groups0, m);
  csv.row("expGroups1", p.exp_groups1, m);
  csv.row("expObs0", p.exp_obs0, m);
  csv.row("expObs1", p.exp_obs1, m);

  write_text_atomic(out_dir / "report.json", report.dump(2) + "\n");
  write_text_atomic(out_dir / "report.csv", csv.str());
  write_text_atomic(out_dir / "oc.csv", oc_csv.str());
  return report;
}

namespace {

std::string trace_csv(const CalibrationResult& r) {
  Csv csv{"evaluation", "iteration", "lambda0", "lambda1", "alpha", "beta", "objective"};
  for (const auto& s : r.trace) csv.row(s.evaluation, s.iteration, s.lambda0, s.lambda1, s.alpha, s.beta, s.objective);
  return csv.str();
}

json calibration_report(const CalibrationSpec& spec, const CalibrationResult& r) {
  json j{{"targetAlpha", spec.target_alpha},
         {"targetBeta", spec.target_beta},
         {"lambda0", r.lambda0},
         {"lambda1", r.lambda1},
         {"objective", r.objective},
         {"converged", r.converged},
         {"iterations", r.iterations},
         {"evaluations", r.evaluations}};
  if (r.plan) {
    j["config"] = config_to_json(r.plan->config());
    j["K_eff"] = r.plan->effective_horizon();
    j["m1"] = r.plan->first_group();
    j["profile"] = profile_to_json(r.profile);
  }
  return j;
}

}  // namespace

json cmd_calibrate(const CalibrationSpec& spec, const fs::path& out_dir) {
  CalibrationResult result;
  try {
    result = calibrate(spec);
  } catch (const CalibrationFailed& e) {
    write_text_atomic(out_dir / "calibration_failed.json", calibration_report(spec, e.best()).dump(2) + "\n");
    write_text_atomic(out_dir / "calibration_trace.csv", trace_csv(e.best()));
    throw;
  }
  save_plan(*result.plan, out_dir / "plan.json");
  auto report = calibration_report(spec, result);
  write_text_atomic(out_dir / "profile.json", report.dump(2) + "\n");
  write_text_atomic(out_dir / "calibration_trace.csv", trace_csv(result));
  return report;
}

json cmd_oc(const Plan& plan, const std::vector<double>& thetas, int workers, const fs::path& out_dir) {
  const auto points = oc_curve(plan, thetas, workers);
  Csv csv{"theta", "pAcceptH0"};
  json rows = json::array();
  for (const auto& p : points) {
    if (p.error) {
      rows.push_back({{"theta", p.theta}, {"error", *p.error}});
      continue;
    }
    csv.row(p.theta, p.p_accept_h0);
    rows.push_back({{"theta", p.theta}, {"pAcceptH0", p.p_accept_h0}});
  }
  write_text_atomic(out_dir / "oc.csv", csv.str());
  return {{"config", config_to_json(plan.config())}, {"method", "exact"}, {"oc", rows}};
}

json cmd_simulate(const Plan& plan, double theta, const EvaluateOptions& opts, const fs::path& out_dir) {
  if (!opts.seed) throw ConfigError("simulate requires --seed");
  const CostModel cost = evaluation_cost(plan, opts);
  const auto pt = simulate(plan, theta, cost, {opts.trials, *opts.seed, opts.workers});
  json report{{"config", config_to_json(plan.config())},
              {"seed", *opts.seed},
              {"trials", opts.trials},
              {"result", operating_point_to_json(pt)}};
  write_text_atomic(out_dir / "simulation.json", report.dump(2) + "\n");
  return report;
}

namespace {

json fss_report(const Hypotheses& hyp, const CostModel& cost, double asc0, double asc1, double alpha, double beta) {
  const auto fss = np_min_sample_size(hyp, alpha, beta);
  TestProfile p;
  p.asc0 = asc0;
  p.asc1 = asc1;
  const auto eff = relative_efficiency(p, fss.n, cost);
  return {{"alpha", alpha},
          {"beta", beta},
          {"n", fss.n},
          {"threshold", fss.threshold},
          {"fssAlpha", fss.achieved_alpha},
          {"fssBeta", fss.achieved_beta},
          {"ascFss", eff.asc_fss},
          {"asc0", asc0},
          {"asc1", asc1},
          {"R0", eff.r0},
          {"R1", eff.r1}};
}

}  // namespace

json cmd_compare_fss(const Plan& plan, std::optional<double> alpha, std::optional<double> beta) {
  const auto p = profile(plan);
  auto j = fss_report(plan.config().hyp, plan.config().cost, p.asc0, p.asc1, alpha.value_or(p.alpha),
                      beta.value_or(p.beta));
  j["config"] = config_to_json(plan.config());
  return j;
}

json cmd_compare_fss(const json& report, std::optional<double> alpha, std::optional<double> beta) {
  if (!report.contains("config") || !report.contains("profile")) {
    throw ConfigError("profile report needs 'config' and 'profile' fields");
  }
  const auto config = config_from_json(report.at("config"));
  const auto& p = report.at("profile");
  auto j = fss_report(config.hyp, config.cost, p.at("asc0").get<double>(), p.at("asc1").get<double>(),
                      alpha.value_or(p.at("alpha").get<double>()), beta.value_or(p.at("beta").get<double>()));
  j["config"] = report.at("config");
  return j;
}

json cmd_compare_fss_sweep(const DesignConfig& base, const SweepOptions& opts, const fs::path& out_dir) {
  if (opts.points < 2) throw ConfigError("sweep needs at least 2 points per axis");
  if (!base.cost.is_affine()) throw ConfigError("FSS comparison requires affine cost");
  const int n = opts.points;
  const auto total = static_cast<std::size_t>(n * n);
  std::vector<json> rows(total);
  auto run_point = [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / n;
    const int k = static_cast<int>(idx) % n;
    const double x0 = opts.ln_lambda_min + (opts.ln_lambda_max - opts.ln_lambda_min) * i / (n - 1);
    const double x1 = opts.ln_lambda_min + (opts.ln_lambda_max - opts.ln_lambda_min) * k / (n - 1);
    DesignConfig config = base;
    config.params = {opts.lambda_unit * std::exp(x0), opts.lambda_unit * std::exp(x1)};
    const auto plan = niod(config);
    const auto p = profile(plan);
    auto row = fss_report(config.hyp, config.cost, p.asc0, p.asc1, p.alpha, p.beta);
    row["lnLambda0"] = x0;
    row["lnLambda1"] = x1;
    row["lambda0"] = config.params.lambda0;
    row["lambda1"] = config.params.lambda1;
    rows[idx] = std::move(row);
  };
  const int workers = std::max(1, opts.workers);
  if (workers == 1) {
    for (std::size_t idx = 0; idx < total; ++idx) run_point(idx);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t idx = static_cast<std::size_t>(w); idx < total; idx += static_cast<std::size_t>(workers)) {
            run_point(idx);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Csv csv{"lnLambda0", "lnLambda1", "lambda0", "lambda1", "alpha", "beta", "asc0", "asc1", "n", "ascFss", "R0", "R1"};
  for (const auto& r : rows) {
    csv.row(r["lnLambda0"].get<double>(), r["lnLambda1"].get<double>(), r["lambda0"].get<double>(),
            r["lambda1"].get<double>(), r["alpha"].get<double>(), r["beta"].get<double>(), r["asc0"].get<double>(),
            r["asc1"].get<double>(), r["n"].get<long>(), r["ascFss"].get<double>(), r["R0"].get<double>(),
            r["R1"].get<double>());
  }
  write_text_atomic(out_dir / "efficiency_grid.csv", csv.str());
  return {{"config", config_to_json(base)}, {"lambdaUnit", opts.lambda_unit}, {"rows", rows}};
}

History parse_history(const std::string& text) {
  History h;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("history entries must look like m:s, got '" + item + "'");
    try {
      h.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw ConfigError("history entries must look like m:s, got '" + item + "'");
    }
  }
  return h;
}

json cmd_next(const Plan& plan, const History& history) {
  const int k_eff = plan.effective_horizon();
  if (static_cast<int>(history.size()) > k_eff) {
    throw ConfigError("history has more groups than the plan allows (" + std::to_string(k_eff) + ")");
  }
  RuleCache rules(plan);
  long n = 0;
  long s = 0;
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto [m, successes] = history[i];
    const int allowance = k_eff - static_cast<int>(i);
    const int prescribed = i == 0 ? plan.first_group() : rules.rule(allowance, n, s);
    if (prescribed != m) {
      std::ostringstream msg;
      msg << "history step " << i + 1 << " diverges from the plan: plan prescribes "
          << (prescribed == 0 ? std::string("stopping") : "a group of " + std::to_string(prescribed))
          << ", history has a group of " << m;
      throw ConfigError(msg.str());
    }
    if (successes < 0 || successes > m) {
      throw ConfigError("history step " + std::to_string(i + 1) + " has successes outside [0, group size]");
    }
    n += m;
    s += successes;
  }
  const int allowance = k_eff - static_cast<int>(history.size());
  const double lz = lattice_log_lr(plan.config().hyp, n, s);
  json advice{{"groupsTaken", history.size()}, {"allowance", allowance}, {"n", n}, {"s", s}};
  if (history.empty()) {
    advice["z"] = 1.0;
    advice["action"] = "sample";
    advice["nextGroupSize"] = plan.first_group();
    return advice;
  }
  advice["z"] = std::exp(lz);
  const int m = rules.rule(allowance, n, s);
  if (m > 0) {
    advice["action"] = "sample";
    advice["nextGroupSize"] = m;
  } else {
    const int d = plan.decide(std::exp(lz));
    advice["action"] = "stop";
    advice["decision"] = d;
    advice["accept"] = d == 0 ? "H0" : "H1";
  }
  return advice;
}

json cmd_export_plan(const Plan& plan, const fs::path& out_dir) {
  Csv env{"allowance", "z", "value"};
  for (int j = 1; j < plan.effective_horizon(); ++j) {
    const auto& e = plan.envelope(j);
    for (std::size_t i = 0; i < e.nodes().size(); ++i) env.row(j, e.nodes()[i], e.values()[i]);
  }
  write_text_atomic(out_dir / "intervals.csv", intervals_csv(plan));
  write_text_atomic(out_dir / "sampling_rule.csv", sampling_rule_csv(plan));
  write_text_atomic(out_dir / "envelopes.csv", env.str());
  return design_summary(plan);
}

int run(int argc, char** argv) {
  CLI::App app{"Design and evaluate optimal sequentially planned tests for Bernoulli data"};
  app.require_subcommand(1);
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();

  std::string config_path, spec_path, plan_path, profile_path, method = "exact", history;
  std::vector<double> thetas;
  std::optional<std::uint64_t> seed;
  long trials = 100000;
  int workers = 1;
  std::optional<double> c0, cu, alpha, beta;
  double grid_step = 0.0;
  std::optional<double> theta_min, theta_max;
  int theta_count = 21;
  bool sweep = false;
  SweepOptions sweep_opts;

  auto add_cost = [&](CLI::App* cmd) {
    cmd->add_option("--cost-c0", c0, "Override per-group cost c0 for evaluation");
    cmd->add_option("--cost-cu", cu, "Override per-observation cost cu for evaluation");
  };

  auto* design = app.add_subcommand("design", "Run the backward-induction design");
  design->add_option("--config", config_path, "Design configuration (JSON)")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Operating characteristics of a saved plan");
  evaluate->add_option("--plan", plan_path, "Plan file")->required();
  evaluate->add_option("--theta", thetas, "Extra OC evaluation points (repeatable)");
  evaluate->add_option("--method", method, "exact, grid or mc")->capture_default_str();
  evaluate->add_option("--seed", seed, "Monte Carlo seed (required for mc)");
  evaluate->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
  evaluate->add_option("--workers", workers, "Worker threads")->capture_default_str();
  evaluate->add_option("--grid-step", grid_step, "Log-z step of the evaluation grid for method grid (default: a tenth of the design step)");
  add_cost(evaluate);

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Tune lambda0, lambda1 to target error probabilities");
  calibrate_cmd->add_option("--spec", spec_path, "Calibration spec (JSON)")->required();

  auto* oc = app.add_subcommand("oc", "Operating characteristic curve");
  oc->add_option("--plan", plan_path, "Plan file")->required();
  oc->add_option("--theta", thetas, "Evaluation points (repeatable)");
  oc->add_option("--theta-min", theta_min, "Lower end of an evenly spaced theta range");
  oc->add_option("--theta-max", theta_max, "Upper end of an evenly spaced theta range");
  oc->add_option("--theta-count", theta_count, "Points in the theta range")->capture_default_str();
  oc->add_option("--workers", workers, "Worker threads")->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo evaluation of a plan");
  simulate_cmd->add_option("--plan", plan_path, "Plan file")->required();
  simulate_cmd->add_option("--theta", thetas, "Data-generating theta")->required()->expected(1);
  simulate_cmd->add_option("--seed", seed, "Seed")->required();
  simulate_cmd->add_option("--trials", trials, "Trials")->capture_default_str();
  simulate_cmd->add_option("--workers", workers, "Worker threads")->capture_default_str();
  add_cost(simulate_cmd);

  auto* compare = app.add_subcommand("compare-fss", "Efficiency against the fixed-sample-size test");
  compare->add_option("--plan", plan_path, "Plan file");
  compare->add_option("--profile", profile_path, "Evaluation report (report.json)");
  compare->add_option("--alpha", alpha, "Target alpha (default: achieved)");
  compare->add_option("--beta", beta, "Target beta (default: achieved)");
  compare->add_flag("--sweep", sweep, "Sweep a log-lambda grid from --config");
  compare->add_option("--config", config_path, "Design configuration for --sweep");
  compare->add_option("--ln-lambda-min", sweep_opts.ln_lambda_min)->capture_default_str();
  compare->add_option("--ln-lambda-max", sweep_opts.ln_lambda_max)->capture_default_str();
  compare->add_option("--points", sweep_opts.points, "Grid points per axis")->capture_default_str();
  compare->add_option("--lambda-unit", sweep_opts.lambda_unit, "lambda = unit * exp(grid value)")
      ->capture_default_str();
  compare->add_option("--workers", workers, "Worker threads")->capture_default_str();

  auto* next = app.add_subcommand("next", "Advice for the next step of a running test");
  next->add_option("--plan", plan_path, "Plan file")->required();
  next->add_option("--history", history, "Observed groups as m:s pairs, comma separated");

  auto* export_plan = app.add_subcommand("export-plan", "Export plan tables as CSV");
  export_plan->add_option("--plan", plan_path, "Plan file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const fs::path out(out_dir);
  auto emit = [](const json& j) { std::cout << j.dump(2) << "\n"; };
  try {
    if (design->parsed()) {
      emit(cmd_design(config_from_json(read_json_file(config_path)), out));
    } else if (evaluate->parsed()) {
      EvaluateOptions opts{thetas, method_from_string(method), seed, trials, workers, c0, cu, grid_step};
      emit(cmd_evaluate(load_plan(plan_path), opts, out));
    } else if (calibrate_cmd->parsed()) {
      emit(cmd_calibrate(calibration_spec_from_json(read_json_file(spec_path)), out));
    } else if (oc->parsed()) {
      if (theta_min || theta_max) {
        if (!theta_min || !theta_max || theta_count < 2) {
          throw ConfigError("--theta-min and --theta-max go together with --theta-count >= 2");
        }
        for (int i = 0; i < theta_count; ++i) {
          thetas.push_back(*theta_min + (*theta_max - *theta_min) * i / (theta_count - 1));
        }
      }
      if (thetas.empty()) throw ConfigError("oc needs --theta values or a theta range");
      emit(cmd_oc(load_plan(plan_path), thetas, workers, out));
    } else if (simulate_cmd->parsed()) {
      EvaluateOptions opts{{}, Method::mc, seed, trials, workers, c0, cu, 0.0};
      emit(cmd_simulate(load_plan(plan_path), thetas.front(), opts, out));
    } else if (compare->parsed()) {
      if (sweep) {
        if (config_path.empty()) throw ConfigError("--sweep needs --config");
        sweep_opts.workers = workers;
        emit(cmd_compare_fss_sweep(config_from_json(read_json_file(config_path), false), sweep_opts, out));
      } else if (!plan_path.empty()) {
        emit(cmd_compare_fss(load_plan(plan_path), alpha, beta));
      } else if (!profile_path.empty()) {
        emit(cmd_compare_fss(read_json_file(profile_path), alpha, beta));
      } else {
        throw ConfigError("compare-fss needs --plan, --profile or --sweep");
      }
    } else if (next->parsed()) {
      emit(cmd_next(load_plan(plan_path), parse_history(history)));
    } else if (export_plan->parsed()) {
      emit(cmd_export_plan(load_plan(plan_path), out));
    }
  } catch (const CalibrationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCalibrationFailed;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const DomainError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}

}  // namespace spprt::cli
