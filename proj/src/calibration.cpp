#include "spprt/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "spprt/errors.hpp"

namespace spprt {

void CalibrationSpec::validate() const {
  if (!(target_alpha > 0.0 && target_alpha < 1.0) || !(target_beta > 0.0 && target_beta < 1.0)) {
    throw ConfigError("calibration targets must lie in (0, 1)");
  }
  if (!(init_lambda0 > 0.0) || !(init_lambda1 > 0.0)) throw ConfigError("initial multipliers must be positive");
  if (max_iter < 0) throw ConfigError("maxIter must be nonnegative");
  if (!(dist_tol >= 0.0)) throw ConfigError("distTol must be nonnegative");
  if (!(simplex_scale > 0.0)) throw ConfigError("simplexScale must be positive");
}

double relative_distance(double alpha, double beta, double target_alpha, double target_beta) {
  return std::max(std::abs(alpha - target_alpha) / target_alpha, std::abs(beta - target_beta) / target_beta);
}

namespace {

struct Evaluation {
  double objective = std::numeric_limits<double>::infinity();
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  std::optional<Plan> plan;
  TestProfile profile;
};

Evaluation evaluate_point(const CalibrationSpec& spec, double lambda0, double lambda1) {
  Evaluation ev;
  ev.lambda0 = lambda0;
  ev.lambda1 = lambda1;
  DesignConfig config = spec.base;
  config.params = {lambda0, lambda1};
  try {
    ev.plan = niod(config);
    ev.profile = profile(*ev.plan, Method::exact);
    ev.objective = relative_distance(ev.profile.alpha, ev.profile.beta, spec.target_alpha, spec.target_beta);
  } catch (const NumericalError&) {
    ev.plan.reset();
  } catch (const DomainError&) {
    ev.plan.reset();
  }
  return ev;
}

class Search {
 public:
  Search(const CalibrationSpec& spec, CalibrationResult& result) : spec_(spec), result_(result) {}

  Evaluation eval(const std::array<double, 2>& x) {
    auto ev = evaluate_point(spec_, std::exp(x[0]), std::exp(x[1]));
    ++result_.evaluations;
    result_.trace.push_back({result_.evaluations, result_.iterations, ev.lambda0, ev.lambda1,
                             ev.plan ? ev.profile.alpha : std::nan(""), ev.plan ? ev.profile.beta : std::nan(""),
                             ev.objective});
    return ev;
  }

  // Returns the best vertex found starting from x0.
  Evaluation run(const std::array<double, 2>& x0, double scale, int iter_budget) {
    std::array<std::array<double, 2>, 3> x{x0, x0, x0};
    std::array<Evaluation, 3> f;
    f[0] = eval(x[0]);
    if (f[0].objective <= spec_.dist_tol) return f[0];
    x[1][0] += scale;
    x[2][1] += scale;
    f[1] = eval(x[1]);
    f[2] = eval(x[2]);

    for (int iter = 0; iter < iter_budget; ++iter) {
      std::array<int, 3> order{0, 1, 2};
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return f[a].objective < f[b].objective; });
      const int best = order[0], mid = order[1], worst = order[2];
      if (f[best].objective <= spec_.dist_tol || diameter(x) <= 1e-4) break;
      ++result_.iterations;

      std::array<double, 2> c{};
      for (int d = 0; d < 2; ++d) c[d] = 0.5 * (x[best][d] + x[mid][d]);
      auto along = [&](double t) {
        return std::array<double, 2>{c[0] + t * (x[worst][0] - c[0]), c[1] + t * (x[worst][1] - c[1])};
      };

      const auto xr = along(-1.0);
      auto fr = eval(xr);
      if (fr.objective < f[best].objective) {
        const auto xe = along(-2.0);
        auto fe = eval(xe);
        if (fe.objective < fr.objective) {
          x[worst] = xe;
          f[worst] = std::move(fe);
        } else {
          x[worst] = xr;
          f[worst] = std::move(fr);
        }
        continue;
      }
      if (fr.objective < f[mid].objective) {
        x[worst] = xr;
        f[worst] = std::move(fr);
        continue;
      }
      const bool outside = fr.objective < f[worst].objective;
      const auto xc = along(outside ? -0.5 : 0.5);
      auto fc = eval(xc);
      if ((outside && fc.objective <= fr.objective) || (!outside && fc.objective < f[worst].objective)) {
        x[worst] = xc;
        f[worst] = std::move(fc);
        continue;
      }
      for (int v : {mid, worst}) {
        for (int d = 0; d < 2; ++d) x[v][d] = x[best][d] + 0.5 * (x[v][d] - x[best][d]);
        f[v] = eval(x[v]);
      }
    }
    int best = 0;
    for (int v = 1; v < 3; ++v) {
      if (f[v].objective < f[best].objective) best = v;
    }
    return std::move(f[best]);
  }

 private:
  static double diameter(const std::array<std::array<double, 2>, 3>& x) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) d = std::max(d, std::hypot(x[i][0] - x[j][0], x[i][1] - x[j][1]));
    }
    return d;
  }

  const CalibrationSpec& spec_;
  CalibrationResult& result_;
};

}  // namespace

double calibration_objective(const CalibrationSpec& spec, double lambda0, double lambda1) {
  if (!(lambda0 > 0.0) || !(lambda1 > 0.0)) throw DomainError("multipliers must be positive");
  return evaluate_point(spec, lambda0, lambda1).objective;
}

CalibrationResult calibrate(const CalibrationSpec& spec) {
  spec.validate();
  spec.base.validate();
  CalibrationResult result;
  Search search(spec, result);
  const std::array<double, 2> x0{std::log(spec.init_lambda0), std::log(spec.init_lambda1)};
  auto best = search.run(x0, spec.simplex_scale, spec.max_iter);
  const double fail_level = 10.0 * spec.dist_tol;
  if (best.objective > fail_level && spec.restart_on_failure && best.plan) {
    auto again = search.run({std::log(best.lambda0), std::log(best.lambda1)}, 0.5 * spec.simplex_scale,
                            spec.max_iter);
    if (again.objective < best.objective) best = std::move(again);
  }

  result.lambda0 = best.lambda0;
  result.lambda1 = best.lambda1;
  result.plan = std::move(best.plan);
  result.profile = best.profile;
  result.objective = best.objective;
  result.converged = best.objective <= spec.dist_tol;
  if (best.objective > fail_level || !result.plan) {
    std::ostringstream msg;
    msg << "calibration failed: best objective " << best.objective << " at lambda0=" << best.lambda0
        << ", lambda1=" << best.lambda1 << " after " << result.iterations << " iterations";
    throw CalibrationFailed(msg.str(), std::move(result));
  }
  return result;
}

}  // namespace spprt
