#pragma once

#include <optional>
#include <vector>

namespace spprt {

/// Lagrange multipliers on the type-I and type-II error probabilities.
struct StopRiskParams {
  double lambda0 = 1.0;
  double lambda1 = 1.0;

  void validate() const;
  /// Likelihood-ratio value at which accepting H1 becomes optimal.
  double threshold() const { return lambda0 / lambda1; }
};

/// Minimal Lagrangian loss of stopping now: min{lambda0, lambda1 * z}.
double stop_risk(const StopRiskParams& params, double z);

/// Nodes a*e^{kh} strictly below b, followed by b itself.
std::vector<double> build_log_grid(double a, double b, double h);

struct Interval {
  double a;
  double b;
  bool contains(double z) const { return z >= a && z <= b; }
};

/// A value function that equals the stop risk outside its continuation
/// interval and is interpolated linearly in z between stored nodes inside it.
class Envelope {
 public:
  /// Degenerate envelope: the stop risk everywhere.
  explicit Envelope(StopRiskParams params);
  Envelope(StopRiskParams params, std::vector<double> nodes, std::vector<double> values);

  double operator()(double z) const { return eval(z); }
  double eval(double z) const;

  bool has_interval() const { return !nodes_.empty(); }
  std::optional<Interval> interval() const;
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  const StopRiskParams& params() const { return params_; }

 private:
  StopRiskParams params_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

}  // namespace spprt
