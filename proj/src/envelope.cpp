#include "spprt/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "spprt/errors.hpp"

namespace spprt {

void StopRiskParams::validate() const {
  if (!(lambda0 > 0.0 && std::isfinite(lambda0)) || !(lambda1 > 0.0 && std::isfinite(lambda1))) {
    throw DomainError("lambda0 and lambda1 must be positive and finite");
  }
}

double stop_risk(const StopRiskParams& params, double z) {
  if (z < 0.0) throw DomainError("stop risk is defined for z >= 0");
  return std::min(params.lambda0, params.lambda1 * z);
}

std::vector<double> build_log_grid(double a, double b, double h) {
  if (!(a > 0.0) || !(b > a)) throw DomainError("log grid needs 0 < a < b");
  if (!(h > 0.0)) throw DomainError("log grid step must be positive");
  std::vector<double> nodes;
  const double span = std::log(b) - std::log(a);
  const auto steps = static_cast<long>(std::floor(span / h));
  nodes.reserve(static_cast<std::size_t>(steps) + 2);
  for (long k = 0; k <= steps; ++k) {
    const double z = a * std::exp(static_cast<double>(k) * h);
    if (z >= b * (1.0 - 1e-12)) break;
    nodes.push_back(z);
  }
  nodes.push_back(b);
  return nodes;
}

Envelope::Envelope(StopRiskParams params) : params_(params) { params_.validate(); }

Envelope::Envelope(StopRiskParams params, std::vector<double> nodes, std::vector<double> values)
    : params_(params), nodes_(std::move(nodes)), values_(std::move(values)) {
  params_.validate();
  if (nodes_.size() != values_.size()) throw DomainError("envelope nodes and values differ in length");
  if (nodes_.size() == 1) throw DomainError("envelope needs at least two nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > 0.0)) throw DomainError("envelope nodes must be positive");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) throw DomainError("envelope nodes must be strictly increasing");
    if (!(values_[i] >= 0.0)) throw DomainError("envelope values must be nonnegative");
  }
}

std::optional<Interval> Envelope::interval() const {
  if (nodes_.empty()) return std::nullopt;
  return Interval{nodes_.front(), nodes_.back()};
}

double Envelope::eval(double z) const {
  if (nodes_.empty() || z < nodes_.front() || z > nodes_.back()) {
    return std::min(params_.lambda0, params_.lambda1 * z);
  }
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), z);
  if (it == nodes_.end()) return values_.back();
  const auto hi = static_cast<std::size_t>(it - nodes_.begin());
  const std::size_t lo = hi - 1;
  const double t = (z - nodes_[lo]) / (nodes_[hi] - nodes_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

}  // namespace spprt
