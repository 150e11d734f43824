#include "spprt/lr_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spprt/errors.hpp"

namespace spprt {

namespace {

void require_probability(double theta, const char* what) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError(std::string(what) + " must lie in (0, 1), got " + std::to_string(theta));
  }
}

}  // namespace

Hypotheses::Hypotheses(double theta0, double theta1) : theta0_(theta0), theta1_(theta1) {
  require_probability(theta0, "theta0");
  require_probability(theta1, "theta1");
  if (theta0 == theta1) throw DomainError("theta0 and theta1 must be distinct");
  log_r_ = std::log(theta1) - std::log(theta0);
  log_q_ = std::log1p(-theta1) - std::log1p(-theta0);
}

double log_lr_factor(const Hypotheses& hyp, int m, int s) {
  if (m < 1) throw DomainError("group size must be at least 1");
  if (s < 0 || s > m) throw DomainError("success count out of range [0, m]");
  return s * hyp.log_r() + (m - s) * hyp.log_q();
}

double lr_factor(const Hypotheses& hyp, int m, int s) { return std::exp(log_lr_factor(hyp, m, s)); }

double lattice_log_lr(const Hypotheses& hyp, long n, long s) {
  constexpr double kScale = 68719476736.0;  // 2^36
  const double raw = static_cast<double>(s) * hyp.log_r() + static_cast<double>(n - s) * hyp.log_q();
  return std::nearbyint(raw * kScale) / kScale;
}

std::vector<double> binomial_pmf(int m, double theta) {
  if (m < 0) throw DomainError("binomial size must be nonnegative");
  require_probability(theta, "theta");
  std::vector<double> pmf(static_cast<std::size_t>(m) + 1);
  // Anchor at the mode with log-gamma, then walk outward with term ratios.
  const int mode = std::min(m, static_cast<int>(std::floor((m + 1) * theta)));
  const double odds = theta / (1.0 - theta);
  pmf[mode] = std::exp(std::lgamma(m + 1.0) - std::lgamma(mode + 1.0) - std::lgamma(m - mode + 1.0) +
                       mode * std::log(theta) + (m - mode) * std::log1p(-theta));
  for (int s = mode; s < m; ++s) pmf[s + 1] = pmf[s] * odds * (m - s) / (s + 1.0);
  for (int s = mode; s > 0; --s) pmf[s - 1] = pmf[s] / odds * s / (m - s + 1.0);
  double total = 0.0;
  for (double p : pmf) total += p;
  // rounding in the anchor leaves the total a few ulps away from 1
  for (double& p : pmf) p /= total;
  return pmf;
}

GroupOutcomeDistribution::GroupOutcomeDistribution(const Hypotheses& hyp, int m, double theta)
    : m_(m), theta_(theta) {
  if (m < 1) throw DomainError("group size must be at least 1");
  const auto pmf = binomial_pmf(m, theta);
  entries_.reserve(pmf.size());
  const double log_choose_m = std::lgamma(m + 1.0);
  const double log_theta = std::log(theta);
  const double log_miss = std::log1p(-theta);
  for (int s = 0; s <= m; ++s) {
    const double llr = log_lr_factor(hyp, m, s);
    const double lp = log_choose_m - std::lgamma(s + 1.0) - std::lgamma(m - s + 1.0) + s * log_theta +
                      (m - s) * log_miss;
    entries_.push_back({s, llr, std::exp(llr), pmf[s], lp});
  }
  first_ = 0;
  while (first_ < m && entries_[first_].prob == 0.0) ++first_;
  last_ = m;
  while (last_ > first_ && entries_[last_].prob == 0.0) --last_;
}

GroupOutcomeDistribution group_distribution(const Hypotheses& hyp, int m, double theta) {
  return GroupOutcomeDistribution(hyp, m, theta);
}

GroupKernel::GroupKernel(const Hypotheses& hyp, std::span<const int> sizes, double theta)
    : theta_(theta), sizes_(sizes.begin(), sizes.end()) {
  dists_.reserve(sizes_.size());
  for (int m : sizes_) dists_.emplace_back(hyp, m, theta);
}

const GroupOutcomeDistribution& GroupKernel::for_size(int m) const {
  const auto it = std::find(sizes_.begin(), sizes_.end(), m);
  if (it == sizes_.end()) throw DomainError("group size " + std::to_string(m) + " is not eligible");
  return dists_[static_cast<std::size_t>(it - sizes_.begin())];
}

}  // namespace spprt
