#include "spprt/fss.hpp"

#include <cmath>

#include "spprt/errors.hpp"

namespace spprt {

std::optional<FixedSampleTest> best_fixed_test(const Hypotheses& hyp, long n, double alpha) {
  if (n < 1) throw DomainError("sample size must be positive");
  const auto p0 = binomial_pmf(static_cast<int>(n), hyp.theta0());
  const auto p1 = binomial_pmf(static_cast<int>(n), hyp.theta1());
  FixedSampleTest t;
  t.n = n;
  t.reject_high = hyp.increasing();
  if (t.reject_high) {
    // Lowest k with P0(S >= k) <= alpha.
    double tail0 = 0.0;
    long k = n + 1;
    while (k > 0 && tail0 + p0[static_cast<std::size_t>(k - 1)] <= alpha) {
      --k;
      tail0 += p0[static_cast<std::size_t>(k)];
    }
    if (k > n) return std::nullopt;
    double accept1 = 0.0;
    for (long s = 0; s < k; ++s) accept1 += p1[static_cast<std::size_t>(s)];
    t.threshold = k;
    t.achieved_alpha = tail0;
    t.achieved_beta = accept1;
  } else {
    // Highest k with P0(S <= k) <= alpha.
    double tail0 = 0.0;
    long k = -1;
    while (k < n && tail0 + p0[static_cast<std::size_t>(k + 1)] <= alpha) {
      ++k;
      tail0 += p0[static_cast<std::size_t>(k)];
    }
    if (k < 0) return std::nullopt;
    double accept1 = 0.0;
    for (long s = k + 1; s <= n; ++s) accept1 += p1[static_cast<std::size_t>(s)];
    t.threshold = k;
    t.achieved_alpha = tail0;
    t.achieved_beta = accept1;
  }
  return t;
}

FixedSampleTest np_min_sample_size(const Hypotheses& hyp, double alpha, double beta, long n_cap) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0)) {
    throw DomainError("alpha and beta must lie in (0, 1)");
  }
  // Binomial feasibility is not monotone in n, so scan upward.
  for (long n = 1; n <= n_cap; ++n) {
    const auto t = best_fixed_test(hyp, n, alpha);
    if (t && t->achieved_beta <= beta) return *t;
  }
  throw NumericalError("no feasible fixed sample size below cap");
}

Efficiency relative_efficiency(const TestProfile& profile, long fss_n, const CostModel& cost) {
  if (!cost.is_affine()) throw ConfigError("FSS comparison requires affine cost");
  if (!(profile.asc0 > 0.0) || !(profile.asc1 > 0.0)) throw DomainError("profile ASC must be positive");
  const double asc_fss = cost.c0() + cost.cu() * static_cast<double>(fss_n);
  return {asc_fss, asc_fss / profile.asc0, asc_fss / profile.asc1};
}

}  // namespace spprt
