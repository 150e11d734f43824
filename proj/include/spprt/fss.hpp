#pragma once

#include "spprt/design.hpp"
#include "spprt/evaluator.hpp"

namespace spprt {

/// Non-randomized one-stage likelihood-ratio test on n observations.
/// H0 is rejected when s >= threshold (theta1 > theta0) or s <= threshold
/// (theta1 < theta0).
struct FixedSampleTest {
  long n = 0;
  long threshold = 0;
  bool reject_high = true;
  double achieved_alpha = 0.0;
  double achieved_beta = 0.0;
};

/// Most powerful threshold at a fixed n, or nullopt when no threshold
/// keeps the type-I error within alpha.
std::optional<FixedSampleTest> best_fixed_test(const Hypotheses& hyp, long n, double alpha);

/// Smallest n whose best threshold meets both error bounds.
FixedSampleTest np_min_sample_size(const Hypotheses& hyp, double alpha, double beta, long n_cap = 1000000);

struct Efficiency {
  double asc_fss;
  double r0;
  double r1;
};

/// ASC of the fixed-sample test (c0 + cu n) over the plan's ASC under each hypothesis.
Efficiency relative_efficiency(const TestProfile& profile, long fss_n, const CostModel& cost);

}  // namespace spprt
