#pragma once

#include <cstdint>

namespace acprg::lab {

struct Interval {
  double lower = 0.0;
  double upper = 1.0;
};

/// Exact two-sided binomial interval for `successes` out of `trials` at the given
/// confidence level.
Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence = 0.99);

/// Lemma bound (10kp)^t + (4m)^(t+k) * eps for the single-formula switching experiment.
double switching_bound(double k, double p, double t, double m, double eps);
/// 4 m^(t/w) (24pk)^t + (24m)^(t+k) * eps for the multi-switching experiment.
double multi_switching_bound(double m, double k, double w, double t, double p, double eps);

}  // namespace acprg::lab
