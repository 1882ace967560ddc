#pragma once

#include <string>

namespace prooftutor {

struct Proportion {
  int successes = 0;
  int trials = 0;
  double point = 0;  // successes / trials
  double lower = 0;
  double upper = 0;
};

/// Equal-tailed interval from the Beta(k + 1/2, n - k + 1/2) posterior, with
/// the lower bound pinned to 0 at k = 0 and the upper to 1 at k = n.
/// Throws Error unless 0 <= k <= n, n > 0 and 0 < confidence < 1.
Proportion jeffreys_interval(int successes, int trials, double confidence = 0.95);

/// "k / n = P% [lo, hi]" with percentages to two decimals.
std::string format_proportion(const Proportion& p);

}  // namespace prooftutor
