#include "prooftutor/stats.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <cstdio>

#include "prooftutor/errors.hpp"

namespace prooftutor {

Proportion jeffreys_interval(int successes, int trials, double confidence) {
  if (trials <= 0 || successes < 0 || successes > trials) throw Error("invalid binomial counts");
  if (!(confidence > 0 && confidence < 1)) throw Error("confidence must lie in (0, 1)");
  const double a = successes + 0.5;
  const double b = trials - successes + 0.5;
  const double tail = (1 - confidence) / 2;
  Proportion p;
  p.successes = successes;
  p.trials = trials;
  p.point = static_cast<double>(successes) / trials;
  p.lower = successes == 0 ? 0.0 : boost::math::ibeta_inv(a, b, tail);
  p.upper = successes == trials ? 1.0 : boost::math::ibeta_inv(a, b, 1 - tail);
  return p;
}

std::string format_proportion(const Proportion& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d / %d = %.2f%% [%.2f, %.2f]", p.successes, p.trials, 100 * p.point,
                100 * p.lower, 100 * p.upper);
  return buf;
}

}  // namespace prooftutor
