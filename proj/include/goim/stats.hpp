#pragma once

#include <string>
#include <utility>

namespace goim {

enum class CiMethod { wilson, clopper_pearson };

// Inverse standard normal CDF (Acklam's rational approximation, accurate to
// about 1e-9 relative error).
double normal_quantile(double p);

// Wilson score interval for a binomial proportion. Behaves correctly at
// 0 and 100% success.
std::pair<double, double> wilson_interval(long successes, long trials, double confidence);

// Exact-tail Clopper-Pearson interval, evaluated by bisection on the
// binomial tail probabilities.
std::pair<double, double> clopper_pearson_interval(long successes, long trials,
                                                   double confidence);

struct SuccessSummary {
  std::string label;
  int n_spins = 0;
  long trials = 0;
  long successes = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

SuccessSummary summarize(const std::string& label, int n_spins, long successes, long trials,
                         CiMethod method = CiMethod::wilson, double confidence = 0.95);

}  // namespace goim
