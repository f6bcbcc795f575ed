#include "goim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace goim {

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  }
  // Acklam's rational approximation to the probit function.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  const double phigh = 1.0 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > phigh) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

namespace {

void check_counts(long successes, long trials, double confidence) {
  if (trials < 1) throw std::invalid_argument("interval: trials must be >= 1");
  if (successes < 0 || successes > trials) {
    throw std::invalid_argument("interval: successes must lie in [0, trials]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("interval: confidence must lie in (0, 1)");
  }
}

// log P[X = k] for X ~ Binomial(n, p)
double log_binom_pmf(long n, long k, double p) {
  if (p <= 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return k == n ? 0.0 : -std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  return std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
         kd * std::log(p) + (nd - kd) * std::log1p(-p);
}

double binom_tail_geq(long n, long k, double p) {
  double sum = 0.0;
  for (long i = k; i <= n; ++i) sum += std::exp(log_binom_pmf(n, i, p));
  return std::min(sum, 1.0);
}

double binom_tail_leq(long n, long k, double p) {
  double sum = 0.0;
  for (long i = 0; i <= k; ++i) sum += std::exp(log_binom_pmf(n, i, p));
  return std::min(sum, 1.0);
}

}  // namespace

std::pair<double, double> wilson_interval(long successes, long trials, double confidence) {
  check_counts(successes, trials, confidence);
  const double z = normal_quantile(0.5 * (1.0 + confidence));
  const double n = static_cast<double>(trials);
  const double p_hat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = p_hat + z2 / (2.0 * n);
  const double half = z * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
  // exact endpoints at all-failure / all-success counts
  const double low = successes == 0 ? 0.0 : std::max(0.0, (center - half) / denom);
  const double high = successes == trials ? 1.0 : std::min(1.0, (center + half) / denom);
  return {low, high};
}

std::pair<double, double> clopper_pearson_interval(long successes, long trials,
                                                   double confidence) {
  check_counts(successes, trials, confidence);
  const double alpha = 1.0 - confidence;
  double low = 0.0, high = 1.0;
  if (successes > 0) {
    // smallest p with P[X >= k | p] >= alpha/2 (tail increases with p)
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (binom_tail_geq(trials, successes, mid) < alpha / 2.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    low = 0.5 * (lo + hi);
  }
  if (successes < trials) {
    // largest p with P[X <= k | p] >= alpha/2 (tail decreases with p)
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (binom_tail_leq(trials, successes, mid) < alpha / 2.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    high = 0.5 * (lo + hi);
  }
  return {low, high};
}

SuccessSummary summarize(const std::string& label, int n_spins, long successes, long trials,
                         CiMethod method, double confidence) {
  const auto [low, high] = method == CiMethod::wilson
                               ? wilson_interval(successes, trials, confidence)
                               : clopper_pearson_interval(successes, trials, confidence);
  SuccessSummary s;
  s.label = label;
  s.n_spins = n_spins;
  s.trials = trials;
  s.successes = successes;
  s.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  s.ci_low = std::min(low, s.p_hat);
  s.ci_high = std::max(high, s.p_hat);
  return s;
}

}  // namespace goim
