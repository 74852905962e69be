#pragma once

// Goodness-of-fit and regression helpers for the experiment harness.

#include <span>

namespace bosestat::stats {

// Standard normal distribution function.
double normal_cdf(double x);

// Exact finite-sample Kolmogorov-Smirnov CDF P(D_n <= d) for the one-sample
// statistic with n observations (Marsaglia-Tsang-Wang matrix method, with
// their large-s shortcut for the far right tail).
double ks_cdf(int n, double d);

struct KsResult {
  double statistic;
  double p_value;
};

// One-sample Kolmogorov-Smirnov test of x against N(mean, sd^2).
// Requires at least 200 samples; throws std::invalid_argument otherwise.
KsResult normality_test(std::span<const double> x, double mean, double sd);

struct ScalingFit {
  double slope;
  double intercept;   // in log space
  double slope_se;
  double ci_lo;       // 95% normal-theory interval for the slope
  double ci_hi;
};

// Least squares fit of log y against log n. All y must be positive and the
// grid must hold at least two distinct points.
ScalingFit fit_power_law(std::span<const double> n, std::span<const double> y);

// Sample mean and standard error of the mean.
struct MeanSe {
  double mean;
  double se;
};
MeanSe mean_se(std::span<const double> x);

}  // namespace bosestat::stats
