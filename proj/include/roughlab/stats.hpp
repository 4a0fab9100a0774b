#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

#include "roughlab/errors.hpp"

namespace roughlab {

// Summation with a fixed reduction tree: the result depends only on the
// order of the inputs, never on how work was split across threads.
double pairwise_sum(const double* data, std::int64_t count);
double pairwise_sum(const Eigen::VectorXd& v);

double sample_mean(const Eigen::VectorXd& v);
double sample_variance(const Eigen::VectorXd& v);  // unbiased, needs >= 2 values

double normal_cdf(double x);

// Asymptotic Kolmogorov tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Two-sample and one-sample tests with the small-sample-corrected asymptotic
// p-value. Inputs need not be sorted.
KsResult ks_two_sample(Eigen::VectorXd a, Eigen::VectorXd b);
KsResult ks_one_sample(Eigen::VectorXd a, const std::function<double(double)>& cdf);

// Two-sided 95% Student t quantile, used for regression slope intervals.
double t_quantile_975(int df);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double slope_lo = 0.0;  // 95% confidence bounds
  double slope_hi = 0.0;
};

// Least squares of y against x (typically log error against log n).
RateFit rate_regression(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Delete-one standard error of the unbiased sample variance.
double jackknife_se_variance(const Eigen::VectorXd& v);

}  // namespace roughlab
