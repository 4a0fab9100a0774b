#include "roughlab/stats.hpp"

#include <algorithm>
#include <cmath>

namespace roughlab {

double pairwise_sum(const double* data, std::int64_t count) {
  if (count <= 0) return 0.0;
  if (count <= 8) {
    double acc = data[0];
    for (std::int64_t i = 1; i < count; ++i) acc += data[i];
    return acc;
  }
  const std::int64_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

double pairwise_sum(const Eigen::VectorXd& v) { return pairwise_sum(v.data(), v.size()); }

double sample_mean(const Eigen::VectorXd& v) {
  if (v.size() < 1) throw TooFewSamples("mean of nothing");
  return pairwise_sum(v) / static_cast<double>(v.size());
}

double sample_variance(const Eigen::VectorXd& v) {
  if (v.size() < 2) throw TooFewSamples("variance needs at least two values");
  const double m = sample_mean(v);
  Eigen::VectorXd centered = (v.array() - m).square();
  return pairwise_sum(centered) / static_cast<double>(v.size() - 1);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

double kolmogorov_q(double lambda) {
  if (lambda <= 1e-10) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-14) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_p_value(double d, double effective_n) {
  const double rt = std::sqrt(effective_n);
  return kolmogorov_q((rt + 0.12 + 0.11 / rt) * d);
}

}  // namespace

KsResult ks_two_sample(Eigen::VectorXd a, Eigen::VectorXd b) {
  if (a.size() < 1 || b.size() < 1) throw TooFewSamples("two-sample test with empty sample");
  std::sort(a.data(), a.data() + a.size());
  std::sort(b.data(), b.data() + b.size());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::int64_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double va = a[i], vb = b[j];
    if (va <= vb) ++i;
    if (vb <= va) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult out;
  out.statistic = d;
  out.p_value = ks_p_value(d, na * nb / (na + nb));
  return out;
}

KsResult ks_one_sample(Eigen::VectorXd a, const std::function<double(double)>& cdf) {
  if (a.size() < 1) throw TooFewSamples("one-sample test with empty sample");
  std::sort(a.data(), a.data() + a.size());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  KsResult out;
  out.statistic = d;
  out.p_value = ks_p_value(d, n);
  return out;
}

double t_quantile_975(int df) {
  static const double table[] = {12.7062, 4.30265, 3.18245, 2.77645, 2.57058, 2.44691,
                                 2.36462, 2.30600, 2.26216, 2.22814, 2.20099, 2.17881,
                                 2.16037, 2.14479, 2.13145, 2.11991, 2.10982, 2.10092,
                                 2.09302, 2.08596, 2.07961, 2.07387, 2.06866, 2.06390,
                                 2.05954, 2.05553, 2.05183, 2.04841, 2.04523, 2.04227};
  if (df < 1) throw ConfigInvalid("t quantile needs df >= 1");
  if (df <= 30) return table[df - 1];
  if (df <= 40) return 2.0211;
  if (df <= 60) return 2.0003;
  if (df <= 120) return 1.9799;
  return 1.96;
}

RateFit rate_regression(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const std::int64_t k = x.size();
  if (k != y.size()) throw GridMismatch("regression inputs differ in length");
  if (k < 3) throw TooFewSamples("regression needs at least three points");
  const double mx = sample_mean(x), my = sample_mean(y);
  const double sxx = (x.array() - mx).square().sum();
  if (sxx == 0.0) throw DegenerateInput("regression abscissae are all equal");
  const double sxy = ((x.array() - mx) * (y.array() - my)).sum();
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const Eigen::ArrayXd resid = y.array() - fit.intercept - fit.slope * x.array();
  const double s2 = resid.square().sum() / static_cast<double>(k - 2);
  fit.slope_se = std::sqrt(s2 / sxx);
  const double half = t_quantile_975(static_cast<int>(k - 2)) * fit.slope_se;
  fit.slope_lo = fit.slope - half;
  fit.slope_hi = fit.slope + half;
  return fit;
}

double jackknife_se_variance(const Eigen::VectorXd& v) {
  const std::int64_t m = v.size();
  if (m < 3) throw TooFewSamples("jackknife needs at least three values");
  const double sum = pairwise_sum(v);
  Eigen::VectorXd sq = v.array().square();
  const double sum2 = pairwise_sum(sq);
  Eigen::VectorXd loo(m);
  const double nm1 = static_cast<double>(m - 1);
  for (std::int64_t i = 0; i < m; ++i) {
    const double s = sum - v[i];
    const double s2 = sum2 - v[i] * v[i];
    loo[i] = (s2 - s * s / nm1) / (nm1 - 1.0);
  }
  const double bar = sample_mean(loo);
  const double ss = (loo.array() - bar).square().sum();
  return std::sqrt(ss * nm1 / static_cast<double>(m));
}

}  // namespace roughlab
