#include <doctest.h>

#include <cmath>

#include "roughlab/rng.hpp"
#include "roughlab/stats.hpp"

using namespace roughlab;

TEST_CASE("pairwise sum agrees with extended-precision accumulation") {
  NormalStream s(42, stream_id(StreamPurpose::kScratch, 300, 0));
  Eigen::VectorXd v(100001);
  long double ref = 0.0L;
  for (std::int64_t i = 0; i < v.size(); ++i) {
    v[i] = s.normal(static_cast<std::uint64_t>(i)) + 1.0;
    ref += v[i];
  }
  CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
  CHECK(pairwise_sum(v.data(), 0) == 0.0);
  CHECK(sample_mean(v) == doctest::Approx(static_cast<double>(ref) / 100001.0));
}

TEST_CASE("sample variance is the unbiased estimator") {
  Eigen::VectorXd v(4);
  v << 1, 2, 3, 10;
  CHECK(sample_mean(v) == 4.0);
  CHECK(sample_variance(v) == doctest::Approx((9.0 + 4.0 + 1.0 + 36.0) / 3.0));
  Eigen::VectorXd one(1);
  one << 5;
  CHECK_THROWS_AS(sample_variance(one), TooFewSamples);
}

TEST_CASE("normal cdf endpoints and symmetry") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-10));
  CHECK(normal_cdf(-8.0) + normal_cdf(8.0) == doctest::Approx(1.0));
}

TEST_CASE("kolmogorov tail values") {
  CHECK(kolmogorov_q(0.0) == 1.0);
  // 2(e^{-2} - e^{-8} + ...) at lambda = 1
  CHECK(kolmogorov_q(1.0) == doctest::Approx(0.26999967168).epsilon(1e-8));
  CHECK(kolmogorov_q(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-8));
  CHECK(kolmogorov_q(5.0) < 1e-20);
}

TEST_CASE("two-sample statistic on a worked example") {
  Eigen::VectorXd a(3), b(2);
  a << 1, 2, 3;
  b << 1.5, 2.5;
  KsResult r = ks_two_sample(a, b);
  CHECK(r.statistic == doctest::Approx(1.0 / 3.0));

  KsResult same = ks_two_sample(a, a);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0));

  Eigen::VectorXd lo(50), hi(50);
  for (int i = 0; i < 50; ++i) {
    lo[i] = i;
    hi[i] = 1000 + i;
  }
  KsResult far = ks_two_sample(lo, hi);
  CHECK(far.statistic == 1.0);
  CHECK(far.p_value < 1e-10);
}

TEST_CASE("one-sample statistic against the uniform cdf") {
  Eigen::VectorXd u(4);
  u << 0.1, 0.2, 0.3, 0.4;
  KsResult r = ks_one_sample(u, [](double x) { return x; });
  // largest gap is at the top: F(0.4) = 0.4 against 4/4
  CHECK(r.statistic == doctest::Approx(0.6));
}

TEST_CASE("ks tests are calibrated near the 5% level") {
  const int reps = 200, m = 300;
  int reject2 = 0, reject1 = 0;
  for (int rep = 0; rep < reps; ++rep) {
    NormalStream sa(42, stream_id(StreamPurpose::kScratch, 400, static_cast<std::uint64_t>(rep)));
    NormalStream sb(42, stream_id(StreamPurpose::kScratch, 401, static_cast<std::uint64_t>(rep)));
    Eigen::VectorXd a(m), b(m);
    sa.fill(a.data(), m);
    sb.fill(b.data(), m);
    if (ks_two_sample(a, b).p_value < 0.05) ++reject2;
    if (ks_one_sample(a, [](double x) { return normal_cdf(x); }).p_value < 0.05) ++reject1;
  }
  // Binomial(200, 0.05) stays within [1, 23] except with probability < 1e-5
  CHECK(reject2 >= 1);
  CHECK(reject2 <= 23);
  CHECK(reject1 >= 1);
  CHECK(reject1 <= 23);
}

TEST_CASE("rate regression recovers a planted slope") {
  Eigen::VectorXd x(6), y(6);
  for (int i = 0; i < 6; ++i) {
    x[i] = std::log(1024.0 * (1 << i));
    y[i] = 2.5 - 0.6 * x[i];
  }
  RateFit exact = rate_regression(x, y);
  CHECK(exact.slope == doctest::Approx(-0.6).epsilon(1e-12));
  CHECK(exact.intercept == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(exact.slope_se <= 1e-12);

  NormalStream s(42, stream_id(StreamPurpose::kScratch, 402, 0));
  for (int i = 0; i < 6; ++i) y[i] += 0.01 * s.normal(static_cast<std::uint64_t>(i));
  RateFit noisy = rate_regression(x, y);
  CHECK(noisy.slope == doctest::Approx(-0.6).epsilon(0.05));
  CHECK(noisy.slope_lo < noisy.slope);
  CHECK(noisy.slope_hi > noisy.slope);
  CHECK(noisy.slope_hi - noisy.slope == doctest::Approx(t_quantile_975(4) * noisy.slope_se));

  Eigen::VectorXd two(2);
  two << 1, 2;
  CHECK_THROWS_AS(rate_regression(two, two), TooFewSamples);
  Eigen::VectorXd flat = Eigen::VectorXd::Ones(5);
  CHECK_THROWS_AS(rate_regression(flat, flat), DegenerateInput);
}

TEST_CASE("t quantiles at reference degrees of freedom") {
  CHECK(t_quantile_975(1) == doctest::Approx(12.7062));
  CHECK(t_quantile_975(4) == doctest::Approx(2.77645));
  CHECK(t_quantile_975(30) == doctest::Approx(2.04227));
  CHECK(t_quantile_975(1000) == doctest::Approx(1.96));
  CHECK_THROWS_AS(t_quantile_975(0), ConfigInvalid);
}

TEST_CASE("jackknife matches brute-force delete-one for the variance") {
  NormalStream s(42, stream_id(StreamPurpose::kScratch, 403, 0));
  Eigen::VectorXd v(40);
  s.fill(v.data(), v.size());
  v = (2.0 * v.array() + 1.0).matrix();

  const std::int64_t m = v.size();
  Eigen::VectorXd loo(m);
  for (std::int64_t i = 0; i < m; ++i) {
    Eigen::VectorXd rest(m - 1);
    std::int64_t w = 0;
    for (std::int64_t j = 0; j < m; ++j)
      if (j != i) rest[w++] = v[j];
    loo[i] = sample_variance(rest);
  }
  const double bar = sample_mean(loo);
  const double want =
      std::sqrt((loo.array() - bar).square().sum() * static_cast<double>(m - 1) /
                static_cast<double>(m));
  CHECK(jackknife_se_variance(v) == doctest::Approx(want).epsilon(1e-10));
}
