#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "roughlab/gaussian_paths.hpp"

using namespace roughlab;

TEST_CASE("hurst parameter validates its range") {
  CHECK_NOTHROW(HurstParam(0.5));
  CHECK_NOTHROW(HurstParam(Rational{3, 10}));
  CHECK_THROWS_AS(HurstParam(0.0), ConfigInvalid);
  CHECK_THROWS_AS(HurstParam(0.7), ConfigInvalid);
  CHECK(HurstParam(Rational{1, 4}).exact.has_value());
}

TEST_CASE("partition maps times to right endpoints") {
  Partition p(977);
  CHECK(p.t(0) == 0.0);
  CHECK(p.t(977) == 1.0);
  CHECK(p.eps_index(0.0) == 0);
  CHECK(p.eps_index(1.0) == 977);
  for (std::int64_t k = 0; k <= 977; ++k) CHECK(p.eps_index(p.t(k)) == k);
  CHECK(p.eps_index(p.t(10) + 1e-6) == 11);
  CHECK(p.eps(0.5) == doctest::Approx(489.0 / 977.0));
  CHECK_THROWS_AS(p.eps_index(1.5), OutOfGrid);
  CHECK_THROWS_AS(p.t(978), OutOfGrid);
}

TEST_CASE("increment correlation matches covariance second differences") {
  for (double nu : {0.2, 0.3, 0.4, 0.5}) {
    for (std::int64_t k = 0; k <= 10; ++k) {
      const double a = static_cast<double>(k);
      const double via_cov = fbm_covariance(a + 1, 1, nu) - fbm_covariance(a, 1, nu) -
                             fbm_covariance(a + 1, 0, nu) + fbm_covariance(a, 0, nu);
      CHECK(fbm_rho(k, nu) == doctest::Approx(via_cov).epsilon(1e-12));
    }
    CHECK(fbm_rho(-3, nu) == fbm_rho(3, nu));
  }
  CHECK(fbm_rho(1, 0.25) == doctest::Approx((std::sqrt(2.0) - 2.0) / 2.0).epsilon(1e-15));
  CHECK(fbm_rho(1, 0.5) == 0.0);
  CHECK(fbm_rho(0, 0.3) == 1.0);
}

TEST_CASE("correlation sums telescope to zero") {
  for (double nu : {0.2, 0.3, 0.45}) {
    long double partial = fbm_rho(0, nu);
    for (std::int64_t k = 1; k <= 4000; ++k) partial += 2.0L * fbm_rho(k, nu);
    const double expected = std::pow(4001.0, 2 * nu) - std::pow(4000.0, 2 * nu);
    CHECK(static_cast<double>(partial) == doctest::Approx(expected).epsilon(1e-8));
    CHECK(rho_power_sum(1, nu) == 0.0);
  }
}

TEST_CASE("power sums of the correlation sequence") {
  // reference value computed with 50-digit arithmetic
  CHECK(rho_power_sum(2, 0.3) == doctest::Approx(1.1251955053567182).epsilon(1e-10));
  CHECK(rho_power_sum(2, 0.5) == 1.0);
  CHECK(rho_power_sum(3, 0.5) == 1.0);

  // direct partial sum as an independent cross-check of the tail cutoff
  long double direct = std::pow(fbm_rho(0, 0.25), 2);
  for (std::int64_t k = 1; k <= 2000000; ++k) direct += 2.0L * std::pow(fbm_rho(k, 0.25), 2);
  CHECK(rho_power_sum(2, 0.25) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-8));

  CHECK_THROWS_AS(rho_power_sum(1, 0.75), DivergentSeries);
  CHECK_THROWS_AS(rho_power_sum(1, 0.6), DivergentSeries);
  CHECK_NOTHROW(rho_power_sum(2, 0.6));
  CHECK_THROWS_AS(rho_power_sum(0, 0.3), ConfigInvalid);
  CHECK_THROWS_AS(rho_power_sum(2, 1.0), ConfigInvalid);
}

TEST_CASE("synthesized increments have the exact target law") {
  const std::int64_t n = 256;
  const int paths = 4000;
  const double nu = 0.3;
  FbmSampler sampler(n, HurstParam(nu));
  FbmWorkspace ws;
  Eigen::VectorXd incr;

  // scale back to the unit-variance stationary sequence
  const double scale = std::pow(static_cast<double>(n), nu);
  double var0 = 0, lag1 = 0, lag2 = 0, end_var = 0, mean0 = 0;
  for (int m = 0; m < paths; ++m) {
    sampler.increments(42, static_cast<std::uint64_t>(m), 0, ws, incr);
    REQUIRE(incr.size() == n);
    const double z0 = scale * incr[0];
    const double z1 = scale * incr[1];
    const double z2 = scale * incr[2];
    mean0 += z0;
    var0 += z0 * z0;
    lag1 += z0 * z1;
    lag2 += z0 * z2;
    end_var += incr.sum() * incr.sum();
  }
  mean0 /= paths;
  var0 /= paths;
  lag1 /= paths;
  lag2 /= paths;
  end_var /= paths;
  const double se = 1.0 / std::sqrt(static_cast<double>(paths));
  CHECK(std::abs(mean0) < 4 * se);
  CHECK(std::abs(var0 - 1.0) < 4 * std::sqrt(2.0) * se);
  CHECK(std::abs(lag1 - fbm_rho(1, nu)) < 4 * se);
  CHECK(std::abs(lag2 - fbm_rho(2, nu)) < 4 * se);
  // x_1 has variance 1 for every n
  CHECK(std::abs(end_var - 1.0) < 4 * std::sqrt(2.0) * se);
}

TEST_CASE("synthesis is reproducible and component-separated") {
  FbmSampler sampler(64, HurstParam(0.25));
  FbmWorkspace ws;
  Eigen::VectorXd a, b, c;
  sampler.increments(42, 5, 0, ws, a);
  sampler.increments(42, 5, 0, ws, b);
  sampler.increments(42, 5, 1, ws, c);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("path batches accumulate increments from zero") {
  PathBatch batch = sample_fbm(32, 3, 2, HurstParam(0.4), 42);
  CHECK(batch.values.rows() == 33);
  CHECK(batch.values.cols() == 6);
  for (int m = 0; m < 3; ++m)
    for (int c = 0; c < 2; ++c) CHECK(batch.path(m, c)[0] == 0.0);

  FbmSampler sampler(32, HurstParam(0.4));
  FbmWorkspace ws;
  Eigen::VectorXd incr;
  sampler.increments(42, 2, 1, ws, incr);
  auto col = batch.path(2, 1);
  for (std::int64_t k = 0; k < 32; ++k)
    CHECK(col[k + 1] - col[k] == doctest::Approx(incr[k]).epsilon(1e-14));
  CHECK_THROWS_AS(batch.path(3, 0), OutOfGrid);
}

TEST_CASE("path batch round-trips through the binary format") {
  PathBatch batch = sample_fbm(16, 2, 1, HurstParam(0.3), 7);
  const std::string file = "batch_roundtrip.rlpb";
  write_path_binary(file, batch);
  PathBatch back = read_path_binary(file);
  std::remove(file.c_str());
  CHECK(back.n == batch.n);
  CHECK(back.paths == batch.paths);
  CHECK(back.components == batch.components);
  CHECK(back.nu == batch.nu);
  CHECK(back.seed == batch.seed);
  CHECK(back.values == batch.values);
  CHECK_THROWS_AS(read_path_binary("does_not_exist.rlpb"), ConfigInvalid);
}

TEST_CASE("csv dump has one row per grid point") {
  PathBatch batch = sample_fbm(8, 2, 2, HurstParam(0.3), 7);
  std::ostringstream os;
  write_path_csv(os, batch);
  const std::string text = os.str();
  CHECK(text.substr(0, 20) == "t,x0_0,x0_1,x1_0,x1_");
  int rows = 0;
  for (char ch : text)
    if (ch == '\n') ++rows;
  CHECK(rows == 10);  // header + 9 grid points
}
