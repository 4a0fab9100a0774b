#include <doctest.h>

#include <cmath>
#include <numbers>

#include "roughlab/gaussian_paths.hpp"
#include "roughlab/rng.hpp"
#include "roughlab/rough_algebra.hpp"

using namespace roughlab;

namespace {

Eigen::VectorXd random_path(std::int64_t n, std::uint64_t which) {
  NormalStream s(42, stream_id(StreamPurpose::kScratch, 100 + which, 0));
  Eigen::VectorXd x(n + 1);
  x[0] = 0.0;
  for (std::int64_t k = 0; k < n; ++k)
    x[k + 1] = x[k] + 0.3 * s.normal(static_cast<std::uint64_t>(k));
  return x;
}

}  // namespace

TEST_CASE("second-order increment of a first-order increment vanishes") {
  auto x = random_path(12, 0);
  auto g = [&](std::int64_t s, std::int64_t t) { return delta1(x, s, t); };
  for (std::int64_t s = 0; s <= 12; ++s)
    for (std::int64_t u = s; u <= 12; ++u)
      for (std::int64_t t = u; t <= 12; ++t) CHECK(std::abs(delta2(g, s, u, t)) <= 1e-14);
}

TEST_CASE("levels satisfy the Chen identity") {
  auto x = random_path(24, 1);
  for (int k = 2; k <= 5; ++k)
    for (std::int64_t s = 0; s <= 24; ++s)
      for (std::int64_t u = s; u <= 24; ++u)
        for (std::int64_t t = u; t <= 24; ++t)
          CHECK(std::abs(chen_defect(x, k, s, u, t)) <= 1e-12);
  CHECK(level(x, 0, 3, 7) == 1.0);
  CHECK(level(x, 1, 3, 7) == x[7] - x[3]);
  CHECK(level(x, 3, 3, 7) == doctest::Approx(std::pow(x[7] - x[3], 3) / 6.0));
}

TEST_CASE("discrete integral sums left-anchored increments against cells") {
  Eigen::VectorXd f(3), h(2);
  f << 0, 1, 3;
  h << 2, 5;
  CHECK(discrete_integral(f, h, 0, 2) == 5.0);
  CHECK(discrete_integral(f, h, 0, 1) == 0.0);  // single cell, increment from s is zero
  CHECK(discrete_integral(f, h, 1, 1) == 0.0);
  CHECK(discrete_integral(f, h, 1, 2) == 0.0);
  CHECK_THROWS_AS(discrete_integral(f, h, 0, 3), OutOfGrid);

  // constant two-index integrand reduces to the additive cell sum
  auto one = [](std::int64_t, std::int64_t) { return 1.0; };
  CHECK(discrete_integral(one, h, 0, 2) == 7.0);
  CHECK(discrete_integral(one, h, 1, 2) == 5.0);
}

TEST_CASE("controlled remainders split the integral increment by levels") {
  const std::int64_t n = 16;
  auto x = random_path(n, 2);
  Eigen::VectorXd h(n);
  NormalStream hs(42, stream_id(StreamPurpose::kScratch, 200, 0));
  for (std::int64_t k = 0; k < n; ++k) h[k] = hs.normal(static_cast<std::uint64_t>(k));

  const int ell = 4;
  ControlledPath y = controlled_from_function(x, SmoothFunction::monomial(4), ell, 0.3);

  auto r0 = [&](std::int64_t s, std::int64_t k) { return remainder(y, x, 0, s, k); };
  auto big_r = [&](std::int64_t s, std::int64_t t) { return discrete_integral(r0, h, s, t); };

  for (std::int64_t s = 0; s <= n; ++s)
    for (std::int64_t u = s; u <= n; ++u)
      for (std::int64_t t = u; t <= n; ++t) {
        const double lhs = delta2(big_r, s, u, t);
        double rhs = 0.0;
        for (int i = 0; i < ell; ++i) {
          auto level_i = [&](std::int64_t a, std::int64_t k) { return level(x, i, a, k); };
          rhs += remainder(y, x, i, s, u) * discrete_integral(level_i, h, u, t);
        }
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
      }
}

TEST_CASE("low-order functions are controlled with vanishing remainder") {
  auto x = random_path(32, 3);

  ControlledPath lin = controlled_from_function(x, SmoothFunction::named("identity"), 2, 0.3);
  ControlledPath sq = controlled_from_function(x, SmoothFunction::named("square"), 3, 0.3);
  for (std::int64_t s = 0; s <= 32; ++s)
    for (std::int64_t t = s; t <= 32; ++t) {
      CHECK(remainder(lin, x, 0, s, t) == 0.0);
      CHECK(std::abs(remainder(sq, x, 0, s, t)) <= 1e-12);
    }
  // top component has no prediction: its remainder is a plain increment
  CHECK(remainder(sq, x, 2, 3, 9) == sq.comps(9, 2) - sq.comps(3, 2));
  CHECK(sq.comps(5, 2) == 2.0);  // f'' for f = x^2
}

TEST_CASE("controlled representation of sin has a finite bound constant") {
  PathBatch batch = sample_fbm(128, 1, 1, HurstParam(0.3), 42);
  Eigen::VectorXd x = batch.path(0);
  ControlledPath y = controlled_from_function(x, SmoothFunction::named("sin"), 3, 0.3);
  const double g = controlled_bound_estimate(y, x);
  CHECK(g > 0.0);
  CHECK(std::isfinite(g));
  // the estimate is a max over the pairs it sampled, so subsampling shrinks it
  CHECK(controlled_bound_estimate(y, x, 4) <= g);

  SmoothFunction only_value("flat", [](int, double) { return 1.0; }, 1);
  CHECK_THROWS_AS(controlled_from_function(x, only_value, 5, 0.3), ConfigInvalid);
}

TEST_CASE("sewing constant matches closed forms") {
  CHECK(sewing_constant(2.0) ==
        doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi / 3.0).epsilon(1e-14));
  CHECK(sewing_constant(3.0) == doctest::Approx(9.6164552252767543).epsilon(1e-14));
  CHECK_THROWS_AS(sewing_constant(1.0), DivergentSeries);
  CHECK_THROWS_AS(sewing_constant(0.5), DivergentSeries);
}

TEST_CASE("holder norms measure time in grid units") {
  const std::int64_t n = 16;
  auto lin = [n](std::int64_t s, std::int64_t t) {
    return static_cast<double>(t - s) / static_cast<double>(n);
  };
  CHECK(holder_norm(lin, 1.0, n) == doctest::Approx(1.0));
  CHECK(holder_norm(lin, 0.5, n) == doctest::Approx(1.0));  // sup at the full interval
  CHECK(holder_norm_delta(lin, 1.0, n) == 0.0);             // additive in t
}

TEST_CASE("sewing bound holds for processes vanishing on single cells") {
  const std::int64_t n = 48;
  auto w = random_path(n, 4);
  auto v = random_path(n, 5);

  auto g = [&](std::int64_t s, std::int64_t t) {
    const double dv = v[t] - v[s];
    return w[s] * dv * dv;
  };
  // subtracting the cell sum term by term keeps single cells exactly zero
  auto r = [&](std::int64_t s, std::int64_t t) {
    double acc = g(s, t);
    for (std::int64_t k = s; k < t; ++k) acc -= g(k, k + 1);
    return acc;
  };

  SewingCheck chk = sewing_check(r, 1.4, n);
  CHECK(chk.holds);
  CHECK(chk.r_norm > 0.0);
  CHECK(chk.defect_norm > 0.0);
  CHECK(chk.bound == doctest::Approx(sewing_constant(1.4) * chk.defect_norm));

  auto bad = [&](std::int64_t s, std::int64_t t) { return g(s, t); };
  CHECK_THROWS_AS(sewing_check(bad, 1.4, n), NotSewable);
}
