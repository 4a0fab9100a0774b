#include <doctest.h>

#include <cmath>

#include "roughlab/limit_experiments.hpp"
#include "roughlab/multidim_area.hpp"
#include "roughlab/rng.hpp"

using namespace roughlab;

namespace {

Eigen::MatrixXd random_walk(std::int64_t steps, int d, std::uint64_t which) {
  NormalStream s(42, stream_id(StreamPurpose::kScratch, 300 + which, 0));
  Eigen::MatrixXd v(steps + 1, d);
  std::uint64_t i = 0;
  for (int c = 0; c < d; ++c) {
    v(0, c) = 0.0;
    for (std::int64_t k = 0; k < steps; ++k) v(k + 1, c) = v(k, c) + 0.25 * s.normal(i++);
  }
  return v;
}

}  // namespace

TEST_CASE("level-2 lift satisfies the shuffle identity with exact diagonal") {
  const auto v = random_walk(32, 3, 0);
  Eigen::MatrixXd cells;
  lift_level2_path(v, 8, cells);  // r = 4
  REQUIRE(cells.rows() == 9);
  REQUIRE(cells.cols() == 8);

  for (std::int64_t k = 0; k < 8; ++k)
    for (int i = 0; i < 3; ++i) {
      const double di = v(4 * (k + 1), i) - v(4 * k, i);
      CHECK(cells(i * 3 + i, k) == 0.5 * di * di);  // stored in exactly this form
      for (int j = 0; j < 3; ++j) {
        const double dj = v(4 * (k + 1), j) - v(4 * k, j);
        CHECK(std::abs(cells(j * 3 + i, k) + cells(i * 3 + j, k) - di * dj) <= 1e-14);
      }
    }

  CHECK_THROWS_AS(lift_level2_path(random_walk(10, 2, 1), 4, cells), GridMismatch);
}

TEST_CASE("level-2 lift is additive over cell concatenation") {
  const auto v = random_walk(16, 2, 2);
  Eigen::MatrixXd two, one;
  lift_level2_path(v, 2, two);  // cells [0,8) and [8,16)
  lift_level2_path(v, 1, one);  // single cell [0,16)
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double di = v(8, i) - v(0, i);
      const double dj = v(16, j) - v(8, j);
      const double glued = two(j * 2 + i, 0) + two(j * 2 + i, 1) + di * dj;
      CHECK(one(j * 2 + i, 0) == doctest::Approx(glued).epsilon(1e-12));
    }
}

TEST_CASE("area oracle matches the Brownian closed form") {
  for (int r : {1, 2, 4, 16}) {
    const auto o = area_covariance_oracle(64, r, 0.5);
    CHECK(o.lambda == doctest::Approx((1.0 - 0.5 / r) / 2.0).epsilon(1e-12));
    CHECK(o.rho == doctest::Approx(0.25 / r).epsilon(1e-12));
  }
  CHECK_THROWS_AS(area_covariance_oracle(0, 4, 0.3), ConfigInvalid);
}

TEST_CASE("area covariances agree with the exact second moments") {
  const std::int64_t n = 128;
  const int r = 8;
  const double nu = 0.35;
  PathBatch fine = sample_fbm(n * r, 3000, 2, HurstParam(Rational(7, 20)), 42);
  Level2Batch lvl2 = lift_level2(fine, n);
  CHECK(lvl2.r == r);

  const auto est = area_covariances(lvl2, nu);
  const auto o = area_covariance_oracle(n, r, nu);
  CHECK(std::abs(est.lambda - o.lambda) <= 4.0 * est.lambda_se);
  CHECK(std::abs(est.rho - o.rho) <= 4.0 * est.rho_se);
  CHECK(est.lambda_se < 0.05 * est.lambda);

  CHECK_THROWS_AS(area_covariances(lift_level2(sample_fbm(16, 4, 1, HurstParam(0.35), 1), 4), 0.35),
                  ConfigInvalid);
}

TEST_CASE("matrix statistic diagonal is bitwise half the scalar statistic") {
  const std::int64_t n = 64;
  const double nu = 0.35;
  PathBatch fine = sample_fbm(n * 4, 3, 2, HurstParam(Rational(7, 20)), 43);
  Level2Batch lvl2 = lift_level2(fine, n);
  const auto stats = quadratic_variation_statistic(lvl2, nu, 0, n);
  REQUIRE(stats.size() == 3);

  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 2; ++i) {
      const Eigen::VectorXd coarse = lvl2.coarse_values.col(2 * m + i);
      const auto h2 = build_h_n(2, coarse, nu, 0.0);
      CHECK(stats[static_cast<std::size_t>(m)](i, i) == 0.5 * h2(0, n));
    }

  CHECK_THROWS_AS(quadratic_variation_statistic(lvl2, nu, 0, n + 1), OutOfGrid);
}

TEST_CASE("lift refinement is Cauchy in L2 above the quarter boundary") {
  const std::int64_t n = 16;
  const double nu = 0.35;
  const int paths = 400;
  PathBatch fine = sample_fbm(n * 32, paths, 2, HurstParam(Rational(7, 20)), 44);

  auto restrict_batch = [&fine](std::int64_t stride) {
    PathBatch sub = fine;
    sub.n = fine.n / stride;
    sub.values.resize(sub.n + 1, fine.values.cols());
    for (std::int64_t k = 0; k <= sub.n; ++k) sub.values.row(k) = fine.values.row(k * stride);
    return sub;
  };

  // distance between the off-diagonal cells at refinement r and 2r
  auto l2_gap = [&](int r) {
    Level2Batch lo = lift_level2(restrict_batch(32 / r), n);
    Level2Batch hi = lift_level2(restrict_batch(16 / r), n);
    double acc = 0.0;
    for (int m = 0; m < paths; ++m)
      for (int row : {1, 2})
        acc += (lo.cells[static_cast<std::size_t>(m)].row(row) -
                hi.cells[static_cast<std::size_t>(m)].row(row))
                   .squaredNorm();
    return acc / paths;
  };

  const double g4 = l2_gap(4), g8 = l2_gap(8), g16 = l2_gap(16);
  CHECK(g4 > g8);
  CHECK(g8 > g16);
  // diagonals depend only on the coarse endpoints, so they never move
  Level2Batch a = lift_level2(restrict_batch(8), n);
  Level2Batch b = lift_level2(restrict_batch(1), n);
  CHECK(a.cells[0].row(0) == b.cells[0].row(0));
  CHECK(a.cells[0].row(3) == b.cells[0].row(3));
}

TEST_CASE("weighted matrix statistic gates the regime and reduces at unit weight") {
  const std::int64_t n = 64;
  const double nu = 0.35;
  PathBatch fine = sample_fbm(n * 4, 2, 2, HurstParam(Rational(7, 20)), 45);
  Level2Batch lvl2 = lift_level2(fine, n);

  auto y = controlled_from_function(lvl2.coarse_values.col(0), SmoothFunction::named("one"), 2,
                                    nu);
  const auto w = weighted_qv_statistic(y, lvl2, nu);
  const auto q = quadratic_variation_statistic(lvl2, nu, 0, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int m = 0; m < 2; ++m)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(w[static_cast<std::size_t>(m)](i, j) ==
              doctest::Approx(norm * q[static_cast<std::size_t>(m)](i, j)).epsilon(1e-12));

  CHECK_THROWS_AS(weighted_qv_statistic(y, lvl2, 0.25), RegimeMismatch);
  CHECK_THROWS_AS(weighted_qv_statistic(y, lvl2, 0.2), RegimeMismatch);
  auto y1 = controlled_from_function(lvl2.coarse_values.col(0), SmoothFunction::named("one"), 1,
                                     nu);
  CHECK_THROWS_AS(weighted_qv_statistic(y1, lvl2, nu), ConfigInvalid);
  auto ybad = controlled_from_function(Eigen::VectorXd::Zero(n), SmoothFunction::named("one"), 2,
                                       nu);
  CHECK_THROWS_AS(weighted_qv_statistic(ybad, lvl2, nu), GridMismatch);
}
