#include "roughlab/multidim_area.hpp"

#include <cmath>
#include <string>

#include "roughlab/hermite_analysis.hpp"
#include "roughlab/stats.hpp"

namespace roughlab {

void lift_level2_path(const Eigen::Ref<const Eigen::MatrixXd>& values, std::int64_t coarse_n,
                      Eigen::MatrixXd& out) {
  const std::int64_t fine_n = values.rows() - 1;
  const int d = static_cast<int>(values.cols());
  if (coarse_n < 1 || fine_n < 1 || fine_n % coarse_n != 0)
    throw GridMismatch(std::to_string(fine_n) + " fine steps do not refine " +
                       std::to_string(coarse_n) + " coarse cells");
  const std::int64_t r = fine_n / coarse_n;
  out.resize(d * d, coarse_n);
  for (std::int64_t k = 0; k < coarse_n; ++k) {
    const std::int64_t base = k * r;
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) {
        if (i == j) {
          const double inc = values(base + r, i) - values(base, i);
          out(j * d + i, k) = 0.5 * inc * inc;
          continue;
        }
        double acc = 0.0;
        for (std::int64_t a = 0; a < r; ++a)
          acc += (0.5 * (values(base + a, i) + values(base + a + 1, i)) - values(base, i)) *
                 (values(base + a + 1, j) - values(base + a, j));
        out(j * d + i, k) = acc;
      }
  }
}

Level2Batch lift_level2(const PathBatch& fine, std::int64_t coarse_n) {
  if (coarse_n < 1 || fine.n % coarse_n != 0)
    throw GridMismatch(std::to_string(fine.n) + " fine steps do not refine " +
                       std::to_string(coarse_n) + " coarse cells");
  Level2Batch out;
  out.n = coarse_n;
  out.d = fine.components;
  out.r = static_cast<int>(fine.n / coarse_n);
  out.paths = fine.paths;
  out.nu = fine.nu;
  out.cells.resize(static_cast<std::size_t>(fine.paths));
  out.coarse_values.resize(coarse_n + 1, fine.values.cols());
  for (std::int64_t k = 0; k <= coarse_n; ++k)
    out.coarse_values.row(k) = fine.values.row(k * out.r);
  for (int m = 0; m < fine.paths; ++m)
    lift_level2_path(fine.values.middleCols(static_cast<Eigen::Index>(m) * out.d, out.d),
                     coarse_n, out.cells[static_cast<std::size_t>(m)]);
  return out;
}

AreaCovariance area_covariances(const Level2Batch& lvl2, double nu) {
  if (lvl2.d < 2) throw ConfigInvalid("area covariances need at least two components");
  if (lvl2.paths < 2) throw TooFewSamples("area covariances need at least two paths");
  const double norm = std::pow(static_cast<double>(lvl2.n), 4.0 * nu - 1.0);
  Eigen::VectorXd aa(lvl2.paths), ab(lvl2.paths);
  for (int m = 0; m < lvl2.paths; ++m) {
    // X2^{12} lives at (i,j) = (0,1), X2^{21} at (1,0)
    const double a = lvl2.cells[static_cast<std::size_t>(m)].row(lvl2.d).sum();
    const double b = lvl2.cells[static_cast<std::size_t>(m)].row(1).sum();
    aa[m] = a * a;
    ab[m] = a * b;
  }
  AreaCovariance out;
  out.lambda = norm * sample_mean(aa);
  out.rho = norm * sample_mean(ab);
  const double root_m = std::sqrt(static_cast<double>(lvl2.paths));
  out.lambda_se = norm * std::sqrt(sample_variance(aa)) / root_m;
  out.rho_se = norm * std::sqrt(sample_variance(ab)) / root_m;
  return out;
}

AreaOracle area_covariance_oracle(std::int64_t n, int r, double nu, std::int64_t max_lag) {
  if (n < 1 || r < 1)
    throw ConfigInvalid("oracle needs n >= 1 and refinement >= 1");
  if (max_lag < 0) max_lag = std::min<std::int64_t>(n - 1, 512);
  max_lag = std::min(max_lag, n - 1);

  // Everything below works on the integer fine grid with unit-variance steps;
  // |z|^{2 nu} is tabulated once. The overall (n r)^{-4 nu} path scaling and
  // the n^{4 nu} statistic scaling collapse to r^{-4 nu} at the end.
  const double two_nu = 2.0 * nu;
  const std::int64_t top = (max_lag + 2) * static_cast<std::int64_t>(r) + 2;
  std::vector<double> pw(static_cast<std::size_t>(top));
  for (std::int64_t i = 0; i < top; ++i)
    pw[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i), two_nu);
  const auto v = [&pw](std::int64_t z) { return pw[static_cast<std::size_t>(z < 0 ? -z : z)]; };
  const auto g = [&v](std::int64_t lag) {
    return 0.5 * (v(lag + 1) + v(lag - 1) - 2.0 * v(lag));
  };

  // Zero-sum Gaussian combinations: E[sum w_i x_{u_i} sum w'_j x_{s_j}] =
  // -1/2 sum w_i w'_j |u_i - s_j|^{2 nu}. M_a has weights (-1 at the cell
  // anchor, 1/2 at a, 1/2 at a+1); a step has (-1, +1) at its endpoints.
  const auto mid_mid = [&v](std::int64_t a, std::int64_t b, std::int64_t c) {
    const std::int64_t e = a - c - b;
    return -0.5 * (v(c) - 0.5 * (v(c + b) + v(c + b + 1)) - 0.5 * (v(c - a) + v(c - a - 1)) +
                   0.25 * (2.0 * v(e) + v(e - 1) + v(e + 1)));
  };
  const auto mid_inc = [&v](std::int64_t a, std::int64_t b, std::int64_t c) {
    const std::int64_t e = a - c - b;
    return -0.5 * (v(c + b) - v(c + b + 1) + 0.5 * (v(e - 1) - v(e + 1)));
  };
  const auto inc_mid = [&v](std::int64_t a, std::int64_t b, std::int64_t c) {
    const std::int64_t e = a - c - b;
    return -0.5 * (v(c - a) - v(c - a - 1) + 0.5 * (v(e + 1) - v(e - 1)));
  };

  double lam = 0.0, rho = 0.0;
  for (std::int64_t tau = 0; tau <= max_lag; ++tau) {
    const std::int64_t c = tau * r;
    double lam_t = 0.0, rho_t = 0.0;
    for (std::int64_t a = 0; a < r; ++a)
      for (std::int64_t b = 0; b < r; ++b) {
        lam_t += mid_mid(a, b, c) * g(c + b - a);
        rho_t += mid_inc(a, b, c) * inc_mid(a, b, c);
      }
    // Cesaro weight from the (1/n) double sum over cell pairs; both lag
    // functions are even in tau.
    const double w = (tau == 0) ? 1.0 : 2.0 * (1.0 - static_cast<double>(tau) / n);
    lam += w * lam_t;
    rho += w * rho_t;
  }
  const double scale = std::pow(static_cast<double>(r), -2.0 * two_nu);
  return {scale * lam, scale * rho};
}

namespace {

// diagonal cells use the same expression as the scalar H_2 grid statistic so
// the reduction to the one-component statistic is bitwise, not just analytic
double diag_window(const Eigen::Ref<const Eigen::VectorXd>& coarse, double scale, std::int64_t s,
                   std::int64_t t) {
  double acc = 0.0;
  for (std::int64_t k = s; k < t; ++k)
    acc += hermite_eval(2, scale * (coarse[k + 1] - coarse[k]));
  return 0.5 * acc;
}

}  // namespace

std::vector<Eigen::MatrixXd> quadratic_variation_statistic(const Level2Batch& lvl2, double nu,
                                                           std::int64_t s, std::int64_t t) {
  if (s < 0 || t > lvl2.n || s > t)
    throw OutOfGrid("statistic window [" + std::to_string(s) + "," + std::to_string(t) + ")");
  const double scale1 = std::pow(static_cast<double>(lvl2.n), nu);
  const double scale2 = std::pow(static_cast<double>(lvl2.n), 2.0 * nu);
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(lvl2.paths));
  for (int m = 0; m < lvl2.paths; ++m) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(lvl2.d, lvl2.d);
    for (int j = 0; j < lvl2.d; ++j)
      for (int i = 0; i < lvl2.d; ++i) {
        if (i == j) {
          h(i, i) = diag_window(lvl2.coarse_values.col(static_cast<Eigen::Index>(m) * lvl2.d + i),
                                scale1, s, t);
          continue;
        }
        double acc = 0.0;
        for (std::int64_t k = s; k < t; ++k)
          acc += lvl2.cells[static_cast<std::size_t>(m)](j * lvl2.d + i, k);
        h(i, j) = scale2 * acc;
      }
    out[static_cast<std::size_t>(m)] = std::move(h);
  }
  return out;
}

std::vector<Eigen::MatrixXd> weighted_qv_statistic(const ControlledPath& y,
                                                   const Level2Batch& lvl2, double nu) {
  if (!(4.0 * nu > 1.0))
    throw RegimeMismatch("weighted quadratic variation needs nu > 1/4, got " +
                         std::to_string(nu));
  if (y.order < 2) throw ConfigInvalid("weight must be controlled to order >= 2");
  if (y.n() != lvl2.n)
    throw GridMismatch("weight on " + std::to_string(y.n()) + " cells, lift on " +
                       std::to_string(lvl2.n));
  const double scale1 = std::pow(static_cast<double>(lvl2.n), nu);
  const double scale2 = std::pow(static_cast<double>(lvl2.n), 2.0 * nu);
  const double norm = 1.0 / std::sqrt(static_cast<double>(lvl2.n));
  std::vector<Eigen::MatrixXd> out(static_cast<std::size_t>(lvl2.paths));
  for (int m = 0; m < lvl2.paths; ++m) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(lvl2.d, lvl2.d);
    for (int j = 0; j < lvl2.d; ++j)
      for (int i = 0; i < lvl2.d; ++i) {
        double acc = 0.0;
        if (i == j) {
          const auto coarse = lvl2.coarse_values.col(static_cast<Eigen::Index>(m) * lvl2.d + i);
          for (std::int64_t k = 0; k < lvl2.n; ++k)
            acc += y.comps(k, 0) * 0.5 *
                   hermite_eval(2, scale1 * (coarse[k + 1] - coarse[k]));
          h(i, i) = norm * acc;
          continue;
        }
        for (std::int64_t k = 0; k < lvl2.n; ++k)
          acc += y.comps(k, 0) * lvl2.cells[static_cast<std::size_t>(m)](j * lvl2.d + i, k);
        h(i, j) = norm * scale2 * acc;
      }
    out[static_cast<std::size_t>(m)] = std::move(h);
  }
  return out;
}

}  // namespace roughlab
