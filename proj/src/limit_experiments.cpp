#include "roughlab/limit_experiments.hpp"

#include <cmath>
#include <string>

namespace roughlab {

namespace {

// floor with a snap so decimal inputs sitting a few ulps under an integer
// (1/(2*0.1) = 4.999...9) land on it, matching the exact rational branch.
std::int64_t snapped_floor(double v) {
  return static_cast<std::int64_t>(std::floor(v + 1e-9));
}

}  // namespace

RegimeDecision classify_regime(const HurstParam& nu, int rank) {
  if (rank < 1) throw InvalidRegime("integrand rank must be >= 1, got " + std::to_string(rank));
  RegimeDecision dec;
  dec.nu = nu;
  dec.rank = rank;
  if (nu.exact) {
    // 2 d nu vs 1 without rounding: compare 2 d p with q.
    const std::int64_t lhs = 2 * static_cast<std::int64_t>(rank) * nu.exact->num;
    const std::int64_t rhs = nu.exact->den;
    dec.regime = lhs > rhs  ? Regime::kGaussian
                 : lhs == rhs ? Regime::kCritical
                              : Regime::kDeterministic;
  } else {
    const double x = 2.0 * rank * nu.value;
    dec.regime = x > 1.0 ? Regime::kGaussian : x == 1.0 ? Regime::kCritical : Regime::kDeterministic;
  }
  if (dec.regime == Regime::kGaussian) {
    // smallest ell with 2 ell nu > 1
    if (nu.exact)
      dec.ell = static_cast<int>(nu.exact->den / (2 * nu.exact->num)) + 1;
    else
      dec.ell = static_cast<int>(snapped_floor(1.0 / (2.0 * nu.value))) + 1;
    dec.normalization_exponent = -0.5;
  } else {
    dec.ell = rank + 1;
    dec.normalization_exponent =
        dec.regime == Regime::kCritical ? -0.5 : rank * nu.value - 1.0;
  }
  return dec;
}

namespace {

GridIncrement finish_grid(Eigen::VectorXd cells) {
  GridIncrement h;
  h.prefix.resize(cells.size() + 1);
  h.prefix[0] = 0.0;
  for (Eigen::Index k = 0; k < cells.size(); ++k) h.prefix[k + 1] = h.prefix[k] + cells[k];
  h.cells = std::move(cells);
  return h;
}

}  // namespace

GridIncrement build_h_n(const SmoothFunction& f, const Eigen::VectorXd& x, double nu,
                        double normalization_exponent) {
  const Eigen::Index n = x.size() - 1;
  if (n < 1) throw DegenerateInput("path needs at least one increment");
  const double scale = std::pow(static_cast<double>(n), nu);
  const double norm = std::pow(static_cast<double>(n), normalization_exponent);
  Eigen::VectorXd cells(n);
  for (Eigen::Index k = 0; k < n; ++k) cells[k] = norm * f(scale * (x[k + 1] - x[k]));
  return finish_grid(std::move(cells));
}

GridIncrement build_h_n(int q, const Eigen::VectorXd& x, double nu,
                        double normalization_exponent) {
  if (q < 0) throw ConfigInvalid("Hermite order " + std::to_string(q));
  const Eigen::Index n = x.size() - 1;
  if (n < 1) throw DegenerateInput("path needs at least one increment");
  const double scale = std::pow(static_cast<double>(n), nu);
  const double norm = std::pow(static_cast<double>(n), normalization_exponent);
  Eigen::VectorXd cells(n);
  for (Eigen::Index k = 0; k < n; ++k)
    cells[k] = norm * hermite_eval(q, scale * (x[k + 1] - x[k]));
  return finish_grid(std::move(cells));
}

double weighted_statistic(const ControlledPath& y, const GridIncrement& h, std::int64_t s,
                          std::int64_t t) {
  if (y.n() != h.n())
    throw GridMismatch("weight on " + std::to_string(y.n()) + " cells, increment on " +
                       std::to_string(h.n()));
  return discrete_integral([&y](std::int64_t, std::int64_t k) { return y.comps(k, 0); }, h.cells,
                           s, t);
}

LimitSample limit_law_sample(const RegimeDecision& decision, const ControlledPath& y,
                             double sigma2, double a_d, std::uint64_t seed,
                             std::uint64_t path_index) {
  const std::int64_t n = y.n();
  if (n < 1) throw DegenerateInput("weight trajectory is empty");
  LimitSample out;
  if (decision.regime != Regime::kDeterministic) {
    double acc = 0.0;
    for (std::int64_t k = 0; k < n; ++k) acc += y.comps(k, 0) * y.comps(k, 0);
    out.s2 = sigma2 * acc / static_cast<double>(n);
  }
  if (decision.regime != Regime::kGaussian) {
    const int d = decision.rank;
    if (y.order <= d)
      throw ConfigInvalid("deterministic part needs derivative " + std::to_string(d) +
                          ", weight has order " + std::to_string(y.order));
    double acc = 0.0;
    for (std::int64_t k = 0; k < n; ++k) acc += y.comps(k, d);
    out.det_part = std::pow(-0.5, d) * a_d * acc / static_cast<double>(n);
  }
  out.value = out.det_part;
  if (decision.regime != Regime::kDeterministic) {
    NormalStream z(seed, stream_id(StreamPurpose::kLimitNoise, path_index));
    out.value += std::sqrt(out.s2) * z.normal(0);
  }
  return out;
}

namespace {

double abs_power(double v, double p) {
  const double a = std::abs(v);
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 4.0) return (a * a) * (a * a);
  return std::pow(a, p);
}

}  // namespace

double power_variation(const ControlledPath& y, const Eigen::VectorXd& x, double p, double nu,
                       PowerVariationKind kind) {
  const std::int64_t n = x.size() - 1;
  if (n < 1) throw DegenerateInput("path needs at least one increment");
  if (y.n() != n)
    throw GridMismatch("weight on " + std::to_string(y.n()) + " cells, path on " +
                       std::to_string(n));
  const double scale = std::pow(static_cast<double>(n), nu);

  if (kind == PowerVariationKind::kPlainPvar) {
    if (!(2.0 * nu * p > 1.0))
      throw RegimeMismatch("plain p-variation needs p > 1/(2 nu); p = " + std::to_string(p) +
                           ", nu = " + std::to_string(nu));
    // z is the 0-component of y.
    double acc = 0.0;
    for (std::int64_t k = 0; k < n; ++k)
      acc += abs_power(scale * (y.comps(k + 1, 0) - y.comps(k, 0)), p);
    return acc / static_cast<double>(n);
  }

  if (p < 2.0)
    throw RegimeMismatch("centered p-variation needs p >= 2, got " + std::to_string(p));
  const bool gaussian_regime = 4.0 * nu > 1.0;  // rank-2 boundary at nu = 1/4
  if (!gaussian_regime && p < 4.0)
    throw RegimeMismatch("below nu = 1/4 the centered p-variation needs p >= 4, got " +
                         std::to_string(p));
  const double expo = (4.0 * nu >= 1.0) ? -0.5 : 2.0 * nu - 1.0;
  const double norm = std::pow(static_cast<double>(n), expo);
  const double c_p = abs_moment(p);
  double acc = 0.0;
  for (std::int64_t k = 0; k < n; ++k)
    acc += y.comps(k, 0) * (abs_power(scale * (x[k + 1] - x[k]), p) - c_p);
  return norm * acc;
}

double power_variation_sigma2(double p, double nu, int max_q) {
  if (max_q < 1) throw ConfigInvalid("need at least one chaos term");
  double total = 0.0;
  double factorial = 1.0;  // (2q)!
  for (int q = 1; q <= max_q; ++q) {
    factorial *= static_cast<double>(2 * q - 1) * static_cast<double>(2 * q);
    const double a = power_variation_coeff(p, q);
    if (a == 0.0) continue;
    const double term = factorial * a * a * rho_power_sum(2 * q, nu);
    total += term;
    if (q > 2 && std::abs(term) < 1e-16 * total) break;
  }
  return total;
}

double trapezoidal_sum(const ControlledPath& y, const Eigen::VectorXd& x) {
  const std::int64_t n = x.size() - 1;
  if (y.n() != n)
    throw GridMismatch("weight on " + std::to_string(y.n()) + " cells, path on " +
                       std::to_string(n));
  double acc = 0.0;
  for (std::int64_t k = 0; k < n; ++k)
    acc += 0.5 * (y.comps(k, 0) + y.comps(k + 1, 0)) * (x[k + 1] - x[k]);
  return acc;
}

double compensated_rough_sum(const ControlledPath& y, const Eigen::VectorXd& x) {
  const std::int64_t n = x.size() - 1;
  if (y.n() != n)
    throw GridMismatch("weight on " + std::to_string(y.n()) + " cells, path on " +
                       std::to_string(n));
  double acc = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double dx = x[k + 1] - x[k];
    double c = dx;  // (dx)^{i+1} / (i+1)!
    double cell = 0.0;
    for (int i = 0; i < y.order; ++i) {
      cell += y.comps(k, i) * c;
      c *= dx / static_cast<double>(i + 2);
    }
    acc += cell;
  }
  return acc;
}

BlockDiagnostics block_decomposition(const ControlledPath& y, const Eigen::VectorXd& x,
                                     const GridIncrement& h, int block_count) {
  const std::int64_t n = h.n();
  if (y.n() != n || x.size() != n + 1)
    throw GridMismatch("weight, path and increment grids disagree");
  if (block_count < 1 || block_count > n)
    throw ConfigInvalid("block count " + std::to_string(block_count) + " for " +
                        std::to_string(n) + " cells");
  const Partition part(n);
  const int ell = y.order;

  BlockDiagnostics out;
  out.block_count = block_count;
  out.phi = Eigen::VectorXd::Zero(ell);
  out.block_sums = Eigen::VectorXd::Zero(ell);

  for (int j = 0; j < block_count; ++j) {
    const std::int64_t lo = part.eps_index(static_cast<double>(j) / block_count);
    const std::int64_t hi = part.eps_index(static_cast<double>(j + 1) / block_count);
    if (lo >= hi) continue;
    for (int i = 0; i < ell; ++i) {
      const double block_level = discrete_integral(
          [&x, i](std::int64_t s, std::int64_t k) { return level(x, i, s, k); }, h.cells, lo, hi);
      out.phi[i] += y.comps(lo, i) * block_level;
      out.block_sums[i] += block_level;
    }
    out.remainder_phi += discrete_integral(
        [&y, &x](std::int64_t s, std::int64_t k) { return remainder(y, x, 0, s, k); }, h.cells,
        lo, hi);
  }
  out.total = weighted_statistic(y, h, 0, n);
  return out;
}

}  // namespace roughlab
