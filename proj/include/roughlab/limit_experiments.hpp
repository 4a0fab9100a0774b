#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "roughlab/errors.hpp"
#include "roughlab/gaussian_paths.hpp"
#include "roughlab/hermite_analysis.hpp"
#include "roughlab/rng.hpp"
#include "roughlab/rough_algebra.hpp"

namespace roughlab {

// Which limit a weighted sum of a rank-d integrand obeys. The boundary is
// 2 d nu = 1; ties go to the critical regime and are decided in integer
// arithmetic whenever the Hurst index carries a rational.
enum class Regime { kGaussian, kCritical, kDeterministic };

struct RegimeDecision {
  HurstParam nu{0.5};
  int rank = 0;
  int ell = 0;  // controlled order required of the weight
  Regime regime = Regime::kGaussian;
  // The statistic is n^e times the raw sum: e = -1/2 in the Gaussian and
  // critical regimes, rank * nu - 1 in the deterministic one.
  double normalization_exponent = 0.0;
};

RegimeDecision classify_regime(const HurstParam& nu, int rank);

// One-step sums of f(n^nu delta x) over the grid, with prefix sums so any
// window [s, t) costs one subtraction. cells[k] already carries the
// normalization factor passed at build time.
struct GridIncrement {
  Eigen::VectorXd cells;   // size n
  Eigen::VectorXd prefix;  // size n + 1, prefix[0] = 0

  std::int64_t n() const { return cells.size(); }
  double operator()(std::int64_t s, std::int64_t t) const {
    if (s < 0 || t > n() || s > t)
      throw OutOfGrid("increment window [" + std::to_string(s) + "," + std::to_string(t) + ")");
    return prefix[t] - prefix[s];
  }
};

// cells[k] = n^e f(n^nu (x[k+1] - x[k])). Exponent 0 gives the raw sum, -1/2
// the central-limit scaling, rank * nu - 1 the deterministic-regime scaling;
// RegimeDecision::normalization_exponent supplies the right value.
GridIncrement build_h_n(const SmoothFunction& f, const Eigen::VectorXd& x, double nu,
                        double normalization_exponent = 0.0);
// Same with f = H_q.
GridIncrement build_h_n(int q, const Eigen::VectorXd& x, double nu,
                        double normalization_exponent = 0.0);

// sum over [s, t) of y_{t_k} h_{t_k t_{k+1}}.
double weighted_statistic(const ControlledPath& y, const GridIncrement& h, std::int64_t s,
                          std::int64_t t);

// The exact limit law given one weight trajectory: value = S Z + D with
// S^2 = sigma2 (1/n) sum y_{t_k}^2, D = (-1/2)^d a_d (1/n) sum y^{(d)}_{t_k},
// Z standard normal. The Gaussian regime drops D, the deterministic one
// drops S Z. Z is keyed by (seed, path_index) on its own stream so the limit
// sample is independent of the driving paths.
struct LimitSample {
  double value = 0.0;
  double s2 = 0.0;        // conditional variance of the Gaussian part
  double det_part = 0.0;  // deterministic part
};

LimitSample limit_law_sample(const RegimeDecision& decision, const ControlledPath& y,
                             double sigma2, double a_d, std::uint64_t seed,
                             std::uint64_t path_index);

// Power variations of z (the 0-component of yc) or the weighted centered sum
// of |n^nu delta x|^p - c_p, with the regime normalization. The plain kind
// requires p > 1/(2 nu); the weighted kind p >= 2 above nu = 1/4 and p >= 4
// at or below it.
enum class PowerVariationKind { kWeightedCentered, kPlainPvar };

double power_variation(const ControlledPath& y, const Eigen::VectorXd& x, double p, double nu,
                       PowerVariationKind kind);

// Limiting variance of the normalized centered p-variation: sum over q of
// (2q)! a_{2q}^2 rho_power_sum(2q, nu), coefficients from the Hermite
// expansion of |x|^p - c_p.
double power_variation_sigma2(double p, double nu, int max_q = 20);

// sum of (y_{t_k} + y_{t_{k+1}})/2 * delta x.
double trapezoidal_sum(const ControlledPath& y, const Eigen::VectorXd& x);

// Its rough-sum companion: sum over k and i < ell of y^{(i)} (delta x)^{i+1}
// / (i+1)!. The two agree in the limit for nu > 1/6.
double compensated_rough_sum(const ControlledPath& y, const Eigen::VectorXd& x);

// Coarse-block split of the full weighted sum: phi[i] re-anchors level i at
// the block starts, remainder_phi collects the order-0 remainders, and the
// three add back to the total exactly. block_sums[i] drops the weights and
// keeps the per-block level sums.
struct BlockDiagnostics {
  int block_count = 0;
  Eigen::VectorXd phi;         // size ell
  double remainder_phi = 0.0;  // R over all blocks
  double total = 0.0;          // full weighted sum, for the identity check
  Eigen::VectorXd block_sums;  // size ell, unweighted per-level block sums
};

BlockDiagnostics block_decomposition(const ControlledPath& y, const Eigen::VectorXd& x,
                                     const GridIncrement& h, int block_count);

}  // namespace roughlab
