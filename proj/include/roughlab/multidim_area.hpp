#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "roughlab/errors.hpp"
#include "roughlab/gaussian_paths.hpp"
#include "roughlab/rough_algebra.hpp"

namespace roughlab {

// Level-2 lift of a d-component batch onto a coarser grid: the fine path is
// read as piecewise linear, so over coarse cell k
//   X2_ij = sum over fine sub-steps a of M^i_a dx^j_a,
//   M^i_a = (x^i_a + x^i_{a+1})/2 - x^i_{t_k},
// and the diagonal collapses to (delta x^i)^2 / 2 of the coarse increment,
// which is stored exactly in that form.
struct Level2Batch {
  std::int64_t n = 0;  // coarse cells
  int d = 0;           // components
  int r = 0;           // fine steps per coarse cell
  int paths = 0;
  double nu = 0.0;
  // cells[m] is (d*d) x n; column k holds X2 over coarse cell k with entry
  // (i,j) at row j*d + i.
  std::vector<Eigen::MatrixXd> cells;
  // coarse endpoint values, (n+1) x (paths*d), column m*d + c
  Eigen::MatrixXd coarse_values;
};

// One path: values is (n*r + 1) x d, out is resized to (d*d) x coarse_n.
void lift_level2_path(const Eigen::Ref<const Eigen::MatrixXd>& values, std::int64_t coarse_n,
                      Eigen::MatrixXd& out);

// Fine step count must be a multiple of coarse_n.
Level2Batch lift_level2(const PathBatch& fine, std::int64_t coarse_n);

// Monte Carlo second moments of the normalized off-diagonal lift:
//   lambda = n^{4nu-1} E[(sum_k X2^{12}_k)^2],
//   rho    = n^{4nu-1} E[(sum_k X2^{12}_k)(sum_k X2^{21}_k)],
// with standard errors of the path means.
struct AreaCovariance {
  double lambda = 0.0;
  double rho = 0.0;
  double lambda_se = 0.0;
  double rho_se = 0.0;
};

AreaCovariance area_covariances(const Level2Batch& lvl2, double nu);

// The same two moments computed exactly from the Gaussian covariance of the
// piecewise-linear lift at refinement r: stationarity reduces the double sum
// over cell pairs to lagged terms, truncated at max_lag (default
// min(n-1, 512); the summand decays like lag^{4nu-4}). At nu = 1/2 this
// collapses to lambda = (1 - 1/(2r))/2 and rho = 1/(4r).
struct AreaOracle {
  double lambda = 0.0;
  double rho = 0.0;
};

AreaOracle area_covariance_oracle(std::int64_t n, int r, double nu, std::int64_t max_lag = -1);

// Per-path matrix statistic sum over [s, t) of n^{2nu} X2_k - Id/2. Diagonal
// entries are assembled from the scaled coarse increments, so the (i,i) entry
// is bitwise half the scalar H_2 statistic of component i.
std::vector<Eigen::MatrixXd> quadratic_variation_statistic(const Level2Batch& lvl2, double nu,
                                                           std::int64_t s, std::int64_t t);

// n^{-1/2} sum of y_{t_k} (n^{2nu} X2_k - Id/2) over the full grid. The
// central-limit normalization is only meaningful for nu > 1/4.
std::vector<Eigen::MatrixXd> weighted_qv_statistic(const ControlledPath& y,
                                                   const Level2Batch& lvl2, double nu);

}  // namespace roughlab
