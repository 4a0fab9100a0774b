#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "roughlab/errors.hpp"
#include "roughlab/rational.hpp"
#include "roughlab/rng.hpp"

namespace roughlab {

// Hurst-type regularity index, restricted to the rough regime nu in (0, 1/2].
// Keeps the exact rational when the caller has one; regime classification
// needs it to decide ties exactly.
struct HurstParam {
  double value;
  std::optional<Rational> exact;

  explicit HurstParam(double v) : value(v) { validate(); }
  HurstParam(Rational r) : value(r.value()), exact(r) { validate(); }

 private:
  void validate() const {
    if (!(value > 0.0) || value > 0.5)
      throw ConfigInvalid("Hurst index must lie in (0, 1/2], got " + std::to_string(value));
  }
};

// Uniform partition t_k = k/n of [0,1].
struct Partition {
  std::int64_t n;

  explicit Partition(std::int64_t n_) : n(n_) {
    if (n < 1) throw ConfigInvalid("partition needs n >= 1");
  }
  double t(std::int64_t k) const {
    if (k < 0 || k > n) throw OutOfGrid("partition index " + std::to_string(k));
    return static_cast<double>(k) / static_cast<double>(n);
  }
  // Right endpoint map u -> t_{ceil(nu)}, with 0 -> 0. Grid points map to
  // themselves despite rounding dust in n*u.
  std::int64_t eps_index(double u) const {
    if (u < 0.0 || u > 1.0) throw OutOfGrid("time " + std::to_string(u));
    const double v = static_cast<double>(n) * u;
    double c = std::ceil(v);
    if (c - v > 1.0 - 1e-9) c -= 1.0;
    auto k = static_cast<std::int64_t>(c);
    if (k < 0) k = 0;
    if (k > n) k = n;
    return k;
  }
  double eps(double u) const { return t(eps_index(u)); }
};

// Covariance of fractional Brownian motion with index nu on [0, infinity).
double fbm_covariance(double s, double t, double nu);

// Correlation rho(k) of the stationary sequence n^nu * (x_{t_{k+1}} - x_{t_k}).
double fbm_rho(std::int64_t k, double nu);

// sum_{k in Z} rho(k)^q. Exact values: 0 for q = 1 (nu < 1/2, telescoping)
// and 1 at nu = 1/2. Throws DivergentSeries when q(2 - 2 nu) <= 1.
double rho_power_sum(int q, double nu, double rel_tol = 1e-12);

// Scratch space for one synthesis; reuse across paths, one per thread.
struct FbmWorkspace {
  Eigen::FFT<double> fft;
  std::vector<double> normals;
  std::vector<std::complex<double>> spectrum;
  std::vector<std::complex<double>> transformed;
};

// Exact synthesis of fBm increments on the uniform n-point partition of [0,1]
// by circulant embedding of rho. The embedding is positive semidefinite for
// nu <= 1/2; negative eigenvalues beyond rounding dust abort construction.
class FbmSampler {
 public:
  FbmSampler(std::int64_t n, HurstParam hurst);

  std::int64_t n() const { return n_; }
  double nu() const { return nu_; }

  // out[k] = x_{t_{k+1}} - x_{t_k}, k = 0..n-1, for the path indexed by
  // (seed, path, component). Same tuple, same output, regardless of threads.
  void increments(std::uint64_t seed, std::uint64_t path, std::uint64_t component,
                  FbmWorkspace& ws, Eigen::VectorXd& out) const;

 private:
  std::int64_t n_;
  double nu_;
  Eigen::VectorXd sqrt_lambda_;  // sqrt(lambda_k) * n^{-nu} / sqrt(2n), k = 0..n
};

// A batch of sampled paths on the grid t_0..t_n, components interleaved:
// column m * components + c holds component c of path m.
struct PathBatch {
  std::int64_t n = 0;
  int paths = 0;
  int components = 1;
  double nu = 0.0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd values;  // (n+1) rows

  Eigen::Ref<const Eigen::VectorXd> path(int m, int c = 0) const {
    if (m < 0 || m >= paths || c < 0 || c >= components)
      throw OutOfGrid("path index (" + std::to_string(m) + "," + std::to_string(c) + ")");
    return values.col(static_cast<Eigen::Index>(m) * components + c);
  }
};

PathBatch sample_fbm(std::int64_t n, int paths, int components, HurstParam hurst,
                     std::uint64_t seed);

void write_path_csv(std::ostream& os, const PathBatch& batch);
void write_path_binary(const std::string& filename, const PathBatch& batch);
PathBatch read_path_binary(const std::string& filename);

}  // namespace roughlab
