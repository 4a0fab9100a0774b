#include "roughlab/gaussian_paths.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>

namespace roughlab {

double fbm_covariance(double s, double t, double nu) {
  const double h2 = 2.0 * nu;
  return 0.5 * (std::pow(s, h2) + std::pow(t, h2) - std::pow(std::abs(t - s), h2));
}

double fbm_rho(std::int64_t k, double nu) {
  const double a = static_cast<double>(k < 0 ? -k : k);
  const double h2 = 2.0 * nu;
  return 0.5 * (std::pow(a + 1.0, h2) - 2.0 * std::pow(a, h2) + std::pow(std::abs(a - 1.0), h2));
}

double rho_power_sum(int q, double nu, double rel_tol) {
  if (q < 1) throw ConfigInvalid("rho_power_sum needs q >= 1");
  if (!(nu > 0.0) || nu >= 1.0) throw ConfigInvalid("rho_power_sum needs nu in (0, 1)");
  if (nu == 0.5) return 1.0;  // rho(k) = 1{k = 0}
  const double decay = static_cast<double>(q) * (2.0 - 2.0 * nu);
  if (decay <= 1.0)
    throw DivergentSeries("sum of rho^" + std::to_string(q) + " diverges at nu = " +
                          std::to_string(nu));
  if (q == 1) return 0.0;  // partial sums telescope to (K+1)^{2nu} - K^{2nu}
  // rho(k) = A k^{2nu-2} (1 + c k^{-2} + O(k^{-4})) with A = nu (2nu - 1) and
  // c = (2nu-2)(2nu-3)/12, so the truncated two-sided tail is summed
  // analytically: midpoint integral of the leading power plus the k^{-2}
  // correction. Residual error is O(K^{-2}) relative to the tail itself.
  const double a_lead = nu * (2.0 * nu - 1.0);
  const double c_corr = (2.0 * nu - 2.0) * (2.0 * nu - 3.0) / 12.0;
  const double a_pow = (q % 2 != 0 && a_lead < 0.0 ? -1.0 : 1.0) * std::pow(std::abs(a_lead), q);
  long double sum = std::pow(fbm_rho(0, nu), q);
  for (std::int64_t k = 1;; ++k) {
    sum += 2.0L * static_cast<long double>(std::pow(fbm_rho(k, nu), q));
    if (k >= 16) {
      const double kk = static_cast<double>(k);
      const double tail_main = a_pow * std::pow(kk + 0.5, 1.0 - decay) / (decay - 1.0);
      const double tail_corr = a_pow * (q * c_corr / (decay + 1.0) - decay / 24.0) *
                               std::pow(kk, -decay - 1.0);
      const double err = std::abs(tail_main) * (q + decay) / (kk * kk);
      if (err <= 0.1 * rel_tol * std::abs(static_cast<double>(sum))) {
        sum += 2.0L * (static_cast<long double>(tail_main) + static_cast<long double>(tail_corr));
        break;
      }
    }
    if (k > (std::int64_t{1} << 28))
      throw DivergentSeries("rho_power_sum failed to converge");
  }
  return static_cast<double>(sum);
}

FbmSampler::FbmSampler(std::int64_t n, HurstParam hurst) : n_(n), nu_(hurst.value) {
  if (n < 1) throw ConfigInvalid("FbmSampler needs n >= 1");
  const std::int64_t m = 2 * n;
  std::vector<std::complex<double>> circ(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j <= n; ++j) circ[static_cast<std::size_t>(j)] = fbm_rho(j, nu_);
  for (std::int64_t j = 1; j < n; ++j)
    circ[static_cast<std::size_t>(m - j)] = circ[static_cast<std::size_t>(j)];

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> lambda;
  fft.fwd(lambda, circ);

  double max_l = 0.0;
  for (const auto& l : lambda) max_l = std::max(max_l, l.real());
  const double floor_l = -1e-9 * std::max(max_l, 1.0);
  sqrt_lambda_.resize(n + 1);
  const double scale = std::pow(static_cast<double>(n), -nu_) / std::sqrt(static_cast<double>(m));
  for (std::int64_t k = 0; k <= n; ++k) {
    double l = lambda[static_cast<std::size_t>(k)].real();
    if (l < floor_l)
      throw EmbeddingNotPSD("circulant eigenvalue " + std::to_string(l) + " at index " +
                            std::to_string(k));
    if (l < 0.0) l = 0.0;
    sqrt_lambda_[k] = std::sqrt(l) * scale;
  }
}

void FbmSampler::increments(std::uint64_t seed, std::uint64_t path, std::uint64_t component,
                            FbmWorkspace& ws, Eigen::VectorXd& out) const {
  const std::int64_t m = 2 * n_;
  ws.normals.resize(static_cast<std::size_t>(m));
  ws.spectrum.resize(static_cast<std::size_t>(m));
  NormalStream stream(seed, stream_id(StreamPurpose::kPathNoise, path, component));
  stream.fill(ws.normals.data(), ws.normals.size());

  // Hermitian spectrum: real weights at the two self-conjugate frequencies,
  // half-weight complex pairs elsewhere. The real part of its transform has
  // correlation rho exactly; the imaginary part is an unused second copy.
  ws.spectrum[0] = sqrt_lambda_[0] * ws.normals[0];
  ws.spectrum[static_cast<std::size_t>(n_)] = sqrt_lambda_[n_] * ws.normals[1];
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  for (std::int64_t j = 1; j < n_; ++j) {
    const double w = sqrt_lambda_[j] * kInvSqrt2;
    const std::complex<double> v(w * ws.normals[static_cast<std::size_t>(2 * j)],
                                 w * ws.normals[static_cast<std::size_t>(2 * j + 1)]);
    ws.spectrum[static_cast<std::size_t>(j)] = v;
    ws.spectrum[static_cast<std::size_t>(m - j)] = std::conj(v);
  }

  ws.fft.fwd(ws.transformed, ws.spectrum);
  out.resize(n_);
  for (std::int64_t k = 0; k < n_; ++k)
    out[k] = ws.transformed[static_cast<std::size_t>(k)].real();
}

PathBatch sample_fbm(std::int64_t n, int paths, int components, HurstParam hurst,
                     std::uint64_t seed) {
  if (paths < 1 || components < 1) throw ConfigInvalid("sample_fbm needs paths, components >= 1");
  FbmSampler sampler(n, hurst);
  FbmWorkspace ws;
  PathBatch batch;
  batch.n = n;
  batch.paths = paths;
  batch.components = components;
  batch.nu = hurst.value;
  batch.seed = seed;
  batch.values.resize(n + 1, static_cast<Eigen::Index>(paths) * components);
  Eigen::VectorXd incr;
  for (int m = 0; m < paths; ++m) {
    for (int c = 0; c < components; ++c) {
      const Eigen::Index col = static_cast<Eigen::Index>(m) * components + c;
      sampler.increments(seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(c), ws,
                         incr);
      batch.values(0, col) = 0.0;
      for (std::int64_t k = 0; k < n; ++k)
        batch.values(k + 1, col) = batch.values(k, col) + incr[k];
    }
  }
  return batch;
}

void write_path_csv(std::ostream& os, const PathBatch& batch) {
  os << "t";
  for (int m = 0; m < batch.paths; ++m) {
    for (int c = 0; c < batch.components; ++c) {
      os << ",x" << m;
      if (batch.components > 1) os << "_" << c;
    }
  }
  os << "\n";
  char buf[32];
  for (std::int64_t k = 0; k <= batch.n; ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(k) / static_cast<double>(batch.n));
    os << buf;
    for (Eigen::Index col = 0; col < batch.values.cols(); ++col) {
      std::snprintf(buf, sizeof buf, "%.17g", batch.values(k, col));
      os << "," << buf;
    }
    os << "\n";
  }
}

namespace {
constexpr char kPathMagic[4] = {'R', 'L', 'P', 'B'};
}

// Layout: magic, u32 version, i64 n, i32 paths, i32 components, f64 nu,
// u64 seed, then (n+1) * paths * components doubles column-major. Native
// (little-endian) byte order.
void write_path_binary(const std::string& filename, const PathBatch& batch) {
  std::ofstream os(filename, std::ios::binary);
  if (!os) throw ConfigInvalid("cannot open " + filename + " for writing");
  std::uint32_t version = 1;
  std::int32_t paths = batch.paths, components = batch.components;
  os.write(kPathMagic, 4);
  os.write(reinterpret_cast<const char*>(&version), sizeof version);
  os.write(reinterpret_cast<const char*>(&batch.n), sizeof batch.n);
  os.write(reinterpret_cast<const char*>(&paths), sizeof paths);
  os.write(reinterpret_cast<const char*>(&components), sizeof components);
  os.write(reinterpret_cast<const char*>(&batch.nu), sizeof batch.nu);
  os.write(reinterpret_cast<const char*>(&batch.seed), sizeof batch.seed);
  os.write(reinterpret_cast<const char*>(batch.values.data()),
           static_cast<std::streamsize>(sizeof(double)) * batch.values.size());
  if (!os) throw ConfigInvalid("write failed: " + filename);
}

PathBatch read_path_binary(const std::string& filename) {
  std::ifstream is(filename, std::ios::binary);
  if (!is) throw ConfigInvalid("cannot open " + filename);
  char magic[4];
  std::uint32_t version = 0;
  PathBatch batch;
  std::int32_t paths = 0, components = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  if (!is || std::memcmp(magic, kPathMagic, 4) != 0 || version != 1)
    throw ConfigInvalid(filename + " is not a path batch file");
  is.read(reinterpret_cast<char*>(&batch.n), sizeof batch.n);
  is.read(reinterpret_cast<char*>(&paths), sizeof paths);
  is.read(reinterpret_cast<char*>(&components), sizeof components);
  is.read(reinterpret_cast<char*>(&batch.nu), sizeof batch.nu);
  is.read(reinterpret_cast<char*>(&batch.seed), sizeof batch.seed);
  if (!is || batch.n < 1 || paths < 1 || components < 1)
    throw ConfigInvalid(filename + ": bad path batch header");
  batch.paths = paths;
  batch.components = components;
  batch.values.resize(batch.n + 1, static_cast<Eigen::Index>(paths) * components);
  is.read(reinterpret_cast<char*>(batch.values.data()),
          static_cast<std::streamsize>(sizeof(double)) * batch.values.size());
  if (!is) throw ConfigInvalid(filename + ": truncated path batch");
  return batch;
}

}  // namespace roughlab
