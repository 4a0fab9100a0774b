#include "roughlab/rough_algebra.hpp"

#include <cmath>

namespace roughlab {

double level(const Eigen::VectorXd& x, int i, std::int64_t s, std::int64_t t) {
  if (i < 0 || i > 170) throw ConfigInvalid("level order " + std::to_string(i));
  if (i == 0) return 1.0;
  const double d = x[t] - x[s];
  double acc = 1.0;
  for (int j = 1; j <= i; ++j) acc *= d / static_cast<double>(j);
  return acc;
}

double chen_defect(const Eigen::VectorXd& x, int k, std::int64_t s, std::int64_t u,
                   std::int64_t t) {
  double lhs = level(x, k, s, t) - level(x, k, s, u) - level(x, k, u, t);
  for (int j = 1; j < k; ++j) lhs -= level(x, k - j, s, u) * level(x, j, u, t);
  return lhs;
}

double discrete_integral(const Eigen::VectorXd& f, const Eigen::VectorXd& h, std::int64_t s,
                         std::int64_t t) {
  if (s < 0 || t >= f.size() || s > t || t > h.size())
    throw OutOfGrid("integral range [" + std::to_string(s) + "," + std::to_string(t) + ")");
  double acc = 0.0;
  for (std::int64_t k = s; k < t; ++k) acc += (f[k] - f[s]) * h[k];
  return acc;
}

double sewing_constant(double mu) {
  if (!(mu > 1.0)) throw DivergentSeries("sewing constant needs mu > 1");
  // zeta via Euler-Maclaurin at L = 32; the first dropped correction is
  // below 1e-17 for every mu > 1.
  const double big_l = 32.0;
  double zeta = 0.0;
  for (int l = 1; l <= 32; ++l) zeta += std::pow(static_cast<double>(l), -mu);
  zeta += std::pow(big_l, 1.0 - mu) / (mu - 1.0);
  zeta -= 0.5 * std::pow(big_l, -mu);
  zeta += mu / 12.0 * std::pow(big_l, -mu - 1.0);
  zeta -= mu * (mu + 1.0) * (mu + 2.0) / 720.0 * std::pow(big_l, -mu - 3.0);
  zeta += mu * (mu + 1.0) * (mu + 2.0) * (mu + 3.0) * (mu + 4.0) / 30240.0 *
          std::pow(big_l, -mu - 5.0);
  return std::pow(2.0, mu) * zeta;
}

SmoothFunction SmoothFunction::named(const std::string& name) {
  if (name == "one")
    return SmoothFunction("one", [](int j, double) { return j == 0 ? 1.0 : 0.0; }, 64);
  if (name == "identity")
    return SmoothFunction("identity",
                          [](int j, double x) { return j == 0 ? x : (j == 1 ? 1.0 : 0.0); }, 64);
  if (name == "sin")
    return SmoothFunction("sin",
                          [](int j, double x) {
                            switch (j & 3) {
                              case 0: return std::sin(x);
                              case 1: return std::cos(x);
                              case 2: return -std::sin(x);
                              default: return -std::cos(x);
                            }
                          },
                          64);
  if (name == "square") return monomial(2);
  if (name == "cube") return monomial(3);
  throw ConfigInvalid("unknown function '" + name + "'");
}

SmoothFunction SmoothFunction::monomial(int p) {
  if (p < 0) throw ConfigInvalid("monomial power " + std::to_string(p));
  const std::string name = (p == 2) ? "square" : (p == 3) ? "cube" : "x^" + std::to_string(p);
  return SmoothFunction(name,
                        [p](int j, double x) {
                          if (j > p) return 0.0;
                          double coeff = 1.0;
                          for (int i = 0; i < j; ++i) coeff *= static_cast<double>(p - i);
                          return coeff * std::pow(x, p - j);
                        },
                        64);
}

ControlledPath controlled_from_function(const Eigen::VectorXd& x, const SmoothFunction& f,
                                        int ell, double nu) {
  if (ell < 1) throw ConfigInvalid("controlled order must be >= 1");
  if (ell - 1 > f.max_order())
    throw ConfigInvalid(f.name() + " has no derivative of order " + std::to_string(ell - 1));
  ControlledPath y;
  y.order = ell;
  y.nu = nu;
  y.comps.resize(x.size(), ell);
  for (int k = 0; k < ell; ++k)
    for (Eigen::Index t = 0; t < x.size(); ++t) y.comps(t, k) = f.derivative(k, x[t]);
  return y;
}

double remainder(const ControlledPath& y, const Eigen::VectorXd& x, int k, std::int64_t s,
                 std::int64_t t) {
  if (k < 0 || k >= y.order) throw ConfigInvalid("remainder level " + std::to_string(k));
  double r = y.comps(t, k) - y.comps(s, k);
  for (int j = k + 1; j < y.order; ++j) r -= y.comps(s, j) * level(x, j - k, s, t);
  return r;
}

double controlled_bound_estimate(const ControlledPath& y, const Eigen::VectorXd& x,
                                 std::int64_t stride) {
  if (stride < 1) throw ConfigInvalid("stride must be positive");
  const std::int64_t n = y.n();
  double best = 0.0;
  for (int k = 0; k < y.order; ++k) {
    const double expo = (y.order - k) * y.nu;
    for (std::int64_t s = 0; s < n; s += stride)
      for (std::int64_t t = s + 1; t <= n; t += stride) {
        const double dt = static_cast<double>(t - s) / static_cast<double>(n);
        best = std::max(best, std::abs(remainder(y, x, k, s, t)) / std::pow(dt, expo));
      }
  }
  return best;
}

}  // namespace roughlab
