#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Dense>

#include "roughlab/errors.hpp"

namespace roughlab {

// Grid conventions: a path is a vector of n+1 values at t_k = k/n, a one-step
// assignment is a vector of n values h[k] = h_{t_k t_{k+1}}, and a two-index
// function is any callable g(s, t) over grid indices 0 <= s <= t <= n.

// Keeps Eigen vectors out of the functor overloads; their operator() would
// otherwise win overload resolution and index columns instead of time pairs.
template <class F2>
concept TwoIndexFn = !std::is_base_of_v<Eigen::EigenBase<std::decay_t<F2>>, std::decay_t<F2>>;

inline double delta1(const Eigen::VectorXd& f, std::int64_t s, std::int64_t t) {
  return f[t] - f[s];
}

template <TwoIndexFn F2>
double delta2(F2&& g, std::int64_t s, std::int64_t u, std::int64_t t) {
  return g(s, t) - g(s, u) - g(u, t);
}

// Level i of the geometric lift: (x_t - x_s)^i / i!. Level 0 is constant 1.
double level(const Eigen::VectorXd& x, int i, std::int64_t s, std::int64_t t);

// delta2 of level k minus the lower-level products it should equal; zero up
// to roundoff for every path since the levels are powers of one increment.
double chen_defect(const Eigen::VectorXd& x, int k, std::int64_t s, std::int64_t u,
                   std::int64_t t);

// Riemann-type sums over cells [t_k, t_{k+1}) contained in [t_s, t_t).
// Path integrand: sum of (f[k] - f[s]) h[k], so one cell contributes nothing.
double discrete_integral(const Eigen::VectorXd& f, const Eigen::VectorXd& h, std::int64_t s,
                         std::int64_t t);

// Two-index integrand anchored at the left endpoint: sum of f(s, k) h[k].
template <TwoIndexFn F2>
double discrete_integral(F2&& f, const Eigen::VectorXd& h, std::int64_t s, std::int64_t t) {
  if (s < 0 || t > static_cast<std::int64_t>(h.size()) || s > t)
    throw OutOfGrid("integral range [" + std::to_string(s) + "," + std::to_string(t) + ")");
  double acc = 0.0;
  for (std::int64_t k = s; k < t; ++k) acc += f(s, k) * h[k];
  return acc;
}

// sup |g_st| / (t - s)^mu over grid pairs, time measured in [0, 1] units.
template <TwoIndexFn F2>
double holder_norm(F2&& g, double mu, std::int64_t n) {
  double best = 0.0;
  for (std::int64_t s = 0; s < n; ++s)
    for (std::int64_t t = s + 1; t <= n; ++t) {
      const double dt = static_cast<double>(t - s) / static_cast<double>(n);
      best = std::max(best, std::abs(g(s, t)) / std::pow(dt, mu));
    }
  return best;
}

// Same for the second-order increment, over triples s <= u <= t.
template <TwoIndexFn F2>
double holder_norm_delta(F2&& g, double mu, std::int64_t n) {
  double best = 0.0;
  for (std::int64_t s = 0; s < n; ++s)
    for (std::int64_t u = s; u <= n; ++u)
      for (std::int64_t t = u; t <= n; ++t) {
        if (t == s) continue;
        const double dt = static_cast<double>(t - s) / static_cast<double>(n);
        best = std::max(best, std::abs(delta2(g, s, u, t)) / std::pow(dt, mu));
      }
  return best;
}

// K_mu = 2^mu zeta(mu), the constant in |R|_mu <= K_mu |delta R|_mu for
// two-index R vanishing on single cells. Requires mu > 1.
double sewing_constant(double mu);

struct SewingCheck {
  double r_norm = 0.0;
  double defect_norm = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// Verifies the sewing inequality for one concrete R. Throws NotSewable if R
// does not vanish on single cells.
template <TwoIndexFn F2>
SewingCheck sewing_check(F2&& r, double mu, std::int64_t n) {
  for (std::int64_t k = 0; k < n; ++k)
    if (r(k, k + 1) != 0.0)
      throw NotSewable("one-step value " + std::to_string(r(k, k + 1)) + " at cell " +
                       std::to_string(k));
  SewingCheck out;
  out.r_norm = holder_norm(r, mu, n);
  out.defect_norm = holder_norm_delta(r, mu, n);
  out.bound = sewing_constant(mu) * out.defect_norm;
  out.holds = out.r_norm <= out.bound * (1.0 + 1e-12);
  return out;
}

// A scalar function bundled with as many derivatives as the caller registered.
class SmoothFunction {
 public:
  SmoothFunction(std::string name, std::function<double(int, double)> derivs, int max_order)
      : name_(std::move(name)), derivs_(std::move(derivs)), max_order_(max_order) {}

  // one, sin, identity, square, cube; monomials via monomial(p)
  static SmoothFunction named(const std::string& name);
  static SmoothFunction monomial(int p);

  double operator()(double x) const { return derivs_(0, x); }
  double derivative(int j, double x) const {
    if (j < 0 || j > max_order_)
      throw ConfigInvalid("derivative order " + std::to_string(j) + " of " + name_);
    return derivs_(j, x);
  }
  int max_order() const { return max_order_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<double(int, double)> derivs_;
  int max_order_;
};

// Taylor-type components of f(x) along x: column k holds f^{(k)}(x_t), the
// factorials live in the levels. Order ell means columns 0..ell-1.
struct ControlledPath {
  int order = 0;
  double nu = 0.0;
  Eigen::MatrixXd comps;

  std::int64_t n() const { return comps.rows() - 1; }
  const double* component(int k) const { return comps.col(k).data(); }
};

ControlledPath controlled_from_function(const Eigen::VectorXd& x, const SmoothFunction& f,
                                        int ell, double nu);

// r^{(k)}_st: increment of component k minus what the higher components
// predict through the levels of x. The top component has no prediction.
double remainder(const ControlledPath& y, const Eigen::VectorXd& x, int k, std::int64_t s,
                 std::int64_t t);

// Smallest constant G with |r^{(k)}_st| <= G (t-s)^{(ell-k) nu} over the
// sampled pairs; stride subsamples s to keep large grids affordable.
double controlled_bound_estimate(const ControlledPath& y, const Eigen::VectorXd& x,
                                 std::int64_t stride = 1);

}  // namespace roughlab
