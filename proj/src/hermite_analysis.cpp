#include "roughlab/hermite_analysis.hpp"

#include <cmath>

#include "roughlab/gaussian_paths.hpp"

namespace roughlab {

double hermite_eval(int q, double x) {
  if (q < 0 || q > 400) throw ConfigInvalid("Hermite order " + std::to_string(q));
  if (q == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < q; ++k) {
    const double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

GaussHermiteRule gauss_hermite(int m) {
  if (m < 1 || m > 2000) throw ConfigInvalid("quadrature size " + std::to_string(m));
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(std::max(m - 1, 1));
  for (int k = 1; k < m; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw QuadratureUnstable("tridiagonal eigensolve failed");
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights = es.eigenvectors().row(0).transpose().array().square();
  return rule;
}

double abs_moment(double p) {
  if (!(p > -1.0)) throw ConfigInvalid("absolute moment needs p > -1");
  constexpr double kInvSqrtPi = 0.56418958354775628695;
  return std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) * kInvSqrtPi;
}

double power_variation_coeff(double p, int q) {
  if (q < 1 || q > 80) throw ConfigInvalid("coefficient index " + std::to_string(q));
  // expand H_2q into monomials and take absolute moments term by term
  long double sum = 0.0L;
  long double r_fact = 1.0L, two_r = 1.0L;
  for (int r = 0; r <= q; ++r) {
    if (r > 0) {
      r_fact *= r;
      two_r *= 2.0L;
    }
    long double m_fact = 1.0L;
    for (int i = 2; i <= 2 * q - 2 * r; ++i) m_fact *= i;
    const long double term = static_cast<long double>(abs_moment(p + 2.0 * (q - r))) /
                             (r_fact * two_r * m_fact);
    sum += (r % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

int hermite_rank(const Eigen::VectorXd& coeffs, double tol) {
  const double scale = coeffs.size() ? coeffs.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) throw DegenerateInput("all Hermite coefficients vanish");
  for (int q = 1; q < coeffs.size(); ++q)
    if (std::abs(coeffs[q]) > tol * scale) return q;
  throw DegenerateInput("no nonzero coefficient beyond the constant term");
}

HermiteExpansion expand(const std::function<double(double)>& f, int max_rank, int nodes,
                        double tol) {
  if (max_rank < 1) throw ConfigInvalid("expansion needs max_rank >= 1");
  if (nodes < max_rank + 1) throw ConfigInvalid("too few quadrature nodes");
  auto project = [&](int m) {
    GaussHermiteRule rule = gauss_hermite(m);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(max_rank + 1);
    Eigen::VectorXd fx(m);
    for (int i = 0; i < m; ++i) fx[i] = f(rule.nodes[i]);
    double q_fact = 1.0;
    for (int q = 0; q <= max_rank; ++q) {
      if (q > 0) q_fact *= q;
      double acc = 0.0;
      for (int i = 0; i < m; ++i) acc += rule.weights[i] * fx[i] * hermite_eval(q, rule.nodes[i]);
      a[q] = acc / q_fact;
    }
    return a;
  };
  const Eigen::VectorXd coarse = project(nodes);
  const Eigen::VectorXd fine = project(2 * nodes);
  const double scale = 1.0 + fine.cwiseAbs().maxCoeff();
  const double drift = (coarse - fine).cwiseAbs().maxCoeff();
  if (drift > tol * scale)
    throw QuadratureUnstable("coefficients moved by " + std::to_string(drift) +
                             " when doubling nodes");
  HermiteExpansion out;
  out.coeffs = fine;
  out.rank = hermite_rank(fine, std::max(tol, 1e-12));
  return out;
}

double breuer_major_sigma2(const Eigen::VectorXd& coeffs, double nu) {
  if (coeffs.size() < 2) throw ConfigInvalid("need coefficients beyond the constant term");
  const double scale = coeffs.cwiseAbs().maxCoeff();
  if (std::abs(coeffs[0]) > 1e-9 * scale)
    throw DegenerateInput("nonzero mean: a_0 = " + std::to_string(coeffs[0]));
  double sigma2 = 0.0;
  double q_fact = 1.0;
  for (int q = 1; q < coeffs.size(); ++q) {
    q_fact *= q;
    if (coeffs[q] == 0.0) continue;
    sigma2 += q_fact * coeffs[q] * coeffs[q] * rho_power_sum(q, nu);
  }
  return sigma2;
}

}  // namespace roughlab
