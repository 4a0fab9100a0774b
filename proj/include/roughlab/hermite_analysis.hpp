#pragma once

#include <functional>

#include <Eigen/Dense>

#include "roughlab/errors.hpp"

namespace roughlab {

// Probabilists' Hermite polynomial H_q(x), orthogonal for the standard
// normal weight with E[H_a H_b] = a! 1{a = b}.
double hermite_eval(int q, double x);

// Quadrature rule exact for polynomials of degree < 2m against the standard
// normal density; weights sum to one.
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussHermiteRule gauss_hermite(int m);

// E|xi|^p for standard normal xi, any p > -1.
double abs_moment(double p);

// Hermite coefficient of H_{2q} in |x|^p - E|x|^p, q >= 1. Odd coefficients
// vanish by symmetry.
double power_variation_coeff(double p, int q);

// Coefficients a_0..a_Q of f = sum a_q H_q, with the rank: the smallest
// q >= 1 whose coefficient is resolvably nonzero.
struct HermiteExpansion {
  Eigen::VectorXd coeffs;
  int rank = 0;
};

int hermite_rank(const Eigen::VectorXd& coeffs, double tol = 1e-9);

// Projects f on H_0..H_Q by quadrature, then repeats with twice the nodes;
// disagreement beyond tol means the rule has not resolved f.
HermiteExpansion expand(const std::function<double(double)>& f, int max_rank, int nodes = 64,
                        double tol = 1e-9);

// Variance of the normalized centered sum of f(xi_k) over a stationary
// sequence with correlation rho: sum over q >= 1 of q! a_q^2 sum_k rho(k)^q.
// Truncated at the highest coefficient provided.
double breuer_major_sigma2(const Eigen::VectorXd& coeffs, double nu);

}  // namespace roughlab
