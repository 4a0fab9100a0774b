#include <doctest.h>

#include <cmath>
#include <numbers>

#include "roughlab/gaussian_paths.hpp"
#include "roughlab/hermite_analysis.hpp"

using namespace roughlab;

TEST_CASE("hermite polynomials match closed forms") {
  for (double x : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
    CHECK(hermite_eval(0, x) == 1.0);
    CHECK(hermite_eval(1, x) == x);
    CHECK(hermite_eval(2, x) == doctest::Approx(x * x - 1.0));
    CHECK(hermite_eval(3, x) == doctest::Approx(x * x * x - 3.0 * x));
    CHECK(hermite_eval(4, x) == doctest::Approx(((x * x - 6.0) * x * x + 3.0)));
  }
  // H_{2q}(0) = (-1)^q (2q-1)!!
  CHECK(hermite_eval(10, 0.0) == doctest::Approx(-945.0));
  CHECK(hermite_eval(8, 0.0) == doctest::Approx(105.0));
  CHECK_THROWS_AS(hermite_eval(-1, 0.0), ConfigInvalid);
}

TEST_CASE("quadrature rule integrates gaussian moments exactly") {
  GaussHermiteRule rule = gauss_hermite(24);
  CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(rule.nodes.sum()) < 1e-12);

  auto moment = [&](int p) {
    double acc = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * std::pow(rule.nodes[i], p);
    return acc;
  };
  CHECK(std::abs(moment(1)) < 1e-12);
  CHECK(moment(2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(moment(4) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(moment(6) == doctest::Approx(15.0).epsilon(1e-12));
  CHECK(moment(12) == doctest::Approx(10395.0).epsilon(1e-11));
}

TEST_CASE("hermite orthogonality under the quadrature rule") {
  GaussHermiteRule rule = gauss_hermite(40);
  for (int a = 0; a <= 8; ++a) {
    double a_fact = 1.0;
    for (int i = 2; i <= a; ++i) a_fact *= i;
    for (int b = 0; b <= 8; ++b) {
      double acc = 0.0;
      for (int i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * hermite_eval(a, rule.nodes[i]) * hermite_eval(b, rule.nodes[i]);
      const double want = (a == b) ? a_fact : 0.0;
      CHECK(acc == doctest::Approx(want).epsilon(1e-10).scale(a_fact));
    }
  }
}

TEST_CASE("absolute moments of the standard normal") {
  CHECK(abs_moment(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(abs_moment(4.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(abs_moment(6.0) == doctest::Approx(15.0).epsilon(1e-13));
  const double root_2_pi = std::sqrt(2.0 / std::numbers::pi);
  CHECK(abs_moment(1.0) == doctest::Approx(root_2_pi).epsilon(1e-14));
  CHECK(abs_moment(3.0) == doctest::Approx(2.0 * root_2_pi).epsilon(1e-14));
  CHECK_THROWS_AS(abs_moment(-1.0), ConfigInvalid);
}

TEST_CASE("power variation coefficients") {
  // a_2 = p c_p / 2 for every p
  for (double p : {1.0, 2.0, 3.0, 4.0})
    CHECK(power_variation_coeff(p, 1) == doctest::Approx(0.5 * p * abs_moment(p)).epsilon(1e-12));

  // x^2 - 1 is exactly H_2
  CHECK(power_variation_coeff(2.0, 1) == doctest::Approx(1.0).epsilon(1e-13));
  for (int q = 2; q <= 6; ++q)
    CHECK(std::abs(power_variation_coeff(2.0, q)) < 1e-10);

  // partial Parseval sums increase to Var(|x|^p)
  const double p = 3.0;
  const double var = abs_moment(2 * p) - abs_moment(p) * abs_moment(p);
  // past q ~ 35 the alternating closed form cancels to below long-double
  // precision, so stop while coefficients are still accurate
  double partial = 0.0;
  double prev = -1.0;
  for (int q = 1; q <= 32; ++q) {
    double fact = 1.0;
    for (int i = 2; i <= 2 * q; ++i) fact *= i;
    const double a = power_variation_coeff(p, q);
    partial += fact * a * a;
    CHECK(partial >= prev);
    CHECK(partial <= var * (1.0 + 1e-7));
    prev = partial;
  }
  CHECK(partial == doctest::Approx(var).epsilon(1e-4));
}

TEST_CASE("expansion recovers polynomial coefficients and ranks") {
  auto h3 = [](double x) { return x * x * x - 3.0 * x; };
  HermiteExpansion e = expand(h3, 6);
  CHECK(e.rank == 3);
  CHECK(e.coeffs[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(e.coeffs[0]) < 1e-12);
  CHECK(std::abs(e.coeffs[1]) < 1e-12);
  CHECK(std::abs(e.coeffs[5]) < 1e-12);

  HermiteExpansion s = expand([](double x) { return std::sin(x); }, 7);
  const double root_e = std::exp(-0.5);
  CHECK(s.rank == 1);
  CHECK(s.coeffs[1] == doctest::Approx(root_e).epsilon(1e-12));
  CHECK(s.coeffs[3] == doctest::Approx(-root_e / 6.0).epsilon(1e-10));
  CHECK(std::abs(s.coeffs[2]) < 1e-12);

  // centered |x|^3 is even with vanishing mean: rank 2
  const double c3 = abs_moment(3.0);
  HermiteExpansion a =
      expand([c3](double x) { return std::pow(std::abs(x), 3.0) - c3; }, 6, 256, 1e-3);
  CHECK(a.rank == 2);
  CHECK(a.coeffs[2] == doctest::Approx(power_variation_coeff(3.0, 1)).epsilon(1e-3));

  CHECK_THROWS_AS(expand([](double) { return 1.0; }, 4), DegenerateInput);
  CHECK_THROWS_AS(expand(h3, 0), ConfigInvalid);
}

TEST_CASE("limit variance assembles coefficients against correlation sums") {
  Eigen::VectorXd h2 = Eigen::VectorXd::Zero(3);
  h2[2] = 1.0;
  CHECK(breuer_major_sigma2(h2, 0.3) ==
        doctest::Approx(2.0 * rho_power_sum(2, 0.3)).epsilon(1e-12));
  CHECK(breuer_major_sigma2(h2, 0.5) == doctest::Approx(2.0).epsilon(1e-12));

  // first-chaos part contributes nothing below the diffusive index
  Eigen::VectorXd mixed = Eigen::VectorXd::Zero(3);
  mixed[1] = 5.0;
  mixed[2] = 1.0;
  CHECK(breuer_major_sigma2(mixed, 0.3) == doctest::Approx(breuer_major_sigma2(h2, 0.3)));

  Eigen::VectorXd with_mean = Eigen::VectorXd::Zero(3);
  with_mean[0] = 1.0;
  with_mean[2] = 1.0;
  CHECK_THROWS_AS(breuer_major_sigma2(with_mean, 0.3), DegenerateInput);
}
