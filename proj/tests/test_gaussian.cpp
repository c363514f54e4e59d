#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "ou/gaussian.hpp"

using ou::Complex;
using ou::MultiIndex;
using ou::Polynomial;

namespace {

MultiIndex idx(std::vector<int> v) { return MultiIndex(std::move(v)); }

// Brute-force quadrature oracle: tensor trapezoid on [-L, L]^d. Adequate for
// the low-degree moments checked here.
double quadrature_moment(const MultiIndex& e, const Eigen::MatrixXd& sigma,
                         int pts = 401, double L = 9.0) {
  const int d = e.dim();
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  Eigen::MatrixXd K = llt.solve(Eigen::MatrixXd::Identity(d, d));
  double det = 1.0;
  Eigen::MatrixXd Lm = llt.matrixL();
  for (int i = 0; i < d; ++i) det *= Lm(i, i) * Lm(i, i);
  double norm = std::pow(2.0 * M_PI, -0.5 * d) / std::sqrt(det);
  double h = 2.0 * L / (pts - 1);
  std::vector<int> grid(static_cast<std::size_t>(d), 0);
  double acc = 0.0;
  for (;;) {
    Eigen::VectorXd x(d);
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      int g = grid[static_cast<std::size_t>(k)];
      x(k) = -L + g * h;
      w *= (g == 0 || g == pts - 1) ? 0.5 : 1.0;
    }
    double mono = 1.0;
    for (int k = 0; k < d; ++k) mono *= std::pow(x(k), e[k]);
    acc += w * mono * std::exp(-0.5 * x.dot(K * x));
    int k = d - 1;
    while (k >= 0 && ++grid[static_cast<std::size_t>(k)] == pts)
      grid[k--] = 0;
    if (k < 0) break;
  }
  return acc * norm * std::pow(h, d);
}

} // namespace

TEST_CASE("univariate moments") {
  Eigen::MatrixXd s(1, 1);
  s << 1.7;
  CHECK(ou::gaussian_moment(idx({0}), s) == doctest::Approx(1.0));
  CHECK(ou::gaussian_moment(idx({1}), s) == doctest::Approx(0.0));
  CHECK(ou::gaussian_moment(idx({2}), s) == doctest::Approx(1.7));
  CHECK(ou::gaussian_moment(idx({3}), s) == doctest::Approx(0.0));
  CHECK(ou::gaussian_moment(idx({4}), s) == doctest::Approx(3.0 * 1.7 * 1.7));
  CHECK(ou::gaussian_moment(idx({6}), s) ==
        doctest::Approx(15.0 * std::pow(1.7, 3)));
  CHECK(ou::gaussian_moment(idx({8}), s) ==
        doctest::Approx(105.0 * std::pow(1.7, 4)));
}

TEST_CASE("correlated bivariate moments match closed forms") {
  Eigen::MatrixXd s(2, 2);
  s << 2.0, 0.6, 0.6, 1.1;
  CHECK(ou::gaussian_moment(idx({1, 1}), s) == doctest::Approx(0.6));
  // E[x^2 y^2] = s11 s22 + 2 s12^2
  CHECK(ou::gaussian_moment(idx({2, 2}), s) ==
        doctest::Approx(2.0 * 1.1 + 2.0 * 0.36));
  // E[x^3 y] = 3 s11 s12
  CHECK(ou::gaussian_moment(idx({3, 1}), s) == doctest::Approx(3.0 * 2.0 * 0.6));
  CHECK(ou::gaussian_moment(idx({2, 1}), s) == doctest::Approx(0.0));
}

TEST_CASE("moments agree with brute-force quadrature") {
  Eigen::MatrixXd s1(1, 1);
  s1 << 1.3;
  for (int n = 0; n <= 6; ++n) {
    double wick = ou::gaussian_moment(idx({n}), s1);
    double quad = quadrature_moment(idx({n}), s1, 4001);
    CHECK(wick == doctest::Approx(quad).epsilon(1e-6));
  }
  Eigen::MatrixXd s2(2, 2);
  s2 << 1.0, -0.4, -0.4, 0.8;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4 - a; ++b) {
      double wick = ou::gaussian_moment(idx({a, b}), s2);
      double quad = quadrature_moment(idx({a, b}), s2, 301, 8.0);
      CHECK(wick == doctest::Approx(quad).epsilon(5e-5));
    }
}

TEST_CASE("integrate_gaussian is linear in the polynomial") {
  std::mt19937_64 rng(31);
  Eigen::MatrixXd BB = test_helpers::random_matrix(rng, 3, 3);
  Eigen::MatrixXd sigma =
      BB * BB.transpose() + Eigen::MatrixXd::Identity(3, 3);
  Polynomial p(3), q(3);
  p.add_term(idx({2, 0, 0}), Complex(1.0, 0.5));
  p.add_term(idx({0, 1, 1}), Complex(-2.0));
  q.add_term(idx({0, 0, 2}), Complex(0.0, 1.0));
  q.add_term(idx({0, 0, 0}), Complex(3.0));
  Complex a(0.7, -0.2), b(1.5, 0.3);
  Complex lhs = ou::integrate_gaussian(p * a + q * b, sigma);
  Complex rhs = a * ou::integrate_gaussian(p, sigma) +
                b * ou::integrate_gaussian(q, sigma);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
  // constants integrate to themselves; odd polynomials to zero
  CHECK(ou::integrate_gaussian(Polynomial::constant(3, Complex(2.0, 1.0)),
                               sigma) == Complex(2.0, 1.0));
  CHECK(std::abs(ou::integrate_gaussian(Polynomial::variable(3, 1), sigma)) ==
        0.0);
}

TEST_CASE("gaussian_density matches the explicit formula") {
  Eigen::MatrixXd s1(1, 1);
  s1 << 2.0;
  Eigen::VectorXd x1(1);
  x1 << 0.7;
  double expect1 =
      std::exp(-0.5 * 0.49 / 2.0) / std::sqrt(2.0 * M_PI * 2.0);
  CHECK(ou::gaussian_density(s1, x1) == doctest::Approx(expect1));

  Eigen::MatrixXd s2(2, 2);
  s2 << 1.0, 0.3, 0.3, 0.5;
  Eigen::VectorXd x2(2);
  x2 << -0.2, 0.9;
  double det = 1.0 * 0.5 - 0.09;
  Eigen::MatrixXd K = s2.inverse();
  double expect2 = std::exp(-0.5 * x2.dot(K * x2)) /
                   (2.0 * M_PI * std::sqrt(det));
  CHECK(ou::gaussian_density(s2, x2) == doctest::Approx(expect2));
}

TEST_CASE("density integrates to one (quadrature)") {
  Eigen::MatrixXd s(2, 2);
  s << 0.9, -0.2, -0.2, 1.4;
  CHECK(quadrature_moment(idx({0, 0}), s, 301, 8.0) ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("errors") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // indefinite
  Eigen::VectorXd x(2);
  x << 0.0, 0.0;
  CHECK_THROWS_AS(ou::gaussian_density(bad, x), ou::SingularCovariance);
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 0.0, 0.0, 1.0;
  CHECK_THROWS_AS(ou::integrate_gaussian(Polynomial::variable(3, 0), s),
                  ou::DimensionMismatch);
}

TEST_CASE("weighted polynomial evaluation") {
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2, 2);
  Polynomial p(2);
  p.add_term(idx({1, 0}), Complex(2.0));
  p.add_term(idx({0, 0}), Complex(1.0));
  ou::GaussianWeightedPolynomial q{p, s};
  Eigen::VectorXd x(2);
  x << 0.5, -1.0;
  CHECK(q.eval(x) ==
        doctest::Approx((2.0 * 0.5 + 1.0) * ou::gaussian_density(s, x)));
}
