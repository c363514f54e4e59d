#pragma once

#include <Eigen/Dense>

#include "ou/polynomial.hpp"

namespace ou {

// Exact moment E[x^e] under N(0, Sigma) via Wick/Isserlis pairing.
double gaussian_moment(const MultiIndex& e, const Eigen::MatrixXd& sigma);

// Exact integral of a polynomial against N(0, Sigma).
Complex integrate_gaussian(const Polynomial& p, const Eigen::MatrixXd& sigma);

// N(0, Sigma) density at a point. Throws SingularCovariance when Sigma is
// not positive definite.
double gaussian_density(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& x);

// q(x) = poly(x) * density_{N(0,Sigma)}(x); the Fokker-Planck side objects.
struct GaussianWeightedPolynomial {
  Polynomial poly;
  Eigen::MatrixXd covariance;

  double eval(const Eigen::VectorXd& x) const;  // real part; imag must vanish
};

} // namespace ou
