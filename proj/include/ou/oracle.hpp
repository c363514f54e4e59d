#pragma once

#include "ou/gaussian.hpp"
#include "ou/polynomial.hpp"
#include "ou/system.hpp"

namespace ou {

// Symbolic application of the generator, the drift part, and the
// Fokker-Planck adjoint. Everything here differentiates in raw coordinates,
// never through the eigenvector basis, so it serves as an independent check
// of the matrix construction.

// A p = <A x, grad p> + Tr Q grad^2 p.
Polynomial apply_ou(const OUSystem& sys, const Polynomial& p);

// Drift-only operator L p = <x, A^T grad p> = sum_i (A x)_i dp/dx_i.
Polynomial apply_drift(const Eigen::MatrixXd& A, const Polynomial& p);

// Fokker-Planck operator applied to poly * N(0,Sigma) density; the result is
// reduced to (new polynomial) * same density using grad p = -Sigma^{-1} x p.
GaussianWeightedPolynomial apply_adjoint(const OUSystem& sys,
                                         const GaussianWeightedPolynomial& q);

// ||A phi - mu phi|| / ||phi|| in the coefficient 2-norm.
double residual(const OUSystem& sys, const Polynomial& phi, Complex mu);

// L2(nu) variant of the residual, using exact Gaussian moments.
double residual_l2(const OUSystem& sys, const Polynomial& phi, Complex mu,
                   const Eigen::MatrixXd& sigma);

} // namespace ou
