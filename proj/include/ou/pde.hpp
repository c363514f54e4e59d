#pragma once

#include <vector>

#include "ou/eigenfunction.hpp"
#include "ou/gaussian.hpp"
#include "ou/system.hpp"

namespace ou {

struct ExpansionTerm {
  MultiIndex index;
  Complex coeff;
  Eigenfunction eigenfunction;
};

// Finite expansion g = sum_n g_n phi_n over the invariant measure nu.
struct EigenExpansion {
  std::vector<ExpansionTerm> terms;
  Eigen::MatrixXd covariance;  // of nu

  Polynomial reconstruct() const;
};

enum class ExpansionMethod {
  Auto,        // Orthogonal when no psi coordinates are available
  Orthogonal,  // g_n = int g conj(phi_n) dnu / int |phi_n|^2 dnu
  Triangular   // solve the triangular system in psi coordinates
};

// Expansion coefficients of a polynomial over a finite eigensystem that
// spans every index up to deg(g).
EigenExpansion expansion_coefficients(
    const Polynomial& g, const std::vector<Eigenfunction>& eigensystem,
    const OUSystem& sys, const SpectralDecomposition& decomp,
    const Eigen::MatrixXd& sigma, ExpansionMethod method = ExpansionMethod::Auto);

// Backward-equation solution sum_n g_n e^{mu_n (T - t)} phi_n at time t with
// horizon T.
Polynomial kbe_solve(const EigenExpansion& expansion, double T, double t);

// q_n(x) = phi_n(x) * invariant density.
GaussianWeightedPolynomial adjoint_eigenfunction(const Eigenfunction& phi,
                                                 const Eigen::MatrixXd& sigma);

// N(0, Sigma) density value.
double invariant_density(const Eigen::MatrixXd& sigma,
                         const Eigen::VectorXd& x);

} // namespace ou
