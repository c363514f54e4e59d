#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "ou/errors.hpp"
#include "ou/multi_index.hpp"

namespace ou {

struct Tolerances {
  double eigvec_condition = 1e8;   // diagonalizability: cond of eigenvector matrix
  double hypoellipticity = 1e-10;  // ||B^T f_k|| must exceed this * (1 + ||B||)
  double real_eigenvalue = 1e-10;  // |Im(lambda)| <= tol * (1 + |lambda|) counts as real
  double reconstruction = 1e-10;   // relative residual of F* A - diag(-lambda) F*
  double classification = 1e-10;   // relative Frobenius tests in case classification
  double resonance = 1e-9;         // |mu_m - mu_n| <= tol * (1 + |mu_n|)
  double structural_zero = 1e-14;  // |<f,Qf>| <= tol * ||Q|| treated as numeric zero
  double eigenvalue_dedup = 1e-10; // distinct-eigenvalue grouping for the spectrum
  double covariance_pd = 1e-12;    // positive-definiteness slack * trace
};

// Validated drift/diffusion pair with Q = B B^T / 2.
struct OUSystem {
  Eigen::MatrixXd A;  // d x d, all eigenvalues with negative real part
  Eigen::MatrixXd B;  // d x r, r <= d
  Eigen::MatrixXd Q;  // B B^T / 2
  Tolerances tol;

  int dim() const { return static_cast<int>(A.rows()); }
};

// Eigenvalues -lambda_k and unit left eigenvectors f_k of A, with
// f_k^* A = -lambda_k f_k^*. Real eigenspaces come first; complex
// eigenvalues sit in adjacent conjugate pairs with the Im(lambda) < 0
// member first (lambda = a - ib, b > 0).
struct SpectralDecomposition {
  Eigen::VectorXcd lambdas;       // Re(lambda_k) > 0
  Eigen::MatrixXcd left_vectors;  // column k holds f_k, unit norm

  enum class Kind { Real, PairFirst, PairSecond };
  std::vector<Kind> kind;     // per position
  std::vector<int> partner;   // conjugate partner position (self for Real)
  int num_real = 0;           // l'
  int num_pairs = 0;          // l - l'
  double spectral_abscissa = 0.0;  // sup_k Re(-lambda_k)

  int dim() const { return static_cast<int>(lambdas.size()); }
  int l() const { return num_real + num_pairs; }

  // mu_n = -sum_k n_k lambda_k over the d positions.
  std::complex<double> mu(const MultiIndex& n) const;

  // Eigenvalue values grouped within tolerance, preserving position order.
  std::vector<std::complex<double>> distinct_lambdas(double tol) const;
};

struct SpectrumEntry {
  MultiIndex index;  // over the distinct eigenvalues
  std::complex<double> mu;
};

OUSystem validate_system(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                         const Tolerances& tol = {});

SpectralDecomposition spectral_decomposition(const OUSystem& sys);

std::vector<SpectrumEntry> spectrum(const SpectralDecomposition& decomp,
                                    int max_total_degree,
                                    double dedup_tol = 1e-10);

// Solves A S + S A^T + B B^T = 0 by the vectorized Kronecker system.
Eigen::MatrixXd stationary_covariance(const OUSystem& sys);

// Sigma_t = int_0^t e^{sA} B B^T e^{sA^T} ds via the block matrix exponential.
Eigen::MatrixXd finite_time_covariance(const OUSystem& sys, double t);

} // namespace ou
