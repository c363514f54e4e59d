#pragma once

// Shared test utilities: random system generation, independent numerical
// oracles (root finding, quadrature), and polynomial comparison helpers.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "ou/polynomial.hpp"
#include "ou/system.hpp"

namespace test_helpers {

using ou::Complex;

// ---------------------------------------------------------------------------
// Random systems

// Random real matrix with entries in [-1, 1].
inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M(i, j) = u(rng);
  return M;
}

// Random well-conditioned invertible matrix.
inline Eigen::MatrixXd random_basis(std::mt19937_64& rng, int d,
                                    double max_cond = 50.0) {
  for (;;) {
    Eigen::MatrixXd V = random_matrix(rng, d, d);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
    double cond = svd.singularValues()(0) /
                  svd.singularValues()(svd.singularValues().size() - 1);
    if (cond < max_cond) return V;
  }
}

// Random diagonalizable stable drift with the requested number of complex
// conjugate pairs and well-separated eigenvalues (no accidental resonance).
inline Eigen::MatrixXd random_stable_drift(std::mt19937_64& rng, int d,
                                           int num_pairs) {
  const int num_real = d - 2 * num_pairs;
  std::uniform_real_distribution<double> jitter(0.0, 0.08);
  std::uniform_real_distribution<double> rot(0.3, 1.9);
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(d, d);
  int pos = 0;
  double base = 0.4;
  for (int k = 0; k < num_real; ++k) {
    L(pos, pos) = -(base + jitter(rng));
    base += 0.37;
    ++pos;
  }
  for (int k = 0; k < num_pairs; ++k) {
    double a = base + jitter(rng);
    double b = rot(rng);
    base += 0.37;
    L(pos, pos) = -a;
    L(pos, pos + 1) = b;
    L(pos + 1, pos) = -b;
    L(pos + 1, pos + 1) = -a;
    pos += 2;
  }
  Eigen::MatrixXd V = random_basis(rng, d);
  return V * L * V.inverse();
}

// Full-rank diffusion bounded away from singularity.
inline Eigen::MatrixXd random_diffusion(std::mt19937_64& rng, int d) {
  return random_matrix(rng, d, d) + 1.6 * Eigen::MatrixXd::Identity(d, d);
}

inline ou::OUSystem random_system(std::mt19937_64& rng, int d, int num_pairs) {
  return ou::validate_system(random_stable_drift(rng, d, num_pairs),
                             random_diffusion(rng, d));
}

// ---------------------------------------------------------------------------
// Polynomial comparison

inline double poly_distance(const ou::Polynomial& a, const ou::Polynomial& b) {
  return (a - b).max_abs_coeff();
}

inline bool poly_close(const ou::Polynomial& a, const ou::Polynomial& b,
                       double tol) {
  double scale = 1.0 + std::max(a.max_abs_coeff(), b.max_abs_coeff());
  return poly_distance(a, b) <= tol * scale;
}

// |<a,b>| / (||a|| ||b||) over the union of coefficient vectors.
inline double collinearity(const ou::Polynomial& a, const ou::Polynomial& b) {
  Complex dot(0.0);
  for (const auto& [e, c] : a.terms()) dot += std::conj(c) * b.coeff(e);
  double na = a.coeff_norm(), nb = b.coeff_norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(dot) / (na * nb);
}

// ---------------------------------------------------------------------------
// Eigenvalue oracle: characteristic polynomial roots by Durand-Kerner

// Characteristic polynomial coefficients via Faddeev-LeVerrier:
// p(s) = s^d + c_1 s^{d-1} + ... + c_d.
inline std::vector<double> char_poly(const Eigen::MatrixXd& A) {
  const int d = static_cast<int>(A.rows());
  std::vector<double> c(static_cast<std::size_t>(d) + 1, 0.0);
  c[0] = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
  for (int k = 1; k <= d; ++k) {
    M = A * M + c[static_cast<std::size_t>(k - 1)] *
                    Eigen::MatrixXd::Identity(d, d);
    c[static_cast<std::size_t>(k)] = -(A * M).trace() / k;
  }
  return c;
}

inline std::vector<Complex> durand_kerner(const std::vector<double>& coeff) {
  const int n = static_cast<int>(coeff.size()) - 1;
  auto eval = [&](Complex s) {
    Complex acc(0.0);
    for (double c : coeff) acc = acc * s + c;
    return acc;
  };
  std::vector<Complex> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    r[static_cast<std::size_t>(i)] =
        std::pow(Complex(0.4, 0.9), static_cast<double>(i + 1));
  for (int it = 0; it < 500; ++it) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex denom(1.0);
      for (int j = 0; j < n; ++j)
        if (j != i)
          denom *= r[static_cast<std::size_t>(i)] -
                   r[static_cast<std::size_t>(j)];
      Complex step = eval(r[static_cast<std::size_t>(i)]) / denom;
      r[static_cast<std::size_t>(i)] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-14) break;
  }
  return r;
}

// Greedy multiset match: max over a of min over b distance.
inline double multiset_distance(std::vector<Complex> a,
                                std::vector<Complex> b) {
  double worst = 0.0;
  for (const Complex& x : a) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      double dist = std::abs(x - b[j]);
      if (dist < best) { best = dist; arg = j; }
    }
    worst = std::max(worst, best);
    if (!b.empty()) b.erase(b.begin() + static_cast<long>(arg));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Covariance quadrature oracle: composite 10-point Gauss-Legendre for
// int_0^T e^{sA} B B^T e^{sA^T} ds with T covering the decay. The panel
// start propagates by one matrix-exponential factor per panel, so only a
// handful of exponentials are ever computed.

inline Eigen::MatrixXd covariance_quadrature(const Eigen::MatrixXd& A,
                                             const Eigen::MatrixXd& B,
                                             double T, int panels = 200) {
  static const double gl_x[5] = {0.1488743389816312, 0.4333953941292472,
                                 0.6794095682990244, 0.8650633666889845,
                                 0.9739065285171717};
  static const double gl_w[5] = {0.2955242247147529, 0.2692667193099963,
                                 0.2190863625159820, 0.1494513491505806,
                                 0.0666713443086881};
  const int d = static_cast<int>(A.rows());
  const double h = T / panels;
  Eigen::MatrixXd BBt = B * B.transpose();
  // exponentials at the ten node offsets within one panel
  std::vector<Eigen::MatrixXd> node_exp;
  std::vector<double> node_w;
  for (int j = 0; j < 5; ++j) {
    for (double sgn : {-1.0, 1.0}) {
      double off = 0.5 * h * (1.0 + sgn * gl_x[j]);
      node_exp.push_back((A * off).exp());
      node_w.push_back(0.5 * h * gl_w[j]);
    }
  }
  Eigen::MatrixXd Eh = (A * h).exp();
  Eigen::MatrixXd Ek = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < panels; ++k) {
    for (std::size_t j = 0; j < node_exp.size(); ++j) {
      Eigen::MatrixXd E = Ek * node_exp[j];
      acc += node_w[j] * (E * BBt * E.transpose());
    }
    Ek = Ek * Eh;
  }
  return acc;
}

} // namespace test_helpers
