#include "ou/oracle.hpp"

#include <cmath>

namespace ou {

namespace {

Polynomial drift_part(const Eigen::MatrixXd& A, const Polynomial& p) {
  const int d = static_cast<int>(A.rows());
  if (p.dim() != d)
    throw DimensionMismatch("polynomial dimension vs drift matrix size");
  Polynomial out(d);
  for (int i = 0; i < d; ++i) {
    Polynomial dpi = p.derivative(i);
    if (dpi.is_zero()) continue;
    Polynomial axi(d);  // (A x)_i
    for (int j = 0; j < d; ++j)
      if (A(i, j) != 0.0)
        axi = axi + Polynomial::variable(d, j) * Complex(A(i, j));
    out = out + axi * dpi;
  }
  return out;
}

} // namespace

Polynomial apply_ou(const OUSystem& sys, const Polynomial& p) {
  const int d = sys.dim();
  if (p.dim() != d)
    throw DimensionMismatch("polynomial dimension vs system dimension");
  Polynomial out = drift_part(sys.A, p);
  for (int i = 0; i < d; ++i) {
    Polynomial di = p.derivative(i);
    if (di.is_zero()) continue;
    for (int j = 0; j < d; ++j) {
      if (sys.Q(i, j) == 0.0) continue;
      out = out + di.derivative(j) * Complex(sys.Q(i, j));
    }
  }
  return out;
}

Polynomial apply_drift(const Eigen::MatrixXd& A, const Polynomial& p) {
  return drift_part(A, p);
}

GaussianWeightedPolynomial apply_adjoint(const OUSystem& sys,
                                         const GaussianWeightedPolynomial& q) {
  const int d = sys.dim();
  if (q.poly.dim() != d || q.covariance.rows() != d)
    throw DimensionMismatch("weighted polynomial dimension vs system");
  Eigen::LLT<Eigen::MatrixXd> llt(q.covariance);
  if (llt.info() != Eigen::Success)
    throw SingularCovariance("covariance is not positive definite");
  Eigen::MatrixXd K = llt.solve(Eigen::MatrixXd::Identity(d, d));

  const Polynomial& phi = q.poly;
  auto kx = [&](int i) {  // (K x)_i
    Polynomial out(d);
    for (int j = 0; j < d; ++j)
      if (K(i, j) != 0.0)
        out = out + Polynomial::variable(d, j) * Complex(K(i, j));
    return out;
  };

  // -sum_i d/dx_i [(A x)_i phi p]:
  //   = [-tr(A) phi - sum_i (A x)_i (d_i phi - phi (Kx)_i)] p
  Polynomial out = phi * Complex(-sys.A.trace());
  for (int i = 0; i < d; ++i) {
    Polynomial axi(d);
    for (int j = 0; j < d; ++j)
      if (sys.A(i, j) != 0.0)
        axi = axi + Polynomial::variable(d, j) * Complex(sys.A(i, j));
    if (axi.is_zero()) continue;
    out = out - axi * (phi.derivative(i) - phi * kx(i));
  }

  // sum_ij Q_ij d_i d_j [phi p]:
  //   = sum_ij Q_ij [d_i d_j phi - K_ij phi - (Kx)_j d_i phi - (Kx)_i d_j phi
  //                  + phi (Kx)_i (Kx)_j] p
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double qij = sys.Q(i, j);
      if (qij == 0.0) continue;
      Polynomial t = phi.derivative(i).derivative(j) - phi * Complex(K(i, j)) -
                     kx(j) * phi.derivative(i) - kx(i) * phi.derivative(j) +
                     phi * kx(i) * kx(j);
      out = out + t * Complex(qij);
    }
  return {out.normalized(), q.covariance};
}

double residual(const OUSystem& sys, const Polynomial& phi, Complex mu) {
  double norm = phi.coeff_norm();
  if (norm == 0.0) throw ZeroPolynomial("residual of the zero polynomial");
  Polynomial r = apply_ou(sys, phi) - phi * mu;
  return r.coeff_norm() / norm;
}

double residual_l2(const OUSystem& sys, const Polynomial& phi, Complex mu,
                   const Eigen::MatrixXd& sigma) {
  Polynomial r = apply_ou(sys, phi) - phi * mu;
  double num =
      std::sqrt(std::abs(integrate_gaussian(r * r.conjugate(), sigma)));
  double den =
      std::sqrt(std::abs(integrate_gaussian(phi * phi.conjugate(), sigma)));
  if (den == 0.0) throw ZeroPolynomial("residual of the zero polynomial");
  return num / den;
}

} // namespace ou
