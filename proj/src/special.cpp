#include "ou/special.hpp"

#include <cmath>

#include "ou/classical_poly.hpp"
#include "ou/gaussian.hpp"

namespace ou {

namespace {

std::vector<Complex> column(const Eigen::MatrixXcd& F, int k) {
  std::vector<Complex> f(static_cast<std::size_t>(F.rows()));
  for (Eigen::Index i = 0; i < F.rows(); ++i)
    f[static_cast<std::size_t>(i)] = F(i, k);
  return f;
}

Eigenfunction finish(Eigenfunction ef, const OUSystem& sys, bool l2_normalized) {
  ef.monomial_form = ef.monomial_form.normalized();
  if (l2_normalized) {
    Eigen::MatrixXd sigma = stationary_covariance(sys);
    double nrm = std::sqrt(std::abs(integrate_gaussian(
        ef.monomial_form * ef.monomial_form.conjugate(), sigma)));
    if (nrm == 0.0) throw ZeroPolynomial("cannot normalize zero eigenfunction");
    ef.monomial_form = ef.monomial_form * Complex(1.0 / nrm);
  }
  return ef;
}

} // namespace

CaseClassification classify(const OUSystem& sys,
                            const SpectralDecomposition& decomp) {
  CaseClassification out;
  const int d = sys.dim();
  const double t = sys.tol.classification;
  const Eigen::MatrixXd& A = sys.A;
  const Eigen::MatrixXd& B = sys.B;

  if (B.rows() != B.cols()) return out;  // special cases need square B

  auto sigma_from = [&](int k) {
    // Rayleigh quotient f_k^* B f_k; valid when f_k is an eigenvector of B
    return (decomp.left_vectors.col(k).adjoint() * B.cast<Complex>() *
            decomp.left_vectors.col(k))(0, 0);
  };
  auto is_b_eigvec = [&](int k, double sigma) {
    return (B.cast<Complex>() * decomp.left_vectors.col(k) -
            sigma * decomp.left_vectors.col(k))
               .norm() <= t * (1.0 + B.norm());
  };

  double anorm = std::max(1.0, A.norm());
  double bnorm = std::max(1.0, B.norm());

  bool a_selfadjoint = (A - A.transpose()).norm() <= t * anorm;
  bool b_selfadjoint = (B - B.transpose()).norm() <= t * bnorm;
  bool commute = (A * B - B * A).norm() <= t * anorm * bnorm;

  if (a_selfadjoint && b_selfadjoint && commute &&
      decomp.num_pairs == 0) {
    std::vector<double> ssq(static_cast<std::size_t>(d));
    bool ok = true;
    for (int k = 0; k < d && ok; ++k) {
      double s = sigma_from(k).real();
      ok = is_b_eigvec(k, s) && s != 0.0;
      ssq[static_cast<std::size_t>(k)] = s * s;
    }
    if (ok) {
      out.tag = CaseClassification::Tag::SelfAdjointSimultaneous;
      out.sigma_sq = std::move(ssq);
      out.matched_rule = "eigenvector";
      return out;
    }
  }

  bool a_normal = (A * A.transpose() - A.transpose() * A).norm() <=
                  t * anorm * anorm;
  if (a_normal) {
    // rule (a): every f_k is an eigenvector of B with positive eigenvalue
    std::vector<double> ssq(static_cast<std::size_t>(d));
    bool ok = true;
    for (int k = 0; k < d && ok; ++k) {
      Complex s = sigma_from(k);
      ok = std::abs(s.imag()) <= t * (1.0 + std::abs(s)) && s.real() > 0.0 &&
           is_b_eigvec(k, s.real());
      ssq[static_cast<std::size_t>(k)] = s.real() * s.real();
    }
    std::string rule = "eigenvector";
    if (!ok) {
      // rule (b): B = sigma P with P orthogonal
      double s2 = (B.transpose() * B).trace() / static_cast<double>(d);
      Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
      if (s2 > 0.0 &&
          (B.transpose() * B - s2 * I).norm() <= t * bnorm * bnorm &&
          (B * B.transpose() - s2 * I).norm() <= t * bnorm * bnorm) {
        std::fill(ssq.begin(), ssq.end(), s2);
        ok = true;
        rule = "scalar-orthogonal";
      }
    }
    if (ok) {
      out.tag = CaseClassification::Tag::NormalSimultaneous;
      out.sigma_sq = std::move(ssq);
      out.matched_rule = rule;
      for (int k = decomp.num_real; k < d; k += 2) {
        double a = decomp.lambdas(k).real();
        out.rho.push_back(out.sigma_sq[static_cast<std::size_t>(k)] / a);
      }
      return out;
    }
  }
  return out;  // General
}

Eigenfunction selfadjoint_eigenfunction(const OUSystem& sys,
                                        const SpectralDecomposition& decomp,
                                        const CaseClassification& cls,
                                        const MultiIndex& n,
                                        bool l2_normalized) {
  if (cls.tag != CaseClassification::Tag::SelfAdjointSimultaneous)
    throw WrongCase("system is not self-adjoint simultaneously diagonalizable");
  const int d = sys.dim();
  if (n.dim() != d) throw DimensionMismatch("index length vs dimension");

  Eigenfunction ef;
  ef.index = n;
  ef.mu = decomp.mu(n);
  Polynomial phi = Polynomial::constant(d, 1.0);
  for (int k = 0; k < d; ++k) {
    if (n[k] == 0) continue;
    double scale = std::sqrt(2.0 * decomp.lambdas(k).real() /
                             cls.sigma_sq[static_cast<std::size_t>(k)]);
    Polynomial arg =
        linear_form(column(decomp.left_vectors, k), d) * Complex(scale);
    phi = phi * hermite(n[k]).substitute({arg});
  }
  ef.monomial_form = phi;
  return finish(std::move(ef), sys, l2_normalized);
}

Eigenfunction normal_eigenfunction(const OUSystem& sys,
                                   const SpectralDecomposition& decomp,
                                   const CaseClassification& cls,
                                   const MultiIndex& n,
                                   bool l2_normalized) {
  if (cls.tag == CaseClassification::Tag::General)
    throw WrongCase("system is not normal with simultaneously diagonalizable B");
  const int d = sys.dim();
  if (n.dim() != d) throw DimensionMismatch("index length vs dimension");

  Eigenfunction ef;
  ef.index = n;
  ef.mu = decomp.mu(n);
  const double sqrt2 = std::sqrt(2.0);
  Polynomial phi = Polynomial::constant(d, 1.0);
  for (int k = 0; k < decomp.num_real; ++k) {
    if (n[k] == 0) continue;
    double scale = std::sqrt(2.0 * decomp.lambdas(k).real() /
                             cls.sigma_sq[static_cast<std::size_t>(k)]);
    Polynomial arg =
        linear_form(column(decomp.left_vectors, k), d) * Complex(scale);
    phi = phi * hermite(n[k]).substitute({arg});
  }
  for (int p = 0; p < decomp.num_pairs; ++p) {
    int k = decomp.num_real + 2 * p;
    if (n[k] == 0 && n[k + 1] == 0) continue;
    Polynomial z =
        linear_form(column(decomp.left_vectors, k), d) * Complex(sqrt2);
    Polynomial zbar =
        linear_form(column(decomp.left_vectors, k + 1), d) * Complex(sqrt2);
    Polynomial J =
        hli_zform(n[k], n[k + 1], cls.rho[static_cast<std::size_t>(p)]);
    phi = phi * J.substitute({z, zbar});
  }
  ef.monomial_form = phi;
  return finish(std::move(ef), sys, l2_normalized);
}

} // namespace ou
