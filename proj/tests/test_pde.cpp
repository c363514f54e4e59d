#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "ou/general.hpp"
#include "ou/oracle.hpp"
#include "ou/pde.hpp"
#include "ou/special.hpp"

using ou::Complex;
using ou::MultiIndex;
using ou::Polynomial;

namespace {

ou::OUSystem selfadjoint_sys() {
  Eigen::MatrixXd A(2, 2), B(2, 2);
  A << -1.0, 0.0, 0.0, -2.2;
  B << 0.9, 0.0, 0.0, 1.1;
  return ou::validate_system(A, B);
}

ou::OUSystem rotation_sys(double a, double b, double s) {
  Eigen::MatrixXd A(2, 2);
  A << -a, b, -b, -a;
  return ou::validate_system(A, s * Eigen::MatrixXd::Identity(2, 2));
}

std::vector<ou::Eigenfunction> general_eigensystem(
    const ou::OUSystem& sys, const ou::SpectralDecomposition& dec,
    const MultiIndex& box) {
  ou::BasisSet b = ou::full_basis(box);
  ou::SparseOperatorMatrix M = ou::assemble_matrix(sys, dec, b);
  return ou::solve_all(M, b, dec, sys.tol.resonance);
}

Polynomial real_test_poly() {
  Polynomial g(2);
  g.add_term(MultiIndex({2, 2}), Complex(0.7));
  g.add_term(MultiIndex({2, 0}), Complex(-1.3));
  g.add_term(MultiIndex({1, 1}), Complex(0.4));
  g.add_term(MultiIndex({0, 1}), Complex(2.0));
  g.add_term(MultiIndex({0, 0}), Complex(-0.5));
  return g;
}

} // namespace

TEST_CASE("orthogonal expansion reconstructs the expanded polynomial") {
  ou::OUSystem sys = selfadjoint_sys();
  ou::SpectralDecomposition dec = ou::spectral_decomposition(sys);
  ou::CaseClassification cls = ou::classify(sys, dec);
  REQUIRE(cls.tag == ou::CaseClassification::Tag::SelfAdjointSimultaneous);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);

  std::vector<ou::Eigenfunction> basis;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      basis.push_back(
          ou::selfadjoint_eigenfunction(sys, dec, cls, MultiIndex({i, j})));

  Polynomial g = real_test_poly();
  ou::EigenExpansion exp = ou::expansion_coefficients(
      g, basis, sys, dec, sigma, ou::ExpansionMethod::Orthogonal);
  CHECK((exp.reconstruct() - g).max_abs_coeff() <= 1e-10);
  // expansion of an eigenfunction is a single term
  ou::EigenExpansion one = ou::expansion_coefficients(
      basis[4].monomial_form, basis, sys, dec, sigma,
      ou::ExpansionMethod::Orthogonal);
  REQUIRE(one.terms.size() == 1);
  CHECK(std::abs(one.terms[0].coeff - 1.0) <= 1e-10);
}

TEST_CASE("triangular and orthogonal expansions agree") {
  ou::OUSystem sys = selfadjoint_sys();
  ou::SpectralDecomposition dec = ou::spectral_decomposition(sys);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);
  auto eigensystem = general_eigensystem(sys, dec, MultiIndex({2, 2}));

  Polynomial g = real_test_poly();
  ou::EigenExpansion tri = ou::expansion_coefficients(
      g, eigensystem, sys, dec, sigma, ou::ExpansionMethod::Triangular);
  ou::EigenExpansion orth = ou::expansion_coefficients(
      g, eigensystem, sys, dec, sigma, ou::ExpansionMethod::Orthogonal);
  CHECK((tri.reconstruct() - g).max_abs_coeff() <= 1e-9);

  std::map<MultiIndex, Complex, ou::GradedLexLess> oc;
  for (const auto& t : orth.terms) oc[t.index] = t.coeff;
  for (const auto& t : tri.terms) {
    auto it = oc.find(t.index);
    if (it == oc.end()) {
      CHECK(std::abs(t.coeff) <= 1e-9);
    } else {
      CHECK(std::abs(t.coeff - it->second) <= 1e-9 * (1.0 + std::abs(t.coeff)));
    }
  }
}

TEST_CASE("backward-equation solution: terminal condition and PDE residual") {
  std::mt19937_64 rng(71);
  ou::OUSystem sys = test_helpers::random_system(rng, 2, 0);
  ou::SpectralDecomposition dec = ou::spectral_decomposition(sys);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);
  // the terminal polynomial has total degree 4, so the eigensystem must
  // cover every psi index of total degree <= 4
  auto eigensystem = general_eigensystem(sys, dec, MultiIndex({4, 4}));

  Polynomial g = real_test_poly();
  ou::EigenExpansion exp =
      ou::expansion_coefficients(g, eigensystem, sys, dec, sigma);

  const double T = 1.5;
  // Phi(T, x) = g(x)
  CHECK((ou::kbe_solve(exp, T, T) - g).max_abs_coeff() <= 1e-9);

  for (double t : {0.0, 0.4, 1.1}) {
    Polynomial phi_t = ou::kbe_solve(exp, T, t);
    // time derivative of the expansion, term by term
    Polynomial dphi_dt(2);
    for (const auto& term : exp.terms) {
      Complex mu = term.eigenfunction.mu;
      dphi_dt = dphi_dt + term.eigenfunction.monomial_form *
                              (term.coeff * (-mu) * std::exp(mu * (T - t)));
    }
    // d/dt Phi + A Phi = 0, coefficientwise
    Polynomial resid = dphi_dt + ou::apply_ou(sys, phi_t);
    CHECK(resid.max_abs_coeff() <= 1e-9 * (1.0 + phi_t.max_abs_coeff()));
    // and on a small evaluation grid
    for (int p = 0; p < 10; ++p) {
      std::vector<double> x{std::cos(0.7 * p) * 1.5, std::sin(1.3 * p) * 1.5};
      CHECK(std::abs(resid.eval(x)) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(ou::kbe_solve(exp, T, -0.1), ou::AxisOutOfRange);
  CHECK_THROWS_AS(ou::kbe_solve(exp, T, T + 0.1), ou::AxisOutOfRange);
}

TEST_CASE("real terminal data gives a real solution on a rotation system") {
  // the conjugate pair of complex eigenfunctions must recombine to a real
  // polynomial at every time
  ou::OUSystem sys = rotation_sys(0.8, 1.6, 1.0);
  ou::SpectralDecomposition dec = ou::spectral_decomposition(sys);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);
  auto eigensystem = general_eigensystem(sys, dec, MultiIndex({4, 4}));

  Polynomial g = real_test_poly();
  ou::EigenExpansion exp =
      ou::expansion_coefficients(g, eigensystem, sys, dec, sigma);
  for (double t : {0.0, 0.5, 2.0}) {
    Polynomial phi_t = ou::kbe_solve(exp, 2.0, t);
    double max_imag = 0.0;
    for (const auto& [m, c] : phi_t.terms())
      max_imag = std::max(max_imag, std::abs(c.imag()));
    CHECK(max_imag <= 1e-10 * (1.0 + phi_t.max_abs_coeff()));
  }
}

TEST_CASE("expansion over an incomplete eigensystem throws") {
  ou::OUSystem sys = selfadjoint_sys();
  ou::SpectralDecomposition dec = ou::spectral_decomposition(sys);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);
  auto eigensystem = general_eigensystem(sys, dec, MultiIndex({2, 2}));
  // drop the top corner the terminal polynomial needs
  std::vector<ou::Eigenfunction> pruned;
  for (const auto& ef : eigensystem)
    if (!(ef.index == MultiIndex({2, 2}))) pruned.push_back(ef);
  Polynomial g = real_test_poly();
  CHECK_THROWS_AS(ou::expansion_coefficients(g, pruned, sys, dec, sigma,
                                             ou::ExpansionMethod::Triangular),
                  ou::IncompleteEigensystem);
  CHECK_THROWS_AS(
      ou::expansion_coefficients(Polynomial::constant(3, 1.0), eigensystem,
                                 sys, dec, sigma),
      ou::DimensionMismatch);
}

TEST_CASE("adjoint eigenfunctions of the density operator") {
  ou::OUSystem sys = selfadjoint_sys();
  ou::SpectralDecomposition dec = ou::spectral_decomposition(sys);
  ou::CaseClassification cls = ou::classify(sys, dec);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);
  // self-adjoint case: A*(phi_n p) = mu_n (phi_n p) with real mu_n
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j + i <= 3; ++j) {
      ou::Eigenfunction ef =
          ou::selfadjoint_eigenfunction(sys, dec, cls, MultiIndex({i, j}));
      ou::GaussianWeightedPolynomial q = ou::adjoint_eigenfunction(ef, sigma);
      Polynomial h = ou::apply_adjoint(sys, q).poly;
      CHECK((h - q.poly * ef.mu).max_abs_coeff() <=
            1e-10 * (1.0 + q.poly.max_abs_coeff()));
    }
  ou::Eigenfunction blank;
  CHECK_THROWS_AS(
      ou::adjoint_eigenfunction(blank, Eigen::MatrixXd::Zero(2, 2)),
      ou::SingularCovariance);
}

TEST_CASE("adjoint eigenvalue is conjugated on complex pair indices") {
  // the density operator is real, so the eigenvalue attached to phi_n p is
  // the conjugate of the forward eigenvalue; both lie in the spectrum
  ou::OUSystem sys = rotation_sys(1.1, 0.7, 0.9);
  ou::SpectralDecomposition dec = ou::spectral_decomposition(sys);
  ou::CaseClassification cls = ou::classify(sys, dec);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n + m <= 3; ++n) {
      if (m + n == 0) continue;
      ou::Eigenfunction ef =
          ou::normal_eigenfunction(sys, dec, cls, MultiIndex({m, n}));
      Polynomial h =
          ou::apply_adjoint(sys, ou::adjoint_eigenfunction(ef, sigma)).poly;
      CHECK((h - ef.monomial_form * std::conj(ef.mu)).max_abs_coeff() <=
            1e-10 * (1.0 + ef.monomial_form.max_abs_coeff()));
      // the conjugate equals the eigenvalue of the swapped pair index
      CHECK(std::abs(std::conj(ef.mu) - dec.mu(MultiIndex({n, m}))) <= 1e-12);
    }
}

TEST_CASE("invariant density is in the kernel and evaluates correctly") {
  std::mt19937_64 rng(72);
  ou::OUSystem sys = test_helpers::random_system(rng, 2, 1);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);
  ou::Eigenfunction unit;
  unit.index = MultiIndex({0, 0});
  unit.mu = Complex(0.0);
  unit.monomial_form = Polynomial::constant(2, 1.0);
  ou::GaussianWeightedPolynomial q = ou::adjoint_eigenfunction(unit, sigma);
  CHECK(ou::apply_adjoint(sys, q).poly.max_abs_coeff() <= 1e-12);

  Eigen::VectorXd x(2);
  x << 0.3, -1.2;
  CHECK(ou::invariant_density(sigma, x) ==
        doctest::Approx(ou::gaussian_density(sigma, x)));
  CHECK(ou::invariant_density(sigma, x) > 0.0);
  CHECK(ou::invariant_density(sigma, Eigen::VectorXd::Zero(2)) >
        ou::invariant_density(sigma, 5.0 * Eigen::VectorXd::Ones(2)));
}
