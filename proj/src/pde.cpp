#include "ou/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ou {

Polynomial EigenExpansion::reconstruct() const {
  if (terms.empty()) return Polynomial(0);
  Polynomial out(terms.front().eigenfunction.monomial_form.dim());
  for (const auto& t : terms)
    out = out + t.eigenfunction.monomial_form * t.coeff;
  return out.normalized();
}

namespace {

EigenExpansion expand_orthogonal(const Polynomial& g,
                                 const std::vector<Eigenfunction>& eigensystem,
                                 const Eigen::MatrixXd& sigma) {
  EigenExpansion out;
  out.covariance = sigma;
  const int maxdeg = std::max(g.degree(), 0);
  for (const auto& ef : eigensystem) {
    if (ef.index.total_degree() > maxdeg) continue;
    Complex num = integrate_gaussian(g * ef.monomial_form.conjugate(), sigma);
    Complex den = integrate_gaussian(
        ef.monomial_form * ef.monomial_form.conjugate(), sigma);
    if (std::abs(den) == 0.0)
      throw ZeroPolynomial("eigenfunction with zero L2 norm");
    Complex c = num / den;
    if (std::abs(c) > 1e-13 * (1.0 + g.max_abs_coeff()))
      out.terms.push_back({ef.index, c, ef});
  }
  return out;
}

EigenExpansion expand_triangular(const Polynomial& g,
                                 const std::vector<Eigenfunction>& eigensystem,
                                 const SpectralDecomposition& decomp,
                                 const Eigen::MatrixXd& sigma) {
  const int d = decomp.dim();
  // psi coordinates: y = F^* x, so substitute x = (F^*)^{-1} y
  Eigen::MatrixXcd Finv = decomp.left_vectors.adjoint().inverse();
  std::vector<Polynomial> repl;
  repl.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Polynomial xi(d);
    for (int k = 0; k < d; ++k)
      if (Finv(i, k) != Complex(0.0))
        xi = xi + Polynomial::variable(d, k) * Finv(i, k);
    repl.push_back(std::move(xi));
  }
  Polynomial g_psi = g.substitute(repl).normalized();

  std::map<MultiIndex, Complex, GradedLexLess> residual(g_psi.terms().begin(),
                                                        g_psi.terms().end());
  std::map<MultiIndex, const Eigenfunction*, GradedLexLess> by_index;
  for (const auto& ef : eigensystem) {
    if (!ef.psi_coefficients)
      throw IncompleteEigensystem(
          "triangular expansion requires psi coefficients");
    by_index.emplace(ef.index, &ef);
  }

  EigenExpansion out;
  out.covariance = sigma;
  const double cutoff = 1e-12 * (1.0 + g_psi.max_abs_coeff());
  // peel from the highest index downward; each eigenfunction is monic in
  // its own psi coordinate
  while (!residual.empty()) {
    auto top = std::prev(residual.end());
    MultiIndex n = top->first;
    Complex c = top->second;
    residual.erase(top);
    if (std::abs(c) <= cutoff) continue;
    auto it = by_index.find(n);
    if (it == by_index.end()) {
      std::ostringstream os;
      os << n;
      throw IncompleteEigensystem("no eigenfunction for index " + os.str());
    }
    const Eigenfunction& ef = *it->second;
    for (const auto& [m, w] : *ef.psi_coefficients) {
      if (m == n) continue;
      auto [rit, inserted] = residual.try_emplace(m, Complex(0.0));
      rit->second -= c * w;
    }
    out.terms.push_back({n, c, ef});
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const ExpansionTerm& a, const ExpansionTerm& b) {
              return GradedLexLess{}(a.index, b.index);
            });
  return out;
}

} // namespace

EigenExpansion expansion_coefficients(const Polynomial& g,
                                      const std::vector<Eigenfunction>& eigensystem,
                                      const OUSystem& sys,
                                      const SpectralDecomposition& decomp,
                                      const Eigen::MatrixXd& sigma,
                                      ExpansionMethod method) {
  if (g.dim() != sys.dim())
    throw DimensionMismatch("polynomial dimension vs system dimension");
  if (method == ExpansionMethod::Auto) {
    bool have_psi = !eigensystem.empty() &&
                    std::all_of(eigensystem.begin(), eigensystem.end(),
                                [](const Eigenfunction& e) {
                                  return e.psi_coefficients.has_value();
                                });
    method = have_psi ? ExpansionMethod::Triangular
                      : ExpansionMethod::Orthogonal;
  }
  EigenExpansion out =
      (method == ExpansionMethod::Orthogonal)
          ? expand_orthogonal(g, eigensystem, sigma)
          : expand_triangular(g, eigensystem, decomp, sigma);

  // completeness: the expansion must reproduce g
  Polynomial diff = out.reconstruct() - g;
  if (diff.max_abs_coeff() > 1e-8 * (1.0 + g.max_abs_coeff()))
    throw IncompleteEigensystem(
        "eigensystem does not span the expanded polynomial (residual " +
        std::to_string(diff.max_abs_coeff()) + ")");
  return out;
}

Polynomial kbe_solve(const EigenExpansion& expansion, double T, double t) {
  if (t < 0.0 || t > T)
    throw AxisOutOfRange("kbe_solve requires 0 <= t <= T");
  if (expansion.terms.empty()) return Polynomial(0);
  Polynomial out(expansion.terms.front().eigenfunction.monomial_form.dim());
  for (const auto& term : expansion.terms) {
    Complex factor = term.coeff * std::exp(term.eigenfunction.mu * (T - t));
    out = out + term.eigenfunction.monomial_form * factor;
  }
  return out.normalized();
}

GaussianWeightedPolynomial adjoint_eigenfunction(const Eigenfunction& phi,
                                                 const Eigen::MatrixXd& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw SingularCovariance("invariant covariance is not positive definite");
  return {phi.monomial_form, sigma};
}

double invariant_density(const Eigen::MatrixXd& sigma,
                         const Eigen::VectorXd& x) {
  return gaussian_density(sigma, x);
}

} // namespace ou
