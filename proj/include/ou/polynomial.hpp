#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ou/errors.hpp"
#include "ou/multi_index.hpp"

namespace ou {

using Complex = std::complex<double>;

// Sparse multivariate polynomial with complex coefficients in the monomial
// basis. Immutable value semantics; terms are kept in graded-lex order and
// exact zeros are never stored.
class Polynomial {
public:
  using TermMap = std::map<MultiIndex, Complex, GradedLexLess>;

  // Relative magnitude below which coefficients are pruned by normalized().
  static constexpr double kDropTol = 1e-13;

  explicit Polynomial(int dim = 0) : dim_(dim) {}

  static Polynomial constant(int dim, Complex c);
  static Polynomial variable(int dim, int axis);
  static Polynomial monomial(MultiIndex exponents, Complex c);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Complex coeff(const MultiIndex& e) const;
  void add_term(const MultiIndex& e, Complex c);

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator*(Complex s) const;
  Polynomial operator-() const { return *this * Complex(-1.0, 0.0); }
  friend Polynomial operator*(Complex s, const Polynomial& p) { return p * s; }

  Polynomial derivative(int axis) const;
  Polynomial conjugate() const;
  Polynomial pow(int n) const;

  // Substitutes repl[i] for variable i; all repl share one target dimension.
  Polynomial substitute(const std::vector<Polynomial>& repl) const;

  Complex eval(const std::vector<Complex>& x) const;
  Complex eval(const std::vector<double>& x) const;

  // Drops terms with |c| <= rel_tol * max|c|.
  Polynomial normalized(double rel_tol = kDropTol) const;

  double coeff_norm() const;     // 2-norm over coefficients
  double max_abs_coeff() const;

  bool operator==(const Polynomial&) const = default;

  std::string str(const std::vector<std::string>& var_names = {}) const;

private:
  void check_dim(const Polynomial& rhs) const;

  int dim_;
  TermMap terms_;
};

} // namespace ou
