#include "ou/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace ou {

Polynomial Polynomial::constant(int dim, Complex c) {
  Polynomial p(dim);
  p.add_term(MultiIndex::zeros(dim), c);
  return p;
}

Polynomial Polynomial::variable(int dim, int axis) {
  if (axis < 0 || axis >= dim)
    throw AxisOutOfRange("variable axis " + std::to_string(axis) +
                         " for dimension " + std::to_string(dim));
  MultiIndex e = MultiIndex::zeros(dim);
  e[axis] = 1;
  return monomial(e, Complex(1.0, 0.0));
}

Polynomial Polynomial::monomial(MultiIndex exponents, Complex c) {
  Polynomial p(exponents.dim());
  p.add_term(exponents, c);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  // graded order: last term has maximal total degree
  return terms_.rbegin()->first.total_degree();
}

Complex Polynomial::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void Polynomial::add_term(const MultiIndex& e, Complex c) {
  if (e.dim() != dim_)
    throw DimensionMismatch("exponent length " + std::to_string(e.dim()) +
                            " vs polynomial dimension " + std::to_string(dim_));
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (it->second == Complex(0.0)) terms_.erase(it);
}

void Polynomial::check_dim(const Polynomial& rhs) const {
  if (dim_ != rhs.dim_)
    throw DimensionMismatch(std::to_string(dim_) + " vs " +
                            std::to_string(rhs.dim_));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  check_dim(rhs);
  Polynomial out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  check_dim(rhs);
  Polynomial out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  check_dim(rhs);
  Polynomial out(dim_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      MultiIndex e = ea;
      for (int k = 0; k < dim_; ++k) e[k] += eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(Complex s) const {
  Polynomial out(dim_);
  if (s == Complex(0.0)) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * s);
  return out;
}

Polynomial Polynomial::derivative(int axis) const {
  if (axis < 0 || axis >= dim_)
    throw AxisOutOfRange(std::to_string(axis) + " in dimension " +
                         std::to_string(dim_));
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_) {
    int n = e[axis];
    if (n == 0) continue;
    MultiIndex d = e;
    d[axis] = n - 1;
    out.add_term(d, c * static_cast<double>(n));
  }
  return out;
}

Polynomial Polynomial::conjugate() const {
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, std::conj(c));
  return out;
}

Polynomial Polynomial::pow(int n) const {
  Polynomial acc = constant(dim_, Complex(1.0));
  for (int i = 0; i < n; ++i) acc = acc * *this;
  return acc;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& repl) const {
  if (static_cast<int>(repl.size()) != dim_)
    throw DimensionMismatch("substitute expects " + std::to_string(dim_) +
                            " replacement polynomials, got " +
                            std::to_string(repl.size()));
  int target_dim = repl.empty() ? 0 : repl.front().dim();
  for (const auto& r : repl)
    if (r.dim() != target_dim)
      throw DimensionMismatch("replacement polynomials disagree on dimension");

  Polynomial out(target_dim);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(target_dim, c);
    for (int k = 0; k < dim_; ++k)
      if (e[k] > 0) term = term * repl[static_cast<std::size_t>(k)].pow(e[k]);
    out = out + term;
  }
  return out;
}

Complex Polynomial::eval(const std::vector<Complex>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimensionMismatch("evaluation point has wrong dimension");
  Complex acc(0.0);
  for (const auto& [e, c] : terms_) {
    Complex t = c;
    for (int k = 0; k < dim_; ++k)
      for (int j = 0; j < e[k]; ++j) t *= x[static_cast<std::size_t>(k)];
    acc += t;
  }
  return acc;
}

Complex Polynomial::eval(const std::vector<double>& x) const {
  std::vector<Complex> z(x.begin(), x.end());
  return eval(z);
}

Polynomial Polynomial::normalized(double rel_tol) const {
  double cutoff = rel_tol * max_abs_coeff();
  Polynomial out(dim_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > cutoff) out.terms_.emplace(e, c);
  return out;
}

double Polynomial::coeff_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::norm(c);
  return std::sqrt(s);
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string Polynomial::str(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() != 0.0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
    os << ")";
    for (int k = 0; k < dim_; ++k) {
      if (e[k] == 0) continue;
      if (static_cast<std::size_t>(k) < var_names.size())
        os << "*" << var_names[static_cast<std::size_t>(k)];
      else
        os << "*x" << k + 1;
      if (e[k] > 1) os << "^" << e[k];
    }
  }
  return os.str();
}

} // namespace ou
