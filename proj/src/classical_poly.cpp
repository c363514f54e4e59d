#include "ou/classical_poly.hpp"

#include <cmath>

namespace ou {

Polynomial hermite(int n) {
  if (n < 0) throw AxisOutOfRange("hermite degree must be nonnegative");
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial prev = Polynomial::constant(1, 1.0);  // He_0
  if (n == 0) return prev;
  Polynomial cur = x;  // He_1
  for (int k = 1; k < n; ++k) {
    Polynomial next = x * cur - prev * Complex(static_cast<double>(k));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial laguerre(int n, int alpha, double rho) {
  if (n < 0) throw AxisOutOfRange("laguerre degree must be nonnegative");
  if (alpha < -n) throw AxisOutOfRange("laguerre requires alpha >= -n");
  if (!(rho > 0.0)) throw AxisOutOfRange("laguerre requires rho > 0");
  // L_n^a(x,rho) = sum_k (-1)^k rho^{n-k} C(n,k) [prod_{j=k+a+1}^{n+a} j] / n! x^k
  Polynomial out(1);
  for (int k = 0; k <= n; ++k) {
    double binom = 1.0;
    for (int j = 0; j < k; ++j)
      binom = binom * static_cast<double>(n - j) / static_cast<double>(j + 1);
    double falling = 1.0;  // (n+a)! / (k+a)!, as a product of integers
    for (int j = k + alpha + 1; j <= n + alpha; ++j)
      falling *= static_cast<double>(j);
    double nfact = 1.0;
    for (int j = 2; j <= n; ++j) nfact *= static_cast<double>(j);
    double c = ((k % 2) ? -1.0 : 1.0) * std::pow(rho, n - k) * binom * falling /
               nfact;
    if (c != 0.0) {
      MultiIndex e = MultiIndex::zeros(1);
      e[0] = k;
      out.add_term(e, c);
    }
  }
  return out;
}

Polynomial hli_zform(int m, int n, double rho) {
  if (m < 0 || n < 0) throw AxisOutOfRange("hli orders must be nonnegative");
  Polynomial z = Polynomial::variable(2, 0);
  Polynomial zbar = Polynomial::variable(2, 1);
  Polynomial zzbar = z * zbar;

  auto build = [&](int lo, int hi, const Polynomial& lead) {
    // lo <= hi; leading factor lead^{hi-lo}, Laguerre of order lo.
    // Prefactor lo! (no alternating sign) reproduces the reference table
    // J_{1,1} = rho - z zbar.
    double fact = 1.0;
    for (int j = 2; j <= lo; ++j) fact *= static_cast<double>(j);
    Polynomial lag1 = laguerre(lo, hi - lo, rho);
    // substitute x -> z*zbar
    Polynomial lag = lag1.substitute({zzbar});
    return lead.pow(hi - lo) * lag * Complex(fact);
  };

  if (m >= n) return build(n, m, z);
  return build(m, n, zbar);
}

Polynomial hli(int m, int n, double rho) {
  Polynomial x = Polynomial::variable(2, 0);
  Polynomial y = Polynomial::variable(2, 1);
  Polynomial z = x + y * Complex(0.0, 1.0);
  Polynomial zbar = x - y * Complex(0.0, 1.0);
  return hli_zform(m, n, rho).substitute({z, zbar});
}

Polynomial wirtinger_derivative(const Polynomial& p, Wirtinger which) {
  if (p.dim() != 2)
    throw DimensionMismatch("wirtinger_derivative expects a bivariate polynomial");
  Polynomial dx = p.derivative(0);
  Polynomial dy = p.derivative(1);
  double s = (which == Wirtinger::Z) ? -1.0 : 1.0;
  return (dx + dy * Complex(0.0, s)) * Complex(0.5);
}

Polynomial linear_form(const std::vector<Complex>& f, int d) {
  if (static_cast<int>(f.size()) != d)
    throw DimensionMismatch("linear form vector length vs dimension");
  Polynomial out(d);
  for (int i = 0; i < d; ++i) {
    Complex c = std::conj(f[static_cast<std::size_t>(i)]);
    if (c != Complex(0.0)) {
      MultiIndex e = MultiIndex::zeros(d);
      e[i] = 1;
      out.add_term(e, c);
    }
  }
  return out;
}

Polynomial linear_form_power(const std::vector<Complex>& f, int n, int d) {
  if (n < 0) throw AxisOutOfRange("linear form power must be nonnegative");
  return linear_form(f, d).pow(n);
}

} // namespace ou
