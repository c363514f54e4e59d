#pragma once

#include "ou/polynomial.hpp"

namespace ou {

// Probabilists' Hermite polynomial He_n, univariate, via the three-term
// recurrence He_{n+1} = x He_n - n He_{n-1}.
Polynomial hermite(int n);

// Generalized Laguerre polynomial L_n^alpha(x, rho) in the Rodrigues
// normalization L_n^a(x,rho) = (rho^n/n!) x^-a e^{x/rho} d^n/dx^n
// (e^{-x/rho} x^{n+a}), computed by the explicit coefficient sum.
// Requires alpha >= -n and rho > 0.
Polynomial laguerre(int n, int alpha, double rho);

// Hermite-Laguerre-Ito polynomial J_{m,n}(z, zbar; rho) as a bivariate
// polynomial in the formal variables (z, zbar). Case split:
//   m >= n:  n! z^{m-n} L_n^{m-n}(z zbar, rho)
//   m <  n:  m! zbar^{n-m} L_m^{n-m}(z zbar, rho)
// so that J_{0,0}=1, J_{1,0}=z, J_{1,1}=rho-z zbar, J_{2,0}=z^2.
Polynomial hli_zform(int m, int n, double rho);

// J_{m,n} expanded over real variables (x, y) with z = x + iy.
Polynomial hli(int m, int n, double rho);

enum class Wirtinger { Z, ZBar };

// Formal Wirtinger derivative of a bivariate polynomial in (x, y):
// d/dz = (d/dx - i d/dy)/2, d/dzbar = (d/dx + i d/dy)/2.
Polynomial wirtinger_derivative(const Polynomial& p, Wirtinger which);

// Expands <x, f>^n = (sum_i conj(f_i) x_i)^n over the monomial basis in d
// real variables (inner product <u,v> = u* v).
Polynomial linear_form_power(const std::vector<Complex>& f, int n, int d);

// The linear form <x, f> itself.
Polynomial linear_form(const std::vector<Complex>& f, int d);

} // namespace ou
