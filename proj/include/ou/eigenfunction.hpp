#pragma once

#include <map>
#include <optional>

#include "ou/polynomial.hpp"

namespace ou {

// An eigenfunction of the OU operator: its multi-index, eigenvalue and
// monomial expansion. psi_coefficients (coordinates over the linear-form
// basis) are present when the general method produced it.
struct Eigenfunction {
  using PsiCoeffs = std::map<MultiIndex, Complex, GradedLexLess>;

  MultiIndex index;
  Complex mu{};
  std::optional<PsiCoeffs> psi_coefficients;
  Polynomial monomial_form;
};

} // namespace ou
