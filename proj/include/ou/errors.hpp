#pragma once

#include <stdexcept>
#include <string>

namespace ou {

// Error taxonomy shared by the library and the CLI. Each class carries a
// stable exit code so scripts can dispatch on failures.
class Error : public std::runtime_error {
public:
  Error(std::string msg, int exit_code)
      : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

private:
  int exit_code_;
};

#define OU_DEFINE_ERROR(NAME, CODE)                                            \
  class NAME : public Error {                                                  \
  public:                                                                      \
    explicit NAME(const std::string& msg) : Error(#NAME ": " + msg, CODE) {}   \
  }

OU_DEFINE_ERROR(ParseError, 2);
OU_DEFINE_ERROR(ShapeMismatch, 3);
OU_DEFINE_ERROR(UnstableDrift, 4);
OU_DEFINE_ERROR(NotDiagonalizable, 5);
OU_DEFINE_ERROR(HypoellipticityViolated, 6);
OU_DEFINE_ERROR(DimensionMismatch, 7);
OU_DEFINE_ERROR(AxisOutOfRange, 8);
OU_DEFINE_ERROR(WrongCase, 9);
OU_DEFINE_ERROR(BasisNotClosed, 10);
OU_DEFINE_ERROR(IndexNotInBasis, 11);
OU_DEFINE_ERROR(NumericalBreakdown, 12);
OU_DEFINE_ERROR(SolverFailure, 13);
OU_DEFINE_ERROR(SingularCovariance, 14);
OU_DEFINE_ERROR(ZeroPolynomial, 15);
OU_DEFINE_ERROR(IncompleteEigensystem, 16);

#undef OU_DEFINE_ERROR

} // namespace ou
