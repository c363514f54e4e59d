#pragma once

#include <variant>
#include <vector>

#include "ou/eigenfunction.hpp"
#include "ou/system.hpp"

namespace ou {

// Ordered basis of linear-form products psi_m. Indices are sorted graded-lex
// descending, so every index move (which strictly lowers total degree by 2)
// points to a later position and the assembled matrix has all off-diagonal
// entries strictly below the diagonal.
struct BasisSet {
  int dim = 0;
  std::vector<MultiIndex> indices;
  std::map<MultiIndex, int, GradedLexLess> position;

  int size() const { return static_cast<int>(indices.size()); }
  bool contains(const MultiIndex& m) const { return position.count(m) > 0; }
  int pos(const MultiIndex& m) const;
};

// {m <= n componentwise : |n| - |m| even}; reachability under the index
// moves is verified constructively during construction.
BasisSet basis_closure(const MultiIndex& n);

// All m <= n componentwise; size prod_k (n_k + 1).
BasisSet full_basis(const MultiIndex& n);

// Sparse matrix representation of the generator over a BasisSet. Column for
// psi_n carries mu_n on the diagonal, <conj f_k, Q conj f_k> n_k (n_k - 1) at
// row m^(k), and 2 <conj f_j, Q conj f_k> n_k n_j at row m^(kj).
struct SparseOperatorMatrix {
  struct Entry {
    int row, col;
    Complex value;
  };

  int size = 0;
  std::vector<Complex> diagonal;   // mu_m per basis position
  std::vector<Entry> entries;      // off-diagonal, row > col, sorted by column
  long structural_nonzeros = 0;    // entries with nonzero combinatorial factor
  long numeric_nonzeros = 0;       // entries actually stored (incl. diagonal)

  std::vector<int> column_nonzero_counts() const;  // incl. diagonal
};

SparseOperatorMatrix assemble_matrix(const OUSystem& sys,
                                     const SpectralDecomposition& decomp,
                                     const BasisSet& basis);

// Nullspace of dimension > 1: distinct indices sharing one eigenvalue.
struct ResonantBundle {
  Complex mu;
  std::vector<Eigenfunction> members;  // tagged by leading index
};

using SolveResult = std::variant<Eigenfunction, ResonantBundle>;

// Nullspace of M - mu_n I via back-substitution on the triangular system
// (non-resonant) or row reduction (resonant). The psi_n coefficient of the
// returned eigenfunction is 1.
SolveResult solve_eigenfunction(const SparseOperatorMatrix& M,
                                const BasisSet& basis, const MultiIndex& n,
                                const SpectralDecomposition& decomp,
                                double resonance_tol = 1e-9,
                                bool expand_monomials = true);

// One eigenfunction (or resonant bundle member) per basis index.
std::vector<Eigenfunction> solve_all(const SparseOperatorMatrix& M,
                                     const BasisSet& basis,
                                     const SpectralDecomposition& decomp,
                                     double resonance_tol = 1e-9,
                                     bool expand_monomials = true);

// Expands sum_m c_m psi_m to the monomial basis, where psi_m is the product
// of linear-form powers of the left eigenvectors.
Polynomial expand_psi(const SpectralDecomposition& decomp,
                      const Eigenfunction::PsiCoeffs& coeffs);

} // namespace ou
