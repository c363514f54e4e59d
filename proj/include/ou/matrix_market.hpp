#pragma once

#include <iosfwd>
#include <string>

#include "ou/general.hpp"

namespace ou {

// Coordinate complex general format, 1-based indices, diagonal included.
void write_matrix_market(const SparseOperatorMatrix& M, std::ostream& os);
void write_matrix_market(const SparseOperatorMatrix& M,
                         const std::string& path);

// Sparsity pattern as "row,col" CSV lines (1-based), for external plotting.
void write_pattern_csv(const SparseOperatorMatrix& M, std::ostream& os);
void write_pattern_csv(const SparseOperatorMatrix& M, const std::string& path);

} // namespace ou
