#include "ou/matrix_market.hpp"

#include <fstream>
#include <ostream>

namespace ou {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open output file " + path);
  return os;
}

} // namespace

void write_matrix_market(const SparseOperatorMatrix& M, std::ostream& os) {
  os << "%%MatrixMarket matrix coordinate complex general\n";
  long nnz = 0;
  for (const auto& mu : M.diagonal)
    if (mu != Complex(0.0)) ++nnz;
  nnz += static_cast<long>(M.entries.size());
  os << M.size << " " << M.size << " " << nnz << "\n";
  os.precision(17);
  for (int i = 0; i < M.size; ++i) {
    const Complex& mu = M.diagonal[static_cast<std::size_t>(i)];
    if (mu != Complex(0.0))
      os << i + 1 << " " << i + 1 << " " << mu.real() << " " << mu.imag()
         << "\n";
  }
  for (const auto& e : M.entries)
    os << e.row + 1 << " " << e.col + 1 << " " << e.value.real() << " "
       << e.value.imag() << "\n";
}

void write_matrix_market(const SparseOperatorMatrix& M,
                         const std::string& path) {
  auto os = open_out(path);
  write_matrix_market(M, os);
}

void write_pattern_csv(const SparseOperatorMatrix& M, std::ostream& os) {
  os << "row,col\n";
  for (int i = 0; i < M.size; ++i)
    if (M.diagonal[static_cast<std::size_t>(i)] != Complex(0.0))
      os << i + 1 << "," << i + 1 << "\n";
  for (const auto& e : M.entries) os << e.row + 1 << "," << e.col + 1 << "\n";
}

void write_pattern_csv(const SparseOperatorMatrix& M, const std::string& path) {
  auto os = open_out(path);
  write_pattern_csv(M, os);
}

} // namespace ou
