#pragma once

#include <compare>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <vector>

namespace ou {

// d-vector of nonnegative integers indexing basis functions and
// eigenfunctions.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {}
  static MultiIndex zeros(int dim) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(dim), 0)); }

  int dim() const { return static_cast<int>(entries_.size()); }
  int operator[](int k) const { return entries_[static_cast<std::size_t>(k)]; }
  int& operator[](int k) { return entries_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& entries() const { return entries_; }

  int total_degree() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
  }

  bool leq_componentwise(const MultiIndex& other) const {
    if (dim() != other.dim()) return false;
    for (int k = 0; k < dim(); ++k)
      if (entries_[static_cast<std::size_t>(k)] > other[k]) return false;
    return true;
  }

  bool operator==(const MultiIndex&) const = default;
  auto operator<=>(const MultiIndex&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const MultiIndex& m) {
    os << '(';
    for (int k = 0; k < m.dim(); ++k) os << (k ? "," : "") << m[k];
    return os << ')';
  }

private:
  std::vector<int> entries_;
};

// Graded lexicographic: first by total degree, ties lexicographic.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a.entries() < b.entries();
  }
};

} // namespace ou
