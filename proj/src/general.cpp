#include "ou/general.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ou/classical_poly.hpp"

namespace ou {

namespace {

std::string to_string(const MultiIndex& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

// All componentwise-smaller-or-equal indices, optionally parity filtered.
std::vector<MultiIndex> box_indices(const MultiIndex& n, bool parity_filter) {
  const int d = n.dim();
  const int total = n.total_degree();
  std::vector<MultiIndex> out;
  MultiIndex m = MultiIndex::zeros(d);
  while (true) {
    if (!parity_filter || (total - m.total_degree()) % 2 == 0)
      out.push_back(m);
    int k = d - 1;
    while (k >= 0 && m[k] == n[k]) m[k--] = 0;
    if (k < 0) break;
    ++m[k];
  }
  return out;
}

void order_descending(BasisSet& b) {
  std::sort(b.indices.begin(), b.indices.end(),
            [](const MultiIndex& a, const MultiIndex& c) {
              return GradedLexLess{}(c, a);
            });
  for (int i = 0; i < b.size(); ++i)
    b.position.emplace(b.indices[static_cast<std::size_t>(i)], i);
}

// Reachability of the parity-filtered box from n under the two index moves.
void verify_closure_reachable(const MultiIndex& n,
                              const std::vector<MultiIndex>& expected) {
  const int d = n.dim();
  std::set<MultiIndex> reached;
  std::vector<MultiIndex> frontier{n};
  reached.insert(n);
  while (!frontier.empty()) {
    std::vector<MultiIndex> next;
    for (const MultiIndex& m : frontier) {
      for (int k = 0; k < d; ++k) {
        if (m[k] >= 2) {
          MultiIndex t = m;
          t[k] -= 2;
          if (reached.insert(t).second) next.push_back(t);
        }
        for (int j = k + 1; j < d; ++j) {
          if (m[k] >= 1 && m[j] >= 1) {
            MultiIndex t = m;
            --t[k];
            --t[j];
            if (reached.insert(t).second) next.push_back(t);
          }
        }
      }
    }
    frontier = std::move(next);
  }
  if (reached.size() != expected.size() ||
      !std::all_of(expected.begin(), expected.end(),
                   [&](const MultiIndex& m) { return reached.count(m) > 0; }))
    throw SolverFailure("closure reachability mismatch for target " +
                        to_string(n) + ": reachable " +
                        std::to_string(reached.size()) + " vs parity box " +
                        std::to_string(expected.size()));
}

} // namespace

int BasisSet::pos(const MultiIndex& m) const {
  auto it = position.find(m);
  if (it == position.end())
    throw IndexNotInBasis(to_string(m));
  return it->second;
}

BasisSet basis_closure(const MultiIndex& n) {
  BasisSet b;
  b.dim = n.dim();
  b.indices = box_indices(n, /*parity_filter=*/true);
  verify_closure_reachable(n, b.indices);
  order_descending(b);
  return b;
}

BasisSet full_basis(const MultiIndex& n) {
  BasisSet b;
  b.dim = n.dim();
  b.indices = box_indices(n, /*parity_filter=*/false);
  order_descending(b);
  return b;
}

std::vector<int> SparseOperatorMatrix::column_nonzero_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(size), 1);  // diagonal
  for (const Entry& e : entries) ++counts[static_cast<std::size_t>(e.col)];
  return counts;
}

SparseOperatorMatrix assemble_matrix(const OUSystem& sys,
                                     const SpectralDecomposition& decomp,
                                     const BasisSet& basis) {
  const int d = sys.dim();
  if (basis.dim != d)
    throw DimensionMismatch("basis dimension vs system dimension");

  // C(j,k) = <conj f_j, Q conj f_k> = (conj f_j)^T Q (conj f_k)
  Eigen::MatrixXcd G = decomp.left_vectors.conjugate();
  Eigen::MatrixXcd C = G.transpose() * sys.Q * G;
  const double qnorm = std::max(1.0, sys.Q.norm());
  const double zero_tol = sys.tol.structural_zero * qnorm;

  SparseOperatorMatrix M;
  M.size = basis.size();
  M.diagonal.resize(static_cast<std::size_t>(M.size));

  auto target_pos = [&](const MultiIndex& m, const MultiIndex& src) {
    auto it = basis.position.find(m);
    if (it == basis.position.end())
      throw BasisNotClosed("move target " + to_string(m) + " of " +
                           to_string(src) + " missing from basis");
    return it->second;
  };

  for (int c = 0; c < M.size; ++c) {
    const MultiIndex& n = basis.indices[static_cast<std::size_t>(c)];
    Complex mu = decomp.mu(n);
    M.diagonal[static_cast<std::size_t>(c)] = mu;
    if (mu != Complex(0.0)) ++M.numeric_nonzeros;
    ++M.structural_nonzeros;

    for (int k = 0; k < d; ++k) {
      if (n[k] < 2) continue;
      ++M.structural_nonzeros;
      if (std::abs(C(k, k)) <= zero_tol) continue;
      MultiIndex m = n;
      m[k] -= 2;
      double factor = static_cast<double>(n[k]) * (n[k] - 1);
      M.entries.push_back({target_pos(m, n), c, C(k, k) * factor});
      ++M.numeric_nonzeros;
    }
    for (int k = 0; k < d; ++k)
      for (int j = k + 1; j < d; ++j) {
        if (n[k] < 1 || n[j] < 1) continue;
        ++M.structural_nonzeros;
        if (std::abs(C(j, k)) <= zero_tol) continue;
        MultiIndex m = n;
        --m[k];
        --m[j];
        double factor = 2.0 * n[k] * n[j];
        M.entries.push_back({target_pos(m, n), c, C(j, k) * factor});
        ++M.numeric_nonzeros;
      }
  }
  std::sort(M.entries.begin(), M.entries.end(),
            [](const SparseOperatorMatrix::Entry& a,
               const SparseOperatorMatrix::Entry& b) {
              return std::tie(a.col, a.row) < std::tie(b.col, b.row);
            });
  return M;
}

Polynomial expand_psi(const SpectralDecomposition& decomp,
                      const Eigenfunction::PsiCoeffs& coeffs) {
  const int d = decomp.dim();
  // cache linear-form powers per position
  std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(d));
  auto power = [&](int k, int e) -> const Polynomial& {
    auto& cache = powers[static_cast<std::size_t>(k)];
    if (cache.empty()) {
      std::vector<Complex> f(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) f[static_cast<std::size_t>(i)] = decomp.left_vectors(i, k);
      cache.push_back(Polynomial::constant(d, 1.0));
      cache.push_back(linear_form(f, d));
    }
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(cache.back() * cache[1]);
    return cache[static_cast<std::size_t>(e)];
  };

  Polynomial out(d);
  for (const auto& [m, c] : coeffs) {
    Polynomial term = Polynomial::constant(d, c);
    for (int k = 0; k < d; ++k)
      if (m[k] > 0) term = term * power(k, m[k]);
    out = out + term;
  }
  return out.normalized();
}

namespace {

// Rows of the strictly-lower part, for substitution sweeps.
std::vector<std::vector<std::pair<int, Complex>>> row_lists(
    const SparseOperatorMatrix& M) {
  std::vector<std::vector<std::pair<int, Complex>>> rows(
      static_cast<std::size_t>(M.size));
  for (const auto& e : M.entries)
    rows[static_cast<std::size_t>(e.row)].emplace_back(e.col, e.value);
  return rows;
}

Eigenfunction make_eigenfunction(const BasisSet& basis,
                                 const SpectralDecomposition& decomp,
                                 const MultiIndex& index, Complex mu,
                                 const std::vector<std::pair<int, Complex>>& v,
                                 bool expand) {
  Eigenfunction ef;
  ef.index = index;
  ef.mu = mu;
  Eigenfunction::PsiCoeffs coeffs;
  for (const auto& [pos, c] : v)
    coeffs.emplace(basis.indices[static_cast<std::size_t>(pos)], c);
  if (expand) ef.monomial_form = expand_psi(decomp, coeffs);
  ef.psi_coefficients = std::move(coeffs);
  return ef;
}

} // namespace

SolveResult solve_eigenfunction(const SparseOperatorMatrix& M,
                                const BasisSet& basis, const MultiIndex& n,
                                const SpectralDecomposition& decomp,
                                double resonance_tol, bool expand_monomials) {
  const int p = basis.pos(n);
  const Complex mu = M.diagonal[static_cast<std::size_t>(p)];
  const int N = M.size;

  std::vector<int> resonant;
  for (int q = 0; q < N; ++q)
    if (std::abs(M.diagonal[static_cast<std::size_t>(q)] - mu) <=
        resonance_tol * (1.0 + std::abs(mu)))
      resonant.push_back(q);

  auto rows = row_lists(M);

  if (resonant.size() == 1) {
    // forward substitution; positions before p stay zero
    std::vector<Complex> v(static_cast<std::size_t>(N), Complex(0.0));
    v[static_cast<std::size_t>(p)] = Complex(1.0);
    std::vector<std::pair<int, Complex>> support{{p, Complex(1.0)}};
    for (int q = p + 1; q < N; ++q) {
      Complex s(0.0);
      for (const auto& [c, val] : rows[static_cast<std::size_t>(q)])
        if (v[static_cast<std::size_t>(c)] != Complex(0.0))
          s += val * v[static_cast<std::size_t>(c)];
      if (s == Complex(0.0)) continue;
      Complex denom = M.diagonal[static_cast<std::size_t>(q)] - mu;
      if (std::abs(denom) <= resonance_tol * (1.0 + std::abs(mu)))
        throw NumericalBreakdown("pivot below tolerance at position " +
                                 std::to_string(q));
      v[static_cast<std::size_t>(q)] = -s / denom;
      support.emplace_back(q, v[static_cast<std::size_t>(q)]);
    }
    return make_eigenfunction(basis, decomp, n, mu, support, expand_monomials);
  }

  // resonant: dense nullspace on the trailing block
  const int p0 = resonant.front();
  const int S = N - p0;
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(S, S);
  for (int q = p0; q < N; ++q)
    D(q - p0, q - p0) = M.diagonal[static_cast<std::size_t>(q)] - mu;
  for (const auto& e : M.entries)
    if (e.col >= p0) D(e.row - p0, e.col - p0) = e.value;

  Eigen::FullPivLU<Eigen::MatrixXcd> lu(D);
  lu.setThreshold(1e-10);
  Eigen::MatrixXcd kernel = lu.kernel();
  if (kernel.cols() == 0)
    throw NumericalBreakdown("empty nullspace in resonant solve");

  // echelon-normalize: distinct leading positions, leading coefficient 1
  const Eigen::Index K = kernel.cols();
  std::vector<int> leading(static_cast<std::size_t>(K), -1);
  for (Eigen::Index c = 0; c < K; ++c) {
    // eliminate previously fixed leading positions from this column
    for (Eigen::Index c2 = 0; c2 < c; ++c2) {
      int lr = leading[static_cast<std::size_t>(c2)];
      if (kernel(lr, c) != Complex(0.0))
        kernel.col(c) -= kernel(lr, c) * kernel.col(c2);
    }
    double scale = kernel.col(c).cwiseAbs().maxCoeff();
    Eigen::Index lead = -1;
    for (Eigen::Index r = 0; r < S; ++r)
      if (std::abs(kernel(r, c)) > 1e-12 * scale) { lead = r; break; }
    if (lead < 0) throw NumericalBreakdown("zero kernel vector");
    kernel.col(c) /= kernel(lead, c);
    leading[static_cast<std::size_t>(c)] = static_cast<int>(lead);
    // clear this leading position from the other columns
    for (Eigen::Index c2 = 0; c2 < K; ++c2)
      if (c2 != c && kernel(lead, c2) != Complex(0.0))
        kernel.col(c2) -= kernel(lead, c2) * kernel.col(c);
  }

  ResonantBundle bundle;
  bundle.mu = mu;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(K));
  for (Eigen::Index c = 0; c < K; ++c) order[static_cast<std::size_t>(c)] = c;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return leading[static_cast<std::size_t>(a)] <
           leading[static_cast<std::size_t>(b)];
  });
  for (Eigen::Index c : order) {
    int lead = leading[static_cast<std::size_t>(c)];
    std::vector<std::pair<int, Complex>> support;
    double scale = kernel.col(c).cwiseAbs().maxCoeff();
    for (Eigen::Index r = 0; r < S; ++r)
      if (std::abs(kernel(r, c)) > 1e-13 * scale)
        support.emplace_back(static_cast<int>(r) + p0, kernel(r, c));
    bundle.members.push_back(make_eigenfunction(
        basis, decomp,
        basis.indices[static_cast<std::size_t>(lead + p0)], mu, support,
        expand_monomials));
  }
  return bundle;
}

std::vector<Eigenfunction> solve_all(const SparseOperatorMatrix& M,
                                     const BasisSet& basis,
                                     const SpectralDecomposition& decomp,
                                     double resonance_tol,
                                     bool expand_monomials) {
  std::vector<Eigenfunction> out;
  std::vector<bool> done(static_cast<std::size_t>(M.size), false);
  for (int p = 0; p < M.size; ++p) {
    if (done[static_cast<std::size_t>(p)]) continue;
    SolveResult res =
        solve_eigenfunction(M, basis, basis.indices[static_cast<std::size_t>(p)],
                            decomp, resonance_tol, expand_monomials);
    if (std::holds_alternative<Eigenfunction>(res)) {
      done[static_cast<std::size_t>(p)] = true;
      out.push_back(std::get<Eigenfunction>(std::move(res)));
    } else {
      auto& bundle = std::get<ResonantBundle>(res);
      for (auto& ef : bundle.members) {
        int q = basis.pos(ef.index);
        if (!done[static_cast<std::size_t>(q)]) {
          done[static_cast<std::size_t>(q)] = true;
          out.push_back(std::move(ef));
        }
      }
      if (!done[static_cast<std::size_t>(p)])
        throw NumericalBreakdown(
            "resonant bundle is missing a member for index " +
            to_string(basis.indices[static_cast<std::size_t>(p)]));
    }
  }
  return out;
}

} // namespace ou
