#include "ou/system.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace ou {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using std::complex;

complex<double> SpectralDecomposition::mu(const MultiIndex& n) const {
  if (n.dim() != dim())
    throw DimensionMismatch("multi-index length vs system dimension");
  complex<double> acc(0.0);
  for (int k = 0; k < dim(); ++k)
    acc -= static_cast<double>(n[k]) * lambdas(k);
  return acc;
}

std::vector<complex<double>> SpectralDecomposition::distinct_lambdas(
    double tol) const {
  std::vector<complex<double>> out;
  for (int k = 0; k < dim(); ++k) {
    complex<double> l = lambdas(k);
    bool seen = false;
    for (const auto& v : out)
      if (std::abs(v - l) <= tol * (1.0 + std::abs(l))) { seen = true; break; }
    if (!seen) out.push_back(l);
  }
  return out;
}

namespace {

// Shared worker: eigen-decompose A, order and normalize left eigenvectors.
SpectralDecomposition decompose(const MatrixXd& A, const Tolerances& tol) {
  const int d = static_cast<int>(A.rows());
  Eigen::EigenSolver<MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw SolverFailure("eigen decomposition of A did not converge");

  MatrixXcd V = es.eigenvectors();
  Eigen::JacobiSVD<MatrixXcd> svd(V);
  double cond = svd.singularValues()(0) /
                svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < tol.eigvec_condition))
    throw NotDiagonalizable("eigenvector matrix condition number " +
                            std::to_string(cond) + " exceeds threshold");

  MatrixXcd W = V.inverse();  // rows are left eigenvectors (up to scaling)

  struct Entry {
    complex<double> lambda;  // A eigenvalue is -lambda
    VectorXcd f;
    bool real = false;
  };
  std::vector<Entry> entries(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Entry& e = entries[static_cast<std::size_t>(i)];
    e.lambda = -es.eigenvalues()(i);
    VectorXcd f = W.row(i).conjugate().transpose();
    f.normalize();
    // phase: largest-magnitude component real positive
    Eigen::Index imax = 0;
    f.cwiseAbs().maxCoeff(&imax);
    complex<double> ph = f(imax) / std::abs(f(imax));
    f /= ph;
    e.f = f;
    if (std::abs(e.lambda.imag()) <=
        tol.real_eigenvalue * (1.0 + std::abs(e.lambda))) {
      e.real = true;
      e.lambda = complex<double>(e.lambda.real(), 0.0);
      e.f = e.f.real().cast<complex<double>>();
      e.f.normalize();
    }
  }

  // group conjugate pairs; enforce exact conjugation
  std::vector<int> order;
  std::vector<bool> used(static_cast<std::size_t>(d), false);
  std::vector<int> reals, pair_first;
  for (int i = 0; i < d; ++i)
    if (entries[static_cast<std::size_t>(i)].real) reals.push_back(i);
  std::sort(reals.begin(), reals.end(), [&](int a, int b) {
    return entries[static_cast<std::size_t>(a)].lambda.real() <
           entries[static_cast<std::size_t>(b)].lambda.real();
  });

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < d; ++i) {
    const Entry& ei = entries[static_cast<std::size_t>(i)];
    if (ei.real || used[static_cast<std::size_t>(i)]) continue;
    used[static_cast<std::size_t>(i)] = true;
    int best = -1;
    double best_dist = 0.0;
    for (int j = 0; j < d; ++j) {
      const Entry& ej = entries[static_cast<std::size_t>(j)];
      if (ej.real || used[static_cast<std::size_t>(j)]) continue;
      double dist = std::abs(ej.lambda - std::conj(ei.lambda));
      if (best < 0 || dist < best_dist) { best = j; best_dist = dist; }
    }
    if (best < 0)
      throw NotDiagonalizable("complex eigenvalue without conjugate partner");
    used[static_cast<std::size_t>(best)] = true;
    // representative first member: Im(lambda) < 0, i.e. lambda = a - ib with
    // b > 0, so that pair index (m,n) carries mu = -(m+n)a + i(m-n)b
    int rep = (ei.lambda.imag() < 0.0) ? i : best;
    pairs.emplace_back(rep, rep == i ? best : i);
  }
  std::sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
    const auto& la = entries[static_cast<std::size_t>(a.first)].lambda;
    const auto& lb = entries[static_cast<std::size_t>(b.first)].lambda;
    if (la.real() != lb.real()) return la.real() < lb.real();
    return la.imag() < lb.imag();
  });

  SpectralDecomposition out;
  out.lambdas.resize(d);
  out.left_vectors.resize(d, d);
  out.num_real = static_cast<int>(reals.size());
  out.num_pairs = static_cast<int>(pairs.size());
  out.kind.resize(static_cast<std::size_t>(d));
  out.partner.resize(static_cast<std::size_t>(d));

  int pos = 0;
  for (int i : reals) {
    out.lambdas(pos) = entries[static_cast<std::size_t>(i)].lambda;
    out.left_vectors.col(pos) = entries[static_cast<std::size_t>(i)].f;
    out.kind[static_cast<std::size_t>(pos)] = SpectralDecomposition::Kind::Real;
    out.partner[static_cast<std::size_t>(pos)] = pos;
    ++pos;
  }
  for (auto [rep, other] : pairs) {
    const Entry& er = entries[static_cast<std::size_t>(rep)];
    out.lambdas(pos) = er.lambda;
    out.left_vectors.col(pos) = er.f;
    out.lambdas(pos + 1) = std::conj(er.lambda);
    out.left_vectors.col(pos + 1) = er.f.conjugate();
    out.kind[static_cast<std::size_t>(pos)] =
        SpectralDecomposition::Kind::PairFirst;
    out.kind[static_cast<std::size_t>(pos + 1)] =
        SpectralDecomposition::Kind::PairSecond;
    out.partner[static_cast<std::size_t>(pos)] = pos + 1;
    out.partner[static_cast<std::size_t>(pos + 1)] = pos;
    pos += 2;
  }

  out.spectral_abscissa = -out.lambdas.real().minCoeff();

  // reconstruction residual: F^* A - diag(-lambda) F^*
  MatrixXcd Fstar = out.left_vectors.adjoint();
  MatrixXcd R = Fstar * A + out.lambdas.asDiagonal() * Fstar;
  if (R.norm() > tol.reconstruction * std::max(1.0, A.norm()) * 100.0)
    throw NotDiagonalizable("left-eigenvector reconstruction residual " +
                            std::to_string(R.norm() / A.norm()));
  return out;
}

} // namespace

OUSystem validate_system(const MatrixXd& A, const MatrixXd& B,
                         const Tolerances& tol) {
  if (A.rows() != A.cols())
    throw ShapeMismatch("A must be square, got " + std::to_string(A.rows()) +
                        "x" + std::to_string(A.cols()));
  if (B.rows() != A.rows())
    throw ShapeMismatch("B must have the same row count as A");
  if (B.cols() > B.rows())
    throw ShapeMismatch("B must be d x r with r <= d");

  SpectralDecomposition decomp = decompose(A, tol);
  for (int k = 0; k < decomp.dim(); ++k) {
    if (!(decomp.lambdas(k).real() > 0.0))
      throw UnstableDrift("eigenvalue " +
                          std::to_string(-decomp.lambdas(k).real()) + (decomp.lambdas(k).imag() != 0.0 ? " + i*" + std::to_string(-decomp.lambdas(k).imag()) : "") +
                          " of A has nonnegative real part");
  }
  double bnorm = B.norm();
  for (int k = 0; k < decomp.dim(); ++k) {
    double bf = (B.transpose() * decomp.left_vectors.col(k)).norm();
    if (bf <= tol.hypoellipticity * (1.0 + bnorm))
      throw HypoellipticityViolated(
          "left eigenvector " + std::to_string(k) +
          " lies in the kernel of B^T (||B^T f|| = " + std::to_string(bf) + ")");
  }

  OUSystem sys;
  sys.A = A;
  sys.B = B;
  sys.Q = 0.5 * B * B.transpose();
  sys.tol = tol;

  Eigen::SelfAdjointEigenSolver<MatrixXd> qes(sys.Q);
  if (qes.eigenvalues().minCoeff() < -1e-12 * (1.0 + sys.Q.norm()))
    throw ShapeMismatch("Q = B B^T / 2 is not positive semidefinite");
  return sys;
}

SpectralDecomposition spectral_decomposition(const OUSystem& sys) {
  return decompose(sys.A, sys.tol);
}

std::vector<SpectrumEntry> spectrum(const SpectralDecomposition& decomp,
                                    int max_total_degree, double dedup_tol) {
  if (max_total_degree < 0)
    throw AxisOutOfRange("max_total_degree must be nonnegative");
  auto distinct = decomp.distinct_lambdas(dedup_tol);
  const int l = static_cast<int>(distinct.size());

  std::vector<SpectrumEntry> out;
  std::vector<int> idx(static_cast<std::size_t>(l), 0);
  // enumerate all multi-indices with total degree <= max_total_degree
  auto emit = [&]() {
    complex<double> m(0.0);
    for (int k = 0; k < l; ++k)
      m -= static_cast<double>(idx[static_cast<std::size_t>(k)]) * distinct[static_cast<std::size_t>(k)];
    out.push_back({MultiIndex(std::vector<int>(idx.begin(), idx.end())), m});
  };
  // odometer over the simplex
  while (true) {
    emit();
    int k = l - 1;
    while (k >= 0) {
      ++idx[static_cast<std::size_t>(k)];
      int total = 0;
      for (int j = 0; j < l; ++j) total += idx[static_cast<std::size_t>(j)];
      if (total <= max_total_degree) break;
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

Eigen::MatrixXd stationary_covariance(const OUSystem& sys) {
  const int d = sys.dim();
  const int n = d * d;
  MatrixXd K = MatrixXd::Zero(n, n);
  // vec(A S + S A^T) = (I (x) A + A (x) I) vec(S), column-major vec
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        K(j * d + i, j * d + k) += sys.A(i, k);  // A S
        K(j * d + i, k * d + i) += sys.A(j, k);  // S A^T
      }
  MatrixXd BBt = sys.B * sys.B.transpose();
  Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(BBt.data(), n);
  Eigen::FullPivLU<MatrixXd> lu(K);
  if (!lu.isInvertible())
    throw SolverFailure("Lyapunov operator is singular");
  Eigen::VectorXd v = lu.solve(rhs);
  MatrixXd S = Eigen::Map<const MatrixXd>(v.data(), d, d);
  S = 0.5 * (S + S.transpose()).eval();
  double resid = (sys.A * S + S * sys.A.transpose() + BBt).norm();
  if (resid > 1e-8 * std::max(1.0, BBt.norm()))
    throw SolverFailure("Lyapunov residual " + std::to_string(resid));
  return S;
}

Eigen::MatrixXd finite_time_covariance(const OUSystem& sys, double t) {
  if (t < 0.0) throw AxisOutOfRange("time must be nonnegative");
  const int d = sys.dim();
  if (t == 0.0) return MatrixXd::Zero(d, d);
  // Sigma_t = Sigma_inf - e^{tA} Sigma_inf e^{tA^T}; stays well conditioned
  // for large t where the block-exponential formulation overflows.
  MatrixXd Sinf = stationary_covariance(sys);
  MatrixXd F = (sys.A * t).exp();
  MatrixXd S = Sinf - F * Sinf * F.transpose();
  return 0.5 * (S + S.transpose());
}

} // namespace ou
