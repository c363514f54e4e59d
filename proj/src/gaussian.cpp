#include "ou/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace ou {

namespace {

// Recursive Isserlis pairing over a flat list of variable indices.
double pair_moment(std::vector<int>& idx, const Eigen::MatrixXd& sigma) {
  if (idx.empty()) return 1.0;
  if (idx.size() % 2 != 0) return 0.0;
  int i = idx.back();
  idx.pop_back();
  double acc = 0.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    int k = idx[j];
    std::swap(idx[j], idx.back());
    int saved = idx.back();
    idx.pop_back();
    acc += sigma(i, k) * pair_moment(idx, sigma);
    idx.push_back(saved);
    std::swap(idx[j], idx.back());
  }
  idx.push_back(i);
  return acc;
}

} // namespace

double gaussian_moment(const MultiIndex& e, const Eigen::MatrixXd& sigma) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(e.total_degree()));
  for (int k = 0; k < e.dim(); ++k)
    for (int j = 0; j < e[k]; ++j) idx.push_back(k);
  return pair_moment(idx, sigma);
}

Complex integrate_gaussian(const Polynomial& p, const Eigen::MatrixXd& sigma) {
  if (p.dim() != sigma.rows() || sigma.rows() != sigma.cols())
    throw DimensionMismatch("polynomial dimension vs covariance size");
  Complex acc(0.0);
  for (const auto& [e, c] : p.terms()) acc += c * gaussian_moment(e, sigma);
  return acc;
}

double gaussian_density(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& x) {
  const auto d = sigma.rows();
  if (x.size() != d || sigma.cols() != d)
    throw DimensionMismatch("covariance vs point dimension");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw SingularCovariance("covariance is not positive definite");
  Eigen::MatrixXd L = llt.matrixL();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) logdet += 2.0 * std::log(L(i, i));
  double quad = x.dot(llt.solve(x));
  double logp = -0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) +
                        logdet + quad);
  return std::exp(logp);
}

double GaussianWeightedPolynomial::eval(const Eigen::VectorXd& x) const {
  std::vector<double> pt(x.data(), x.data() + x.size());
  return poly.eval(pt).real() * gaussian_density(covariance, x);
}

} // namespace ou
