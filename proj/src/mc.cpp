#include "ou/mc.hpp"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

namespace ou {

namespace {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() {
    return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
  }
};

// per-path substream: decorrelate (seed, path) into one 64-bit state
std::uint64_t substream_state(std::uint64_t seed, std::uint64_t path) {
  SplitMix64 mix(seed ^ (path * 0xda942042e4dd58b5ULL));
  return mix.next();
}

class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t state) : rng_(state) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = rng_.uniform();
    double u2 = rng_.uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  SplitMix64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace

TransitionSampler::TransitionSampler(const OUSystem& sys, double t)
    : dim_(sys.dim()) {
  if (t < 0.0) throw AxisOutOfRange("sampling time must be nonnegative");
  propagator_ = (sys.A * t).exp();
  Eigen::MatrixXd sigma_t = finite_time_covariance(sys, t);
  // symmetric factorization with semidefinite clamp (hypoelliptic small-t)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma_t);
  double clamp = sys.tol.covariance_pd * std::max(1.0, sigma_t.trace());
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals(i) < clamp) vals(i) = 0.0;
  noise_factor_ = es.eigenvectors() * vals.cwiseSqrt().asDiagonal();
}

Eigen::VectorXd TransitionSampler::sample(const Eigen::VectorXd& x0,
                                          std::uint64_t seed,
                                          std::uint64_t path) const {
  if (x0.size() != dim_)
    throw DimensionMismatch("initial point dimension vs system dimension");
  GaussianStream g(substream_state(seed, path));
  Eigen::VectorXd xi(dim_);
  for (int i = 0; i < dim_; ++i) xi(i) = g.next();
  return propagator_ * x0 + noise_factor_ * xi;
}

Eigen::VectorXd sample_exact(const OUSystem& sys, const Eigen::VectorXd& x0,
                             double t, std::uint64_t seed,
                             std::uint64_t path) {
  return TransitionSampler(sys, t).sample(x0, seed, path);
}

KoopmanReport koopman_check(const OUSystem& sys, const Eigenfunction& phi,
                            const Eigen::VectorXd& x0, double t, long paths,
                            std::uint64_t seed) {
  if (paths < 1) throw AxisOutOfRange("path count must be >= 1");
  TransitionSampler sampler(sys, t);
  const int d = sys.dim();

  double sum_re = 0.0, sum_im = 0.0, sumsq_re = 0.0, sumsq_im = 0.0;
  std::vector<double> pt(static_cast<std::size_t>(d));
  for (long i = 0; i < paths; ++i) {
    Eigen::VectorXd x =
        sampler.sample(x0, seed, static_cast<std::uint64_t>(i));
    for (int k = 0; k < d; ++k) pt[static_cast<std::size_t>(k)] = x(k);
    Complex v = phi.monomial_form.eval(pt);
    sum_re += v.real();
    sum_im += v.imag();
    sumsq_re += v.real() * v.real();
    sumsq_im += v.imag() * v.imag();
  }
  const double n = static_cast<double>(paths);
  KoopmanReport rep;
  rep.estimate = Complex(sum_re / n, sum_im / n);
  std::vector<double> p0(x0.data(), x0.data() + x0.size());
  rep.predicted = std::exp(phi.mu * t) * phi.monomial_form.eval(p0);
  auto stderr_of = [&](double sum, double sumsq) {
    if (paths < 2) return 0.0;
    double var = (sumsq - sum * sum / n) / (n - 1.0);
    return std::sqrt(std::max(var, 0.0) / n);
  };
  rep.stderr_re = stderr_of(sum_re, sumsq_re);
  rep.stderr_im = stderr_of(sum_im, sumsq_im);
  auto z = [](double dev, double se) {
    if (se == 0.0) return dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::abs(dev) / se;
  };
  rep.z_score = std::max(z(rep.estimate.real() - rep.predicted.real(), rep.stderr_re),
                         z(rep.estimate.imag() - rep.predicted.imag(), rep.stderr_im));
  rep.paths = paths;
  rep.time = t;
  rep.seed = seed;
  return rep;
}

} // namespace ou
