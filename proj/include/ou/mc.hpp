#pragma once

#include <cstdint>
#include <string>

#include "ou/eigenfunction.hpp"
#include "ou/system.hpp"

namespace ou {

struct SamplerConfig {
  std::uint64_t seed = 0;
  long paths = 1;
  double time = 0.0;
  Eigen::VectorXd initial_point;
};

// Exact Gaussian transition sampler for X_t = e^{tA} x0 + noise with
// covariance Sigma_t; no time discretization. Substreams are derived from
// (seed, path index) so parallel and serial execution agree.
class TransitionSampler {
public:
  TransitionSampler(const OUSystem& sys, double t);

  Eigen::VectorXd sample(const Eigen::VectorXd& x0, std::uint64_t seed,
                         std::uint64_t path) const;

  const Eigen::MatrixXd& propagator() const { return propagator_; }
  static constexpr const char* kGeneratorName = "splitmix64+box-muller";

private:
  int dim_;
  Eigen::MatrixXd propagator_;    // e^{tA}
  Eigen::MatrixXd noise_factor_;  // L with L L^T = Sigma_t
};

struct KoopmanReport {
  Complex estimate;
  Complex predicted;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  double z_score = 0.0;  // max componentwise |estimate-predicted| / stderr
  long paths = 0;
  double time = 0.0;
  std::uint64_t seed = 0;
  std::string rng = TransitionSampler::kGeneratorName;
};

Eigen::VectorXd sample_exact(const OUSystem& sys, const Eigen::VectorXd& x0,
                             double t, std::uint64_t seed, std::uint64_t path);

// Sample mean of phi(X_t) over exact draws vs the semigroup prediction
// e^{mu t} phi(x0).
KoopmanReport koopman_check(const OUSystem& sys, const Eigenfunction& phi,
                            const Eigen::VectorXd& x0, double t, long paths,
                            std::uint64_t seed);

} // namespace ou
