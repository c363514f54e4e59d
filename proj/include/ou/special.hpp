#pragma once

#include <string>
#include <vector>

#include "ou/eigenfunction.hpp"
#include "ou/system.hpp"

namespace ou {

// Which closed-form family applies to a validated system.
struct CaseClassification {
  enum class Tag { SelfAdjointSimultaneous, NormalSimultaneous, General };

  Tag tag = Tag::General;
  // sigma_k^2 per eigen-position (special cases only); for complex pairs the
  // value is shared by both positions.
  std::vector<double> sigma_sq;
  // rho_k = sigma_k^2 / a_k per complex pair, indexed by pair number.
  std::vector<double> rho;
  // which diffusion rule certified the normal case: "eigenvector" for
  // B f_k = sigma_k f_k, "scalar-orthogonal" for B = sigma P.
  std::string matched_rule;
};

CaseClassification classify(const OUSystem& sys,
                            const SpectralDecomposition& decomp);

// Tensorized Hermite closed form (self-adjoint simultaneously
// diagonalizable case): prod_k He_{n_k}(sqrt(2 lambda_k / sigma_k^2) <x,f_k>).
Eigenfunction selfadjoint_eigenfunction(const OUSystem& sys,
                                        const SpectralDecomposition& decomp,
                                        const CaseClassification& cls,
                                        const MultiIndex& n,
                                        bool l2_normalized = false);

// Hermite x Hermite-Laguerre-Ito closed form for normal drift with
// simultaneously diagonalizable diffusion.
Eigenfunction normal_eigenfunction(const OUSystem& sys,
                                   const SpectralDecomposition& decomp,
                                   const CaseClassification& cls,
                                   const MultiIndex& n,
                                   bool l2_normalized = false);

} // namespace ou
