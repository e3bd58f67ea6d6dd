#pragma once

// Discrete side: x_{k+1} = B x_k with ||B|| <= 1.

#include <optional>

#include "hypokit/coercivity.hpp"

namespace hypokit {

struct DiscreteSystem {
  CMatrix B;
  double sigma_max = 0.0;
  RVector singular_values;
  SpectralData spectral;
  Tolerances tol;

  Eigen::Index dim() const { return B.rows(); }
};

DiscreteSystem certify_semicontractive(const CMatrix& B, const Tolerances& tol = {});

/// Norm-plateau index with the Gramian sum as cross-check. m_max defaults to n-1.
IndexReport hypocontractivity_index(const DiscreteSystem& sys, std::optional<int> m_max = std::nullopt);

}  // namespace hypokit
