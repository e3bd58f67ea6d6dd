#pragma once

// Scaled Cayley transform M_tau(z) = (1 + tau z/2)/(1 - tau z/2), the
// propagator of the implicit midpoint rule.

#include <optional>
#include <string>

#include "hypokit/coercivity.hpp"
#include "hypokit/contractivity.hpp"

namespace hypokit {

/// M_tau(A) = (I - tau/2 A)^{-1}(I + tau/2 A), by LU solve.
CMatrix scaled_cayley(const CMatrix& A, double tau);
/// M_tau^{-1}(W) = (2/tau)(W - I)(W + I)^{-1}.
CMatrix inverse_scaled_cayley(const CMatrix& W, double tau);

struct CayleyPair {
  double tau = 0.0;
  ContinuousSystem continuous;
  DiscreteSystem discrete;
  /// Distance of 2/tau to the spectrum of -B, relative to max(||B||, 2/tau).
  double pole_distance = 0.0;
  std::optional<std::string> warning;
};

CayleyPair cayley_forward(const ContinuousSystem& sys, double tau);
ContinuousSystem cayley_inverse(const DiscreteSystem& sys, double tau);

struct IndexPreservationReport {
  double tau = 0.0;
  std::optional<int> continuous_index;
  std::optional<int> discrete_index;
  bool pass = false;                // indices agree
  double residual_discrete = 0.0;   // I - B_d^*B_d identity, scaled by max(1, ||B_H||)
  double residual_continuous = 0.0; // -(M^{-1}(B_d))_H identity, same scaling
  double roundtrip_residual = 0.0;  // ||B_back - B|| / ||B|| after forward and inverse
  double sigma_max_discrete = 0.0;
  std::optional<std::string> warning;
};

IndexPreservationReport verify_index_preservation(const ContinuousSystem& sys, double tau);

}  // namespace hypokit
