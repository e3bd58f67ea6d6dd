#pragma once

// Continuous side: x' = -B x with B_H = (B + B^*)/2 >= 0.

#include <optional>
#include <vector>

#include "hypokit/linalg.hpp"
#include "hypokit/tolerances.hpp"

namespace hypokit {

struct ContinuousSystem {
  CMatrix B;
  HermitianSplit split;
  CMatrix sqrtBH;
  SpectralData spectral;
  Tolerances tol;

  Eigen::Index dim() const { return B.rows(); }
};

/// Index certificate shared by the continuous and discrete analyses.
struct IndexReport {
  std::optional<int> index;
  double kappa = 0.0;                         // lambda_min of the Gramian sum at the index
  std::vector<double> per_level_lambda_min;   // lambda_min(S_0), ..., lambda_min(S_last)
  std::vector<int> kernel_dims;               // dim of the joint kernel after each level
  bool discrete = false;
  std::vector<double> power_norms;            // discrete only: ||B^1||, ||B^2||, ...
  double kappa_identity_residual = 0.0;       // discrete only: |kappa - (1 - ||B^{m+1}||^2)|
  Tolerances tol;
};

struct DecayExpansion {
  int index = 0;
  int exponent_a = 1;       // 2m+1
  double constant_c = 0.0;  // prefactor * min_value
  double min_value = 0.0;
  double prefactor = 1.0;   // 1/((2m+1)! binom(2m,m))
  CVector minimizer;
  /// max_p<m ||sqrtBH B^p y|| relative to the stacked matrix norm.
  double kernel_residual = 0.0;
};

struct ShortTimeFit {
  double a_hat = 0.0;
  double c_hat = 0.0;
  int points_used = 0;
};

ContinuousSystem certify_semidissipative(const CMatrix& B, const Tolerances& tol = {});

/// m_max defaults to n-1.
IndexReport hypocoercivity_index(const ContinuousSystem& sys, std::optional<int> m_max = std::nullopt);

DecayExpansion decay_constant(const ContinuousSystem& sys, const IndexReport& report);

/// ||exp(-tB)||, exactly 1 at t = 0.
double propagator_norm(const ContinuousSystem& sys, double t);

/// 1 - ||exp(-tB)||, switching to a quadrature Gram form when the direct
/// difference is below 1e-6 and cancellation would dominate.
double propagator_deficit(const ContinuousSystem& sys, double t);

/// Least-squares fit of log(1 - Phi(t)) = log c + a log t over a decreasing grid in (0, 1).
ShortTimeFit fit_short_time_expansion(const ContinuousSystem& sys, const std::vector<double>& t_grid);

/// 2^-first, 2^-(first+1), ..., 2^-last.
std::vector<double> dyadic_grid(int first, int last);

}  // namespace hypokit
