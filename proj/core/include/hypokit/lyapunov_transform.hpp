#pragma once

// Changes of basis y = X^{1/2} x that make a stable system maximally coercive
// (continuous) or maximally contractive (discrete).

#include <optional>
#include <vector>

#include "hypokit/linalg.hpp"
#include "hypokit/tolerances.hpp"

namespace hypokit {

struct TransformResult {
  bool discrete = false;
  CMatrix X;
  CMatrix sqrtX;
  CMatrix transformed;  // X^{1/2} B X^{-1/2}
  double target = 0.0;    // -mu (continuous) or rho (discrete)
  double achieved = 0.0;  // lambda_min of the transformed Hermitian part, or its sigma_max
  double epsilon = 0.0;
  double cond_sqrtX = 1.0;
  bool defective = false;
  bool marginal = false;
  /// lambda_min of X B + B^*X - 2(target - eps)X, or of (rho^2+eps)X - B^*XB.
  double lyapunov_residual = 0.0;
  /// Tight direction (semi-simple case), normalized to z^*Xz = 1.
  std::optional<CVector> witness;
  double witness_residual = 0.0;
};

TransformResult maximally_coercive(const CMatrix& B, std::optional<double> epsilon = std::nullopt,
                                   const Tolerances& tol = {});
TransformResult maximally_contractive(const CMatrix& B, std::optional<double> epsilon = std::nullopt,
                                      const Tolerances& tol = {});

struct AmplificationReport {
  double tau = 0.0;
  double t_final = 0.0;
  double cond_sqrtX = 1.0;
  double lipschitz_x = 0.0;        // ||(I + tau/2 B)^{-1} B||
  double lipschitz_y = 0.0;        // same in X^{1/2} coordinates
  double lipschitz_y_bound = 0.0;  // cond_sqrtX * lipschitz_x
  double local_error = 0.0;        // Richardson estimate of one-step error
  double theta_max = 0.0;
  std::vector<double> times;
  std::vector<double> errors;      // ||exp(-B t_i) - B_d^i||
  std::vector<double> bounds;      // cond * t_i * theta * exp(L_x t_i)
  bool bound_dominates = false;
  double final_error = 0.0;
  double final_error_half_step = 0.0;
  double order_ratio = 0.0;        // final_error / final_error_half_step
};

AmplificationReport error_amplification_report(const CMatrix& B, const CMatrix& X, double t_final, double tau);

}  // namespace hypokit
