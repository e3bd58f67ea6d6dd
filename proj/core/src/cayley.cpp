#include "hypokit/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypokit/errors.hpp"

namespace hypokit {

namespace {

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, "tau must be positive and finite", tau);
  }
}

constexpr double kWarningFactor = 1e3;

}  // namespace

CMatrix scaled_cayley(const CMatrix& A, double tau) {
  require_tau(tau);
  require_square(A, "scaled_cayley");
  const Eigen::Index n = A.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  return (I - 0.5 * tau * A).partialPivLu().solve(I + 0.5 * tau * A);
}

CMatrix inverse_scaled_cayley(const CMatrix& W, double tau) {
  require_tau(tau);
  require_square(W, "inverse_scaled_cayley");
  const Eigen::Index n = W.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  // (W - I) and (W + I)^{-1} commute.
  return (2.0 / tau) * (W + I).partialPivLu().solve(W - I);
}

CayleyPair cayley_forward(const ContinuousSystem& sys, double tau) {
  require_tau(tau);
  const double pole = 2.0 / tau;
  const double scale = std::max(spectral_norm(sys.B), pole);
  double dist = std::numeric_limits<double>::infinity();
  for (const Complex& l : sys.spectral.eigenvalues) dist = std::min(dist, std::abs(-l - pole));
  const double rel = dist / scale;
  if (rel <= sys.tol.cluster_tol) {
    throw Error(ErrorCode::PoleOnSpectrum, "2/tau is an eigenvalue of -B", rel);
  }
  CayleyPair pair;
  pair.tau = tau;
  pair.continuous = sys;
  pair.pole_distance = rel;
  if (rel <= kWarningFactor * sys.tol.cluster_tol) {
    std::ostringstream msg;
    msg << "2/tau is within relative distance " << rel << " of the spectrum of -B";
    pair.warning = msg.str();
  }
  pair.discrete = certify_semicontractive(scaled_cayley(-sys.B, tau), sys.tol);
  return pair;
}

ContinuousSystem cayley_inverse(const DiscreteSystem& sys, double tau) {
  require_tau(tau);
  const double scale = std::max(1.0, sys.sigma_max);
  for (const Complex& l : sys.spectral.eigenvalues) {
    if (std::abs(l + 1.0) <= sys.tol.cluster_tol * scale) {
      throw Error(ErrorCode::PoleOnSpectrum, "-1 is an eigenvalue of B_d", std::abs(l + 1.0));
    }
  }
  return certify_semidissipative(-inverse_scaled_cayley(sys.B, tau), sys.tol);
}

IndexPreservationReport verify_index_preservation(const ContinuousSystem& sys, double tau) {
  const CayleyPair pair = cayley_forward(sys, tau);
  IndexPreservationReport r;
  r.tau = tau;
  r.warning = pair.warning;
  r.continuous_index = hypocoercivity_index(sys).index;
  r.discrete_index = hypocontractivity_index(pair.discrete).index;
  r.pass = r.continuous_index == r.discrete_index;
  r.sigma_max_discrete = pair.discrete.sigma_max;

  const Eigen::Index n = sys.dim();
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix& Bd = pair.discrete.B;
  const CMatrix& BH = sys.split.hermitian_part;
  const double scale = std::max(1.0, spectral_norm(BH));

  // I - M(A)^*M(A) = 4 (I - A^*)^{-1}(-A_H)(I - A)^{-1} with A = -(tau/2) B.
  const CMatrix A = -0.5 * tau * sys.B;
  const CMatrix R = (I - A).partialPivLu().solve(I);
  const CMatrix rhs_ii = 4.0 * R.adjoint() * (-hermitian_part(A)) * R;
  r.residual_discrete = spectral_norm(I - Bd.adjoint() * Bd - rhs_ii) / scale;

  // -(M^{-1}(B_d))_H = (B_d^* + I)^{-1}(I - B_d^*B_d)(B_d + I)^{-1}, where
  // M^{-1}(B_d) = -(tau/2) B.
  const CMatrix P = (Bd + I).partialPivLu().solve(I);
  const CMatrix rhs_i = P.adjoint() * (I - Bd.adjoint() * Bd) * P;
  r.residual_continuous = spectral_norm(0.5 * tau * BH - rhs_i) / scale;

  const CMatrix back = -inverse_scaled_cayley(Bd, tau);
  r.roundtrip_residual = spectral_norm(back - sys.B) / std::max(spectral_norm(sys.B), 1e-300);
  return r;
}

}  // namespace hypokit
