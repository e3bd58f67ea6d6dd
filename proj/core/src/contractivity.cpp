#include "hypokit/contractivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypokit/errors.hpp"

namespace hypokit {

DiscreteSystem certify_semicontractive(const CMatrix& B, const Tolerances& tol) {
  tol.validate();
  require_square(B, "certify_semicontractive");
  require_finite(B, "certify_semicontractive");
  DiscreteSystem sys;
  sys.B = B;
  sys.tol = tol;
  sys.singular_values = singular_values(B);
  sys.sigma_max = sys.singular_values(0);
  if (sys.sigma_max > 1.0 + tol.psd_rel_tol) {
    throw Error(ErrorCode::NotSemiContractive,
                "||B|| = " + std::to_string(sys.sigma_max) + " exceeds 1 by " + std::to_string(sys.sigma_max - 1.0),
                sys.sigma_max);
  }
  sys.spectral = eigendata(B, tol);
  const double scale = std::max(1.0, sys.sigma_max);
  for (const auto& c : sys.spectral.clusters) {
    if (std::abs(c.value - 1.0) <= tol.cluster_tol * scale) {
      throw Error(ErrorCode::UnitEigenvalue, "1 is an eigenvalue of B", std::abs(c.value - 1.0));
    }
  }
  return sys;
}

IndexReport hypocontractivity_index(const DiscreteSystem& sys, std::optional<int> m_max) {
  const Eigen::Index n = sys.dim();
  const int cap = m_max.value_or(static_cast<int>(n) - 1);
  if (cap < 0) throw Error(ErrorCode::InvalidArgument, "m_max must be nonnegative");

  IndexReport report;
  report.discrete = true;
  report.tol = sys.tol;
  const double plateau = 1.0 - sys.tol.norm_plateau_tol;
  // sum_{j<=m} (B^*)^j (I - B^*B) B^j telescopes to I - (B^*)^{m+1}B^{m+1}, so
  // the plateau threshold on norms maps to this threshold on lambda_min.
  const double gram_threshold = 1.0 - plateau * plateau;

  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix D = hermitian_part(I - sys.B.adjoint() * sys.B);
  CMatrix power = I;  // B^j
  CMatrix G = CMatrix::Zero(n, n);
  for (int m = 0; m <= cap; ++m) {
    G += power.adjoint() * D * power;
    G = hermitian_part(G);
    power = power * sys.B;  // B^{m+1}
    const double norm_next = spectral_norm(power);
    report.power_norms.push_back(norm_next);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(G, Eigen::EigenvaluesOnly);
    const RVector& ev = es.eigenvalues();
    report.per_level_lambda_min.push_back(ev(0));
    int kdim = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) <= gram_threshold) ++kdim;
    }
    report.kernel_dims.push_back(kdim);

    const bool norm_ok = norm_next < plateau;
    const bool gram_ok = ev(0) > gram_threshold;
    if (norm_ok != gram_ok) {
      throw Error(ErrorCode::CriterionMismatch,
                  "norm plateau and Gramian criteria disagree at level " + std::to_string(m) + " (||B^" +
                      std::to_string(m + 1) + "|| = " + std::to_string(norm_next) +
                      ", lambda_min = " + std::to_string(ev(0)) + ")",
                  norm_next);
    }
    if (norm_ok) {
      report.index = m;
      report.kappa = ev(0);
      report.kappa_identity_residual = std::abs(ev(0) - (1.0 - norm_next * norm_next));
      return report;
    }
  }
  return report;
}

}  // namespace hypokit
