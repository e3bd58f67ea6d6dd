#pragma once

namespace hypokit {

/// Numerical decision thresholds shared by every analysis.
///
/// All values are relative unless stated otherwise and must lie in (0, 1).
struct Tolerances {
  /// Relative singular-value cutoff for rank and kernel decisions.
  double rank_rel_tol = 1e-10;
  /// Negative eigenvalues of a Hermitian part down to -psd_rel_tol*||A|| are
  /// treated as roundoff and clamped to zero.
  double psd_rel_tol = 1e-12;
  /// A power norm below 1 - norm_plateau_tol counts as strict contraction.
  double norm_plateau_tol = 1e-9;
  /// Eigenvalues closer than cluster_tol*||A|| are merged into one cluster.
  double cluster_tol = 1e-8;

  /// Throws Error(InvalidArgument) unless every field lies in (0, 1).
  void validate() const;
};

}  // namespace hypokit
