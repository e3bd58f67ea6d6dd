#pragma once

// Dense complex linear algebra used by every analysis in hypokit.
//
// Everything is stored as std::complex<double>, also for real input: the
// eigenvalues of a real system matrix are generically complex, and the
// Hermitian/skew split is defined over C anyway.

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hypokit/tolerances.hpp"

namespace hypokit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// B = B_H - B_S with B_H Hermitian and B_S skew-Hermitian.
struct HermitianSplit {
  CMatrix hermitian_part;
  CMatrix skew_part;
};

/// A group of numerically coincident eigenvalues.
struct EigenCluster {
  Complex value;       // cluster mean
  int algebraic = 0;   // number of eigenvalues in the cluster
  int geometric = 0;   // dim ker(A - value*I)
  bool defective() const { return geometric < algebraic; }
};

struct SpectralData {
  std::vector<Complex> eigenvalues;
  std::vector<EigenCluster> clusters;
  double spectral_abscissa_of_minus_B = 0.0;  // max Re(-lambda)
  double spectral_radius = 0.0;               // max |lambda|
};

void require_square(const CMatrix& A, std::string_view what);
void require_finite(const CMatrix& A, std::string_view what);

HermitianSplit hermitian_split(const CMatrix& B);
/// (A + A^*)/2, Hermitian to the last bit.
CMatrix hermitian_part(const CMatrix& A);

/// Hermitian PSD square root. Eigenvalues in [-psd_rel_tol*||A||, 0) are
/// clamped; anything more negative raises NotPSD.
CMatrix psd_sqrt(const CMatrix& A, const Tolerances& tol = {});

/// e^A by scaling and squaring with a diagonal Pade approximant.
CMatrix expm(const CMatrix& A);

double spectral_norm(const CMatrix& A);
RVector singular_values(const CMatrix& A);
double min_singular_value(const CMatrix& A);
/// sigma_max / sigma_min; +inf for singular input.
double condition_number(const CMatrix& A);

/// Extreme eigenvalues of a Hermitian matrix (only the lower triangle is read).
double lambda_min_hermitian(const CMatrix& A);
double lambda_max_hermitian(const CMatrix& A);

/// Number of singular values above rel_cutoff * sigma_max.
int numerical_rank(const CMatrix& A, double rel_cutoff);

/// Orthonormal basis (as columns) of {x : ||Ax|| <= rel_cutoff*sigma_max(A)*||x||}.
/// Returns an n x 0 matrix when the kernel is trivial.
CMatrix nullspace_basis(const CMatrix& A, double rel_cutoff);
CMatrix nullspace_basis(const CMatrix& A, const Tolerances& tol);

/// Eigenvalues with multiplicity data. Eigenvalues within cluster_tol*||A|| are
/// clustered; the geometric multiplicity of a cluster is the kernel dimension of
/// A - mean*I at rank_rel_tol.
SpectralData eigendata(const CMatrix& A, const Tolerances& tol = {});

/// Solves A^* X + X A = -Q for Hermitian X (Bartels-Stewart on the complex Schur
/// form). A must be stable (all Re(lambda) < 0) and Q Hermitian positive definite.
CMatrix solve_lyapunov(const CMatrix& A, const CMatrix& Q, const Tolerances& tol = {});

/// Solves X - A^* X A = Q (discrete Lyapunov / Stein equation). Requires
/// rho(A) < 1 and Q Hermitian positive definite.
CMatrix solve_stein(const CMatrix& A, const CMatrix& Q, const Tolerances& tol = {});

/// Solves T11 Y - Y T22 = C for upper-triangular T11, T22 with disjoint spectra.
CMatrix solve_triangular_sylvester(const CMatrix& T11, const CMatrix& T22, const CMatrix& C);

/// Complex Schur form A = U T U^* with the eigenvalues selected by `leading`
/// moved to the top-left block (in their original relative order).
struct OrderedSchur {
  CMatrix U;
  CMatrix T;
  int leading_count = 0;
};
OrderedSchur ordered_schur(const CMatrix& A, const std::vector<bool>& leading_mask_of_diagonal);
/// Unordered complex Schur form.
OrderedSchur complex_schur(const CMatrix& A);
/// Stable sort of the diagonal of an existing Schur form by integer key
/// (smallest first) using adjacent swaps; entries with equal keys never swap.
/// leading_count is set to the number of entries with the smallest key.
OrderedSchur sort_schur(OrderedSchur s, const std::vector<int>& keys);

/// Integer powers B^0..B^count-1, computed by repeated multiplication.
std::vector<CMatrix> matrix_powers(const CMatrix& B, int count);

}  // namespace hypokit
