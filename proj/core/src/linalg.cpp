#include "hypokit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include <unsupported/Eigen/MatrixFunctions>

#include "hypokit/errors.hpp"

namespace hypokit {

void require_square(const CMatrix& A, std::string_view what) {
  if (A.rows() != A.cols() || A.rows() == 0) {
    throw Error(ErrorCode::Dimension, std::string(what) + ": expected a non-empty square matrix, got " +
                                          std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
}

void require_finite(const CMatrix& A, std::string_view what) {
  if (!A.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": matrix has non-finite entries");
  }
}

CMatrix hermitian_part(const CMatrix& A) {
  // (a_ij + conj a_ji)/2 and (a_ji + conj a_ij)/2 are conjugates of each other
  // in floating point, so the result is exactly Hermitian.
  CMatrix H = (A + A.adjoint()) * 0.5;
  for (Eigen::Index i = 0; i < H.rows(); ++i) H(i, i) = Complex(H(i, i).real(), 0.0);
  return H;
}

HermitianSplit hermitian_split(const CMatrix& B) {
  require_square(B, "hermitian_split");
  require_finite(B, "hermitian_split");
  HermitianSplit split;
  split.hermitian_part = hermitian_part(B);
  split.skew_part = (B.adjoint() - B) * 0.5;
  return split;
}

CMatrix psd_sqrt(const CMatrix& A, const Tolerances& tol) {
  require_square(A, "psd_sqrt");
  require_finite(A, "psd_sqrt");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A));
  const RVector& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const double floor = -tol.psd_rel_tol * scale;
  if (ev(0) < floor) {
    throw Error(ErrorCode::NotPSD,
                "psd_sqrt: eigenvalue " + std::to_string(ev(0)) + " is below -psd_rel_tol*||A||", ev(0));
  }
  RVector root = ev.cwiseMax(0.0).cwiseSqrt();
  CMatrix S = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
  return hermitian_part(S);
}

CMatrix expm(const CMatrix& A) {
  require_square(A, "expm");
  require_finite(A, "expm");
  if (A.isZero(0.0)) return CMatrix::Identity(A.rows(), A.cols());
  return A.exp();
}

RVector singular_values(const CMatrix& A) {
  if (A.size() == 0) return RVector();
  Eigen::JacobiSVD<CMatrix> svd(A);
  return svd.singularValues();
}

double spectral_norm(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  return singular_values(A)(0);
}

double min_singular_value(const CMatrix& A) {
  RVector s = singular_values(A);
  if (s.size() == 0) return 0.0;
  if (A.cols() > A.rows()) return 0.0;  // wide matrices have a nontrivial kernel
  return s(s.size() - 1);
}

double condition_number(const CMatrix& A) {
  RVector s = singular_values(A);
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double lambda_min_hermitian(const CMatrix& A) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double lambda_max_hermitian(const CMatrix& A) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

int numerical_rank(const CMatrix& A, double rel_cutoff) {
  RVector s = singular_values(A);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_cutoff * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++r;
  }
  return r;
}

CMatrix nullspace_basis(const CMatrix& A, double rel_cutoff) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double cut = s.size() > 0 ? rel_cutoff * s(0) : 0.0;
  Eigen::Index rank = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > cut) ++rank;
    }
  }
  return svd.matrixV().rightCols(n - rank);
}

CMatrix nullspace_basis(const CMatrix& A, const Tolerances& tol) {
  return nullspace_basis(A, tol.rank_rel_tol);
}

namespace {

int kernel_dimension_at(const CMatrix& A, Complex shift, double rel_cutoff) {
  CMatrix M = A;
  M.diagonal().array() -= shift;
  // The cutoff is relative to ||A||, not to ||A - shift*I||, so a genuinely
  // nonsingular shifted matrix with tiny norm is not mistaken for a kernel.
  const double scale = std::max(spectral_norm(A), std::abs(shift));
  RVector s = singular_values(M);
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= rel_cutoff * scale) ++dim;
  }
  return dim;
}

// Eigenvalues of a Jordan block of size k split by roughly eps^(1/k) under
// roundoff. Clusters closer than this radius are merged when the merged mean is
// still a numerical eigenvalue, which separates split Jordan blocks from
// genuinely distinct eigenvalues.
constexpr double kDefectMergeRadius = 1e-3;

}  // namespace

SpectralData eigendata(const CMatrix& A, const Tolerances& tol) {
  require_square(A, "eigendata");
  require_finite(A, "eigendata");
  Eigen::ComplexEigenSolver<CMatrix> es(A, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::Spectrum, "eigendata: eigenvalue iteration did not converge");
  }
  SpectralData data;
  const Eigen::Index n = A.rows();
  data.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);

  const double norm = spectral_norm(A);
  const double scale = norm > 0.0 ? norm : 1.0;

  // Single-linkage clustering at radius cluster_tol*||A||.
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  auto find = [&](int i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(data.eigenvalues[i] - data.eigenvalues[j]) <= tol.cluster_tol * scale) {
        label[find(static_cast<int>(j))] = find(static_cast<int>(i));
      }
    }
  }

  auto group_mean = [&](const std::vector<int>& members) {
    Complex s = 0.0;
    for (int k : members) s += data.eigenvalues[k];
    return s / static_cast<double>(members.size());
  };

  std::vector<std::vector<int>> groups;
  {
    std::vector<int> root_to_group(n, -1);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int r = find(static_cast<int>(i));
      if (root_to_group[r] < 0) {
        root_to_group[r] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[root_to_group[r]].push_back(static_cast<int>(i));
    }
  }

  // Merge pass for roundoff-split defective eigenvalues, nearest pairs first.
  bool merged = true;
  while (merged && groups.size() > 1) {
    merged = false;
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const double d = std::abs(group_mean(groups[i]) - group_mean(groups[j]));
        if (d <= kDefectMergeRadius * scale) pairs.emplace_back(d, i, j);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [d, i, j] : pairs) {
      std::vector<int> candidate = groups[i];
      candidate.insert(candidate.end(), groups[j].begin(), groups[j].end());
      const int geo = kernel_dimension_at(A, group_mean(candidate), tol.rank_rel_tol);
      if (geo >= 1 && geo < static_cast<int>(candidate.size())) {
        groups[i] = std::move(candidate);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
        break;
      }
    }
  }

  for (const auto& g : groups) {
    EigenCluster c;
    c.value = group_mean(g);
    c.algebraic = static_cast<int>(g.size());
    c.geometric = std::min(c.algebraic, std::max(1, kernel_dimension_at(A, c.value, tol.rank_rel_tol)));
    data.clusters.push_back(c);
  }

  data.spectral_abscissa_of_minus_B = -std::numeric_limits<double>::infinity();
  data.spectral_radius = 0.0;
  for (const Complex& l : data.eigenvalues) {
    data.spectral_abscissa_of_minus_B = std::max(data.spectral_abscissa_of_minus_B, -l.real());
    data.spectral_radius = std::max(data.spectral_radius, std::abs(l));
  }
  return data;
}

OrderedSchur complex_schur(const CMatrix& A) {
  require_square(A, "complex_schur");
  Eigen::ComplexSchur<CMatrix> schur(A);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::Spectrum, "complex_schur: QR iteration did not converge");
  }
  OrderedSchur out;
  out.U = schur.matrixU();
  out.T = schur.matrixT();
  out.T.triangularView<Eigen::StrictlyLower>().setZero();
  return out;
}

namespace {

// Swap the adjacent diagonal entries k and k+1 of the upper-triangular T with a
// unitary rotation, updating U so that A = U T U^* is preserved.
void swap_adjacent(CMatrix& T, CMatrix& U, Eigen::Index k) {
  const Complex t11 = T(k, k);
  const Complex t22 = T(k + 1, k + 1);
  const Complex t12 = T(k, k + 1);
  const Complex v1 = t12;
  const Complex v2 = t22 - t11;
  const double r = std::hypot(std::abs(v1), std::abs(v2));
  if (r == 0.0) return;  // equal eigenvalues with zero coupling: nothing to do
  const Complex c = v1 / r;
  const Complex s = v2 / r;
  Eigen::Matrix2cd Q;
  Q << c, -std::conj(s), s, std::conj(c);
  const Eigen::Index n = T.rows();
  T.block(k, 0, 2, n) = Q.adjoint() * T.block(k, 0, 2, n);
  T.block(0, k, n, 2) = T.block(0, k, n, 2) * Q;
  U.block(0, k, n, 2) = U.block(0, k, n, 2) * Q;
  T(k + 1, k) = 0.0;
  T(k, k) = t22;
  T(k + 1, k + 1) = t11;
}

}  // namespace

OrderedSchur sort_schur(OrderedSchur s, const std::vector<int>& keys) {
  const Eigen::Index n = s.T.rows();
  if (static_cast<Eigen::Index>(keys.size()) != n) {
    throw Error(ErrorCode::Dimension, "sort_schur: key count does not match matrix size");
  }
  std::vector<int> k = keys;
  for (Eigen::Index i = 1; i < n; ++i) {
    for (Eigen::Index j = i; j > 0 && k[j - 1] > k[j]; --j) {
      swap_adjacent(s.T, s.U, j - 1);
      std::swap(k[j - 1], k[j]);
    }
  }
  s.leading_count = n > 0 ? static_cast<int>(std::count(k.begin(), k.end(), k.front())) : 0;
  return s;
}

OrderedSchur ordered_schur(const CMatrix& A, const std::vector<bool>& leading_mask_of_diagonal) {
  OrderedSchur s = complex_schur(A);
  if (static_cast<Eigen::Index>(leading_mask_of_diagonal.size()) != s.T.rows()) {
    throw Error(ErrorCode::Dimension, "ordered_schur: mask length does not match matrix size");
  }
  std::vector<int> keys;
  for (bool lead : leading_mask_of_diagonal) keys.push_back(lead ? 0 : 1);
  const int leading = static_cast<int>(std::count(leading_mask_of_diagonal.begin(), leading_mask_of_diagonal.end(), true));
  s = sort_schur(std::move(s), keys);
  s.leading_count = leading;
  return s;
}

std::vector<CMatrix> matrix_powers(const CMatrix& B, int count) {
  std::vector<CMatrix> powers;
  if (count <= 0) return powers;
  powers.reserve(count);
  powers.push_back(CMatrix::Identity(B.rows(), B.cols()));
  for (int j = 1; j < count; ++j) powers.push_back(powers.back() * B);
  return powers;
}

}  // namespace hypokit
