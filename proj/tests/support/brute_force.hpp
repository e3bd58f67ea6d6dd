#pragma once

#include <random>

#include "hypokit/linalg.hpp"

namespace hypokit::testing {

struct BruteForceMin {
  double sampled = 0.0;   // best of the random unit vectors
  double polished = 0.0;  // after gradient descent on the sphere from the best sample
  int kernel_dim = 0;
};

/// min ||sqrt(B_H) B^m y||^2 over unit y in the joint kernel of sqrt(B_H) B^p, p < m.
/// The kernel comes from an eigendecomposition of the partial Gramian, the
/// minimum from uniform sampling of the complex unit sphere, then a projected
/// gradient polish of the best sample.
inline BruteForceMin brute_force_min_value(const CMatrix& B, int m, int samples, std::uint64_t seed) {
  const Eigen::Index n = B.rows();
  const CMatrix BH = (B + B.adjoint()) * 0.5;
  CMatrix gram = CMatrix::Zero(n, n);
  CMatrix P = CMatrix::Identity(n, n);
  for (int p = 0; p < m; ++p) {
    gram += P.adjoint() * BH * P;
    P = P * B;
  }
  // P = B^m.
  CMatrix Q;
  if (m == 0) {
    Q = CMatrix::Identity(n, n);
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
    const double cut = 1e-10 * es.eigenvalues().cwiseAbs().maxCoeff();
    int k = 0;
    while (k < n && es.eigenvalues()(k) <= cut) ++k;
    Q = es.eigenvectors().leftCols(k);
  }
  const CMatrix M = Q.adjoint() * P.adjoint() * BH * P * Q;  // k x k Hermitian
  const Eigen::Index k = M.rows();

  BruteForceMin out;
  out.kernel_dim = static_cast<int>(k);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector best;
  double best_val = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    CVector y(k);
    for (Eigen::Index i = 0; i < k; ++i) y(i) = Complex(normal(rng), normal(rng));
    y /= y.norm();
    const double v = y.dot(M * y).real();
    if (v < best_val) {
      best_val = v;
      best = y;
    }
  }
  out.sampled = best_val;

  const double step = 1.0 / std::max(M.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  CVector y = best;
  for (int it = 0; it < 20000; ++it) {
    const double v = y.dot(M * y).real();
    const CVector grad = M * y - v * y;
    if (grad.norm() < 1e-15) break;
    y -= step * grad;
    y /= y.norm();
  }
  out.polished = y.dot(M * y).real();
  return out;
}

}  // namespace hypokit::testing
