#include "hypokit/lyapunov_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hypokit/cayley.hpp"
#include "hypokit/errors.hpp"

namespace hypokit {

namespace {

// Clusters within this relative distance of the dominant value are checked for
// defectiveness; split Jordan blocks land well inside it.
constexpr double kDominantDefectRadius = 1e-3;

struct BlockDiagonal {
  CMatrix W;                       // B = W diag(T_kk) W^{-1}
  CMatrix T;                       // block diagonal upper triangular
  std::vector<Eigen::Index> starts;  // block boundaries, starts.back() == n
};

// Sorts the Schur diagonal by key and removes the coupling between blocks of
// different keys with triangular Sylvester solves.
BlockDiagonal block_diagonalize(const CMatrix& B, const std::vector<int>& schur_keys, const OrderedSchur& schur) {
  std::vector<int> keys = schur_keys;
  OrderedSchur s = sort_schur(schur, keys);
  std::sort(keys.begin(), keys.end());
  const Eigen::Index n = B.rows();
  BlockDiagonal out;
  out.T = s.T;
  out.W = s.U;
  out.starts.push_back(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    if (keys[i] != keys[i - 1]) out.starts.push_back(i);
  }
  out.starts.push_back(n);
  for (std::size_t b = 0; b + 2 < out.starts.size(); ++b) {
    const Eigen::Index r0 = out.starts[b];
    const Eigen::Index r1 = out.starts[b + 1];
    const Eigen::Index p = r1 - r0;
    const Eigen::Index q = n - r1;
    const CMatrix Y = solve_triangular_sylvester(out.T.block(r0, r0, p, p), out.T.block(r1, r1, q, q),
                                                 -out.T.block(r0, r1, p, q));
    // W <- W [[I, Y], [0, I]] restricted to these rows/columns.
    out.W.middleCols(r1, q) += out.W.middleCols(r0, p) * Y;
    out.T.block(r0, r1, p, q).setZero();
  }
  return out;
}

double scale_of(const CMatrix& B) { return std::max(spectral_norm(B), std::numeric_limits<double>::min()); }

void finish(TransformResult& r, const CMatrix& B) {
  const double xnorm = spectral_norm(r.X);
  r.X = hermitian_part(r.X / xnorm);
  if (r.witness) *r.witness *= std::sqrt(xnorm);
  r.sqrtX = psd_sqrt(r.X);
  const Eigen::Index n = B.rows();
  const CMatrix inv_sqrt = r.sqrtX.partialPivLu().solve(CMatrix::Identity(n, n));
  r.transformed = r.sqrtX * B * inv_sqrt;
  r.cond_sqrtX = condition_number(r.sqrtX);
}

double witness_scale(const CVector& z, const CMatrix& X) { return std::sqrt(std::abs(z.dot(X * z))); }

std::vector<int> dominant_keys(const OrderedSchur& s, const std::vector<bool>& dominant, double radius) {
  // Dominant diagonal entries are grouped by value, everything else gets the last key.
  const Eigen::Index n = s.T.rows();
  std::vector<int> keys(n, -1);
  std::vector<Complex> reps;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!dominant[i]) continue;
    const Complex v = s.T(i, i);
    int found = -1;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (std::abs(reps[r] - v) <= radius) {
        found = static_cast<int>(r);
        break;
      }
    }
    if (found < 0) {
      found = static_cast<int>(reps.size());
      reps.push_back(v);
    }
    keys[i] = found;
  }
  for (auto& k : keys) {
    if (k < 0) k = static_cast<int>(reps.size());
  }
  return keys;
}

double resolve_epsilon(std::optional<double> epsilon, bool defective, bool marginal, double default_eps) {
  if (epsilon && !(*epsilon >= 0.0 && std::isfinite(*epsilon))) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be finite and nonnegative", *epsilon);
  }
  if (marginal) {
    if (!epsilon || *epsilon <= 0.0) {
      throw Error(ErrorCode::EpsilonRequired, "marginally stable system: an explicit epsilon > 0 is required");
    }
    return *epsilon;
  }
  if (defective) {
    if (!epsilon) return default_eps;
    if (*epsilon == 0.0) {
      throw Error(ErrorCode::DefectiveNeedsEpsilon, "a dominant eigenvalue is defective; epsilon must be positive");
    }
  }
  return epsilon.value_or(0.0);
}

}  // namespace

TransformResult maximally_coercive(const CMatrix& B, std::optional<double> epsilon, const Tolerances& tol) {
  tol.validate();
  require_square(B, "maximally_coercive");
  require_finite(B, "maximally_coercive");
  const Eigen::Index n = B.rows();
  const double scale = scale_of(B);
  const OrderedSchur schur = complex_schur(B);

  double alpha = std::numeric_limits<double>::infinity();  // min Re(lambda(B)) = -mu
  for (Eigen::Index i = 0; i < n; ++i) alpha = std::min(alpha, schur.T(i, i).real());
  const double tight = tol.cluster_tol * scale;
  if (alpha < -tight) {
    throw Error(ErrorCode::NotStable, "-B has spectral abscissa " + std::to_string(-alpha) + " > 0", -alpha);
  }

  TransformResult r;
  r.target = alpha;
  r.marginal = std::abs(alpha) <= tight;
  const SpectralData spec = eigendata(B, tol);
  for (const auto& c : spec.clusters) {
    if (c.value.real() <= alpha + kDominantDefectRadius * scale && c.defective()) r.defective = true;
  }
  r.epsilon = resolve_epsilon(epsilon, r.defective, r.marginal, 1e-2 * std::abs(alpha));

  const CMatrix I = CMatrix::Identity(n, n);
  if (r.defective || r.marginal) {
    // (B - (alpha - eps) I)^* X + X (B - (alpha - eps) I) = ||B|| I.
    const CMatrix A = -(B - (alpha - r.epsilon) * I);
    r.X = solve_lyapunov(A, scale * I, tol);
  } else {
    std::vector<bool> dominant(n);
    for (Eigen::Index i = 0; i < n; ++i) dominant[i] = schur.T(i, i).real() <= alpha + tight;
    const BlockDiagonal bd = block_diagonalize(B, dominant_keys(schur, dominant, tight), schur);
    const Eigen::Index p = std::count(dominant.begin(), dominant.end(), true);  // dominant blocks come first
    const Eigen::Index q = n - p;
    CMatrix Xblk = CMatrix::Identity(n, n);
    if (q > 0) {
      CMatrix T22 = bd.T.block(p, p, q, q);
      T22.diagonal().array() -= alpha;
      Xblk.block(p, p, q, q) = solve_lyapunov(-T22, scale * CMatrix::Identity(q, q), tol);
    }
    const CMatrix Winv = bd.W.partialPivLu().solve(I);
    r.X = Winv.adjoint() * Xblk * Winv;
    const CVector z = bd.W.col(0);
    r.witness = z / witness_scale(z, r.X);
  }
  finish(r, B);

  r.achieved = lambda_min_hermitian(hermitian_part(r.transformed));
  const CMatrix L = r.X * B + B.adjoint() * r.X;
  r.lyapunov_residual = lambda_min_hermitian(hermitian_part(L - 2.0 * (alpha - r.epsilon) * r.X));
  if (r.witness) {
    const CVector& z = *r.witness;
    r.witness_residual = std::abs(z.dot((L - 2.0 * alpha * r.X) * z));
  }
  return r;
}

TransformResult maximally_contractive(const CMatrix& B, std::optional<double> epsilon, const Tolerances& tol) {
  tol.validate();
  require_square(B, "maximally_contractive");
  require_finite(B, "maximally_contractive");
  const Eigen::Index n = B.rows();
  const OrderedSchur schur = complex_schur(B);

  double rho = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) rho = std::max(rho, std::abs(schur.T(i, i)));
  const double tight = tol.cluster_tol * std::max(1.0, rho);
  if (rho > 1.0 + tight) {
    throw Error(ErrorCode::NotStable, "spectral radius " + std::to_string(rho) + " exceeds 1", rho);
  }

  TransformResult r;
  r.discrete = true;
  r.target = rho;
  r.marginal = std::abs(rho - 1.0) <= tight;
  const SpectralData spec = eigendata(B, tol);
  const double dradius = kDominantDefectRadius * std::max(1.0, scale_of(B));
  for (const auto& c : spec.clusters) {
    if (std::abs(c.value) >= rho - dradius && c.defective()) r.defective = true;
  }
  r.epsilon = resolve_epsilon(epsilon, r.defective, r.marginal, 1e-2 * (1.0 - rho));

  const CMatrix I = CMatrix::Identity(n, n);
  if (r.defective || r.marginal) {
    // X - A^*XA = I with A = B/sqrt(rho^2 + eps), i.e. (rho^2+eps)X - B^*XB > 0.
    r.X = solve_stein(B / std::sqrt(rho * rho + r.epsilon), I, tol);
  } else {
    std::vector<bool> dominant(n);
    for (Eigen::Index i = 0; i < n; ++i) dominant[i] = std::abs(schur.T(i, i)) >= rho - tight;
    const BlockDiagonal bd = block_diagonalize(B, dominant_keys(schur, dominant, tight), schur);
    const Eigen::Index p = std::count(dominant.begin(), dominant.end(), true);
    const Eigen::Index q = n - p;
    CMatrix Xblk = CMatrix::Identity(n, n);
    if (q > 0) {
      const CMatrix T22 = bd.T.block(p, p, q, q) / rho;
      Xblk.block(p, p, q, q) = solve_stein(T22, CMatrix::Identity(q, q), tol);
    }
    const CMatrix Winv = bd.W.partialPivLu().solve(I);
    r.X = Winv.adjoint() * Xblk * Winv;
    const CVector z = bd.W.col(0);
    r.witness = z / witness_scale(z, r.X);
  }
  finish(r, B);

  r.achieved = spectral_norm(r.transformed);
  const CMatrix BXB = B.adjoint() * r.X * B;
  r.lyapunov_residual = lambda_min_hermitian(hermitian_part((rho * rho + r.epsilon) * r.X - BXB));
  if (r.witness) {
    const CVector& z = *r.witness;
    r.witness_residual = std::abs(z.dot((rho * rho * r.X - BXB) * z));
  }
  return r;
}

AmplificationReport error_amplification_report(const CMatrix& B, const CMatrix& X, double t_final, double tau) {
  require_square(B, "error_amplification_report");
  require_square(X, "error_amplification_report");
  if (X.rows() != B.rows()) throw Error(ErrorCode::Dimension, "X and B differ in size");
  if (!(tau > 0.0) || !(t_final > 0.0)) throw Error(ErrorCode::InvalidArgument, "tau and t_final must be positive");
  const CMatrix XH = hermitian_part(X);
  if ((X - XH).norm() > 1e-12 * std::max(1.0, spectral_norm(X))) {
    throw Error(ErrorCode::NotPD, "X is not Hermitian");
  }
  const double xmin = lambda_min_hermitian(XH);
  if (!(xmin > 0.0)) throw Error(ErrorCode::NotPD, "X is not positive definite", xmin);

  const Eigen::Index n = B.rows();
  const CMatrix I = CMatrix::Identity(n, n);
  AmplificationReport rep;
  rep.tau = tau;
  rep.t_final = t_final;
  const CMatrix sqrtX = psd_sqrt(XH);
  const CMatrix inv_sqrtX = sqrtX.partialPivLu().solve(I);
  rep.cond_sqrtX = condition_number(sqrtX);

  const CMatrix RB = (I + 0.5 * tau * B).partialPivLu().solve(B);
  rep.lipschitz_x = spectral_norm(RB);
  rep.lipschitz_y = spectral_norm(sqrtX * RB * inv_sqrtX);
  rep.lipschitz_y_bound = rep.cond_sqrtX * rep.lipschitz_x;

  auto run = [&](double h, std::vector<double>* times, std::vector<double>* errors) {
    const int steps = static_cast<int>(std::lround(t_final / h));
    const CMatrix Bd = scaled_cayley(-B, h);
    CMatrix U = I;
    double err = 0.0;
    for (int i = 0; i <= steps; ++i) {
      const double t = i * h;
      err = spectral_norm(expm(-t * B) - U);
      if (times) times->push_back(t);
      if (errors) errors->push_back(err);
      U = Bd * U;
    }
    return err;
  };

  rep.final_error = run(tau, &rep.times, &rep.errors);
  rep.final_error_half_step = run(0.5 * tau, nullptr, nullptr);
  rep.order_ratio = rep.final_error / rep.final_error_half_step;

  // One step at tau against two at tau/2: the difference is 3/4 of the local error.
  const CMatrix Bd = scaled_cayley(-B, tau);
  const CMatrix Bh = scaled_cayley(-B, 0.5 * tau);
  rep.local_error = (4.0 / 3.0) * spectral_norm(Bd - Bh * Bh);
  double growth = 0.0;
  for (double t : rep.times) growth = std::max(growth, spectral_norm(expm(-t * B)));
  rep.theta_max = rep.local_error / tau * growth;

  rep.bound_dominates = true;
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    const double t = rep.times[i];
    const double bound = rep.cond_sqrtX * (t * rep.theta_max) * std::exp(rep.lipschitz_x * t);
    rep.bounds.push_back(bound);
    if (rep.errors[i] > bound) rep.bound_dominates = false;
  }
  return rep;
}

}  // namespace hypokit
