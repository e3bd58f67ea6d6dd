#include <cmath>
#include <string>

#include "hypokit/errors.hpp"
#include "hypokit/linalg.hpp"

namespace hypokit {

namespace {

void require_hermitian_pd(const CMatrix& Q, std::string_view what) {
  require_square(Q, what);
  require_finite(Q, what);
  const CMatrix H = hermitian_part(Q);
  const double scale = std::max(spectral_norm(Q), 1e-300);
  if ((Q - H).norm() > 1e-12 * scale) {
    throw Error(ErrorCode::NotPD, std::string(what) + ": right-hand side is not Hermitian");
  }
  const double lmin = lambda_min_hermitian(H);
  if (!(lmin > 0.0)) {
    throw Error(ErrorCode::NotPD, std::string(what) + ": right-hand side is not positive definite", lmin);
  }
}

}  // namespace

CMatrix solve_lyapunov(const CMatrix& A, const CMatrix& Q, const Tolerances& tol) {
  (void)tol;
  require_square(A, "solve_lyapunov");
  require_finite(A, "solve_lyapunov");
  if (Q.rows() != A.rows() || Q.cols() != A.cols()) {
    throw Error(ErrorCode::Dimension, "solve_lyapunov: A and Q differ in size");
  }
  require_hermitian_pd(Q, "solve_lyapunov");

  const OrderedSchur s = complex_schur(A);
  const CMatrix& T = s.T;
  const Eigen::Index n = T.rows();
  double max_re = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) max_re = std::max(max_re, T(i, i).real());
  if (!(max_re < 0.0)) {
    throw Error(ErrorCode::Spectrum, "solve_lyapunov: A is not stable (max Re lambda = " +
                                         std::to_string(max_re) + ")", max_re);
  }

  // T^* Y + Y T = -C column by column; T^* is lower triangular.
  const CMatrix C = s.U.adjoint() * Q * s.U;
  const CMatrix Tstar = T.adjoint();
  CMatrix Y = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector rhs = -C.col(j);
    for (Eigen::Index l = 0; l < j; ++l) rhs -= Y.col(l) * T(l, j);
    CMatrix M = Tstar;
    M.diagonal().array() += T(j, j);
    Y.col(j) = M.triangularView<Eigen::Lower>().solve(rhs);
  }
  return hermitian_part(s.U * Y * s.U.adjoint());
}

CMatrix solve_stein(const CMatrix& A, const CMatrix& Q, const Tolerances& tol) {
  (void)tol;
  require_square(A, "solve_stein");
  require_finite(A, "solve_stein");
  if (Q.rows() != A.rows() || Q.cols() != A.cols()) {
    throw Error(ErrorCode::Dimension, "solve_stein: A and Q differ in size");
  }
  require_hermitian_pd(Q, "solve_stein");

  const OrderedSchur s = complex_schur(A);
  const CMatrix& T = s.T;
  const Eigen::Index n = T.rows();
  double rho = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) rho = std::max(rho, std::abs(T(i, i)));
  if (!(rho < 1.0)) {
    throw Error(ErrorCode::Spectrum, "solve_stein: spectral radius " + std::to_string(rho) + " is not below 1", rho);
  }

  // Y - T^* Y T = C column by column.
  const CMatrix C = s.U.adjoint() * Q * s.U;
  const CMatrix Tstar = T.adjoint();
  CMatrix Y = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector acc = CVector::Zero(n);
    for (Eigen::Index l = 0; l < j; ++l) acc += Y.col(l) * T(l, j);
    CVector rhs = C.col(j) + Tstar * acc;
    CMatrix M = -T(j, j) * Tstar;
    M.diagonal().array() += 1.0;
    Y.col(j) = M.triangularView<Eigen::Lower>().solve(rhs);
  }
  return hermitian_part(s.U * Y * s.U.adjoint());
}

CMatrix solve_triangular_sylvester(const CMatrix& T11, const CMatrix& T22, const CMatrix& C) {
  const Eigen::Index p = T11.rows();
  const Eigen::Index q = T22.rows();
  if (C.rows() != p || C.cols() != q) {
    throw Error(ErrorCode::Dimension, "solve_triangular_sylvester: right-hand side has the wrong shape");
  }
  CMatrix Y = CMatrix::Zero(p, q);
  for (Eigen::Index j = 0; j < q; ++j) {
    CVector rhs = C.col(j);
    for (Eigen::Index l = 0; l < j; ++l) rhs += Y.col(l) * T22(l, j);
    CMatrix M = T11;
    M.diagonal().array() -= T22(j, j);
    for (Eigen::Index i = 0; i < p; ++i) {
      if (M(i, i) == Complex(0.0)) {
        throw Error(ErrorCode::Spectrum, "solve_triangular_sylvester: spectra of T11 and T22 intersect");
      }
    }
    Y.col(j) = M.triangularView<Eigen::Upper>().solve(rhs);
  }
  return Y;
}

}  // namespace hypokit
