#include "hypokit/coercivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "hypokit/errors.hpp"
#include "hypokit/hilbert_form.hpp"

namespace hypokit {

namespace {

// Stacked Kalman rank decisions compare singular values, the Gramian test
// compares their squares.
double stacked_cutoff(const Tolerances& tol) { return std::sqrt(tol.rank_rel_tol); }

CMatrix vstack(const CMatrix& top, const CMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  CMatrix out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

constexpr double kGramSwitch = 1e-6;
constexpr int kGaussNodes = 20;

}  // namespace

ContinuousSystem certify_semidissipative(const CMatrix& B, const Tolerances& tol) {
  tol.validate();
  require_square(B, "certify_semidissipative");
  require_finite(B, "certify_semidissipative");
  ContinuousSystem sys;
  sys.B = B;
  sys.tol = tol;
  sys.split = hermitian_split(B);

  Eigen::SelfAdjointEigenSolver<CMatrix> es(sys.split.hermitian_part, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  if (lmin < -tol.psd_rel_tol * scale) {
    throw Error(ErrorCode::NotSemiDissipative,
                "Hermitian part has eigenvalue " + std::to_string(lmin) + " < 0", lmin);
  }
  sys.sqrtBH = psd_sqrt(sys.split.hermitian_part, tol);
  sys.spectral = eigendata(B, tol);

  const double bnorm = spectral_norm(B);
  for (const auto& c : sys.spectral.clusters) {
    if (std::abs(c.value) <= tol.cluster_tol * std::max(bnorm, 1e-300)) {
      throw Error(ErrorCode::ZeroEigenvalue, "0 is an eigenvalue of B", std::abs(c.value));
    }
  }
  return sys;
}

IndexReport hypocoercivity_index(const ContinuousSystem& sys, std::optional<int> m_max) {
  const Eigen::Index n = sys.dim();
  const int cap = m_max.value_or(static_cast<int>(n) - 1);
  if (cap < 0) throw Error(ErrorCode::InvalidArgument, "m_max must be nonnegative");

  IndexReport report;
  report.tol = sys.tol;
  const CMatrix& BH = sys.split.hermitian_part;
  CMatrix power = CMatrix::Identity(n, n);
  CMatrix S = CMatrix::Zero(n, n);
  CMatrix stacked(0, n);
  for (int j = 0; j <= cap; ++j) {
    S += power.adjoint() * BH * power;
    S = hermitian_part(S);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(S, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    const double lmax = es.eigenvalues()(n - 1);
    report.per_level_lambda_min.push_back(lmin);

    stacked = vstack(stacked, sys.sqrtBH * power);
    const int rank = numerical_rank(stacked, stacked_cutoff(sys.tol));
    report.kernel_dims.push_back(static_cast<int>(n) - rank);

    const bool gram_ok = lmax > 0.0 && lmin > sys.tol.rank_rel_tol * lmax;
    const bool rank_ok = rank == n;
    if (gram_ok != rank_ok) {
      throw Error(ErrorCode::CriterionMismatch,
                  "Gramian and stacked-rank criteria disagree at level " + std::to_string(j) +
                      " (lambda_min/lambda_max = " + std::to_string(lmax > 0 ? lmin / lmax : 0.0) + ", rank " +
                      std::to_string(rank) + " of " + std::to_string(n) + ")",
                  lmax > 0 ? lmin / lmax : 0.0);
    }
    if (gram_ok) {
      report.index = j;
      report.kappa = lmin;
      return report;
    }
    power = power * sys.B;
  }
  return report;
}

DecayExpansion decay_constant(const ContinuousSystem& sys, const IndexReport& report) {
  if (!report.index) throw Error(ErrorCode::IndexMissing, "decay constant needs a hypocoercivity index");
  const int m = *report.index;
  const Eigen::Index n = sys.dim();

  CMatrix stacked(0, n);
  CMatrix power = CMatrix::Identity(n, n);
  for (int p = 0; p < m; ++p) {
    stacked = vstack(stacked, sys.sqrtBH * power);
    power = power * sys.B;
  }
  // power == B^m here.
  CMatrix Q = m == 0 ? CMatrix::Identity(n, n) : nullspace_basis(stacked, stacked_cutoff(sys.tol));
  if (Q.cols() == 0) {
    throw Error(ErrorCode::CriterionMismatch, "joint kernel below the index is trivial");
  }
  const CMatrix M = sys.sqrtBH * power * Q;
  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const Eigen::Index last = Q.cols() - 1;
  const double smin = last < s.size() ? s(last) : 0.0;

  DecayExpansion d;
  d.index = m;
  d.exponent_a = 2 * m + 1;
  d.min_value = smin * smin;
  d.minimizer = Q * svd.matrixV().col(last);
  d.minimizer /= d.minimizer.norm();
  d.prefactor = decay_prefactor(m);
  d.constant_c = d.prefactor * d.min_value;
  if (m > 0) {
    const double snorm = spectral_norm(stacked);
    CMatrix pw = CMatrix::Identity(n, n);
    double worst = 0.0;
    for (int p = 0; p < m; ++p) {
      worst = std::max(worst, (sys.sqrtBH * pw * d.minimizer).norm());
      pw = pw * sys.B;
    }
    d.kernel_residual = snorm > 0 ? worst / snorm : 0.0;
  }
  return d;
}

double propagator_norm(const ContinuousSystem& sys, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be finite and >= 0", t);
  if (t == 0.0) return 1.0;
  return spectral_norm(expm(-t * sys.B));
}

double propagator_deficit(const ContinuousSystem& sys, double t) {
  const double direct = 1.0 - propagator_norm(sys, t);
  if (direct >= kGramSwitch || t == 0.0) return direct;

  // I - E^*E = 2 int_0^t e^{-B^*s} B_H e^{-Bs} ds = L^*L.
  using Gauss = boost::math::quadrature::gauss<double, kGaussNodes>;
  const auto& nodes = Gauss::abscissa();
  const auto& weights = Gauss::weights();
  const Eigen::Index n = sys.dim();
  CMatrix L(0, n);
  auto add_node = [&](double x, double w) {
    const double s = 0.5 * t * (x + 1.0);
    const double ws = 0.5 * t * w;
    L = vstack(L, std::sqrt(2.0 * ws) * (sys.sqrtBH * expm(-s * sys.B)));
  };
  // Boost stores the nonnegative half of a symmetric rule.
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    add_node(nodes[i], weights[i]);
    if (nodes[i] != 0.0) add_node(-nodes[i], weights[i]);
  }
  const double smin = min_singular_value(L);
  const double s2 = std::min(1.0, smin * smin);
  return s2 / (1.0 + std::sqrt(1.0 - s2));
}

ShortTimeFit fit_short_time_expansion(const ContinuousSystem& sys, const std::vector<double>& t_grid) {
  if (t_grid.size() < 2) throw Error(ErrorCode::InvalidArgument, "t grid needs at least two points");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "t grid values must lie in (0, 1)", t_grid[i]);
    }
    if (i > 0 && !(t_grid[i] < t_grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "t grid must be strictly decreasing");
    }
  }
  std::vector<double> xs, ys;
  for (double t : t_grid) {
    const double d = propagator_deficit(sys, t);
    if (d > 0.0 && std::isfinite(std::log(d))) {
      xs.push_back(std::log(t));
      ys.push_back(std::log(d));
    }
  }
  if (xs.size() < 2) {
    throw Error(ErrorCode::DegenerateFit, "1 - Phi(t) vanishes on the grid; the flow is (numerically) isometric");
  }
  Eigen::MatrixXd A(xs.size(), 2);
  Eigen::VectorXd y(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = xs[i];
    y(i) = ys[i];
  }
  const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
  ShortTimeFit fit;
  fit.a_hat = coef(1);
  fit.c_hat = std::exp(coef(0));
  fit.points_used = static_cast<int>(xs.size());
  return fit;
}

std::vector<double> dyadic_grid(int first, int last) {
  std::vector<double> g;
  for (int k = first; k <= last; ++k) g.push_back(std::ldexp(1.0, -k));
  return g;
}

}  // namespace hypokit
