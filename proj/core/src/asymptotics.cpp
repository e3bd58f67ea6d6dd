#include "hypokit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "hypokit/errors.hpp"

namespace hypokit {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kOnsetDropBelow = 1e-11;

void require_decreasing_positive(const std::vector<double>& grid, const char* what) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " values must be positive", grid[i]);
    }
    if (i > 0 && !(grid[i] < grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be strictly decreasing");
    }
  }
}

// Slope and intercept of the least-squares line y = c0 + c1 x.
std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  Eigen::MatrixXd A(x.size(), 2);
  Eigen::VectorXd b(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = x[i];
    b(i) = y[i];
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  return {c(0), c(1)};
}

}  // namespace

StencilWeights fornberg_weights(int order, int halfwidth) {
  if (order < 0 || halfwidth < 0) throw Error(ErrorCode::InvalidArgument, "order and halfwidth must be nonnegative");
  const int npts = 2 * halfwidth + 1;
  if (npts <= order) {
    throw Error(ErrorCode::InvalidArgument, "stencil with halfwidth " + std::to_string(halfwidth) +
                                                " is too short for derivative order " + std::to_string(order));
  }
  std::vector<int> x(npts);
  for (int i = 0; i < npts; ++i) x[i] = i - halfwidth;

  // Fornberg (1988) recursion at z = 0, exact in rationals.
  std::vector<std::vector<Rational>> c(npts, std::vector<Rational>(order + 1, Rational(0)));
  Rational c1 = 1;
  Rational c4 = x[0];
  c[0][0] = 1;
  for (int i = 1; i < npts; ++i) {
    const int mn = std::min(i, order);
    Rational c2 = 1;
    const Rational c5 = c4;
    c4 = x[i];
    for (int j = 0; j < i; ++j) {
      const Rational c3 = Rational(x[i] - x[j]);
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }

  StencilWeights w;
  w.order = order;
  w.halfwidth = halfwidth;
  w.offsets = x;
  for (int i = 0; i < npts; ++i) w.weights.push_back(static_cast<double>(c[i][order]));
  return w;
}

double GridFunction::at(int k) const {
  if (std::abs(k) > k_max) throw Error(ErrorCode::InvalidArgument, "grid index outside [-k_max, k_max]", k);
  if (k >= 0) return nonnegative[k];
  return 2.0 - nonnegative[-k];
}

GridFunction grid_function(const CayleyPair& pair, int k_max) {
  if (k_max < 0) throw Error(ErrorCode::InvalidArgument, "k_max must be nonnegative", k_max);
  GridFunction g;
  g.tau = pair.tau;
  g.k_max = k_max;
  g.nonnegative.push_back(1.0);
  CMatrix power = pair.discrete.B;
  for (int k = 1; k <= k_max; ++k) {
    g.nonnegative.push_back(spectral_norm(power));
    if (k < k_max) power = power * pair.discrete.B;
  }
  return g;
}

double apply_stencil(const StencilWeights& w, const GridFunction& g) {
  if (w.halfwidth > g.k_max) throw Error(ErrorCode::InvalidArgument, "stencil wider than the grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < w.offsets.size(); ++i) acc += w.weights[i] * g.at(w.offsets[i]);
  return acc;
}

double cayley_power_deficit(const CayleyPair& pair, int power) {
  if (power < 0) throw Error(ErrorCode::InvalidArgument, "power must be nonnegative", power);
  if (power == 0) return 0.0;
  const ContinuousSystem& sys = pair.continuous;
  const Eigen::Index n = sys.dim();
  const double tau = pair.tau;
  const CMatrix I = CMatrix::Identity(n, n);
  // I - (B_d^*)^p B_d^p = 2 tau sum_{j<p} (B_d^*)^j R^* B_H R B_d^j, R = (I + tau/2 B)^{-1}.
  const CMatrix R = (I + 0.5 * tau * sys.B).partialPivLu().solve(I);
  const CMatrix F = std::sqrt(2.0 * tau) * sys.sqrtBH * R;
  CMatrix L(power * n, n);
  CMatrix Bj = I;
  for (int j = 0; j < power; ++j) {
    L.middleRows(j * n, n) = F * Bj;
    Bj = Bj * pair.discrete.B;
  }
  const double smin = min_singular_value(L);
  const double s2 = std::min(1.0, smin * smin);
  return s2 / (1.0 + std::sqrt(1.0 - s2));
}

PeanoEstimate peano_estimate(const CayleyPair& pair, int m) {
  const IndexReport idx = hypocoercivity_index(pair.continuous);
  if (!idx.index || *idx.index != m) {
    throw Error(ErrorCode::IndexMismatch, "m = " + std::to_string(m) + " is not the hypocoercivity index (" +
                                              (idx.index ? std::to_string(*idx.index) : std::string("none")) + ")");
  }
  PeanoEstimate p;
  p.tau = pair.tau;
  p.m = m;
  const int a = 2 * m + 1;
  p.estimate = -cayley_power_deficit(pair, m + 1) / std::pow(pair.tau, a);

  const GridFunction g = grid_function(pair, m + 1);
  p.stencil_value = apply_stencil(fornberg_weights(a, m + 1), g);
  p.collapse_residual = std::abs(p.stencil_value - (g.at(m + 1) - 1.0));
  for (int j = 0; j <= 2 * m; ++j) {
    const double v = apply_stencil(fornberg_weights(j, (j + 1) / 2), g);
    p.lower_order.push_back(v);
    p.lower_order_residual = std::max(p.lower_order_residual, std::abs(v - (j == 0 ? 1.0 : 0.0)));
  }
  return p;
}

OnsetFit contraction_onset_expansion(const ContinuousSystem& sys, const std::vector<double>& tau_grid) {
  require_decreasing_positive(tau_grid, "tau grid");
  const IndexReport idx = hypocoercivity_index(sys);
  if (!idx.index) throw Error(ErrorCode::IndexMissing, "contraction onset needs a hypocoercivity index");
  OnsetFit fit;
  fit.index = *idx.index;
  const int a = 2 * fit.index + 1;
  std::vector<double> logt, logd, scaled;
  for (double tau : tau_grid) {
    const CayleyPair pair = cayley_forward(sys, tau);
    const double d = cayley_power_deficit(pair, fit.index + 1);
    if (!(d >= kOnsetDropBelow)) continue;
    fit.taus.push_back(tau);
    fit.deficits.push_back(d);
    logt.push_back(std::log(tau));
    logd.push_back(std::log(d));
    scaled.push_back(d / std::pow(tau, a));
  }
  fit.points_used = static_cast<int>(fit.taus.size());
  if (fit.points_used < 2) {
    throw Error(ErrorCode::DegenerateFit, "fewer than two tau values with 1 - phi above the drop threshold");
  }
  fit.slope = line_fit(logt, logd).second;
  // (1 - phi_{m+1})/tau^a = (2m+1)! c + O(tau); extrapolate to tau = 0.
  const double intercept = line_fit(fit.taus, scaled).first;
  fit.c_hat = intercept / boost::math::factorial<double>(static_cast<unsigned>(a));
  fit.reference_c = decay_constant(sys, idx).constant_c;
  fit.relative_error = std::abs(fit.c_hat / fit.reference_c - 1.0);
  return fit;
}

Lemma53Result lemma53_minimum(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative", m);
  if (m > 12) throw Error(ErrorCode::Conditioning, "lemma53_minimum supports m <= 12", m);
  Lemma53Result r;
  r.m = m;
  r.conditioning_warning = m > 8;
  const int N = m + 1;

  // Coefficients of (1 - z/2)/(1 + z/2) and 1/(1 + z/2), truncated at degree m.
  std::vector<double> a(N), g(N);
  for (int i = 0; i < N; ++i) {
    g[i] = std::pow(-0.5, i);
    a[i] = i == 0 ? 1.0 : 2.0 * std::pow(-0.5, i);
  }
  auto cauchy = [N](const std::vector<double>& p, const std::vector<double>& q) {
    std::vector<double> out(N, 0.0);
    for (int r = 0; r < N; ++r) {
      for (int i = 0; i <= r; ++i) out[r] += p[i] * q[r - i];
    }
    return out;
  };
  // w[j][r]: coefficient of z^r in (1 - z/2)^j/(1 + z/2)^{j+1}.
  std::vector<std::vector<double>> w;
  std::vector<double> cur = g;
  for (int j = 0; j < N; ++j) {
    w.push_back(cur);
    cur = cauchy(cur, a);
  }

  Eigen::MatrixXd Q(N, m);
  Eigen::VectorXd b(N);
  for (int j = 0; j < N; ++j) {
    b(j) = w[j][m];
    for (int k = 1; k <= m; ++k) Q(j, k - 1) = w[j][m - k];
  }
  if (m == 0) {
    r.min_value = b.squaredNorm();
    r.minimizer = RVector(0);
  } else {
    const Eigen::VectorXd lambda = Q.colPivHouseholderQr().solve(-b);
    r.min_value = (Q * lambda + b).squaredNorm();
    r.minimizer = lambda;
  }
  r.closed_form = 1.0 / boost::math::binomial_coefficient<double>(2 * m, m);
  return r;
}

}  // namespace hypokit
