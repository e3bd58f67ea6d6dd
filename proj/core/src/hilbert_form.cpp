#include "hypokit/hilbert_form.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "hypokit/errors.hpp"
#include "hypokit/random_systems.hpp"

namespace hypokit {

namespace {

using boost::multiprecision::cpp_int;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

cpp_int binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

Eigen::MatrixXd to_double(const RationalMatrix& A) {
  const Eigen::Index n = static_cast<Eigen::Index>(A.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) out(i, k) = static_cast<double>(A[i][k]);
  }
  return out;
}

// Solves A x = b exactly by Gaussian elimination.
std::vector<Rational> solve_exact(RationalMatrix A, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::Conditioning, "singular system in exact solve");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (A[r][col] == 0) continue;
      const Rational f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

}  // namespace

Eigen::MatrixXd HilbertForm::H_double() const { return to_double(H); }
Eigen::MatrixXd HilbertForm::coeff_double() const { return to_double(coeff); }

HilbertForm hilbert_form(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative", m);
  HilbertForm f;
  f.m = m;
  const int N = m + 1;
  f.H.assign(N, std::vector<Rational>(N));
  f.coeff.assign(N, std::vector<Rational>(N));
  f.diag_scaling.resize(N);
  for (int n = 0; n < N; ++n) {
    f.diag_scaling(n) = ((n % 2) ? -1.0 : 1.0) * static_cast<double>(factorial(n));
    for (int k = 0; k < N; ++k) {
      f.H[n][k] = Rational(1, n + k + 1);
      const Rational sign = ((n + k) % 2) ? -1 : 1;
      f.coeff[n][k] = sign * Rational(binomial(n + k, k), factorial(n + k + 1));
    }
  }
  return f;
}

bool congruence_holds(const HilbertForm& form) {
  const int N = form.m + 1;
  for (int n = 0; n < N; ++n) {
    const Rational dn = Rational(((n % 2) ? -1 : 1) * factorial(n));
    for (int k = 0; k < N; ++k) {
      const Rational dk = Rational(((k % 2) ? -1 : 1) * factorial(k));
      if (dn * form.coeff[n][k] * dk != form.H[n][k]) return false;
    }
  }
  return true;
}

Rational decay_prefactor_exact(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative", m);
  return Rational(cpp_int(1), factorial(2 * m + 1) * binomial(2 * m, m));
}

double decay_prefactor(int m) { return static_cast<double>(decay_prefactor_exact(m)); }

HilbertMin hilbert_min(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative", m);
  if (m > 8) throw Error(ErrorCode::Conditioning, "hilbert_min is limited to m <= 8", m);
  HilbertMin out;
  out.m = m;
  out.conditioning_warning = m > 6;
  out.value = decay_prefactor(m);

  // Minimize mu^T C mu with mu_m = 1 fixed; mu_n multiplies (tB)^{m-n}.
  const HilbertForm f = hilbert_form(m);
  if (m == 0) {
    out.solved = static_cast<double>(f.coeff[0][0]);
    return out;
  }
  RationalMatrix Cff(m, std::vector<Rational>(m));
  std::vector<Rational> rhs(m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) Cff[i][k] = f.coeff[i][k];
    rhs[i] = -f.coeff[i][m];
  }
  const std::vector<Rational> mu = solve_exact(Cff, rhs);
  Rational value = f.coeff[m][m];
  for (int i = 0; i < m; ++i) value += f.coeff[m][i] * mu[i];
  out.solved = static_cast<double>(value);
  out.lambda_star.resize(m);
  for (int p = 1; p <= m; ++p) out.lambda_star[p - 1] = static_cast<double>(mu[m - p]);
  return out;
}

double hilbert_inverse_entry(int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "m must be nonnegative", m);
  const cpp_int b = binomial(2 * m, m);
  return static_cast<double>(cpp_int(2 * m + 1) * b * b);
}

PsdKernelReport psd_kernel_check(int m, int samples, std::uint64_t seed) {
  if (m < 0 || m > 5) throw Error(ErrorCode::InvalidArgument, "psd_kernel_check supports 0 <= m <= 5", m);
  if (samples < 0) throw Error(ErrorCode::InvalidArgument, "samples must be nonnegative", samples);
  const Eigen::MatrixXd C = hilbert_form(m).coeff_double();
  const double pref = decay_prefactor(m);
  std::mt19937_64 rng = make_stream(seed, static_cast<std::uint64_t>(m));

  PsdKernelReport rep;
  rep.m = m;
  rep.samples = samples;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const CMatrix Z = random_gaussian(rng, 4, m + 1, true);  // column p is z_p
    double lhs = 0.0;
    for (int n = 0; n <= m; ++n) {
      for (int k = 0; k <= m; ++k) lhs += C(n, k) * Z.col(m - n).dot(Z.col(m - k)).real();
    }
    const double margin = lhs - pref * Z.col(0).squaredNorm();
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < -1e-10) ++rep.violations;
  }
  if (samples == 0) rep.worst_margin = 0.0;
  return rep;
}

}  // namespace hypokit
