#pragma once

// Hilbert-matrix quadratic forms behind the decay-constant prefactor
// 1/((2m+1)! binom(2m,m)).
//
// Minimizer convention: lambda_star[p-1] is the coefficient of (tB)^p,
// p = 1..m; the coefficient of (tB)^0 is fixed to 1.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypokit/linalg.hpp"

namespace hypokit {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

struct HilbertForm {
  int m = 0;
  RationalMatrix H;      // (m+1)x(m+1), H_ij = 1/(i+j+1) zero-based
  RationalMatrix coeff;  // (-1)^{k+n} binom(k+n,k)/(k+n+1)!
  RVector diag_scaling;  // D = diag((-1)^n n!), D coeff D = H

  Eigen::MatrixXd H_double() const;
  Eigen::MatrixXd coeff_double() const;
};

HilbertForm hilbert_form(int m);
bool congruence_holds(const HilbertForm& form);

Rational decay_prefactor_exact(int m);
double decay_prefactor(int m);

struct HilbertMin {
  int m = 0;
  double value = 0.0;        // closed form
  double solved = 0.0;       // constrained minimum by exact KKT solve
  std::vector<double> lambda_star;
  bool conditioning_warning = false;  // m > 6
};

/// 0 <= m <= 8; Conditioning error above.
HilbertMin hilbert_min(int m);

/// (H_{m+1}^{-1})_{m+1,m+1} = (2m+1) binom(2m,m)^2, computed in integers.
double hilbert_inverse_entry(int m);

struct PsdKernelReport {
  int m = 0;
  int samples = 0;
  int violations = 0;
  double worst_margin = 0.0;
};

/// Samples (z_0..z_m) in C^4 and checks sum coeff_{n,k} <z_{m-n}, z_{m-k}> >= prefactor*||z_0||^2.
PsdKernelReport psd_kernel_check(int m, int samples, std::uint64_t seed);

}  // namespace hypokit
