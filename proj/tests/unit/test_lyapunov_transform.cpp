#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "hypokit/cayley.hpp"
#include "hypokit/errors.hpp"
#include "hypokit/lyapunov_transform.hpp"
#include "hypokit/random_systems.hpp"
#include "test_support.hpp"

namespace hypokit {
namespace {

using testing::make;

template <typename F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::InvalidArgument, "none");
}

std::vector<double> sorted_spectrum_key(const CMatrix& A) {
  const SpectralData s = eigendata(A);
  std::vector<double> key;
  for (const Complex& l : s.eigenvalues) key.push_back(l.real() * 1e3 + l.imag());
  std::sort(key.begin(), key.end());
  return key;
}

TEST(MaximallyCoercive, SemisimpleExamples) {
  const TransformResult a = maximally_coercive(make(2, 2, {1.0, 1.0, -1.0, 1.0}));
  EXPECT_NEAR(a.target, 1.0, 1e-14);
  EXPECT_NEAR(a.achieved, 1.0, 1e-8);
  EXPECT_FALSE(a.defective);
  ASSERT_TRUE(a.witness.has_value());
  EXPECT_LT(a.witness_residual, 1e-12);

  const TransformResult d = maximally_coercive(make(2, 2, {1.0, 0.0, 0.0, 2.0}));
  EXPECT_NEAR(d.achieved, 1.0, 1e-12);
  ASSERT_TRUE(d.witness.has_value());
  // Tight along e_1.
  EXPECT_LT(std::abs((*d.witness)(1)), 1e-12);
  EXPECT_NEAR(std::real(d.witness->dot(d.X * *d.witness)), 1.0, 1e-12);
}

TEST(MaximallyCoercive, DefectiveWorkedExample) {
  const CMatrix B = testing::worked_example();
  const Error e = error_of([&] { maximally_coercive(B, 0.0); });
  EXPECT_EQ(e.code(), ErrorCode::DefectiveNeedsEpsilon);
  for (double eps : {0.1, 0.05, 0.01}) {
    const TransformResult r = maximally_coercive(B, eps);
    EXPECT_TRUE(r.defective);
    EXPECT_GE(r.achieved, 0.5 - eps - 1e-10) << "eps = " << eps;
    EXPECT_LE(r.achieved, 0.5 + 1e-10);
    EXPECT_GE(r.lyapunov_residual, -1e-10);
    EXPECT_GT(lambda_min_hermitian(r.X), 0.0);
  }
  // Unset epsilon falls back to a default in the defective case.
  EXPECT_GT(maximally_coercive(B).epsilon, 0.0);
}

TEST(MaximallyCoercive, Errors) {
  EXPECT_EQ(error_of([] { maximally_coercive(make(2, 2, {-1.0, 0.0, 0.0, 1.0})); }).code(), ErrorCode::NotStable);
  EXPECT_EQ(error_of([] { maximally_coercive(testing::skew2()); }).code(), ErrorCode::EpsilonRequired);
  EXPECT_EQ(error_of([] { maximally_coercive(CMatrix::Identity(2, 2), -1.0); }).code(), ErrorCode::InvalidArgument);
  const TransformResult marginal = maximally_coercive(testing::skew2(), 0.1);
  EXPECT_TRUE(marginal.marginal);
  EXPECT_GE(marginal.achieved, -0.1 - 1e-10);
}

TEST(MaximallyCoercive, RandomSemisimpleIsTight) {
  std::mt19937_64 rng = make_stream(61, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const CMatrix B = random_stable_semisimple(rng, n);
    const TransformResult r = maximally_coercive(B);
    EXPECT_FALSE(r.defective);
    EXPECT_NEAR(r.achieved / r.target, 1.0, 1e-6) << "trial " << trial;
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_LE(r.witness_residual, 1e-6);
    EXPECT_GE(r.lyapunov_residual, -1e-9);
    EXPECT_LT(testing::max_abs(r.X - r.X.adjoint()), 1e-14);
    EXPECT_GT(lambda_min_hermitian(r.X), 0.0);
    const auto k1 = sorted_spectrum_key(B);
    const auto k2 = sorted_spectrum_key(r.transformed);
    for (std::size_t i = 0; i < k1.size(); ++i) EXPECT_NEAR(k1[i], k2[i], 1e-6);
  }
}

TEST(MaximallyContractive, Examples) {
  const TransformResult a = maximally_contractive(make(2, 2, {0.5, 0.0, 0.0, 0.25}));
  EXPECT_NEAR(a.achieved, 0.5, 1e-14);
  EXPECT_NEAR(a.target, 0.5, 1e-14);

  const CMatrix J = make(2, 2, {0.5, 1.0, 0.0, 0.5});
  EXPECT_EQ(error_of([&] { maximally_contractive(J, 0.0); }).code(), ErrorCode::DefectiveNeedsEpsilon);
  const TransformResult j = maximally_contractive(J, 0.01);
  EXPECT_LE(j.achieved, std::sqrt(0.26) + 1e-10);
  EXPECT_GE(j.achieved, 0.5 - 1e-10);

  const CMatrix Bd = scaled_cayley(-make(2, 2, {1.0, 1.0, -1.0, 1.0}), 0.5);
  const TransformResult c = maximally_contractive(Bd);
  const double rho = std::abs((1.0 - 0.25 * Complex(1, 1)) / (1.0 + 0.25 * Complex(1, 1)));
  EXPECT_NEAR(c.target, rho, 1e-14);
  EXPECT_NEAR(c.achieved, rho, 1e-10);
}

TEST(MaximallyContractive, Errors) {
  EXPECT_EQ(error_of([] { maximally_contractive(1.5 * CMatrix::Identity(2, 2)); }).code(), ErrorCode::NotStable);
  EXPECT_EQ(error_of([] { maximally_contractive(make(2, 2, {0.0, -1.0, 1.0, 0.0})); }).code(),
            ErrorCode::EpsilonRequired);
}

TEST(MaximallyContractive, RandomSemisimpleIsTight) {
  std::mt19937_64 rng = make_stream(62, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const CMatrix B = expm(-random_stable_semisimple(rng, 2 + trial % 5));
    const TransformResult r = maximally_contractive(B);
    EXPECT_NEAR(r.achieved / r.target, 1.0, 1e-6) << "trial " << trial;
    EXPECT_LE(r.witness_residual, 1e-6);
    EXPECT_GE(r.lyapunov_residual, -1e-9);
  }
}

TEST(ErrorAmplification, IdentityMetric) {
  const AmplificationReport r = error_amplification_report(testing::figure_index1(), CMatrix::Identity(2, 2), 1.0, 0.05);
  EXPECT_NEAR(r.cond_sqrtX, 1.0, 1e-14);
  EXPECT_NEAR(r.lipschitz_y, r.lipschitz_x, 1e-14);
  EXPECT_TRUE(r.bound_dominates);
  EXPECT_EQ(r.times.size(), 21u);
}

TEST(ErrorAmplification, WorkedExampleTransformedBound) {
  const TransformResult t = maximally_coercive(testing::worked_example(), 0.05);
  const AmplificationReport r = error_amplification_report(testing::worked_example(), t.X, 1.0, 0.01);
  EXPECT_TRUE(r.bound_dominates);
  for (std::size_t i = 0; i < r.times.size(); ++i) EXPECT_LE(r.errors[i], r.bounds[i]);
  EXPECT_NEAR(r.order_ratio, 4.0, 0.3);
  EXPECT_GT(r.cond_sqrtX, 1.0);
  EXPECT_LE(r.lipschitz_y, r.lipschitz_y_bound * (1 + 1e-12));
}

TEST(ErrorAmplification, Errors) {
  const CMatrix B = testing::worked_example();
  EXPECT_EQ(error_of([&] { error_amplification_report(B, -CMatrix::Identity(2, 2), 1.0, 0.1); }).code(),
            ErrorCode::NotPD);
  EXPECT_EQ(error_of([&] { error_amplification_report(B, CMatrix::Identity(3, 3), 1.0, 0.1); }).code(),
            ErrorCode::Dimension);
  EXPECT_EQ(error_of([&] { error_amplification_report(B, CMatrix::Identity(2, 2), 1.0, 0.0); }).code(),
            ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace hypokit
