#include <cmath>

#include <boost/math/special_functions/factorials.hpp>
#include <gtest/gtest.h>

#include "hypokit/asymptotics.hpp"
#include "hypokit/errors.hpp"
#include "test_support.hpp"

namespace hypokit {
namespace {

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

void expect_weights(const StencilWeights& w, std::vector<double> expected) {
  ASSERT_EQ(w.weights.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_DOUBLE_EQ(w.weights[i], expected[i]) << "i = " << i;
}

TEST(FornbergWeights, QuotedCoefficients) {
  expect_weights(fornberg_weights(1, 1), {-0.5, 0.0, 0.5});
  expect_weights(fornberg_weights(3, 2), {-0.5, 1.0, 0.0, -1.0, 0.5});
}

TEST(FornbergWeights, MatchesVandermondeMomentSolve) {
  const StencilWeights w = fornberg_weights(5, 3);
  Eigen::MatrixXd V(7, 7);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(7);
  for (int p = 0; p < 7; ++p) {
    for (int i = 0; i < 7; ++i) V(p, i) = std::pow(double(i - 3), p);
  }
  rhs(5) = 120.0;
  const Eigen::VectorXd oracle = V.fullPivLu().solve(rhs);
  for (int i = 0; i < 7; ++i) EXPECT_NEAR(w.weights[i], oracle(i), 1e-10);
}

TEST(FornbergWeights, StructureAndExactness) {
  for (int m = 0; m <= 5; ++m) {
    const int d = 2 * m + 1;
    const StencilWeights w = fornberg_weights(d, m + 1);
    const int n = static_cast<int>(w.weights.size());
    EXPECT_DOUBLE_EQ(w.weights.front(), -0.5);
    EXPECT_DOUBLE_EQ(w.weights.back(), 0.5);
    for (int i = 0; i < n; ++i) EXPECT_DOUBLE_EQ(w.weights[i], -w.weights[n - 1 - i]);
    for (int p = 0; p <= d; ++p) {
      double moment = 0.0;
      for (int i = 0; i < n; ++i) moment += w.weights[i] * std::pow(double(w.offsets[i]), p);
      const double expected = p == d ? boost::math::factorial<double>(d) : 0.0;
      EXPECT_NEAR(moment, expected, 1e-9 * std::max(1.0, expected)) << "d = " << d << " p = " << p;
    }
  }
}

TEST(FornbergWeights, TooShortStencil) {
  EXPECT_EQ(error_of([] { fornberg_weights(3, 1); }).code(), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([] { fornberg_weights(-1, 1); }).code(), ErrorCode::InvalidArgument);
}

TEST(GridFunction, WorkedExampleTauOne) {
  const CayleyPair pair = cayley_forward(certify_semidissipative(testing::worked_example()), 1.0);
  const GridFunction g = grid_function(pair, 3);
  EXPECT_EQ(g.at(0), 1.0);
  EXPECT_NEAR(g.at(1), 1.0, 1e-15);
  EXPECT_NEAR(g.at(2), 3.0 / 125.0 * std::sqrt(737.0 + 32.0 * std::sqrt(481.0)), 1e-14);
  EXPECT_NEAR(g.at(2), 0.9103611, 1e-7);
  EXPECT_EQ(g.at(-1), 2.0 - g.at(1));
  EXPECT_EQ(g.at(-3), 2.0 - g.at(3));
  EXPECT_EQ(error_of([&] { g.at(4); }).code(), ErrorCode::InvalidArgument);
}

TEST(GridFunction, FigureIndexOneMonotone) {
  const CayleyPair pair = cayley_forward(certify_semidissipative(testing::figure_index1()), 0.5);
  const GridFunction g = grid_function(pair, 6);
  EXPECT_NEAR(g.at(1), 1.0, 1e-15);
  EXPECT_LT(g.at(2), 1.0 - 1e-6);
  for (int k = 1; k <= 6; ++k) EXPECT_LE(g.at(k), g.at(k - 1) + 1e-15);
}

TEST(CayleyPowerDeficit, AgreesWithDirectDifference) {
  const ContinuousSystem sys = certify_semidissipative(testing::figure_index2());
  for (double tau : {0.25, 0.5, 1.0}) {
    const CayleyPair pair = cayley_forward(sys, tau);
    const GridFunction g = grid_function(pair, 6);
    for (int p = 0; p <= 6; ++p) {
      EXPECT_NEAR(cayley_power_deficit(pair, p), 1.0 - g.at(p), 1e-14) << "tau " << tau << " p " << p;
    }
  }
}

TEST(PeanoEstimate, WorkedExampleSequence) {
  const ContinuousSystem sys = certify_semidissipative(testing::worked_example());
  std::vector<double> errors;
  for (int k = 3; k <= 10; ++k) {
    const PeanoEstimate p = peano_estimate(cayley_forward(sys, std::ldexp(1.0, -k)), 1);
    errors.push_back(p.estimate + 0.125);
    EXPECT_LT(p.collapse_residual, 1e-14);
    EXPECT_LT(p.lower_order_residual, 1e-14);
    ASSERT_EQ(p.lower_order.size(), 3u);
  }
  EXPECT_LT(std::abs(errors.back()) / 0.125, 0.02);
  // phi_2 = 1 - tau^3/8 + 3 tau^5/64 + ...: the error is O(tau^2), so halving tau quarters it.
  for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_NEAR(errors[i - 1] / errors[i], 4.0, 0.05);
}

TEST(PeanoEstimate, IdentityFirstOrder) {
  const ContinuousSystem sys = certify_semidissipative(CMatrix::Identity(2, 2));
  for (int k = 4; k <= 10; ++k) {
    const double tau = std::ldexp(1.0, -k);
    const PeanoEstimate p = peano_estimate(cayley_forward(sys, tau), 0);
    const double scalar = ((1 - tau / 2) / (1 + tau / 2) - 1) / tau;
    EXPECT_NEAR(p.estimate, scalar, 1e-12);
    EXPECT_NEAR(p.estimate, -1.0, tau);
  }
}

TEST(PeanoEstimate, RejectsWrongIndex) {
  const CayleyPair pair = cayley_forward(certify_semidissipative(testing::worked_example()), 0.5);
  EXPECT_EQ(error_of([&] { peano_estimate(pair, 0); }).code(), ErrorCode::IndexMismatch);
  EXPECT_EQ(error_of([&] { peano_estimate(pair, 2); }).code(), ErrorCode::IndexMismatch);
}

TEST(ContractionOnset, Examples) {
  const std::vector<double> grid = dyadic_grid(3, 10);
  const OnsetFit we = contraction_onset_expansion(certify_semidissipative(testing::worked_example()), grid);
  EXPECT_EQ(we.index, 1);
  EXPECT_NEAR(we.c_hat * 48.0, 1.0, 1e-3);
  EXPECT_NEAR(we.slope, 3.0, 0.05);
  EXPECT_EQ(we.points_used, 8);

  const OnsetFit id = contraction_onset_expansion(certify_semidissipative(CMatrix::Identity(2, 2)), grid);
  EXPECT_NEAR(id.c_hat, 1.0, 1e-3);

  const OnsetFit f2 = contraction_onset_expansion(certify_semidissipative(testing::figure_index2()), dyadic_grid(2, 7));
  EXPECT_NEAR(f2.slope, 5.0, 0.1);
  EXPECT_NEAR(f2.c_hat * 720.0, 1.0, 0.02);
}

TEST(ContractionOnset, Errors) {
  const ContinuousSystem skew = certify_semidissipative(testing::skew2());
  EXPECT_EQ(error_of([&] { contraction_onset_expansion(skew, dyadic_grid(3, 6)); }).code(), ErrorCode::IndexMissing);
  const ContinuousSystem we = certify_semidissipative(testing::worked_example());
  EXPECT_EQ(error_of([&] { contraction_onset_expansion(we, {0.1, 0.2}); }).code(), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_of([&] { contraction_onset_expansion(we, {0.1}); }).code(), ErrorCode::DegenerateFit);
}

TEST(SeriesMinimum, ClosedForms) {
  EXPECT_NEAR(lemma53_minimum(0).min_value, 1.0, 1e-15);
  EXPECT_NEAR(lemma53_minimum(1).min_value, 0.5, 1e-15);
  EXPECT_NEAR(lemma53_minimum(3).min_value, 0.05, 1e-15);
  for (int m = 0; m <= 6; ++m) {
    const Lemma53Result r = lemma53_minimum(m);
    EXPECT_NEAR(r.min_value / r.closed_form, 1.0, 1e-9) << "m = " << m;
    EXPECT_EQ(r.minimizer.size(), m);
    EXPECT_FALSE(r.conditioning_warning);
  }
}

TEST(SeriesMinimum, ConditioningLimits) {
  EXPECT_TRUE(lemma53_minimum(9).conditioning_warning);
  EXPECT_EQ(error_of([] { lemma53_minimum(13); }).code(), ErrorCode::Conditioning);
  EXPECT_EQ(error_of([] { lemma53_minimum(-1); }).code(), ErrorCode::InvalidArgument);
}

}  // namespace
}  // namespace hypokit
