#include <cmath>

#include <gtest/gtest.h>

#include "hypokit/cayley.hpp"
#include "hypokit/contractivity.hpp"
#include "hypokit/errors.hpp"
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

CMatrix rotation(double angle) {
  return make(2, 2, {std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle)});
}

TEST(CertifySemicontractive, Examples) {
  EXPECT_NO_THROW(certify_semicontractive(CMatrix::Zero(2, 2)));
  const DiscreteSystem bd = certify_semicontractive(scaled_cayley(-testing::worked_example(), 0.5));
  EXPECT_NEAR(bd.sigma_max, 1.0, 1e-15);

  const Error e = error_of([] { certify_semicontractive(1.5 * CMatrix::Identity(2, 2)); });
  EXPECT_EQ(e.code(), ErrorCode::NotSemiContractive);
  EXPECT_NEAR(e.value(), 1.5, 1e-15);
  EXPECT_EQ(e.category(), ErrorCategory::Precondition);
}

TEST(CertifySemicontractive, UnitEigenvalue) {
  EXPECT_EQ(error_of([] { certify_semicontractive(rotation(0.0)); }).code(), ErrorCode::UnitEigenvalue);
  EXPECT_EQ(error_of([] { certify_semicontractive(make(2, 2, {1.0, 0.0, 0.0, 0.5})); }).code(),
            ErrorCode::UnitEigenvalue);
}

TEST(HypocontractivityIndex, Examples) {
  const DiscreteSystem f1 = certify_semicontractive(scaled_cayley(-testing::figure_index1(), 0.5));
  const IndexReport r = hypocontractivity_index(f1);
  EXPECT_EQ(r.index, 1);
  EXPECT_TRUE(r.discrete);
  ASSERT_GE(r.power_norms.size(), 2u);
  EXPECT_NEAR(r.power_norms[0], 1.0, 1e-15);
  EXPECT_LT(r.power_norms[1], 1.0 - 1e-6);
  EXPECT_LT(r.kappa_identity_residual, 1e-14);

  EXPECT_EQ(hypocontractivity_index(certify_semicontractive(CMatrix::Zero(3, 3))).index, 0);

  const IndexReport rot = hypocontractivity_index(certify_semicontractive(rotation(1.0)));
  EXPECT_FALSE(rot.index.has_value());
  EXPECT_EQ(rot.kappa, 0.0);
}

TEST(HypocontractivityIndex, KappaMatchesPlateauIdentity) {
  const DiscreteSystem f2 = certify_semicontractive(scaled_cayley(-testing::figure_index2(), 0.5));
  const IndexReport r = hypocontractivity_index(f2);
  ASSERT_EQ(r.index, 2);
  EXPECT_NEAR(r.power_norms[0], 1.0, 1e-9);
  EXPECT_NEAR(r.power_norms[1], 1.0, 1e-9);
  EXPECT_LT(r.power_norms[2], 1.0 - 1e-6);
  EXPECT_NEAR(r.kappa, 1.0 - r.power_norms[2] * r.power_norms[2], 1e-12);
  for (std::size_t j = 1; j < r.kernel_dims.size(); ++j) EXPECT_LE(r.kernel_dims[j], r.kernel_dims[j - 1]);
  EXPECT_EQ(r.kernel_dims.back(), 0);
}

TEST(HypocontractivityIndex, MMax) {
  const DiscreteSystem f2 = certify_semicontractive(scaled_cayley(-testing::figure_index2(), 0.5));
  EXPECT_FALSE(hypocontractivity_index(f2, 1).index.has_value());
  EXPECT_EQ(hypocontractivity_index(f2, 4).index, 2);
}

}  // namespace
}  // namespace hypokit
