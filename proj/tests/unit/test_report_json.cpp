#include <clocale>

#include <gtest/gtest.h>

#include "hypokit/report_json.hpp"
#include "test_support.hpp"

namespace hypokit {
namespace {

TEST(FormatNumber, SeventeenDigitsRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 48.0), "0.020833333333333332");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  for (double x : {1.0 / 3.0, 1e-300, -2.5e17, 0.1, 12345.678}) EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(FormatNumber, IgnoresGlobalLocale) {
  const char* prev = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = prev ? prev : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) GTEST_SKIP() << "de_DE locale not installed";
  EXPECT_EQ(format_number(0.25), "0.25");
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST(ReportJson, IndexAndDecayKeys) {
  const ContinuousSystem sys = certify_semidissipative(testing::worked_example());
  const IndexReport idx = hypocoercivity_index(sys);
  const nlohmann::json j = to_json(idx);
  EXPECT_EQ(j["index"], 1);
  EXPECT_EQ(j["hypocoercive"], true);
  EXPECT_TRUE(j.contains("tolerances"));
  const nlohmann::json d = to_json(decay_constant(sys, idx));
  EXPECT_EQ(d["a"], 3);
  EXPECT_DOUBLE_EQ(d["c"].get<double>(), 1.0 / 48.0);
  EXPECT_DOUBLE_EQ(d["min_value"].get<double>(), 0.25);

  const ContinuousSystem skew = certify_semidissipative(testing::skew2());
  const nlohmann::json s = to_json(hypocoercivity_index(skew));
  EXPECT_TRUE(s["index"].is_null());
  EXPECT_EQ(s["hypocoercive"], false);
}

TEST(ReportJson, ReparsesExactly) {
  const ContinuousSystem sys = certify_semidissipative(testing::figure_index2());
  const nlohmann::json j = to_json(verify_index_preservation(sys, 0.5));
  const nlohmann::json back = nlohmann::json::parse(j.dump());
  EXPECT_EQ(back, j);
  EXPECT_EQ(back["m_hc"], 2);
  EXPECT_EQ(back["m_dhc"], 2);
  EXPECT_EQ(std::string(kSchema), "hypokit/1");
}

}  // namespace
}  // namespace hypokit
