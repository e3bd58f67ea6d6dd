#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "hypokit/errors.hpp"
#include "hypokit/matrix_io.hpp"
#include "hypokit/random_systems.hpp"
#include "test_support.hpp"

namespace hypokit {
namespace {

using testing::max_abs;

ErrorCode parse_error(const std::string& text) {
  try {
    parse_matrix(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::InvalidArgument;
}

TEST(MatrixIo, AcceptsAllLayouts) {
  const CMatrix expected = testing::worked_example();
  EXPECT_EQ(max_abs(parse_matrix(R"({"rows":2,"cols":2,"entries":[0,0.5,-0.5,1]})") - expected), 0.0);
  EXPECT_EQ(max_abs(parse_matrix(R"({"rows":2,"cols":2,"entries":[[0,0],[0.5,0],[-0.5,0],[1,0]]})") - expected), 0.0);
  EXPECT_EQ(max_abs(parse_matrix(R"({"rows":2,"cols":2,"entries":[[0,0.5],[-0.5,1]]})") - expected), 0.0);
  const CMatrix c = parse_matrix(R"({"rows":1,"cols":2,"entries":[[1,2],3]})");
  EXPECT_EQ(c(0, 0), Complex(1, 2));
  EXPECT_EQ(c(0, 1), Complex(3, 0));
}

TEST(MatrixIo, RejectsMalformedInput) {
  EXPECT_EQ(parse_error("not json"), ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"rows":2,"cols":2})"), ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"rows":2,"cols":2,"entries":[1,2,3]})"), ErrorCode::Dimension);
  EXPECT_EQ(parse_error(R"({"rows":0,"cols":2,"entries":[]})"), ErrorCode::Dimension);
  EXPECT_EQ(parse_error(R"({"rows":1,"cols":1,"entries":["x"]})"), ErrorCode::Parse);
  EXPECT_EQ(parse_error(R"({"rows":1,"cols":1,"entries":[[1,2,3]]})"), ErrorCode::Dimension);
  EXPECT_EQ(parse_error(R"({"rows":1.5,"cols":1,"entries":[1]})"), ErrorCode::Parse);
}

TEST(MatrixIo, RoundTripIsBitExact) {
  std::mt19937_64 rng = make_stream(31, 0);
  const CMatrix A = random_gaussian(rng, 3, 4, true);
  EXPECT_EQ(max_abs(matrix_from_json(nlohmann::json::parse(matrix_to_json(A).dump())) - A), 0.0);

  const auto path = std::filesystem::temp_directory_path() / "hypokit_matrix_io_roundtrip.json";
  write_matrix_file(path, A);
  EXPECT_EQ(max_abs(read_matrix_file(path) - A), 0.0);
  std::filesystem::remove(path);
}

TEST(MatrixIo, MissingFileIsIoError) {
  try {
    read_matrix_file("/nonexistent/hypokit/matrix.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
    EXPECT_EQ(e.category(), ErrorCategory::Input);
  }
}

TEST(MatrixIo, ShippedDataFiles) {
  EXPECT_EQ(max_abs(read_matrix_file(testing::data_path("worked_example.json")) - testing::worked_example()), 0.0);
  EXPECT_EQ(max_abs(read_matrix_file(testing::data_path("figure_index1.json")) - testing::figure_index1()), 0.0);
  EXPECT_EQ(max_abs(read_matrix_file(testing::data_path("figure_index2.json")) - testing::figure_index2()), 0.0);
}

}  // namespace
}  // namespace hypokit
