#include "hypokit/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "hypokit/errors.hpp"

namespace hypokit {

namespace {

Complex entry_from_json(const nlohmann::json& e, std::size_t index) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw Error(ErrorCode::Parse, "matrix entry " + std::to_string(index) + " is neither a number nor [re, im]");
}

}  // namespace

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "matrix JSON must be an object");
  for (const char* key : {"rows", "cols", "entries"}) {
    if (!j.contains(key)) throw Error(ErrorCode::Parse, std::string("matrix JSON lacks \"") + key + "\"");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw Error(ErrorCode::Parse, "\"rows\" and \"cols\" must be integers");
  }
  const long long rows = j["rows"].get<long long>();
  const long long cols = j["cols"].get<long long>();
  if (rows <= 0 || cols <= 0) throw Error(ErrorCode::Dimension, "matrix dimensions must be positive");
  const auto& entries = j["entries"];
  if (!entries.is_array()) throw Error(ErrorCode::Parse, "\"entries\" must be an array");

  // Accept a flat row-major list or a list of rows.
  std::vector<const nlohmann::json*> flat;
  bool nested = !entries.empty() && entries[0].is_array() &&
                !(entries[0].size() == 2 && entries[0][0].is_number() && static_cast<long long>(entries.size()) == rows * cols);
  if (nested) {
    if (static_cast<long long>(entries.size()) != rows) {
      throw Error(ErrorCode::Dimension, "\"entries\" has " + std::to_string(entries.size()) + " rows, expected " +
                                            std::to_string(rows));
    }
    for (const auto& row : entries) {
      if (!row.is_array() || static_cast<long long>(row.size()) != cols) {
        throw Error(ErrorCode::Dimension, "a row of \"entries\" does not have " + std::to_string(cols) + " entries");
      }
      for (const auto& e : row) flat.push_back(&e);
    }
  } else {
    for (const auto& e : entries) flat.push_back(&e);
  }
  if (static_cast<long long>(flat.size()) != rows * cols) {
    throw Error(ErrorCode::Dimension, "\"entries\" has " + std::to_string(flat.size()) + " values, expected " +
                                          std::to_string(rows * cols));
  }
  CMatrix A(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    for (long long k = 0; k < cols; ++k) {
      const std::size_t idx = static_cast<std::size_t>(i * cols + k);
      A(i, k) = entry_from_json(*flat[idx], idx);
    }
  }
  if (!A.allFinite()) throw Error(ErrorCode::Parse, "matrix has non-finite entries");
  return A;
}

nlohmann::json matrix_to_json(const CMatrix& A) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      entries.push_back({A(i, k).real(), A(i, k).imag()});
    }
  }
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"entries", std::move(entries)}};
}

CMatrix parse_matrix(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

CMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

void write_matrix_file(const std::filesystem::path& path, const CMatrix& A) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << matrix_to_json(A).dump(2) << '\n';
}

}  // namespace hypokit
