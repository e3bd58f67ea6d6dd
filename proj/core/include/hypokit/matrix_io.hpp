#pragma once

// Matrix files: {"rows": n, "cols": n, "entries": [[re, im], ...]} row-major.
// Entries may also be bare real numbers; the writer always emits pairs.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hypokit/linalg.hpp"

namespace hypokit {

CMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const CMatrix& A);

CMatrix parse_matrix(const std::string& text);
CMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const CMatrix& A);

}  // namespace hypokit
