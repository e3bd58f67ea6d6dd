#pragma once

#include <string>
#include <vector>

namespace hypokit::cli {

/// Parses "first:last:geometric" (halving from first while >= last) or
/// "first:last:N" (N geometric points). Numbers may be written as 2^-k.
std::vector<double> parse_grid(const std::string& spec);

double parse_scalar(const std::string& text);

}  // namespace hypokit::cli
