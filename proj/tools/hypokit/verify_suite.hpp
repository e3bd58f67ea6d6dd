#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypokit::cli {

struct PropertyTally {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> first_failures;  // at most a few messages
};

const std::vector<std::string>& property_names();

/// Runs the selected properties (all when `only` is empty) on a corpus drawn from `seed`.
std::vector<PropertyTally> run_properties(std::uint64_t seed, int count, const std::vector<std::string>& only);

}  // namespace hypokit::cli
