#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypokit/tolerances.hpp"

namespace hypokit::cli {

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  Tolerances tol;
  bool discrete = false;
  std::optional<std::string> tau;
  std::string tau_grid;
  int k_max = 6;
  int curve_points = 401;
  std::optional<int> m_max;
  int m = 1;
  std::optional<double> epsilon;
  double t_final = 1.0;
  std::uint64_t seed = 20240101;
  int count = 200;
  std::vector<std::string> only;
};

/// Each command writes its report to `out` and returns the process exit code.
int cmd_analyze(const Options& o, std::ostream& out);
int cmd_decay(const Options& o, std::ostream& out);
int cmd_cayley(const Options& o, std::ostream& out);
int cmd_sweep(const Options& o, std::ostream& out);
int cmd_hilbert(const Options& o, std::ostream& out);
int cmd_transform(const Options& o, std::ostream& out);
int cmd_verify(const Options& o, std::ostream& out);

/// Report envelope: {"schema": ..., "tolerances": ...} merged with `body`.
nlohmann::json envelope(const Tolerances& tol, nlohmann::json body);

/// Indented JSON; doubles print as shortest round-trip decimals.
std::string dump_report(const nlohmann::json& j);

}  // namespace hypokit::cli
