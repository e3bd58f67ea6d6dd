#pragma once

#include <nlohmann/json.hpp>

#include "hypokit/asymptotics.hpp"
#include "hypokit/cayley.hpp"
#include "hypokit/coercivity.hpp"
#include "hypokit/hilbert_form.hpp"
#include "hypokit/lyapunov_transform.hpp"

namespace hypokit {

inline constexpr const char* kSchema = "hypokit/1";

nlohmann::json to_json(const Tolerances& tol);
nlohmann::json to_json(const IndexReport& r);
nlohmann::json to_json(const DecayExpansion& d);
nlohmann::json to_json(const ShortTimeFit& f);
nlohmann::json to_json(const OnsetFit& f);
nlohmann::json to_json(const IndexPreservationReport& r);
nlohmann::json to_json(const HilbertMin& h);
nlohmann::json to_json(const TransformResult& t);
nlohmann::json to_json(const AmplificationReport& a);

/// Decimal with 17 significant digits, independent of the global locale.
std::string format_number(double x);

}  // namespace hypokit
