#include "hypokit/report_json.hpp"

#include <cmath>
#include <charconv>
#include <limits>

namespace hypokit {

namespace {

nlohmann::json optional_index(const std::optional<int>& i) {
  return i ? nlohmann::json(*i) : nlohmann::json(nullptr);
}

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json vector_to_json(const CVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

nlohmann::json matrix_json(const CMatrix& A) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index k = 0; k < A.cols(); ++k) entries.push_back({A(i, k).real(), A(i, k).imag()});
  }
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"entries", entries}};
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

nlohmann::json to_json(const Tolerances& tol) {
  return {{"rank_rel_tol", tol.rank_rel_tol},
          {"psd_rel_tol", tol.psd_rel_tol},
          {"norm_plateau_tol", tol.norm_plateau_tol},
          {"cluster_tol", tol.cluster_tol}};
}

nlohmann::json to_json(const IndexReport& r) {
  nlohmann::json j = {{"index", optional_index(r.index)},
                      {"kappa", r.kappa},
                      {"per_level_lambda_min", r.per_level_lambda_min},
                      {"kernel_dims", r.kernel_dims},
                      {"tolerances", to_json(r.tol)}};
  if (r.discrete) {
    j["discrete"] = true;
    j["hypocontractive"] = r.index.has_value();
    j["power_norms"] = r.power_norms;
    j["kappa_identity_residual"] = r.kappa_identity_residual;
  } else {
    j["hypocoercive"] = r.index.has_value();
  }
  return j;
}

nlohmann::json to_json(const DecayExpansion& d) {
  return {{"index", d.index},
          {"a", d.exponent_a},
          {"c", d.constant_c},
          {"min_value", d.min_value},
          {"prefactor", d.prefactor},
          {"minimizer", vector_to_json(d.minimizer)},
          {"kernel_residual", d.kernel_residual}};
}

nlohmann::json to_json(const ShortTimeFit& f) {
  return {{"a_hat", f.a_hat}, {"c_hat", f.c_hat}, {"points_used", f.points_used}};
}

nlohmann::json to_json(const OnsetFit& f) {
  return {{"index", f.index},
          {"c_hat", f.c_hat},
          {"slope", f.slope},
          {"points_used", f.points_used},
          {"reference_c", f.reference_c},
          {"relative_error", f.relative_error},
          {"taus", f.taus},
          {"deficits", f.deficits}};
}

nlohmann::json to_json(const IndexPreservationReport& r) {
  nlohmann::json j = {{"tau", r.tau},
                      {"m_hc", optional_index(r.continuous_index)},
                      {"m_dhc", optional_index(r.discrete_index)},
                      {"pass", r.pass},
                      {"residual_discrete", r.residual_discrete},
                      {"residual_continuous", r.residual_continuous},
                      {"roundtrip_residual", r.roundtrip_residual},
                      {"sigma_max_discrete", r.sigma_max_discrete}};
  if (r.warning) j["warning"] = *r.warning;
  return j;
}

nlohmann::json to_json(const HilbertMin& h) {
  return {{"m", h.m},
          {"value", h.value},
          {"solved", h.solved},
          {"lambda_star", h.lambda_star},
          {"conditioning_warning", h.conditioning_warning}};
}

nlohmann::json to_json(const TransformResult& t) {
  nlohmann::json j = {{"discrete", t.discrete},
                      {"X", matrix_json(t.X)},
                      {"sqrtX", matrix_json(t.sqrtX)},
                      {"transformed", matrix_json(t.transformed)},
                      {"target", t.target},
                      {"achieved", t.achieved},
                      {"epsilon", t.epsilon},
                      {"cond_sqrtX", finite_or_null(t.cond_sqrtX)},
                      {"defective", t.defective},
                      {"marginal", t.marginal},
                      {"lyapunov_residual", t.lyapunov_residual}};
  if (t.witness) {
    j["witness"] = vector_to_json(*t.witness);
    j["witness_residual"] = t.witness_residual;
  }
  return j;
}

nlohmann::json to_json(const AmplificationReport& a) {
  return {{"tau", a.tau},
          {"t_final", a.t_final},
          {"cond_sqrtX", a.cond_sqrtX},
          {"lipschitz_x", a.lipschitz_x},
          {"lipschitz_y", a.lipschitz_y},
          {"lipschitz_y_bound", a.lipschitz_y_bound},
          {"local_error", a.local_error},
          {"theta_max", a.theta_max},
          {"bound_dominates", a.bound_dominates},
          {"final_error", a.final_error},
          {"final_error_half_step", a.final_error_half_step},
          {"order_ratio", a.order_ratio}};
}

}  // namespace hypokit
