#include "hypokit/commands.hpp"

#include <cmath>
#include <sstream>

#include "hypokit/asymptotics.hpp"
#include "hypokit/cayley.hpp"
#include "hypokit/coercivity.hpp"
#include "hypokit/contractivity.hpp"
#include "hypokit/errors.hpp"
#include "hypokit/grid_spec.hpp"
#include "hypokit/hilbert_form.hpp"
#include "hypokit/lyapunov_transform.hpp"
#include "hypokit/matrix_io.hpp"
#include "hypokit/report_json.hpp"

namespace hypokit::cli {

namespace {

CMatrix load(const Options& o) {
  if (o.input.empty()) throw Error(ErrorCode::InvalidArgument, "an input matrix file is required");
  return read_matrix_file(o.input);
}

std::vector<double> tau_values(const Options& o, const char* default_grid) {
  if (o.tau) return {parse_scalar(*o.tau)};
  return parse_grid(o.tau_grid.empty() ? default_grid : o.tau_grid);
}

std::string rational_string(const Rational& r) {
  std::ostringstream s;
  s << numerator(r) << '/' << denominator(r);
  return s.str();
}

void require_format(const Options& o, bool csv_allowed) {
  if (o.format == "json" || (csv_allowed && o.format == "csv")) return;
  throw Error(ErrorCode::InvalidArgument, "unsupported --format '" + o.format + "' for this command");
}

}  // namespace

nlohmann::json envelope(const Tolerances& tol, nlohmann::json body) {
  nlohmann::json j = {{"schema", kSchema}, {"tolerances", to_json(tol)}};
  j.update(body);
  return j;
}

std::string dump_report(const nlohmann::json& j) { return j.dump(2); }

int cmd_analyze(const Options& o, std::ostream& out) {
  require_format(o, false);
  const CMatrix B = load(o);
  nlohmann::json body;
  if (o.discrete) {
    const DiscreteSystem sys = certify_semicontractive(B, o.tol);
    body = to_json(hypocontractivity_index(sys, o.m_max));
    body["semicontractive"] = true;
    body["sigma_max"] = sys.sigma_max;
  } else {
    const ContinuousSystem sys = certify_semidissipative(B, o.tol);
    const IndexReport idx = hypocoercivity_index(sys, o.m_max);
    body = to_json(idx);
    body["semidissipative"] = true;
    if (idx.index) body.update(to_json(decay_constant(sys, idx)));
  }
  body.erase("tolerances");
  out << dump_report(envelope(o.tol, body)) << '\n';
  return 0;
}

int cmd_decay(const Options& o, std::ostream& out) {
  require_format(o, false);
  const ContinuousSystem sys = certify_semidissipative(load(o), o.tol);
  const IndexReport idx = hypocoercivity_index(sys, o.m_max);
  nlohmann::json body = {{"index", nullptr}, {"hypocoercive", idx.index.has_value()}};
  if (idx.index) {
    body = to_json(decay_constant(sys, idx));
    body["hypocoercive"] = true;
    // Deficits shrink like t^(2m+1); keep the fit grid where they stay resolvable.
    const int last = *idx.index >= 2 ? 8 : 10;
    const ShortTimeFit fit = fit_short_time_expansion(sys, dyadic_grid(3, last));
    body["short_time_fit"] = to_json(fit);
    body["onset"] = to_json(contraction_onset_expansion(sys, tau_values(o, "2^-3:2^-8:geometric")));
  }
  out << dump_report(envelope(o.tol, body)) << '\n';
  return 0;
}

int cmd_cayley(const Options& o, std::ostream& out) {
  require_format(o, true);
  const ContinuousSystem sys = certify_semidissipative(load(o), o.tol);
  std::vector<IndexPreservationReport> reports;
  bool all_pass = true;
  for (double tau : tau_values(o, "1:2^-10:geometric")) {
    reports.push_back(verify_index_preservation(sys, tau));
    all_pass = all_pass && reports.back().pass;
  }
  if (o.format == "csv") {
    out << "# schema=" << kSchema << '\n';
    out << "tau,m_hc,m_dhc,pass,residual_discrete,residual_continuous,roundtrip_residual,sigma_max_discrete\n";
    auto idx = [](const std::optional<int>& i) { return i ? std::to_string(*i) : std::string(); };
    for (const auto& r : reports) {
      out << format_number(r.tau) << ',' << idx(r.continuous_index) << ',' << idx(r.discrete_index) << ','
          << (r.pass ? 1 : 0) << ',' << format_number(r.residual_discrete) << ','
          << format_number(r.residual_continuous) << ',' << format_number(r.roundtrip_residual) << ','
          << format_number(r.sigma_max_discrete) << '\n';
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) rows.push_back(to_json(r));
    out << dump_report(envelope(o.tol, {{"results", rows}, {"all_pass", all_pass}})) << '\n';
  }
  return all_pass ? 0 : 3;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (!o.tau) throw Error(ErrorCode::InvalidArgument, "sweep requires --tau");
  if (o.k_max < 0) throw Error(ErrorCode::InvalidArgument, "--k-max must be nonnegative", o.k_max);
  if (o.curve_points < 2) throw Error(ErrorCode::InvalidArgument, "--points must be at least 2", o.curve_points);
  const double tau = parse_scalar(*o.tau);
  const ContinuousSystem sys = certify_semidissipative(load(o), o.tol);
  const IndexReport idx = hypocoercivity_index(sys);
  std::optional<DecayExpansion> dec;
  if (idx.index) dec = decay_constant(sys, idx);
  auto taylor = [&](double t) {
    if (!dec) return std::string();
    const double s = std::pow(std::abs(t), dec->exponent_a) * dec->constant_c;
    return format_number(t < 0 ? 1.0 + s : 1.0 - s);
  };

  const CayleyPair pair = cayley_forward(sys, tau);
  const GridFunction g = grid_function(pair, o.k_max);

  out << "# schema=" << kSchema << '\n';
  out << "# tau=" << format_number(tau) << ",k_max=" << o.k_max
      << ",index=" << (idx.index ? std::to_string(*idx.index) : std::string("none"))
      << ",c=" << (dec ? format_number(dec->constant_c) : std::string()) << '\n';
  out << "series,k,t,value,taylor\n";
  const double t_end = o.k_max * tau;
  const int samples = o.k_max == 0 ? 1 : o.curve_points;
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : t_end * i / (samples - 1);
    out << "curve,," << format_number(t) << ',' << format_number(propagator_norm(sys, t)) << ',' << taylor(t) << '\n';
  }
  for (int k = -o.k_max; k <= o.k_max; ++k) {
    const double t = k * tau;
    out << "marker," << k << ',' << format_number(t) << ',' << format_number(g.at(k)) << ',' << taylor(t) << '\n';
  }
  return 0;
}

int cmd_hilbert(const Options& o, std::ostream& out) {
  require_format(o, false);
  const HilbertForm form = hilbert_form(o.m);
  nlohmann::json body = to_json(hilbert_min(o.m));
  body["prefactor_exact"] = rational_string(decay_prefactor_exact(o.m));
  body["inverse_entry"] = hilbert_inverse_entry(o.m);
  body["congruence_holds"] = congruence_holds(form);
  const Lemma53Result l = lemma53_minimum(o.m);
  body["series_minimum"] = {{"min_value", l.min_value},
                     {"closed_form", l.closed_form},
                     {"conditioning_warning", l.conditioning_warning}};
  out << dump_report(envelope(o.tol, body)) << '\n';
  return 0;
}

int cmd_transform(const Options& o, std::ostream& out) {
  require_format(o, false);
  const CMatrix B = load(o);
  const TransformResult t =
      o.discrete ? maximally_contractive(B, o.epsilon, o.tol) : maximally_coercive(B, o.epsilon, o.tol);
  nlohmann::json body = to_json(t);
  if (!o.discrete && o.tau) {
    body["amplification"] = to_json(error_amplification_report(B, t.X, o.t_final, parse_scalar(*o.tau)));
  }
  out << dump_report(envelope(o.tol, body)) << '\n';
  return 0;
}

}  // namespace hypokit::cli
