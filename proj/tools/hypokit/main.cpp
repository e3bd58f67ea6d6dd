#include <fstream>
#include <functional>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "hypokit/commands.hpp"
#include "hypokit/errors.hpp"
#include "hypokit/report_json.hpp"

namespace {

using hypokit::cli::Options;

int exit_code(hypokit::ErrorCategory c) {
  switch (c) {
    case hypokit::ErrorCategory::Input:
      return 1;
    case hypokit::ErrorCategory::Precondition:
      return 2;
    case hypokit::ErrorCategory::Consistency:
      return 3;
  }
  return 3;
}

void emit_error(std::ostream& out, const std::string& code, const std::string& message, double value) {
  nlohmann::json err = {{"code", code}, {"message", message}};
  err["value"] = std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
  out << nlohmann::json{{"schema", hypokit::kSchema}, {"error", err}}.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Hypocoercivity and hypocontractivity analysis of linear systems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hypokit 0.1.0");

  auto tol_range = CLI::Range(0.0, 1.0);
  app.add_option("--tol-rank", o.tol.rank_rel_tol, "relative rank tolerance")->check(tol_range);
  app.add_option("--tol-psd", o.tol.psd_rel_tol, "relative PSD clamp tolerance")->check(tol_range);
  app.add_option("--tol-plateau", o.tol.norm_plateau_tol, "norm plateau tolerance")->check(tol_range);
  app.add_option("--tol-cluster", o.tol.cluster_tol, "eigenvalue cluster tolerance")->check(tol_range);
  app.add_option("--out", o.output, "write the report to this file instead of stdout");

  using Runner = std::function<int(const Options&, std::ostream&)>;
  Runner runner;
  auto add = [&](const char* name, const char* help, Runner r) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&runner, r] { runner = r; });
    return sub;
  };
  auto input = [&](CLI::App* sub) { sub->add_option("input", o.input, "matrix file")->required(); };
  auto format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember(allowed))->capture_default_str();
  };

  CLI::App* analyze = add("analyze", "certify the input and compute its index and decay constant", hypokit::cli::cmd_analyze);
  input(analyze);
  analyze->add_flag("--discrete", o.discrete, "treat the input as a discrete propagator");
  analyze->add_option("--m-max", o.m_max, "largest index to test");

  CLI::App* decay = add("decay", "short-time expansion of the propagator norm", hypokit::cli::cmd_decay);
  input(decay);
  decay->add_option("--tau-grid", o.tau_grid, "tau grid for the contraction onset, first:last:geometric");
  decay->add_option("--m-max", o.m_max, "largest index to test");

  CLI::App* cayley = add("cayley", "index preservation under the scaled Cayley transform", hypokit::cli::cmd_cayley);
  input(cayley);
  cayley->add_option("--tau", o.tau, "single step size (accepts 2^-k)");
  cayley->add_option("--tau-grid", o.tau_grid, "first:last:geometric or first:last:N");
  format(cayley, {"json", "csv"});

  CLI::App* sweep = add("sweep", "CSV of the propagator norm curve and Cayley grid markers", hypokit::cli::cmd_sweep);
  input(sweep);
  sweep->add_option("--tau", o.tau, "step size")->required();
  sweep->add_option("--k-max", o.k_max, "largest marker index")->capture_default_str();
  sweep->add_option("--points", o.curve_points, "curve samples on [0, k_max tau]")->capture_default_str();

  CLI::App* hilbert = add("hilbert", "Hilbert-form minimum and decay prefactor", hypokit::cli::cmd_hilbert);
  hilbert->add_option("--m", o.m, "index")->required();

  CLI::App* transform = add("transform", "maximally coercive or contractive change of basis", hypokit::cli::cmd_transform);
  input(transform);
  transform->add_flag("--discrete", o.discrete, "maximally contractive instead of coercive");
  transform->add_option("--epsilon", o.epsilon, "suboptimality margin");
  transform->add_option("--tau", o.tau, "midpoint step for the error amplification report");
  transform->add_option("--t-final", o.t_final, "horizon for the error amplification report")->capture_default_str();

  CLI::App* verify = add("verify", "seeded property corpus", hypokit::cli::cmd_verify);
  verify->add_option("--seed", o.seed, "corpus seed")->capture_default_str();
  verify->add_option("--count", o.count, "corpus size")->capture_default_str();
  verify->add_option("--only", o.only, "restrict to these properties")->delimiter(',');
  verify->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify->preparse_callback([&o](std::size_t) { o.format = "text"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      emit_error(std::cout, "IoError", "cannot open output file " + o.output, std::nan(""));
      return 1;
    }
  }
  std::ostream& out = o.output.empty() ? std::cout : file;
  try {
    o.tol.validate();
    return runner(o, out);
  } catch (const hypokit::Error& e) {
    std::cerr << "hypokit: " << hypokit::to_string(e.code()) << ": " << e.what() << '\n';
    emit_error(out, std::string(hypokit::to_string(e.code())), e.what(), e.value());
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "hypokit: internal error: " << e.what() << '\n';
    emit_error(out, "InternalError", e.what(), std::nan(""));
    return 3;
  }
}
