#include "hypokit/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "hypokit/asymptotics.hpp"
#include "hypokit/commands.hpp"
#include "hypokit/errors.hpp"
#include "hypokit/hilbert_form.hpp"
#include "hypokit/lyapunov_transform.hpp"
#include "hypokit/random_systems.hpp"

namespace hypokit::cli {

namespace {

constexpr std::size_t kKeptMessages = 5;

class Recorder {
 public:
  explicit Recorder(PropertyTally& t) : t_(t) {}

  void check(bool ok, const std::string& what) {
    ++t_.checks;
    if (ok) return;
    ++t_.failures;
    if (t_.first_failures.size() < kKeptMessages) t_.first_failures.push_back(what);
  }

  template <typename F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const Error& e) {
      check(false, what + ": " + std::string(to_string(e.code())) + ": " + e.what());
    }
  }

 private:
  PropertyTally& t_;
};

std::string tag(int id, double tau) {
  std::ostringstream s;
  s << "system " << id << " tau " << tau;
  return s.str();
}

const double kTaus[] = {0.25, 0.5, 1.0};

void cayley_property(Recorder& rec, const std::vector<CorpusEntry>& corpus) {
  for (const auto& e : corpus) {
    rec.guarded(tag(e.id, 0), [&] {
      const ContinuousSystem sys = certify_semidissipative(e.B);
      for (double tau : kTaus) {
        const IndexPreservationReport r = verify_index_preservation(sys, tau);
        rec.check(r.pass && r.continuous_index == e.expected_index, tag(e.id, tau) + ": index not preserved");
        rec.check(r.residual_discrete < 1e-10 && r.residual_continuous < 1e-10 && r.roundtrip_residual < 1e-10,
                  tag(e.id, tau) + ": Cayley identity residual too large");
      }
    });
  }
}

void plateau_property(Recorder& rec, const std::vector<CorpusEntry>& corpus) {
  for (const auto& e : corpus) {
    rec.guarded(tag(e.id, 0.5), [&] {
      const CayleyPair pair = cayley_forward(certify_semidissipative(e.B), 0.5);
      const int m = e.expected_index;
      const GridFunction g = grid_function(pair, m + 1);
      bool flat = true;
      for (int j = 0; j <= m; ++j) flat = flat && std::abs(g.at(j) - 1.0) <= 1e-9;
      rec.check(flat, tag(e.id, 0.5) + ": norms before the index are not 1");
      rec.check(cayley_power_deficit(pair, m + 1) > 1e-9, tag(e.id, 0.5) + ": no contraction after the index");
    });
  }
}

// Below this deficit the rounding in B_d itself dominates 1 - phi_{m+1}.
constexpr double kResolvableDeficit = 1e-13;

void peano_property(Recorder& rec, const std::vector<CorpusEntry>& corpus) {
  for (const auto& e : corpus) {
    rec.guarded(tag(e.id, 0), [&] {
      const ContinuousSystem sys = certify_semidissipative(e.B);
      const int m = e.expected_index;
      const IndexReport idx = hypocoercivity_index(sys);
      const double ref = -std::tgamma(2.0 * m + 2.0) * decay_constant(sys, idx).constant_c;
      // Smallest dyadic tau whose deficit is still resolvable.
      std::optional<PeanoEstimate> last;
      for (int k = 3; k <= 12; ++k) {
        const double tau = std::ldexp(1.0, -k);
        const PeanoEstimate p = peano_estimate(cayley_forward(sys, tau), m);
        if (-p.estimate * std::pow(tau, 2 * m + 1) < kResolvableDeficit) break;
        rec.check(p.collapse_residual < 1e-9, tag(e.id, tau) + ": stencil does not collapse");
        rec.check(p.lower_order_residual < 1e-9, tag(e.id, tau) + ": lower-order differences not delta");
        last = p;
      }
      rec.check(last && std::abs(last->estimate / ref - 1.0) < 0.02,
                tag(e.id, last ? last->tau : 0.0) + ": Peano estimate off its limit");
    });
  }
}

void hilbert_property(Recorder& rec, std::uint64_t seed, int count) {
  for (int m = 0; m <= 6; ++m) {
    const std::string what = "m = " + std::to_string(m);
    rec.guarded(what, [&] {
      const HilbertMin h = hilbert_min(m);
      rec.check(std::abs(h.solved / h.value - 1.0) < 1e-9, what + ": constrained minimum off closed form");
      rec.check(congruence_holds(hilbert_form(m)), what + ": congruence fails");
      const Eigen::MatrixXd Hinv = hilbert_form(m).H_double().inverse();
      rec.check(std::abs(Hinv(m, m) / hilbert_inverse_entry(m) - 1.0) < 1e-6, what + ": inverse entry mismatch");
      if (m <= 5) {
        const PsdKernelReport psd = psd_kernel_check(m, count, seed);
        rec.check(psd.violations == 0, what + ": sampled kernel inequality violated");
      }
    });
  }
}

void series_minimum_property(Recorder& rec) {
  for (int m = 0; m <= 6; ++m) {
    const Lemma53Result r = lemma53_minimum(m);
    rec.check(std::abs(r.min_value / r.closed_form - 1.0) < 1e-9, "m = " + std::to_string(m) + ": minimum mismatch");
  }
}

void transform_property(Recorder& rec, std::uint64_t seed, int count) {
  const int systems = std::max(1, count / 2);
  for (int i = 0; i < systems; ++i) {
    const std::string what = "stable system " + std::to_string(i);
    rec.guarded(what, [&] {
      std::mt19937_64 rng = make_stream(seed ^ 0x5A17ULL, static_cast<std::uint64_t>(i));
      const CMatrix B = random_stable_semisimple(rng, 2 + i % 5);
      const TransformResult c = maximally_coercive(B);
      rec.check(std::abs(c.achieved / c.target - 1.0) < 1e-6, what + ": coercive margin not tight");
      rec.check(c.witness && c.witness_residual < 1e-6, what + ": coercive witness residual");
      // exp(-B) has the same semi-simple dominant structure.
      const CMatrix Bd = expm(-B);
      const TransformResult d = maximally_contractive(Bd);
      rec.check(std::abs(d.achieved / d.target - 1.0) < 1e-6, what + ": contractive norm not tight");
    });
  }
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"cayley", "plateau", "peano", "hilbert", "series_minimum", "transform"};
  return names;
}

std::vector<PropertyTally> run_properties(std::uint64_t seed, int count, const std::vector<std::string>& only) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "--count must be positive", count);
  for (const auto& name : only) {
    const auto& all = property_names();
    if (std::find(all.begin(), all.end(), name) == all.end()) {
      throw Error(ErrorCode::InvalidArgument, "unknown property '" + name + "'");
    }
  }
  const std::vector<CorpusEntry> corpus = index_corpus(seed, count);
  const std::map<std::string, std::function<void(Recorder&)>> runners{
      {"cayley", [&](Recorder& r) { cayley_property(r, corpus); }},
      {"plateau", [&](Recorder& r) { plateau_property(r, corpus); }},
      {"peano", [&](Recorder& r) { peano_property(r, corpus); }},
      {"hilbert", [&](Recorder& r) { hilbert_property(r, seed, count); }},
      {"series_minimum", [&](Recorder& r) { series_minimum_property(r); }},
      {"transform", [&](Recorder& r) { transform_property(r, seed, count); }},
  };
  std::vector<PropertyTally> out;
  for (const auto& name : property_names()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    PropertyTally t;
    t.name = name;
    Recorder rec(t);
    runners.at(name)(rec);
    out.push_back(std::move(t));
  }
  return out;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::vector<PropertyTally> tallies = run_properties(o.seed, o.count, o.only);
  int failures = 0;
  for (const auto& t : tallies) failures += t.failures;
  if (o.format == "json") {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& t : tallies) {
      props.push_back({{"name", t.name}, {"checks", t.checks}, {"failures", t.failures}, {"examples", t.first_failures}});
    }
    out << dump_report(envelope(o.tol, {{"seed", o.seed}, {"count", o.count}, {"properties", props},
                                        {"pass", failures == 0}}))
        << '\n';
  } else {
    out << "seed " << o.seed << " count " << o.count << '\n';
    for (const auto& t : tallies) {
      out << t.name << ": " << (t.checks - t.failures) << '/' << t.checks << " passed\n";
      for (const auto& msg : t.first_failures) out << "  " << msg << '\n';
    }
    out << (failures == 0 ? "all properties pass" : std::to_string(failures) + " failures") << '\n';
  }
  return failures == 0 ? 0 : 3;
}

}  // namespace hypokit::cli
