#include <benchmark/benchmark.h>

#include "hypokit/asymptotics.hpp"
#include "hypokit/cayley.hpp"
#include "hypokit/coercivity.hpp"
#include "hypokit/hilbert_form.hpp"
#include "hypokit/linalg.hpp"
#include "hypokit/lyapunov_transform.hpp"
#include "hypokit/random_systems.hpp"

namespace {

using namespace hypokit;

// Semi-dissipative generator of size n with rank-1 dissipation.
CMatrix sample_system(int n) {
  std::mt19937_64 rng = make_stream(7, static_cast<std::uint64_t>(n));
  return random_semidissipative(rng, n, 1, true);
}

void BM_Expm(benchmark::State& state) {
  const CMatrix B = sample_system(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(expm(-B));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(16)->Arg(64);

void BM_HypocoercivityIndex(benchmark::State& state) {
  const ContinuousSystem sys = certify_semidissipative(sample_system(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(hypocoercivity_index(sys));
}
BENCHMARK(BM_HypocoercivityIndex)->Arg(4)->Arg(8)->Arg(16);

void BM_SolveLyapunov(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng = make_stream(11, static_cast<std::uint64_t>(n));
  const CMatrix A = -random_stable_semisimple(rng, n);
  const CMatrix Q = CMatrix::Identity(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(A, Q));
}
BENCHMARK(BM_SolveLyapunov)->Arg(4)->Arg(16)->Arg(64);

void BM_CayleyIndexPreservation(benchmark::State& state) {
  const ContinuousSystem sys = certify_semidissipative(sample_system(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(verify_index_preservation(sys, 0.5));
}
BENCHMARK(BM_CayleyIndexPreservation)->Arg(4)->Arg(8);

void BM_PeanoEstimate(benchmark::State& state) {
  const ContinuousSystem sys = certify_semidissipative(sample_system(4));
  const int m = *hypocoercivity_index(sys).index;
  const CayleyPair pair = cayley_forward(sys, 0.125);
  for (auto _ : state) benchmark::DoNotOptimize(peano_estimate(pair, m));
}
BENCHMARK(BM_PeanoEstimate);

void BM_HilbertMin(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_min(m));
}
BENCHMARK(BM_HilbertMin)->DenseRange(1, 6, 1);

void BM_MaximallyCoercive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng = make_stream(13, static_cast<std::uint64_t>(n));
  const CMatrix B = random_stable_semisimple(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(maximally_coercive(B));
}
BENCHMARK(BM_MaximallyCoercive)->Arg(4)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
