#include <benchmark/benchmark.h>

#include "pvqc/commit.hpp"
#include "pvqc/tlp.hpp"

namespace {

using namespace pvqc;

void BM_ChainStep(benchmark::State& state) {
  Digest s{};
  std::uint64_t i = 0;
  for (auto _ : state) {
    s = tlp::chain_step(s, i++);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChainStep);

void BM_Solve(benchmark::State& state) {
  crypto::DeterministicRng rng(1);
  auto [tpk, tsk] = tlp::setup(256, static_cast<std::uint64_t>(state.range(0)), rng);
  auto o = tlp::gen_puzzle(rng.bytes(64), tpk, tsk, rng);
  for (auto _ : state) benchmark::DoNotOptimize(tlp::solve(tpk, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Solve)->RangeMultiplier(2)->Range(1 << 10, 1 << 16)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_GenPuzzle(benchmark::State& state) {
  crypto::DeterministicRng rng(2);
  auto [tpk, tsk] = tlp::setup(256, static_cast<std::uint64_t>(state.range(0)), rng);
  const auto m = rng.bytes(64);
  for (auto _ : state) benchmark::DoNotOptimize(tlp::gen_puzzle(m, tpk, tsk, rng));
}
BENCHMARK(BM_GenPuzzle)->Arg(1 << 10)->Arg(1 << 16);

void BM_Commit(benchmark::State& state) {
  crypto::DeterministicRng rng(3);
  const auto m = rng.bytes(32);
  const auto r = rng.bytes<32>();
  for (auto _ : state) benchmark::DoNotOptimize(commit::commit(m, r));
}
BENCHMARK(BM_Commit);

}  // namespace
