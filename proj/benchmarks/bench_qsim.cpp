#include <benchmark/benchmark.h>

#include "pvqc/hhl.hpp"
#include "pvqc/qsim.hpp"

namespace {

using namespace pvqc;

void BM_RandomCircuit(benchmark::State& state) {
  const auto c = qsim::random_circuit(static_cast<std::uint32_t>(state.range(0)),
                                      static_cast<std::uint32_t>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(qsim::run(c));
}
BENCHMARK(BM_RandomCircuit)
    ->ArgsProduct({{5, 10, 15}, {10, 100, 300}})
    ->Unit(benchmark::kMillisecond);

void BM_Hhl(benchmark::State& state) {
  const auto inst = hhl::representable_instance(static_cast<std::size_t>(state.range(0)), 6, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hhl::solve(inst));
}
BENCHMARK(BM_Hhl)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
