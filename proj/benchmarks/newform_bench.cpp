#include <benchmark/benchmark.h>

#include "mfzero/newform_data.hpp"
#include "mfzero/primes.hpp"
#include "mfzero/qseries.hpp"

namespace {

void BM_GenDelta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mfzero::gen_delta(state.range(0)));
}
BENCHMARK(BM_GenDelta)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_GenLevelOne(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mfzero::gen_level1_eigenform(26, state.range(0)));
}
BENCHMARK(BM_GenLevelOne)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_NttMultiply(benchmark::State& state) {
  const std::size_t len = state.range(0);
  const auto& p = mfzero::detail::ntt_primes().front();
  std::vector<std::uint32_t> a(len), b(len);
  for (std::size_t i = 0; i < len; ++i) {
    a[i] = static_cast<std::uint32_t>((i * 2654435761u) % p.modulus);
    b[i] = static_cast<std::uint32_t>((i * 40503u + 7) % p.modulus);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mfzero::detail::multiply_truncated(a, b, len, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_NttMultiply)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity(benchmark::oNLogN);

void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mfzero::primes_up_to(state.range(0)));
}
BENCHMARK(BM_Sieve)->Arg(100000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_CountPoints(benchmark::State& state) {
  const mfzero::AInvariants a{0, -1, 1, -10, -20};
  const std::uint64_t p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(mfzero::count_points(a, p));
}
BENCHMARK(BM_CountPoints)->Arg(101)->Arg(9973);

}  // namespace
