#include <benchmark/benchmark.h>

#include <cmath>

#include "gkfade/ber.hpp"
#include "gkfade/gk_channel.hpp"
#include "gkfade/montecarlo.hpp"
#include "gkfade/special_fn.hpp"

namespace {

using namespace gkfade;

void BM_LogGammaComplex(benchmark::State& state) {
  Complex s(0.3, 0.0);
  for (auto _ : state) {
    s += Complex(0.0, 1e-3);
    benchmark::DoNotOptimize(log_gamma(s));
  }
}
BENCHMARK(BM_LogGammaComplex);

void BM_GkCdf(benchmark::State& state) {
  const GkParams p{1.0, 0.5, 10.0};
  for (auto _ : state) benchmark::DoNotOptimize(cdf(p, 3.0));
}
BENCHMARK(BM_GkCdf)->Unit(benchmark::kMicrosecond);

void BM_BerClosedForm(benchmark::State& state) {
  const ScLink link{{1.0, 0.5, 10.0}, {2.0, 4.0, 10.0}};
  for (auto _ : state) benchmark::DoNotOptimize(ber_closed_form(link, Modulation::bpsk()));
}
BENCHMARK(BM_BerClosedForm)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const ScLink link{{1.0, 0.5, 10.0}, {2.0, 4.0, 10.0}};
  McConfig cfg;
  cfg.samples = static_cast<std::uint64_t>(state.range(0));
  cfg.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_ber(link, Modulation::bpsk(), cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
