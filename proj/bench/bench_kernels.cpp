// Serial reference vs OpenMP for the three parallel kernels.
#include <benchmark/benchmark.h>

#include "rtm/cli.hpp"
#include "rtm/oracle.hpp"

namespace {

rtm::Execution mode(const benchmark::State& state) {
    return state.range(0) ? rtm::Execution::Parallel : rtm::Execution::Serial;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_VerifyDecoder(benchmark::State& state) {
    rtm::VerifyOptions o;
    o.execution = mode(state);
    const auto spec = rtm::CodeSpec::c3(14, 2, 3);
    const rtm::HeadLayout layout({4, 4});
    const auto ec = rtm::ErrorClass::deletions(2);
    std::uint64_t trials = 0;
    for (auto _ : state) {
        const auto rep = rtm::verify_decoder(spec, layout, ec, rtm::DecoderId::MultiHeadDeletions, o);
        benchmark::DoNotOptimize(rep.pass);
        trials += rep.trials;
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(trials));
    label(state);
}

void BM_VerifyCounts(benchmark::State& state) {
    rtm::VerifyOptions o;
    o.execution = mode(state);
    for (auto _ : state) {
        const auto rep = rtm::verify_counts(14, 3, o);
        benchmark::DoNotOptimize(rep.pass);
    }
    label(state);
}

void BM_Simulate(benchmark::State& state) {
    const auto spec = rtm::CodeSpec::c1(1024, 11);
    const rtm::HeadLayout layout({11});
    const auto ec = rtm::ErrorClass::deletions(1);
    const std::uint64_t trials = 2000;
    for (auto _ : state) {
        const auto rep = rtm::cli::simulate(spec, layout, ec, rtm::DecoderId::TwoHeadDeletion, 1, trials, mode(state));
        benchmark::DoNotOptimize(rep.successes);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
    label(state);
}

}  // namespace

BENCHMARK(BM_VerifyDecoder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
