#include <cmath>

#include <benchmark/benchmark.h>

#include "renyi/glue/kde.hpp"
#include "renyi/glue/pipeline.hpp"
#include "renyi/glue/rng.hpp"
#include "renyi/glue/sampler.hpp"
#include "renyi/measure_ops.hpp"
#include "renyi/model_zoo.hpp"
#include "renyi/posterior_ops.hpp"

using namespace renyi;

namespace {

void BM_WindowMassSmooth(benchmark::State& state) {
    const RenyiState s =
        RenyiState::half_line([](double l) { return -2.0 * l - std::log(l); });
    const WindowSet w = WindowSet::interval(0.5, 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(window_mass(s, w));
}
BENCHMARK(BM_WindowMassSmooth);

void BM_WindowMassDoublingTail(benchmark::State& state) {
    const RenyiState s = RenyiState::half_line([](double l) { return -l - std::log(l); });
    const WindowSet w = WindowSet::interval(0.5, kInf);
    for (auto _ : state) benchmark::DoNotOptimize(window_mass(s, w));
}
BENCHMARK(BM_WindowMassDoublingTail);

void BM_Posterior2D(benchmark::State& state) {
    const JointModel model = exponential_ratio_model([](double) { return 0.0; });
    const RenyiState post = posterior_state(model, Point{1.0, 1.0});
    const WindowSet w = WindowSet::box({0.2, 2.0}, {0.2, 2.0});
    for (auto _ : state) benchmark::DoNotOptimize(window_mass(post, w));
}
BENCHMARK(BM_Posterior2D);

void BM_SampleRestricted(benchmark::State& state) {
    const RenyiState target =
        RenyiState::half_line([](double l) { return -l - std::log(l); });
    glue::ChainConfig cfg;
    cfg.chain_length = static_cast<std::size_t>(state.range(0));
    cfg.burn_in = cfg.chain_length / 10;
    for (auto _ : state)
        benchmark::DoNotOptimize(glue::sample_restricted(target, {0.5, 2.0}, cfg, 0));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleRestricted)->Arg(50'000)->Arg(200'000);

void BM_Kde(benchmark::State& state) {
    glue::RngStream rng(1);
    std::vector<double> samples(static_cast<std::size_t>(state.range(0)));
    for (double& s : samples) s = 2.0 + 3.0 * rng.uniform01();
    for (auto _ : state)
        benchmark::DoNotOptimize(glue::kde_log_density(samples, {2.0, 5.0}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Kde)->Arg(50'000)->Arg(180'000);

void BM_GluePipeline(benchmark::State& state) {
    const RenyiState target =
        RenyiState::half_line([](double l) { return -l - std::log(l); });
    glue::GluePipelineConfig cfg;
    cfg.scheme = glue::WindowScheme::geometric(1e-3, 10.0, 6, 0.5);
    cfg.chain.chain_length = static_cast<std::size_t>(state.range(0));
    cfg.chain.burn_in = cfg.chain.chain_length / 10;
    cfg.chain.master_seed = 42;
    for (auto _ : state)
        benchmark::DoNotOptimize(glue::run_glue_pipeline(target, cfg));
}
BENCHMARK(BM_GluePipeline)->Arg(50'000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
