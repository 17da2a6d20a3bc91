// Parallel vs serial frequency sweep of the default 2 GHz design with two
// mirrored stub pairs. Run with OMP_NUM_THREADS to vary the thread count.
#include "cfilt/optimizer.hpp"
#include "cfilt/response.hpp"
#include "cfilt/synthesis.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace cfilt;

struct Fixture {
    FilterSpec spec;
    std::vector<SectionDesign> sections = synthesize(spec);
    StubConfig stubs{{{30.0, 4.3e9, 1}, {30.0, 4.3e9, 3}, {30.0, 6.0e9, 2}, {30.0, 6.0e9, 2}}};

    NetworkBuilder builder() const {
        return [this](double f) { return build_proposed(sections, stubs, f, spec); };
    }
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

SweepConfig config_for(benchmark::State& state) {
    SweepConfig cfg;
    cfg.n_points = static_cast<int>(state.range(0));
    return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto cfg = config_for(state);
    const auto builder = fixture().builder();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(builder, cfg, 50.0));
    state.SetItemsProcessed(state.iterations() * cfg.n_points);
}

void BM_SweepParallel(benchmark::State& state) {
    const auto cfg = config_for(state);
    const auto builder = fixture().builder();
    for (auto _ : state) benchmark::DoNotOptimize(sweep(builder, cfg, 50.0));
    state.SetItemsProcessed(state.iterations() * cfg.n_points);
}

void BM_ObjectiveEvaluation(benchmark::State& state) {
    const auto& fx = fixture();
    const SweepConfig cfg;
    const ObjectiveSpec obj;
    for (auto _ : state) {
        const auto trace = sweep_serial(fx.builder(), cfg, fx.spec.z0_ohm);
        benchmark::DoNotOptimize(objective(trace, obj, fx.spec.f0_hz, fx.spec.delta));
    }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(691)->Arg(6901)->Arg(69001);
BENCHMARK(BM_SweepParallel)->Arg(691)->Arg(6901)->Arg(69001);
BENCHMARK(BM_ObjectiveEvaluation);

BENCHMARK_MAIN();
