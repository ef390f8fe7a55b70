// Serial reference kernel against the OpenMP kernel on saturation from a fresh seed.

#include "taxoprob/engine.hpp"
#include "taxoprob/kb_format.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace taxoprob;

namespace {

const ParsedKb& fixture(const std::string& name)
{
    static std::map<std::string, ParsedKb> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, parse_kb(read_text_file(std::string(TAXOPROB_BENCH_DATA) + "/" + name))).first;
    return it->second;
}

const char* const kFixtures[] = {"mutex_10.kb", "chaining.kb", "medical_reduced.kb", "medical.kb"};

void saturate_fixture(benchmark::State& st, SweepKernel kernel)
{
    const ParsedKb& parsed = fixture(kFixtures[st.range(0)]);
    EngineConfig config;
    config.kernel = kernel;
    std::vector<ConjunctiveEvent> extra;
    for (const auto& g : parsed.queries) {
        extra.push_back(g.conclusion);
        extra.push_back(g.premise);
    }
    const DeductionState seeded = seed_state(parsed.kb, config, extra);
    std::size_t steps = 0;
    for (auto _ : st) {
        DeductionState state = seeded;
        saturate(state, parsed.kb, config);
        steps = state.trace().size();
        benchmark::DoNotOptimize(steps);
    }
    st.SetLabel(std::string(kFixtures[st.range(0)]) + " pool=" + std::to_string(seeded.pool().size()) +
                " steps=" + std::to_string(steps));
}

void BM_SweepSerial(benchmark::State& st)
{
    saturate_fixture(st, SweepKernel::Serial);
}

void BM_SweepParallel(benchmark::State& st)
{
    saturate_fixture(st, SweepKernel::Parallel);
}

} // namespace

// The serial kernel needs minutes on the full medical KB, so it stops at the reduced one.
BENCHMARK(BM_SweepSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
