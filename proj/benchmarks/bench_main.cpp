#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "moedr/entropy.hpp"
#include "moedr/nsga2.hpp"
#include "moedr/wrapper.hpp"

namespace {

const moedr::Dataset& dataset(const char* name) {
    static std::map<std::string, moedr::Dataset> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, moedr::load_csv(std::string(MOEDR_DATA_DIR) + "/" + name + ".csv")).first;
    return it->second;
}

void BM_InfoGain(benchmark::State& state) {
    const auto& pima = dataset("pima");
    const auto col = pima.values.column(1);
    for (auto _ : state) benchmark::DoNotOptimize(moedr::info_gain(pima.labels, col, 120.0, 2));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pima.rows()));
}
BENCHMARK(BM_InfoGain);

void BM_NondominatedSort(benchmark::State& state) {
    moedr::Rng rng(1);
    std::vector<moedr::ObjectiveVector> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts) p = {-rng.uniform(), rng.uniform()};
    for (auto _ : state) benchmark::DoNotOptimize(moedr::fast_nondominated_sort(pts));
}
BENCHMARK(BM_NondominatedSort)->Arg(60)->Arg(200)->Arg(1000);

void BM_WrapperFitness(benchmark::State& state) {
    const auto& wis = dataset("wisconsin");
    const auto kind = state.range(0) == 0 ? moedr::LearnerKind::nb()
                      : state.range(0) == 1 ? moedr::LearnerKind::c45()
                                            : moedr::LearnerKind::svm_linear();
    const moedr::WrapperFitness fit(wis, {kind, 10, 1});
    moedr::DecodedView view;
    view.selected = {0, 1, 2, 5, 6};
    view.discretized = {{1, 3.0}, {5, 4.0}};
    for (auto _ : state) benchmark::DoNotOptimize(fit.accuracy(view));
    state.SetLabel(kind.name());
}
BENCHMARK(BM_WrapperFitness)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Generation(benchmark::State& state) {
    const auto& wis = dataset("wisconsin");
    moedr::EngineConfig cfg;
    cfg.population = 30;
    cfg.generations = 1;
    for (auto _ : state) {
        moedr::Rng rng(7);
        benchmark::DoNotOptimize(moedr::evolve(wis, cfg, {moedr::LearnerKind::nb(), 10, 1}, rng));
    }
}
BENCHMARK(BM_Generation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
