#include <benchmark/benchmark.h>

#include <random>

#include "sidkit/conditioning.hpp"
#include "sidkit/identify.hpp"
#include "sidkit/lti.hpp"
#include "sidkit/perturbation.hpp"

using namespace sidkit;

namespace {

StateSpaceModel benchModel(Index n, Index m, Index p) {
    AssumptionOneSpec spec;
    spec.n = n;
    spec.m = m;
    spec.p = p;
    spec.seed = 1;
    return randomAssumptionOneModel(spec);
}

HankelSet benchHankel(const StateSpaceModel& model, Index i, Index j) {
    const auto inputs = randomExcitation(model.p(), 2 * i + j - 1, 2);
    return buildHankelSet(simulate(model, inputs), {i, j});
}

void BM_BlockHankel(benchmark::State& state) {
    const Index i = state.range(0);
    const Index j = 4 * i * 4;
    const auto inputs = randomExcitation(2, 2 * i + j - 1, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(blockHankel(inputs, 0, 2 * i - 1, j));
    }
}
BENCHMARK(BM_BlockHankel)->Arg(5)->Arg(10)->Arg(20);

void BM_Pinv(benchmark::State& state) {
    std::mt19937_64 eng(4);
    std::normal_distribution<double> normal;
    const Index n = state.range(0);
    Matrix m(n, 4 * n);
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) m(r, c) = normal(eng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(pinv(m));
    }
}
BENCHMARK(BM_Pinv)->Arg(8)->Arg(32)->Arg(128);

void BM_ObliqueProjection(benchmark::State& state) {
    const Index n = 3;
    const auto model = benchModel(n, 2, 2);
    const Index i = state.range(0);
    const HankelSet h = benchHankel(model, i, 4 * i * 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(obliqueProject(h.Yf, h.Uf, h.Wp));
    }
}
BENCHMARK(BM_ObliqueProjection)->Arg(5)->Arg(10)->Arg(20);

void BM_UnifyingPipeline(benchmark::State& state) {
    const auto model = benchModel(3, 2, 2);
    const Index i = state.range(0);
    const HankelSet h = benchHankel(model, i, 4 * i * 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(runUnifyingPipeline(h, WeightingScheme::identity()));
    }
}
BENCHMARK(BM_UnifyingPipeline)->Arg(5)->Arg(10);

void BM_IdentifyState(benchmark::State& state) {
    const auto model = benchModel(state.range(0), 2, 2);
    const Index i = model.n() + 2;
    const HankelSet h = benchHankel(model, i, 4 * i * 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(identifyStateApproach(h, WeightingScheme::identity(), {}));
    }
}
BENCHMARK(BM_IdentifyState)->Arg(2)->Arg(4)->Arg(6);

void BM_IdentifyShift(benchmark::State& state) {
    const auto model = benchModel(state.range(0), 2, 2);
    const Index i = model.n() + 2;
    const HankelSet h = benchHankel(model, i, 4 * i * 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(identifyShiftInvariance(h, WeightingScheme::identity(), {}));
    }
}
BENCHMARK(BM_IdentifyShift)->Arg(2)->Arg(4)->Arg(6);

void BM_PerturbationTrial(benchmark::State& state) {
    const auto model = benchModel(3, 2, 2);
    PerturbationConfig cfg;
    cfg.i = 5;
    cfg.j = 4 * cfg.i * 4;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            runPerturbationTrial(model, cfg, Method::Shift, 1e-6, seed++));
    }
}
BENCHMARK(BM_PerturbationTrial);

void BM_ConditioningTrialBlock(benchmark::State& state) {
    const Index n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(runFig2Experiment(n, n, 100, 5));
    }
}
BENCHMARK(BM_ConditioningTrialBlock)->Arg(6)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
