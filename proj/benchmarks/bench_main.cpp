#include <benchmark/benchmark.h>

#include <random>

#include "dsdkm/dsdkm.hpp"

using namespace dsdkm;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

DistanceSpec spec_for(int index) {
    const auto kind = all_metric_kinds[static_cast<std::size_t>(index)];
    switch (kind) {
    case MetricKind::Minkowski: return DistanceSpec::minkowski(1.5);
    case MetricKind::DesignSpecification: return DistanceSpec::design_specification(1.523);
    default: return DistanceSpec{kind, std::nullopt};
    }
}

const Dataset& materials() {
    static const Dataset data = [] {
        Dataset d = generate_synthetic(default_material_specs(), default_seed);
        d.points = fit_transform(d.points).second;
        return d;
    }();
    return data;
}

void BM_Distance(benchmark::State& state) {
    const auto spec = spec_for(static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    const auto x = random_vector(rng, 25);
    const auto y = random_vector(rng, 25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance(spec, x, y));
    }
    state.SetLabel(to_string(spec));
}
BENCHMARK(BM_Distance)->DenseRange(0, 5);

void BM_Assign(benchmark::State& state) {
    const auto& data = materials();
    const std::vector<FeatureVector> centroids(data.points.begin(), data.points.begin() + 3);
    const auto spec = spec_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assign(data.points, centroids, spec));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
    state.SetLabel(to_string(spec));
}
BENCHMARK(BM_Assign)->DenseRange(0, 5);

void BM_Fit(benchmark::State& state) {
    const auto& data = materials();
    ClusteringConfig config;
    config.metric = spec_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit(data.points, config));
    }
    state.SetLabel(to_string(config.metric));
}
BENCHMARK(BM_Fit)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
