#include <benchmark/benchmark.h>

#include "contactkit/winding.hpp"

using namespace contactkit;

namespace {

struct Fixture {
    WeinsteinModel model;
    DoubledSpace ds;
    explicit Fixture(int n)
        : model(make_flat_model(n)),
          ds(make_doubled_space(model, cutoff_equation(model, default_cutoff(model)))) {}
};

ChartPoint family_point(const Fixture& fx, double theta) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(fx.ds.wdim() + 2);
    x[fx.ds.wdim() - 2] = 0.5;
    x[fx.ds.wdim()] = -1.0;
    x[fx.ds.wdim() + 1] = theta;
    return ChartPoint(fx.ds.chart, x);
}

}  // namespace

static void BM_GrayFlowLeg(benchmark::State& state) {
    Fixture fx(static_cast<int>(state.range(0)));
    ChartPoint p = family_point(fx, 0.7);
    for (auto _ : state) {
        FlowResult r = psi_c(fx.ds, p, 1);
        benchmark::DoNotOptimize(r.endpoint.coords().sum());
    }
}
BENCHMARK(BM_GrayFlowLeg)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_ContactVolume(benchmark::State& state) {
    Fixture fx(static_cast<int>(state.range(0)));
    ChartPoint p = family_point(fx, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(contact_volume(fx.ds, p));
}
BENCHMARK(BM_ContactVolume)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

static void BM_WindingPipeline(benchmark::State& state) {
    Fixture fx(1);
    InvariantRunSettings settings;
    settings.theta_samples = 32;
    for (auto _ : state) {
        WindingReport rep = run_invariant_pipeline(fx.ds, fx.model, static_cast<int>(state.range(0)),
                                                   settings);
        benchmark::DoNotOptimize(rep.winding);
    }
}
BENCHMARK(BM_WindingPipeline)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
