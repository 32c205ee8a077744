#include <benchmark/benchmark.h>

#include "topoact/data.hpp"
#include "topoact/network.hpp"
#include "topoact/rng.hpp"

namespace {

using namespace topoact;

Dataset bench_dataset() {
    Rng rng(11);
    return gen_circles(1000, 0.05, 0.5, rng);
}

void forward_pass(benchmark::State& state, ActivationKind kind) {
    const Dataset data = bench_dataset();
    NetworkSpec spec;
    spec.input_dim = data.dim();
    spec.hidden_width = 4;
    spec.hidden_depth = 1;
    spec.candidate_activation = kind;
    Rng rng(3);
    const Network net = build_network(spec, rng);
    for (auto _ : state) {
        ForwardCache cache = forward(net, data.features);
        benchmark::DoNotOptimize(cache.probs.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(data.size()));
}

void train_epochs(benchmark::State& state, ActivationKind kind) {
    const Dataset data = bench_dataset();
    Rng split_rng(5);
    const SplitDataset split_data = split(data, 0.7, split_rng);
    NetworkSpec spec;
    spec.input_dim = data.dim();
    spec.hidden_width = 4;
    spec.hidden_depth = 1;
    spec.candidate_activation = kind;
    TrainOptions opts;
    opts.epochs = 5;
    for (auto _ : state) {
        Rng rng(9);
        TrainResult result = train(spec, split_data, opts, rng);
        benchmark::DoNotOptimize(result.report.final_val_loss);
    }
}

}  // namespace

BENCHMARK_CAPTURE(forward_pass, relu, ActivationKind::Relu);
BENCHMARK_CAPTURE(forward_pass, parametricsplit, ActivationKind::ParametricSplit);

BENCHMARK_CAPTURE(train_epochs, relu, ActivationKind::Relu);
BENCHMARK_CAPTURE(train_epochs, tanh, ActivationKind::Tanh);
BENCHMARK_CAPTURE(train_epochs, prelu, ActivationKind::PRelu);
BENCHMARK_CAPTURE(train_epochs, smoothsplit, ActivationKind::SmoothSplit);
BENCHMARK_CAPTURE(train_epochs, parametricsplit, ActivationKind::ParametricSplit);

BENCHMARK_MAIN();
