#include <benchmark/benchmark.h>

#include <vector>

#include "topoact/activation.hpp"
#include "topoact/rng.hpp"

namespace {

using namespace topoact;

ActivationState bench_state(ActivationKind kind) {
    Rng rng(42);
    return init_activation(kind, rng);
}

std::vector<double> bench_inputs(std::size_t n) {
    Rng rng(7);
    std::vector<double> xs(n);
    for (double& x : xs) x = rng.uniform(-3.0, 3.0);
    return xs;
}

void forward_kind(benchmark::State& state, ActivationKind kind) {
    const ActivationState act = bench_state(kind);
    const std::vector<double> xs = bench_inputs(4096);
    for (auto _ : state) {
        std::vector<double> ys = activation_forward(act, xs);
        benchmark::DoNotOptimize(ys.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 4096);
}

void backward_kind(benchmark::State& state, ActivationKind kind) {
    const ActivationState act = bench_state(kind);
    const std::vector<double> xs = bench_inputs(4096);
    const std::vector<double> upstream(xs.size(), 0.5);
    for (auto _ : state) {
        ActivationGrads grads = activation_backward(act, xs, upstream);
        benchmark::DoNotOptimize(grads.d_input.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 4096);
}

}  // namespace

BENCHMARK_CAPTURE(forward_kind, relu, ActivationKind::Relu);
BENCHMARK_CAPTURE(forward_kind, tanh, ActivationKind::Tanh);
BENCHMARK_CAPTURE(forward_kind, prelu, ActivationKind::PRelu);
BENCHMARK_CAPTURE(forward_kind, signsplit, ActivationKind::SignSplit);
BENCHMARK_CAPTURE(forward_kind, smoothsplit, ActivationKind::SmoothSplit);
BENCHMARK_CAPTURE(forward_kind, parametricsplit, ActivationKind::ParametricSplit);

BENCHMARK_CAPTURE(backward_kind, relu, ActivationKind::Relu);
BENCHMARK_CAPTURE(backward_kind, tanh, ActivationKind::Tanh);
BENCHMARK_CAPTURE(backward_kind, prelu, ActivationKind::PRelu);
BENCHMARK_CAPTURE(backward_kind, signsplit, ActivationKind::SignSplit);
BENCHMARK_CAPTURE(backward_kind, smoothsplit, ActivationKind::SmoothSplit);
BENCHMARK_CAPTURE(backward_kind, parametricsplit, ActivationKind::ParametricSplit);
