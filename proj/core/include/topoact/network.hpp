#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "topoact/activation.hpp"
#include "topoact/data.hpp"
#include "topoact/matrix.hpp"
#include "topoact/rng.hpp"

namespace topoact {

// Entries i.i.d. Normal(0, variance 2/(fan_in+fan_out)), row-major draw order.
Matrix xavier_normal(std::size_t fan_out, std::size_t fan_in, Rng& rng);

// Entries i.i.d. U(-L, L), L = sqrt(6/(fan_in+fan_out)).
Matrix xavier_uniform(std::size_t fan_out, std::size_t fan_in, Rng& rng);

struct DenseLayer {
    Matrix weights;            // fan_out x fan_in
    std::vector<double> bias;  // fan_out
    ActivationState activation;
};

struct NetworkSpec {
    std::size_t input_dim = 2;
    std::size_t hidden_width = 4;
    std::size_t hidden_depth = 1;
    ActivationKind candidate_activation = ActivationKind::Relu;
    std::uint64_t seed = 0;
};

// hidden_depth layers of hidden_width with the candidate activation, then a
// width-1 Relu output layer; the loss applies the sigmoid.
struct Network {
    std::vector<DenseLayer> layers;
};

// Weights via xavier_uniform when the candidate activation is Relu,
// xavier_normal otherwise (the whole network follows the candidate's rule);
// biases zero; activation parameters via init_activation. Draw order per
// layer: weights row-major, then activation parameters.
Network build_network(const NetworkSpec& spec, Rng& rng);

// Per-layer pre-activations and activations retained for backward;
// act[0] is the input batch, so act.size() == pre.size() + 1.
struct ForwardCache {
    std::vector<Matrix> pre;
    std::vector<Matrix> act;
    std::vector<double> probs;  // sigmoid of the final column, one per row
};

// Throws std::invalid_argument on input width mismatch.
ForwardCache forward(const Network& net, const Matrix& batch);

// Mean of -[y ln p + (1-y) ln(1-p)] with p clamped to [1e-12, 1 - 1e-12].
// Throws std::invalid_argument on length mismatch.
double bce_loss(const std::vector<double>& probs, const std::vector<int>& labels);

struct LayerGrads {
    Matrix d_weights;
    std::vector<double> d_bias;
    std::vector<double> d_activation;
};

struct NetworkGrads {
    std::vector<LayerGrads> layers;
};

// Reverse-mode gradients of mean BCE through the sigmoid head; the seed
// gradient at the network output is (p_i - y_i) / n.
NetworkGrads backward(const Network& net, const ForwardCache& cache,
                      const std::vector<int>& labels);

// Same backward pass from an arbitrary gradient at the network output
// (d_output[i] = dL/d final activation of row i).
NetworkGrads backward_from(const Network& net, const ForwardCache& cache,
                           const std::vector<double>& d_output);

// param <- param - lr * grad for every weight, bias, and activation
// parameter. clip > 0 clamps each gradient component to [-clip, clip] first;
// clip <= 0 disables clipping.
void sgd_step(Network& net, const NetworkGrads& grads, double lr, double clip = 0.0);

struct TrainOptions {
    std::size_t epochs = 100;
    double lr = 0.05;
    std::size_t batch_size = 32;
    double clip = 0.0;  // <= 0: no clipping
};

struct TrainReport {
    std::vector<double> train_loss;  // full-train BCE after each epoch
    std::vector<double> val_loss;    // test BCE after each epoch
    double final_val_loss = 0.0;
};

struct TrainResult {
    Network net;
    TrainReport report;
};

// Mini-batch SGD with a fresh Fisher-Yates shuffle of the training indices
// each epoch from the given rng, which also seeds the network build.
// Deterministic given (rng seed, data). Throws std::invalid_argument on empty
// data or zero epochs/batch size.
TrainResult train(const NetworkSpec& spec, const SplitDataset& data, const TrainOptions& opts,
                  Rng& rng);

struct Evaluation {
    double loss = 0.0;
    double accuracy = 0.0;  // threshold p >= 0.5 predicts label 1
};

Evaluation evaluate(const Network& net, const Matrix& features, const std::vector<int>& labels);

// True when every pre-activation sits at least `margin` from its layer's
// branch boundaries and every sigmoid input is small enough that the clamped
// loss is still differentiable; finite-difference checks require this.
bool gradcheck_admissible(const Network& net, const Matrix& batch, double margin = 1e-3);

// Central-difference check of every weight, bias, and activation-parameter
// gradient against backward; returns the maximum relative error
// |analytic - numeric| / max(1, |analytic|). Throws std::invalid_argument
// when h <= 0 or the configuration is not gradcheck_admissible.
double network_finite_diff_check(const Network& net, const Matrix& batch,
                                 const std::vector<int>& labels, double h);

}  // namespace topoact
