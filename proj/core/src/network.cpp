#include "topoact/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace topoact {

namespace {

constexpr double kProbEps = 1e-12;

// Past this magnitude the probability pipeline loses the precision a central
// finite difference needs, so gradient checks refuse such configurations.
constexpr double kMaxSigmoidInput = 10.0;

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// batch (n x in) * weights (out x in)^T + bias -> (n x out)
Matrix affine(const Matrix& batch, const Matrix& weights, const std::vector<double>& bias) {
    const std::size_t n = batch.rows();
    const std::size_t out = weights.rows();
    const std::size_t in = weights.cols();
    Matrix z(n, out);
    for (std::size_t i = 0; i < n; ++i) {
        const double* x = batch.row(i);
        double* zi = z.row(i);
        for (std::size_t j = 0; j < out; ++j) {
            const double* w = weights.row(j);
            double acc = bias[j];
            for (std::size_t k = 0; k < in; ++k) acc += w[k] * x[k];
            zi[j] = acc;
        }
    }
    return z;
}

// dz (n x out)^T * a (n x in) -> (out x in)
Matrix matmul_tn(const Matrix& dz, const Matrix& a) {
    Matrix out(dz.cols(), a.cols());
    for (std::size_t i = 0; i < dz.rows(); ++i) {
        const double* di = dz.row(i);
        const double* ai = a.row(i);
        for (std::size_t j = 0; j < dz.cols(); ++j) {
            const double d = di[j];
            double* oj = out.row(j);
            for (std::size_t k = 0; k < a.cols(); ++k) oj[k] += d * ai[k];
        }
    }
    return out;
}

// dz (n x out) * w (out x in) -> (n x in)
Matrix matmul(const Matrix& dz, const Matrix& w) {
    Matrix out(dz.rows(), w.cols());
    for (std::size_t i = 0; i < dz.rows(); ++i) {
        const double* di = dz.row(i);
        double* oi = out.row(i);
        for (std::size_t j = 0; j < w.rows(); ++j) {
            const double d = di[j];
            const double* wj = w.row(j);
            for (std::size_t k = 0; k < w.cols(); ++k) oi[k] += d * wj[k];
        }
    }
    return out;
}

double clip_value(double g, double clip) {
    if (clip <= 0.0) return g;
    return std::clamp(g, -clip, clip);
}

Dataset gather_rows(const Dataset& d, const std::vector<std::size_t>& indices, std::size_t begin,
                    std::size_t end) {
    Dataset out;
    out.name = d.name;
    out.features = Matrix(end - begin, d.dim());
    out.labels.resize(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        const double* src = d.features.row(indices[i]);
        std::copy(src, src + d.dim(), out.features.row(i - begin));
        out.labels[i - begin] = d.labels[indices[i]];
    }
    return out;
}

}  // namespace

Matrix xavier_normal(std::size_t fan_out, std::size_t fan_in, Rng& rng) {
    const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in + fan_out));
    Matrix m(fan_out, fan_in);
    for (double& v : m.data()) v = rng.normal(0.0, stddev);
    return m;
}

Matrix xavier_uniform(std::size_t fan_out, std::size_t fan_in, Rng& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix m(fan_out, fan_in);
    for (double& v : m.data()) v = rng.uniform(-limit, limit);
    return m;
}

Network build_network(const NetworkSpec& spec, Rng& rng) {
    if (spec.input_dim == 0 || spec.hidden_width == 0 || spec.hidden_depth == 0) {
        throw std::invalid_argument("build_network: dimensions must be positive");
    }
    const bool uniform_init = spec.candidate_activation == ActivationKind::Relu;
    const auto draw = [&](std::size_t fan_out, std::size_t fan_in) {
        return uniform_init ? xavier_uniform(fan_out, fan_in, rng)
                            : xavier_normal(fan_out, fan_in, rng);
    };

    Network net;
    std::size_t fan_in = spec.input_dim;
    for (std::size_t i = 0; i < spec.hidden_depth; ++i) {
        DenseLayer layer;
        layer.weights = draw(spec.hidden_width, fan_in);
        layer.bias.assign(spec.hidden_width, 0.0);
        layer.activation = init_activation(spec.candidate_activation, rng);
        net.layers.push_back(std::move(layer));
        fan_in = spec.hidden_width;
    }
    DenseLayer head;
    head.weights = draw(1, fan_in);
    head.bias.assign(1, 0.0);
    head.activation = init_activation(ActivationKind::Relu, rng);
    net.layers.push_back(std::move(head));
    return net;
}

ForwardCache forward(const Network& net, const Matrix& batch) {
    if (net.layers.empty()) throw std::invalid_argument("forward: empty network");
    if (batch.cols() != net.layers.front().weights.cols()) {
        throw std::invalid_argument("forward: batch width " + std::to_string(batch.cols()) +
                                    " does not match input dim " +
                                    std::to_string(net.layers.front().weights.cols()));
    }
    ForwardCache cache;
    cache.act.push_back(batch);
    for (const DenseLayer& layer : net.layers) {
        Matrix z = affine(cache.act.back(), layer.weights, layer.bias);
        Matrix a(z.rows(), z.cols());
        a.data() = activation_forward(layer.activation, z.data());
        cache.pre.push_back(std::move(z));
        cache.act.push_back(std::move(a));
    }
    const Matrix& out = cache.act.back();
    cache.probs.resize(out.rows());
    for (std::size_t i = 0; i < out.rows(); ++i) cache.probs[i] = sigmoid(out.at(i, 0));
    return cache;
}

double bce_loss(const std::vector<double>& probs, const std::vector<int>& labels) {
    if (probs.size() != labels.size()) throw std::invalid_argument("bce_loss: length mismatch");
    if (probs.empty()) throw std::invalid_argument("bce_loss: empty input");
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = std::clamp(probs[i], kProbEps, 1.0 - kProbEps);
        total += labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    return total / static_cast<double>(probs.size());
}

NetworkGrads backward(const Network& net, const ForwardCache& cache,
                      const std::vector<int>& labels) {
    if (cache.probs.size() != labels.size()) {
        throw std::invalid_argument("backward: label count mismatch");
    }
    const double n = static_cast<double>(labels.size());
    std::vector<double> d_output(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        d_output[i] = (cache.probs[i] - static_cast<double>(labels[i])) / n;
    }
    return backward_from(net, cache, d_output);
}

NetworkGrads backward_from(const Network& net, const ForwardCache& cache,
                           const std::vector<double>& d_output) {
    const std::size_t depth = net.layers.size();
    if (cache.pre.size() != depth || cache.act.size() != depth + 1) {
        throw std::invalid_argument("backward_from: cache does not match network");
    }
    if (d_output.size() != cache.act.back().size()) {
        throw std::invalid_argument("backward_from: output gradient length mismatch");
    }

    NetworkGrads grads;
    grads.layers.resize(depth);
    std::vector<double> d_act = d_output;
    for (std::size_t l = depth; l-- > 0;) {
        const DenseLayer& layer = net.layers[l];
        const Matrix& z = cache.pre[l];
        const Matrix& a_prev = cache.act[l];

        ActivationGrads ag = activation_backward(layer.activation, z.data(), d_act);
        Matrix dz(z.rows(), z.cols());
        dz.data() = std::move(ag.d_input);

        LayerGrads& lg = grads.layers[l];
        lg.d_weights = matmul_tn(dz, a_prev);
        lg.d_bias.assign(z.cols(), 0.0);
        for (std::size_t i = 0; i < z.rows(); ++i) {
            const double* di = dz.row(i);
            for (std::size_t j = 0; j < z.cols(); ++j) lg.d_bias[j] += di[j];
        }
        lg.d_activation = std::move(ag.d_params);

        if (l > 0) d_act = matmul(dz, layer.weights).data();
    }
    return grads;
}

void sgd_step(Network& net, const NetworkGrads& grads, double lr, double clip) {
    if (grads.layers.size() != net.layers.size()) {
        throw std::invalid_argument("sgd_step: gradient shape mismatch");
    }
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        DenseLayer& layer = net.layers[l];
        const LayerGrads& lg = grads.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            layer.weights.data()[i] -= lr * clip_value(lg.d_weights.data()[i], clip);
        }
        for (std::size_t j = 0; j < layer.bias.size(); ++j) {
            layer.bias[j] -= lr * clip_value(lg.d_bias[j], clip);
        }
        for (std::size_t j = 0; j < layer.activation.params.size(); ++j) {
            layer.activation.params[j] -= lr * clip_value(lg.d_activation[j], clip);
        }
    }
}

TrainResult train(const NetworkSpec& spec, const SplitDataset& data, const TrainOptions& opts,
                  Rng& rng) {
    if (data.train.size() == 0 || data.test.size() == 0) {
        throw std::invalid_argument("train: empty dataset");
    }
    if (opts.epochs == 0) throw std::invalid_argument("train: epochs must be positive");
    if (opts.batch_size == 0) throw std::invalid_argument("train: batch size must be positive");
    if (spec.input_dim != data.train.dim()) {
        throw std::invalid_argument("train: spec input dim does not match data");
    }

    TrainResult result;
    result.net = build_network(spec, rng);

    const std::size_t n = data.train.size();
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;

    result.report.train_loss.reserve(opts.epochs);
    result.report.val_loss.reserve(opts.epochs);
    for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
        rng.shuffle(indices);
        for (std::size_t begin = 0; begin < n; begin += opts.batch_size) {
            const std::size_t end = std::min(begin + opts.batch_size, n);
            const Dataset batch = gather_rows(data.train, indices, begin, end);
            const ForwardCache cache = forward(result.net, batch.features);
            const NetworkGrads grads = backward(result.net, cache, batch.labels);
            sgd_step(result.net, grads, opts.lr, opts.clip);
        }
        result.report.train_loss.push_back(
            evaluate(result.net, data.train.features, data.train.labels).loss);
        result.report.val_loss.push_back(
            evaluate(result.net, data.test.features, data.test.labels).loss);
    }
    result.report.final_val_loss = result.report.val_loss.back();
    return result;
}

Evaluation evaluate(const Network& net, const Matrix& features, const std::vector<int>& labels) {
    const ForwardCache cache = forward(net, features);
    Evaluation eval;
    eval.loss = bce_loss(cache.probs, labels);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int predicted = cache.probs[i] >= 0.5 ? 1 : 0;
        if (predicted == labels[i]) ++correct;
    }
    eval.accuracy = static_cast<double>(correct) / static_cast<double>(labels.size());
    return eval;
}

bool gradcheck_admissible(const Network& net, const Matrix& batch, double margin) {
    const ForwardCache cache = forward(net, batch);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const std::vector<double> boundaries = activation_boundaries(net.layers[l].activation);
        if (boundaries.empty()) continue;
        for (const double z : cache.pre[l].data()) {
            for (const double b : boundaries) {
                if (std::abs(z - b) < margin) return false;
            }
        }
    }
    for (const double a : cache.act.back().data()) {
        if (std::abs(a) > kMaxSigmoidInput) return false;
    }
    return true;
}

double network_finite_diff_check(const Network& net, const Matrix& batch,
                                 const std::vector<int>& labels, double h) {
    if (h <= 0.0) throw std::invalid_argument("network_finite_diff_check: h must be positive");
    if (!gradcheck_admissible(net, batch)) {
        throw std::invalid_argument(
            "network_finite_diff_check: configuration too close to a branch boundary or "
            "saturation for a finite-difference probe");
    }

    const ForwardCache cache = forward(net, batch);
    const NetworkGrads analytic = backward(net, cache, labels);

    Network work = net;
    const auto loss_at = [&]() {
        const ForwardCache c = forward(work, batch);
        return bce_loss(c.probs, labels);
    };
    const auto probe = [&](double& param, double analytic_grad) {
        const double saved = param;
        param = saved + h;
        const double up = loss_at();
        param = saved - h;
        const double down = loss_at();
        param = saved;
        const double numeric = (up - down) / (2.0 * h);
        return std::abs(analytic_grad - numeric) / std::max(1.0, std::abs(analytic_grad));
    };

    double max_err = 0.0;
    for (std::size_t l = 0; l < work.layers.size(); ++l) {
        DenseLayer& layer = work.layers[l];
        const LayerGrads& lg = analytic.layers[l];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
            max_err = std::max(max_err, probe(layer.weights.data()[i], lg.d_weights.data()[i]));
        }
        for (std::size_t j = 0; j < layer.bias.size(); ++j) {
            max_err = std::max(max_err, probe(layer.bias[j], lg.d_bias[j]));
        }
        for (std::size_t j = 0; j < layer.activation.params.size(); ++j) {
            max_err = std::max(max_err, probe(layer.activation.params[j], lg.d_activation[j]));
        }
    }
    return max_err;
}

}  // namespace topoact
