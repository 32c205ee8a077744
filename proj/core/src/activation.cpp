#include "topoact/activation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace topoact {

namespace {

constexpr double kMiddleBranchMinCos = 1e-12;
constexpr double kBoundaryMargin = 1e-3;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

enum class Branch { Lower, Middle, Upper };

// First-match branch selector shared by eval and backward so the derivative
// always belongs to the branch the forward pass took.
Branch select_branch(double x, double cos_a) {
    if (x <= -cos_a) return Branch::Lower;
    if (cos_a >= kMiddleBranchMinCos && x <= cos_a) return Branch::Middle;
    return Branch::Upper;
}

}  // namespace

std::size_t activation_arity(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Relu:
        case ActivationKind::Tanh: return 0;
        case ActivationKind::PRelu:
        case ActivationKind::SignSplit: return 1;
        case ActivationKind::SmoothSplit:
        case ActivationKind::ParametricSplit: return 2;
    }
    throw std::invalid_argument("unknown activation kind");
}

std::vector<std::string_view> activation_param_names(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Relu:
        case ActivationKind::Tanh: return {};
        case ActivationKind::PRelu: return {"slope"};
        case ActivationKind::SignSplit: return {"c"};
        case ActivationKind::SmoothSplit: return {"c", "alpha"};
        case ActivationKind::ParametricSplit: return {"a", "b"};
    }
    throw std::invalid_argument("unknown activation kind");
}

std::string_view activation_name(ActivationKind kind) {
    switch (kind) {
        case ActivationKind::Relu: return "relu";
        case ActivationKind::Tanh: return "tanh";
        case ActivationKind::PRelu: return "prelu";
        case ActivationKind::SignSplit: return "signsplit";
        case ActivationKind::SmoothSplit: return "smoothsplit";
        case ActivationKind::ParametricSplit: return "parametricsplit";
    }
    throw std::invalid_argument("unknown activation kind");
}

ActivationKind parse_activation(std::string_view name) {
    for (ActivationKind kind : kAllActivationKinds) {
        if (name == activation_name(kind)) return kind;
    }
    throw std::invalid_argument("unknown activation '" + std::string(name) +
                                "' (expected one of: relu, tanh, prelu, signsplit, smoothsplit, "
                                "parametricsplit)");
}

ActivationState make_activation(ActivationKind kind, std::vector<double> params) {
    if (params.size() != activation_arity(kind)) {
        throw std::invalid_argument("activation '" + std::string(activation_name(kind)) + "' takes " +
                                    std::to_string(activation_arity(kind)) + " parameter(s), got " +
                                    std::to_string(params.size()));
    }
    for (double p : params) {
        if (!std::isfinite(p)) throw std::invalid_argument("activation parameters must be finite");
    }
    return ActivationState{kind, std::move(params)};
}

ActivationState init_activation(ActivationKind kind, Rng& rng) {
    switch (kind) {
        case ActivationKind::Relu:
        case ActivationKind::Tanh: return ActivationState{kind, {}};
        case ActivationKind::PRelu: return ActivationState{kind, {0.25}};
        case ActivationKind::SignSplit: return ActivationState{kind, {rng.uniform()}};
        case ActivationKind::SmoothSplit: {
            const double c = rng.uniform();
            const double alpha = rng.uniform();
            return ActivationState{kind, {c, alpha}};
        }
        case ActivationKind::ParametricSplit: {
            const double a = rng.uniform(0.0, std::numbers::pi / 2.0);
            const double b = rng.uniform();
            return ActivationState{kind, {a, b}};
        }
    }
    throw std::invalid_argument("unknown activation kind");
}

double relu(double x) { return x > 0.0 ? x : 0.0; }

double prelu(double x, double slope) { return x > 0.0 ? x : slope * x; }

double signsplit(double x, double c) { return x + sign(x) * c; }

double smoothsplit(double x, double c, double alpha) { return x + std::tanh(alpha * x) * c; }

double parametricsplit(double x, double a, double b) {
    const double ca = std::cos(a);
    const double sa = std::sin(a);
    switch (select_branch(x, ca)) {
        case Branch::Lower: return b * x + b * ca - sa;
        case Branch::Middle: return x * std::tan(a);
        case Branch::Upper: return x + sa - ca;
    }
    return 0.0;  // unreachable
}

double activation_apply(const ActivationState& state, double x) {
    switch (state.kind) {
        case ActivationKind::Relu: return relu(x);
        case ActivationKind::Tanh: return std::tanh(x);
        case ActivationKind::PRelu: return prelu(x, state.params[0]);
        case ActivationKind::SignSplit: return signsplit(x, state.params[0]);
        case ActivationKind::SmoothSplit: return smoothsplit(x, state.params[0], state.params[1]);
        case ActivationKind::ParametricSplit:
            return parametricsplit(x, state.params[0], state.params[1]);
    }
    return 0.0;  // unreachable
}

std::vector<double> activation_forward(const ActivationState& state, const std::vector<double>& x) {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = activation_apply(state, x[i]);
    return y;
}

ActivationGrads activation_backward(const ActivationState& state, const std::vector<double>& x,
                                    const std::vector<double>& upstream) {
    if (x.size() != upstream.size()) {
        throw std::invalid_argument("activation_backward: input and upstream lengths differ");
    }
    ActivationGrads grads;
    grads.d_input.resize(x.size());
    grads.d_params.assign(activation_arity(state.kind), 0.0);

    switch (state.kind) {
        case ActivationKind::Relu:
            for (std::size_t i = 0; i < x.size(); ++i) {
                grads.d_input[i] = x[i] > 0.0 ? upstream[i] : 0.0;
            }
            break;
        case ActivationKind::Tanh:
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double t = std::tanh(x[i]);
                grads.d_input[i] = upstream[i] * (1.0 - t * t);
            }
            break;
        case ActivationKind::PRelu: {
            const double slope = state.params[0];
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i] > 0.0) {
                    grads.d_input[i] = upstream[i];
                } else {
                    grads.d_input[i] = upstream[i] * slope;
                    grads.d_params[0] += upstream[i] * x[i];
                }
            }
            break;
        }
        case ActivationKind::SignSplit:
            for (std::size_t i = 0; i < x.size(); ++i) {
                grads.d_input[i] = upstream[i];
                grads.d_params[0] += upstream[i] * sign(x[i]);
            }
            break;
        case ActivationKind::SmoothSplit: {
            const double c = state.params[0];
            const double alpha = state.params[1];
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double t = std::tanh(alpha * x[i]);
                const double sech2 = 1.0 - t * t;
                grads.d_input[i] = upstream[i] * (1.0 + c * alpha * sech2);
                grads.d_params[0] += upstream[i] * t;
                grads.d_params[1] += upstream[i] * c * x[i] * sech2;
            }
            break;
        }
        case ActivationKind::ParametricSplit: {
            const double a = state.params[0];
            const double b = state.params[1];
            const double ca = std::cos(a);
            const double sa = std::sin(a);
            for (std::size_t i = 0; i < x.size(); ++i) {
                switch (select_branch(x[i], ca)) {
                    case Branch::Lower:
                        grads.d_input[i] = upstream[i] * b;
                        grads.d_params[0] += upstream[i] * (-b * sa - ca);
                        grads.d_params[1] += upstream[i] * (x[i] + ca);
                        break;
                    case Branch::Middle:
                        grads.d_input[i] = upstream[i] * std::tan(a);
                        grads.d_params[0] += upstream[i] * x[i] / (ca * ca);
                        break;
                    case Branch::Upper:
                        grads.d_input[i] = upstream[i];
                        grads.d_params[0] += upstream[i] * (ca + sa);
                        break;
                }
            }
            break;
        }
    }
    return grads;
}

std::vector<double> activation_boundaries(const ActivationState& state) {
    switch (state.kind) {
        case ActivationKind::Relu:
        case ActivationKind::PRelu:
        case ActivationKind::SignSplit: return {0.0};
        case ActivationKind::Tanh:
        case ActivationKind::SmoothSplit: return {};
        case ActivationKind::ParametricSplit: {
            const double ca = std::cos(state.params[0]);
            return {-ca, ca};
        }
    }
    return {};
}

double finite_diff_check(const ActivationState& state, const std::vector<double>& x, double h) {
    if (h <= 0.0) throw std::invalid_argument("finite_diff_check: h must be positive");
    const std::vector<double> boundaries = activation_boundaries(state);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (double boundary : boundaries) {
            if (std::abs(x[i] - boundary) <= kBoundaryMargin) {
                throw std::invalid_argument("finite_diff_check: x[" + std::to_string(i) +
                                            "] lies within 1e-3 of a branch boundary");
            }
        }
    }

    const std::vector<double> ones(x.size(), 1.0);
    const ActivationGrads grads = activation_backward(state, x, ones);

    const auto rel_err = [](double analytic, double numeric) {
        return std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
    };

    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double numeric =
            (activation_apply(state, x[i] + h) - activation_apply(state, x[i] - h)) / (2.0 * h);
        worst = std::max(worst, rel_err(grads.d_input[i], numeric));
    }
    for (std::size_t j = 0; j < state.params.size(); ++j) {
        ActivationState plus = state;
        ActivationState minus = state;
        plus.params[j] += h;
        minus.params[j] -= h;
        double numeric = 0.0;
        for (double xi : x) {
            numeric += activation_apply(plus, xi) - activation_apply(minus, xi);
        }
        numeric /= 2.0 * h;
        worst = std::max(worst, rel_err(grads.d_params[j], numeric));
    }
    return worst;
}

}  // namespace topoact
