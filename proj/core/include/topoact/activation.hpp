#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "topoact/rng.hpp"

namespace topoact {

enum class ActivationKind { Relu, Tanh, PRelu, SignSplit, SmoothSplit, ParametricSplit };

constexpr std::array<ActivationKind, 6> kAllActivationKinds = {
    ActivationKind::Relu,       ActivationKind::Tanh,        ActivationKind::PRelu,
    ActivationKind::SignSplit,  ActivationKind::SmoothSplit, ActivationKind::ParametricSplit,
};

// Number of learnable scalar parameters per kind.
std::size_t activation_arity(ActivationKind kind);

// Role names in params order, e.g. {"c", "alpha"} for SmoothSplit.
std::vector<std::string_view> activation_param_names(ActivationKind kind);

std::string_view activation_name(ActivationKind kind);

// Accepts the lowercase names used by the CLI ("relu", "parametricsplit", ...).
// Throws std::invalid_argument for anything else.
ActivationKind parse_activation(std::string_view name);

// One layer's activation: a kind plus its learnable scalars, shared by every
// unit in the layer. Parameter roles by kind:
//   PRelu [slope], SignSplit [c], SmoothSplit [c, alpha], ParametricSplit [a, b].
struct ActivationState {
    ActivationKind kind = ActivationKind::Relu;
    std::vector<double> params;
};

// Validates arity and finiteness; throws std::invalid_argument.
ActivationState make_activation(ActivationKind kind, std::vector<double> params);

// SignSplit c ~ U(0,1); SmoothSplit c, alpha ~ U(0,1); ParametricSplit
// a ~ U(0, pi/2), b ~ U(0,1); PRelu slope = 0.25; Relu/Tanh no parameters.
ActivationState init_activation(ActivationKind kind, Rng& rng);

struct ActivationGrads {
    std::vector<double> d_input;   // same length as the forward input
    std::vector<double> d_params;  // same arity as the state's params
};

double relu(double x);
double prelu(double x, double slope);

// x + sign(x) * c, with sign(0) = 0 so the origin is fixed.
double signsplit(double x, double c);

// x + tanh(alpha * x) * c; smooth surrogate of signsplit, exact as alpha -> inf.
double smoothsplit(double x, double c, double alpha);

// Piecewise map evaluated with first-match branch ordering:
//   x <= -cos a          ->  b*x + b*cos a - sin a
//   x <=  cos a          ->  x * tan a        (skipped when cos a < 1e-12)
//   otherwise            ->  x + sin a - cos a
// For cos a <= 0 the first branch absorbs the middle interval, leaving the
// pure two-branch splitting map; the middle-interval guard keeps tan a away
// from its pole.
double parametricsplit(double x, double a, double b);

// Scalar map of the given state.
double activation_apply(const ActivationState& state, double x);

// Elementwise application; output length equals input length.
std::vector<double> activation_forward(const ActivationState& state, const std::vector<double>& x);

// d_input[i]  = upstream[i] * dy/dx at x[i]
// d_params[j] = sum_i upstream[i] * dy/dparam_j at x[i]
// At branch boundaries the branch selected by the forward first-match rule is
// differentiated.
ActivationGrads activation_backward(const ActivationState& state, const std::vector<double>& x,
                                    const std::vector<double>& upstream);

// Points where the scalar map switches branches; derivative checks must keep
// their sample points away from these.
std::vector<double> activation_boundaries(const ActivationState& state);

// Central-difference verification of activation_backward over the given
// points: returns the maximum relative error across all input and parameter
// partials, with relative error |analytic - numeric| / max(1, |analytic|).
// Throws std::invalid_argument when h <= 0 or any x[i] lies within 1e-3 of a
// branch boundary (the check would be ill-posed there).
double finite_diff_check(const ActivationState& state, const std::vector<double>& x, double h);

}  // namespace topoact
