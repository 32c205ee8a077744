#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "topoact/activation.hpp"
#include "topoact/rng.hpp"

using namespace topoact;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> admissible_points(const ActivationState& state, std::size_t count, Rng& rng,
                                      double lo = -3.0, double hi = 3.0) {
    const std::vector<double> boundaries = activation_boundaries(state);
    std::vector<double> points;
    points.reserve(count);
    while (points.size() < count) {
        const double x = rng.uniform(lo, hi);
        bool clear = true;
        for (const double b : boundaries) {
            if (std::abs(x - b) < 2e-3) {
                clear = false;
                break;
            }
        }
        if (clear) points.push_back(x);
    }
    return points;
}

}  // namespace

TEST_SUITE("activation") {

TEST_CASE("init_activation draws documented ranges") {
    Rng rng(7);
    const ActivationState sign = init_activation(ActivationKind::SignSplit, rng);
    REQUIRE(sign.params.size() == 1);
    CHECK(sign.params[0] >= 0.0);
    CHECK(sign.params[0] < 1.0);

    Rng rng2(123);
    const ActivationState relu_state = init_activation(ActivationKind::Relu, rng2);
    CHECK(relu_state.params.empty());

    Rng a(7), b(7);
    const ActivationState p1 = init_activation(ActivationKind::ParametricSplit, a);
    const ActivationState p2 = init_activation(ActivationKind::ParametricSplit, b);
    REQUIRE(p1.params.size() == 2);
    CHECK(p1.params == p2.params);
    CHECK(p1.params[0] >= 0.0);
    CHECK(p1.params[0] < kPi / 2.0);
    CHECK(p1.params[1] >= 0.0);
    CHECK(p1.params[1] < 1.0);

    Rng c(9);
    const ActivationState smooth = init_activation(ActivationKind::SmoothSplit, c);
    REQUIRE(smooth.params.size() == 2);
    for (const double v : smooth.params) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }

    Rng d(11);
    const ActivationState prelu_state = init_activation(ActivationKind::PRelu, d);
    REQUIRE(prelu_state.params.size() == 1);
    CHECK(prelu_state.params[0] == 0.25);
}

TEST_CASE("signsplit fixes the origin and shifts by sign") {
    CHECK(signsplit(0.5, 0.2) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(signsplit(0.0, 0.9) == 0.0);
    CHECK(signsplit(-0.5, 0.2) == doctest::Approx(-0.7).epsilon(1e-15));
}

TEST_CASE("smoothsplit basics and saturated shift") {
    CHECK(smoothsplit(0.0, 0.7, 3.0) == 0.0);
    CHECK(std::abs(smoothsplit(1.0, 0.2, 40.0) - 1.2) <= 1e-12);
}

TEST_CASE("smoothsplit approaches signsplit as alpha grows") {
    for (const double c : {0.2, 1.0}) {
        for (double x = 0.01; x <= 5.0; x += 0.097) {
            CHECK(std::abs(smoothsplit(x, c, 1e6) - signsplit(x, c)) <= 1e-9);
            CHECK(std::abs(smoothsplit(-x, c, 1e6) - signsplit(-x, c)) <= 1e-9);
        }
    }
}

TEST_CASE("parametricsplit special points") {
    CHECK(parametricsplit(2.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(parametricsplit(0.5, kPi / 2.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(parametricsplit(1.0, 3.0 * kPi / 4.0, 1.0) ==
          doctest::Approx(2.414213562373095).epsilon(1e-15));
    CHECK(parametricsplit(0.5, 0.0, 0.0) == 0.0);
}

TEST_CASE("parametricsplit equals shifted relu at a=0 b=0") {
    double worst = 0.0;
    for (int i = -5000; i <= 5000; ++i) {
        const double x = i * 1e-3;
        worst = std::max(worst, std::abs(parametricsplit(x, 0.0, 0.0) - relu(x - 1.0)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("parametricsplit equals signsplit at a=pi/2 b=1 away from zero") {
    double worst = 0.0;
    for (int i = -5000; i <= 5000; ++i) {
        const double x = i * 1e-3;
        if (std::abs(x) < 1e-6) continue;
        worst = std::max(worst, std::abs(parametricsplit(x, kPi / 2.0, 1.0) - signsplit(x, 1.0)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("parametricsplit branches agree at both boundaries") {
    Rng rng(21);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double a = 0.005 + (1.565 - 0.005) * (i + 0.5) / 200.0;
        const double b = rng.uniform();
        const double ca = std::cos(a);
        const double branch1 = b * (-ca) + b * ca - std::sin(a);
        const double branch2_low = -ca * std::tan(a);
        const double branch2_high = ca * std::tan(a);
        const double branch3 = ca + std::sin(a) - ca;
        worst = std::max(worst, std::abs(branch1 - branch2_low));
        worst = std::max(worst, std::abs(branch2_high - branch3));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("parametricsplit image has the splitting gap at a=3pi/4") {
    const double a = 3.0 * kPi / 4.0;
    const double gap_low = -std::numbers::sqrt2 / 2.0;
    const double gap_high = 3.0 * std::numbers::sqrt2 / 2.0;
    for (int i = -10000; i <= 10000; ++i) {
        const double x = i * 1e-3;
        const double y = parametricsplit(x, a, 1.0);
        const bool outside = y <= gap_low || y >= gap_high;
        if (!outside) {
            CAPTURE(x);
            CAPTURE(y);
            CHECK(outside);
        }
        CHECK((y <= -0.7071 || y >= 2.1213));
    }
}

TEST_CASE("activation_forward applies the scalar map elementwise") {
    const ActivationState relu_state = make_activation(ActivationKind::Relu, {});
    CHECK(activation_forward(relu_state, {-2.0, 0.0, 3.0}) ==
          std::vector<double>{0.0, 0.0, 3.0});

    const ActivationState tanh_state = make_activation(ActivationKind::Tanh, {});
    CHECK(activation_forward(tanh_state, {0.0}) == std::vector<double>{0.0});

    const ActivationState sign = make_activation(ActivationKind::SignSplit, {0.2});
    const std::vector<double> out = activation_forward(sign, {0.5, -0.5});
    REQUIRE(out.size() == 2);
    CHECK(out[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(-0.7).epsilon(1e-15));
}

TEST_CASE("shape preservation across kinds and lengths") {
    Rng rng(5);
    for (const ActivationKind kind : kAllActivationKinds) {
        const ActivationState state = init_activation(kind, rng);
        for (const std::size_t n : {0u, 1u, 7u, 256u}) {
            std::vector<double> xs(n);
            for (double& x : xs) x = rng.uniform(-4.0, 4.0);
            CHECK(activation_forward(state, xs).size() == n);
        }
    }
}

TEST_CASE("smoothsplit is strictly increasing for nonnegative c and alpha") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const double c = rng.uniform(0.0, 2.0);
        const double alpha = rng.uniform(0.0, 5.0);
        double prev = smoothsplit(-6.0, c, alpha);
        for (double x = -6.0 + 0.01; x <= 6.0; x += 0.01) {
            const double y = smoothsplit(x, c, alpha);
            CHECK(y > prev);
            prev = y;
        }
    }
}

TEST_CASE("activation_backward closed forms at hand-checked points") {
    const ActivationState smooth = make_activation(ActivationKind::SmoothSplit, {0.2, 40.0});
    const ActivationGrads sg = activation_backward(smooth, {0.0}, {1.0});
    REQUIRE(sg.d_input.size() == 1);
    REQUIRE(sg.d_params.size() == 2);
    CHECK(sg.d_input[0] == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(sg.d_params[0] == 0.0);
    CHECK(sg.d_params[1] == 0.0);

    const ActivationState param = make_activation(ActivationKind::ParametricSplit, {0.0, 0.0});
    const ActivationGrads pg = activation_backward(param, {2.0}, {1.0});
    REQUIRE(pg.d_input.size() == 1);
    REQUIRE(pg.d_params.size() == 2);
    CHECK(pg.d_input[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pg.d_params[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pg.d_params[1] == 0.0);

    const ActivationState relu_state = make_activation(ActivationKind::Relu, {});
    const ActivationGrads rg = activation_backward(relu_state, {-1.0, 2.0}, {5.0, 5.0});
    CHECK(rg.d_input == std::vector<double>{0.0, 5.0});
    CHECK(rg.d_params.empty());
}

TEST_CASE("upstream weighting scales gradients linearly") {
    Rng rng(77);
    for (const ActivationKind kind : kAllActivationKinds) {
        const ActivationState state = init_activation(kind, rng);
        const std::vector<double> xs = admissible_points(state, 50, rng);
        std::vector<double> up(xs.size());
        for (double& u : up) u = rng.uniform(-2.0, 2.0);
        std::vector<double> up2 = up;
        for (double& u : up2) u *= 2.0;

        const ActivationGrads g1 = activation_backward(state, xs, up);
        const ActivationGrads g2 = activation_backward(state, xs, up2);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            CHECK(g2.d_input[i] == doctest::Approx(2.0 * g1.d_input[i]).epsilon(1e-12));
        }
        for (std::size_t j = 0; j < g1.d_params.size(); ++j) {
            CHECK(g2.d_params[j] == doctest::Approx(2.0 * g1.d_params[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("finite_diff_check certifies documented configurations") {
    Rng rng(3);
    const ActivationState smooth = make_activation(ActivationKind::SmoothSplit, {0.3, 0.7});
    CHECK(finite_diff_check(smooth, admissible_points(smooth, 100, rng), 1e-5) <= 1e-6);

    const ActivationState param = make_activation(ActivationKind::ParametricSplit, {0.9, 0.4});
    CHECK(finite_diff_check(param, admissible_points(param, 100, rng), 1e-5) <= 1e-6);

    const ActivationState relu_state = make_activation(ActivationKind::Relu, {});
    CHECK(finite_diff_check(relu_state, {1.0, -1.0}, 1e-5) <= 1e-9);
}

TEST_CASE("finite_diff_check rejects ill-posed configurations") {
    const ActivationState sign = make_activation(ActivationKind::SignSplit, {0.4});
    CHECK_THROWS_AS(finite_diff_check(sign, {5e-4, 1.0}, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(finite_diff_check(sign, {1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(finite_diff_check(sign, {1.0}, -1e-5), std::invalid_argument);

    const ActivationState param = make_activation(ActivationKind::ParametricSplit, {0.9, 0.4});
    const double boundary = std::cos(0.9);
    CHECK_THROWS_AS(finite_diff_check(param, {boundary + 5e-4}, 1e-5), std::invalid_argument);
}

TEST_CASE("gradient fidelity across kinds and parameter draws") {
    Rng rng(101);
    double worst = 0.0;
    for (const ActivationKind kind : kAllActivationKinds) {
        for (int draw = 0; draw < 20; ++draw) {
            const ActivationState state = init_activation(kind, rng);
            const std::vector<double> xs = admissible_points(state, 100, rng);
            worst = std::max(worst, finite_diff_check(state, xs, 1e-5));
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("names, arity, and parsing round-trip") {
    for (const ActivationKind kind : kAllActivationKinds) {
        CHECK(parse_activation(activation_name(kind)) == kind);
        CHECK(activation_param_names(kind).size() == activation_arity(kind));
    }
    CHECK_THROWS_AS(parse_activation("sigmoid"), std::invalid_argument);
    CHECK_THROWS_AS(make_activation(ActivationKind::SmoothSplit, {1.0}), std::invalid_argument);
}

}  // TEST_SUITE("activation")
