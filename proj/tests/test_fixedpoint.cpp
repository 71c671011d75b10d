#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nnm/builtins.hpp"
#include "nnm/errors.hpp"
#include "nnm/fixedpoint.hpp"

using namespace nnm;

namespace {

ClassicalContraction<double> affine(double a, double b, double lambda) {
    return {builtin::affine_map(a, b).map, builtin::euclidean(), lambda};
}

/// d_exp(x, y) = e^|ln x - ln y| on the positive reals, with T = sqrt.
AlphaContraction<double> multiplicative_sqrt() {
    const auto ex = exp_generator();
    return {builtin::sqrt_map().map, push_forward_metric(ex, builtin::log_ratio()), ex.lift(0.5)};
}

} // namespace

TEST_CASE("convert_contraction_constant examples") {
    const auto ex = exp_generator();
    CHECK(convert_contraction_constant(ex, ex.make(std::exp(0.5))).lambda == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(convert_contraction_constant(identity_generator(), identity_generator().make(0.5)).lambda == 0.5);
    const auto cube = cube_generator();
    CHECK(convert_contraction_constant(cube, cube.make(0.125)).lambda == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(convert_contraction_constant(cube, cube.make(0.125)).valid);
    CHECK_FALSE(convert_contraction_constant(ex, ex.make(std::exp(1.0))).valid);
    CHECK_FALSE(convert_contraction_constant(ex, ex.make(0.5)).valid);
    CHECK_THROWS_AS(convert_contraction_constant(ex, AlphaNumber{-1.0, "exp"}), RangeError);
}

TEST_CASE("constant conversion round trip over [0, 1)") {
    for (const auto& g : builtin_generators())
        for (int i = 0; i < 100; ++i) {
            const double lambda = i / 100.0;
            const auto conv = convert_contraction_constant(g, g.lift(lambda));
            CHECK(conv.lambda == doctest::Approx(lambda).epsilon(1e-12));
            CHECK(conv.valid);
        }
}

TEST_CASE("both multiplicative contraction forms agree") {
    const auto ex = exp_generator();
    for (double lambda : {0.0, 0.3, 0.5, 0.9})
        for (double d : {1.0, 1.5, 7.0, 200.0}) {
            const double product = alpha_mul(ex, ex.lift(lambda), ex.make(d)).value;
            CHECK(multiplicative_contraction_bound(d, lambda) == doctest::Approx(product).epsilon(1e-12));
        }
}

TEST_CASE("verify_contraction examples") {
    const std::vector<double> pts{0, 1, 4, 10};
    const auto report = verify_contraction(affine(0.5, 1.0, 0.5), std::span<const double>(pts), exp_generator());
    // Brute force: |T x - T y| = 0.5 |x - y| for every pair.
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            REQUIRE(std::abs((pts[i] / 2 + 1) - (pts[j] / 2 + 1)) <= 0.5 * std::abs(pts[i] - pts[j]));
    CHECK(report.pairs.size() == 6);
    CHECK(report.all_hold());
    CHECK(report.verdicts_agree());

    const auto identity_map =
        verify_contraction(affine(1.0, 0.0, 0.5), std::span<const double>(pts), exp_generator());
    CHECK(identity_map.failures() == 6);
    CHECK(identity_map.verdicts_agree());

    const std::vector<double> positive{0.25, 1, 4, 16};
    const auto sqrt_report = verify_contraction(multiplicative_sqrt(), std::span<const double>(positive));
    CHECK(sqrt_report.native_setting == "exp");
    CHECK(sqrt_report.all_hold());
    CHECK(sqrt_report.verdicts_agree());
    CHECK(sqrt_report.lambda == doctest::Approx(0.5));
}

TEST_CASE("verify_contraction errors") {
    const std::vector<double> one{1.0};
    const std::vector<double> pts{0, 1};
    CHECK_THROWS_AS(verify_contraction(affine(0.5, 0, 0.5), std::span<const double>(one), exp_generator()),
                    DomainError);
    CHECK_THROWS_AS(verify_contraction(affine(0.5, 0, 1.0), std::span<const double>(pts), exp_generator()),
                    DomainError);
    auto spec = multiplicative_sqrt();
    spec.k = exp_generator().make(std::exp(1.5));
    CHECK_THROWS_AS(verify_contraction(spec, std::span<const double>(pts)), DomainError);
}

TEST_CASE("contraction verdicts agree across settings for random affine maps") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> slope(-0.95, 0.95), offset(-5, 5), constant(0.0, 0.95);
    for (const auto& g : builtin_generators()) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto pts = builtin::uniform_sample(12, trial + 100, -8.0, 8.0);
            const auto report =
                verify_contraction(affine(slope(rng), offset(rng), constant(rng)), std::span<const double>(pts), g);
            CHECK(report.verdicts_agree());
        }
    }
}

TEST_CASE("banach_iterate examples") {
    const auto affine_trace = banach_iterate(affine(0.5, 1.0, 0.5), 0.0, {1e-8, 1000, 10});
    CHECK(affine_trace.reason == Termination::converged);
    CHECK(std::abs(affine_trace.final_point() - 2.0) < 1e-7);
    // Gap after i steps is 2^-(i-1); the first gap below 1e-8 is step 28.
    CHECK(affine_trace.iterations == 28);
    CHECK_FALSE(affine_trace.has_alpha_column());

    const auto sqrt_trace = banach_iterate(multiplicative_sqrt(), 16.0, {1e-8, 1000, 10});
    // Oracle: |ln x_n| = ln 16 / 2^n, so step n moves ln 16 / 2^n in the pulled-back metric.
    std::size_t expected = 1;
    while (std::log(16.0) / std::pow(2.0, static_cast<double>(expected)) >= 1e-8)
        ++expected;
    CHECK(sqrt_trace.reason == Termination::converged);
    CHECK(sqrt_trace.iterations == expected);
    CHECK(sqrt_trace.iterations <= 40);
    CHECK(std::abs(sqrt_trace.final_point() - 1.0) < 1e-7);
    REQUIRE(sqrt_trace.alpha_distances.size() == sqrt_trace.distances.size());
    for (std::size_t i = 0; i < sqrt_trace.distances.size(); ++i)
        CHECK(std::log(sqrt_trace.alpha_distances[i]) == doctest::Approx(sqrt_trace.distances[i]).epsilon(1e-9));

    const auto doubling = banach_iterate(affine(2.0, 0.0, 0.5), 1.0, {1e-8, 1000, 10});
    CHECK(doubling.reason == Termination::diverged);
    const auto short_budget = banach_iterate(affine(2.0, 0.0, 0.5), 1.0, {1e-8, 5, 10});
    CHECK(short_budget.reason == Termination::max_iters);
    CHECK(short_budget.iterations == 5);
}

TEST_CASE("banach_iterate errors") {
    CHECK_THROWS_AS(banach_iterate(affine(0.5, 0, 0.5), 0.0, {1e-8, 0, 10}), DomainError);
    CHECK_THROWS_AS(banach_iterate(affine(0.5, 0, 0.5), 0.0, {0.0, 10, 10}), DomainError);
    ClassicalContraction<double> blowup{[](const double& x) { return x == 0.0 ? std::nan("") : 0.0; },
                                        builtin::euclidean(), 0.5};
    try {
        banach_iterate(blowup, 0.0, {1e-8, 10, 10});
        FAIL("expected a numeric error");
    } catch (const NumericError& err) {
        CHECK(err.index() == 1);
    }
}

TEST_CASE("geometric decay along a verified contraction") {
    const auto spec = affine(0.7, -3.0, 0.7);
    const auto trace = banach_iterate(spec, 40.0, {1e-10, 1000, 10});
    REQUIRE(trace.reason == Termination::converged);
    for (std::size_t i = 0; i + 1 < trace.distances.size(); ++i)
        CHECK(trace.distances[i + 1] <= (0.7 + 1e-9) * trace.distances[i] + 1e-13);
}

TEST_CASE("compare_dual_runs examples") {
    const auto ex = exp_generator();
    const auto sqrt_report = compare_dual_runs(multiplicative_sqrt(), ex, 16.0);
    CHECK(sqrt_report.iterates_identical);
    CHECK(sqrt_report.stop_indices_equal);
    CHECK(sqrt_report.consistent());

    const auto id = identity_generator();
    const auto id_spec = push_forward_contraction(id, affine(0.5, 1.0, 0.5));
    const auto id_report = compare_dual_runs(id_spec, id, 0.0);
    CHECK(id_report.consistent());
    CHECK(id_report.alpha_run.distances == id_report.classical_run.distances);

    const auto cube = cube_generator();
    const auto cube_spec = push_forward_contraction(cube, affine(0.5, 1.0, 0.5));
    const auto cube_report = compare_dual_runs(cube_spec, cube, 0.0);
    CHECK(cube_report.consistent());
    CHECK(std::abs(cube_report.alpha_run.final_point() - 2.0) < 1e-7);

    CHECK_THROWS_AS(compare_dual_runs(cube_spec, ex, 0.0), DomainError);
}
