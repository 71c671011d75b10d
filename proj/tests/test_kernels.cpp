// The OpenMP kernels must reproduce the serial reference reports exactly.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "nnm/builtins.hpp"
#include "nnm/fixedpoint.hpp"
#include "nnm/metric.hpp"
#include "nnm/reference.hpp"
#include "nnm/topology.hpp"

using namespace nnm;

namespace {

std::vector<NonNewtonianMetricSpace<double>> alpha_corpus() {
    std::vector<NonNewtonianMetricSpace<double>> out;
    for (const auto& g : builtin_generators())
        for (const auto& s : {builtin::euclidean(), builtin::discrete()})
            out.push_back(push_forward_metric(g, s));
    out.push_back(builtin::broken_asym());
    out.push_back(builtin::constant_one());
    out.push_back({"squared", exp_generator(), [](double x, double y) { return std::exp((x - y) * (x - y)); }});
    return out;
}

} // namespace

TEST_CASE("alpha axiom kernel matches the serial reference") {
    for (const auto& space : alpha_corpus()) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            CAPTURE(space.name);
            auto pts = builtin::uniform_sample(6 + 5 * seed, seed, -4.0, 4.0);
            pts.push_back(pts.front());  // a repeated point exercises the equality mask
            const CheckOptions options{Tolerance{}, 3};
            const auto fast = check_alpha_axioms(space, std::span<const double>(pts), options);
            const auto slow = reference::check_alpha_axioms(space, std::span<const double>(pts), options);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("multiplicative and classical kernels match the serial reference") {
    const auto ex = exp_generator();
    for (const auto& space : alpha_corpus()) {
        if (space.generator.name() != "exp")
            continue;
        const auto pts = builtin::uniform_sample(17, 8, -3.0, 3.0);
        CHECK(check_multiplicative_axioms(space, std::span<const double>(pts)) ==
              reference::check_multiplicative_axioms(space, std::span<const double>(pts)));
        const auto back = pull_back_metric(ex, space);
        CHECK(check_metric_axioms(back, std::span<const double>(pts)) ==
              reference::check_metric_axioms(back, std::span<const double>(pts)));
    }
}

TEST_CASE("kernel and reference raise the same range error") {
    NonNewtonianMetricSpace<double> signed_gap{"signed", exp_generator(), [](double x, double y) { return x - y; }};
    const std::vector<double> pts{3.0, 1.0, 2.0, 0.5};
    std::string fast_message, slow_message;
    try {
        check_alpha_axioms(signed_gap, std::span<const double>(pts));
    } catch (const RangeError& e) {
        fast_message = e.what();
    }
    try {
        reference::check_alpha_axioms(signed_gap, std::span<const double>(pts));
    } catch (const RangeError& e) {
        slow_message = e.what();
    }
    CHECK_FALSE(fast_message.empty());
    CHECK(fast_message == slow_message);
}

TEST_CASE("ball and contraction kernels match the serial reference") {
    for (const auto& g : builtin_generators()) {
        const auto s_alpha = push_forward_metric(g, builtin::euclidean());
        const auto s_classical = pull_back_metric(g, s_alpha);
        const auto pts = builtin::uniform_sample(64, 4, -6.0, 6.0);
        const auto fast = check_ball_equivalence(g, s_alpha, s_classical, 0.5, 2.5, std::span<const double>(pts));
        const auto slow =
            reference::check_ball_equivalence(g, s_alpha, s_classical, 0.5, 2.5, std::span<const double>(pts));
        CHECK(fast.entries == slow.entries);
        CHECK(fast.discrepancies == slow.discrepancies);

        const ClassicalContraction<double> spec{builtin::affine_map(0.6, -2.0).map, builtin::euclidean(), 0.55};
        const auto c_fast = verify_contraction(spec, std::span<const double>(pts), g);
        const auto c_slow = reference::verify_contraction(spec, std::span<const double>(pts), g);
        CHECK(c_fast.pairs == c_slow.pairs);
        CHECK(c_fast.failures() > 0);

        const auto alpha_spec = push_forward_contraction(g, ClassicalContraction<double>{
                                                                builtin::affine_map(0.4, 1.0).map,
                                                                builtin::euclidean(), 0.45});
        CHECK(verify_contraction(alpha_spec, std::span<const double>(pts)).pairs ==
              reference::verify_contraction(alpha_spec, std::span<const double>(pts)).pairs);
    }
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
    try {
        parallel_for(100, [](std::size_t i) {
            if (i % 7 == 3)
                throw NumericError("boom", i);
        });
        FAIL("expected an exception");
    } catch (const NumericError& e) {
        CHECK(e.index() == 3);
    }
}
