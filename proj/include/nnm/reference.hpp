#pragma once

// Serial reference versions of the parallel kernels. They evaluate the
// distance functions directly inside plain nested loops, with no pair
// table and no OpenMP, and must produce reports identical to the primary
// implementations. Used by the tests and the benchmark.

#include <span>
#include <vector>

#include "nnm/fixedpoint.hpp"
#include "nnm/metric.hpp"
#include "nnm/topology.hpp"

namespace nnm::reference {

namespace detail {

template <class Rules, class Distance, class Equal>
AxiomReport axioms(std::size_t n, Distance&& d, Equal&& same, const Rules& rules, const nnm::detail::AxiomNames& names,
                   std::size_t max_witnesses) {
    const std::size_t cap = std::max<std::size_t>(1, max_witnesses);
    // Surface range errors in row-major order before any axiom is evaluated.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d(i, j);

    std::array<nnm::detail::AxiomAccumulator, 3> acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            acc[0].record(rules.identity(same(i, j), d(i, j)), Witness{i, j, Witness::none, 0.0}, cap);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            acc[1].record(rules.symmetry(d(i, j), d(j, i)), Witness{i, j, Witness::none, 0.0}, cap);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                acc[2].record(rules.triangle(d(i, j), d(i, k), d(k, j)), Witness{i, j, k, 0.0}, cap);

    AxiomReport report{names.checker, n, {}};
    for (std::size_t a = 0; a < 3; ++a)
        report.axioms.push_back(acc[a].finish(names.names[a], names.descriptions[a], cap));
    return report;
}

} // namespace detail

template <class Point>
AxiomReport check_alpha_axioms(const NonNewtonianMetricSpace<Point>& s, std::span<const Point> sample,
                               const CheckOptions& options = {}) {
    nnm::detail::require_nonempty(sample);
    const Generator& g = s.generator;
    const auto d = [&](std::size_t i, std::size_t j) {
        const double raw = s.distance(sample[i], sample[j]);
        if (!g.in_range(raw))
            nnm::detail::throw_pair_range(s.name, raw, sample, i, j, g.range().to_string());
        return g.inverse(raw);
    };
    const auto same = [&](std::size_t i, std::size_t j) { return i == j || s.equal(sample[i], sample[j]); };
    return detail::axioms(sample.size(), d, same, nnm::detail::AdditiveRules{options.tolerance},
                          nnm::detail::alpha_names(), options.max_witnesses);
}

template <class Point>
AxiomReport check_multiplicative_axioms(const NonNewtonianMetricSpace<Point>& s, std::span<const Point> sample,
                                        const CheckOptions& options = {}) {
    if (s.generator.name() != "exp")
        throw DomainError("multiplicative axioms need the exp generator, got '" + s.generator.name() + "'");
    nnm::detail::require_nonempty(sample);
    const Generator& g = s.generator;
    const auto d = [&](std::size_t i, std::size_t j) {
        const double raw = s.distance(sample[i], sample[j]);
        if (!g.in_range(raw))
            nnm::detail::throw_pair_range(s.name, raw, sample, i, j, g.range().to_string());
        return raw;
    };
    const auto same = [&](std::size_t i, std::size_t j) { return i == j || s.equal(sample[i], sample[j]); };
    return detail::axioms(sample.size(), d, same, nnm::detail::ProductRules{options.tolerance},
                          nnm::detail::multiplicative_names(), options.max_witnesses);
}

template <class Point>
AxiomReport check_metric_axioms(const ClassicalMetricSpace<Point>& s, std::span<const Point> sample,
                                const CheckOptions& options = {}) {
    nnm::detail::require_nonempty(sample);
    const auto d = [&](std::size_t i, std::size_t j) {
        const double v = s.distance(sample[i], sample[j]);
        if (!std::isfinite(v))
            nnm::detail::throw_pair_range(s.name, v, sample, i, j, "(-inf, inf)");
        return v;
    };
    const auto same = [&](std::size_t i, std::size_t j) { return i == j || s.equal(sample[i], sample[j]); };
    return detail::axioms(sample.size(), d, same, nnm::detail::AdditiveRules{options.tolerance},
                          nnm::detail::classical_names(), options.max_witnesses);
}

template <class Point>
BallEquivalenceReport check_ball_equivalence(const Generator& g, const NonNewtonianMetricSpace<Point>& s_alpha,
                                             const ClassicalMetricSpace<Point>& s_classical, const Point& center,
                                             double delta, std::span<const Point> sample,
                                             double boundary_band = kDefaultBoundaryBand,
                                             const Tolerance& tol = {}) {
    if (s_alpha.generator.name() != g.name())
        throw DomainError("space '" + s_alpha.name + "' is not generated by '" + g.name() + "'");
    BallEquivalenceReport report{convert_radius(g, delta), {}, 0, 0};
    for (std::size_t i = 0; i < sample.size(); ++i) {
        nnm::detail::require_pull_back_pair(g, s_alpha, s_classical, center, sample[i], tol);
        report.entries.push_back(
            nnm::detail::ball_membership(s_alpha, s_classical, center, report.radius, sample[i], i, boundary_band));
    }
    nnm::detail::tally(report);
    return report;
}

template <class Point>
ContractionReport verify_contraction(const ClassicalContraction<Point>& spec, std::span<const Point> sample,
                                     const Generator& transport, const Tolerance& tol = {}) {
    nnm::detail::require_pairs(sample);
    const double lambda = nnm::detail::checked_lambda(spec.lambda, tol.rtol);
    const AlphaContraction<Point> alpha = push_forward_contraction(transport, spec);
    ContractionReport report{"classical", transport.name(), lambda, {}};
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            const Point tx = spec.map(sample[i]);
            const Point ty = spec.map(sample[j]);
            const bool native = nnm::detail::classical_contraction_holds(
                spec.space.distance(tx, ty), spec.space.distance(sample[i], sample[j]), lambda, tol);
            const bool transported = nnm::detail::alpha_contraction_holds(
                transport, alpha.space.distance(tx, ty), alpha.space.distance(sample[i], sample[j]), alpha.k.value,
                tol);
            report.pairs.push_back(PairVerdict{i, j, native, transported});
        }
    }
    return report;
}

template <class Point>
ContractionReport verify_contraction(const AlphaContraction<Point>& spec, std::span<const Point> sample,
                                     const Tolerance& tol = {}) {
    nnm::detail::require_pairs(sample);
    const Generator& g = spec.space.generator;
    const double lambda = nnm::detail::checked_lambda(convert_contraction_constant(g, spec.k, tol.rtol).lambda, tol.rtol);
    const ClassicalContraction<Point> classical = pull_back_contraction(spec);
    ContractionReport report{g.name(), "classical", lambda, {}};
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = i + 1; j < sample.size(); ++j) {
            const Point tx = spec.map(sample[i]);
            const Point ty = spec.map(sample[j]);
            const bool native = nnm::detail::alpha_contraction_holds(
                g, spec.space.distance(tx, ty), spec.space.distance(sample[i], sample[j]), spec.k.value, tol);
            const bool transported = nnm::detail::classical_contraction_holds(
                classical.space.distance(tx, ty), classical.space.distance(sample[i], sample[j]), lambda, tol);
            report.pairs.push_back(PairVerdict{i, j, native, transported});
        }
    }
    return report;
}

} // namespace nnm::reference
