#pragma once

// Contraction checks in both settings and Banach iteration.
//
// An alpha-space contraction d_alpha(Tx, Ty) ≤̇ k ×̇ d_alpha(x, y) with
// k ∈ [alpha(0), alpha(1)) is the classical contraction
// d(Tx, Ty) ≤ lambda d(x, y) for d = alpha^-1 o d_alpha and lambda = alpha^-1(k).

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "nnm/arithmetic.hpp"
#include "nnm/errors.hpp"
#include "nnm/metric.hpp"
#include "nnm/parallel.hpp"
#include "nnm/tolerance.hpp"

namespace nnm {

struct ConstantConversion {
    double lambda = 0.0;
    /// lambda ∈ [0, 1) up to the margin used for the conversion.
    bool valid = false;
};

/// lambda = alpha^-1(k). Valid exactly when -margin <= lambda < 1 - margin.
ConstantConversion convert_contraction_constant(const Generator& g, const AlphaNumber& k,
                                                double margin = kDefaultRtol);

/// Multiplicative form of the contraction bound, d^lambda. For the exp
/// generator this equals k ×̇ d with k = e^lambda.
double multiplicative_contraction_bound(double distance, double lambda);

template <class Point>
using MapFn = std::function<Point(const Point&)>;

template <class Point>
struct ClassicalContraction {
    MapFn<Point> map;
    ClassicalMetricSpace<Point> space;
    double lambda = 0.0;
};

template <class Point>
struct AlphaContraction {
    MapFn<Point> map;
    NonNewtonianMetricSpace<Point> space;
    AlphaNumber k;
};

/// Same map on the pulled-back space with lambda = alpha^-1(k).
template <class Point>
ClassicalContraction<Point> pull_back_contraction(const AlphaContraction<Point>& spec) {
    const Generator& g = spec.space.generator;
    return ClassicalContraction<Point>{spec.map, pull_back_metric(g, spec.space), g.pull(spec.k)};
}

/// Same map on the pushed-forward space with k = alpha(lambda).
template <class Point>
AlphaContraction<Point> push_forward_contraction(const Generator& g, const ClassicalContraction<Point>& spec) {
    return AlphaContraction<Point>{spec.map, push_forward_metric(g, spec.space), g.lift(spec.lambda)};
}

struct PairVerdict {
    std::size_t x = 0;
    std::size_t y = 0;
    bool native_holds = false;
    bool transported_holds = false;

    friend bool operator==(const PairVerdict&, const PairVerdict&) = default;
};

struct ContractionReport {
    /// "classical" or the generator name of the native alpha-space.
    std::string native_setting;
    std::string transported_setting;
    double lambda = 0.0;
    /// Unordered sample pairs (x < y) in lexicographic order.
    std::vector<PairVerdict> pairs;

    bool all_hold() const noexcept {
        for (const auto& p : pairs)
            if (!p.native_holds)
                return false;
        return true;
    }
    bool verdicts_agree() const noexcept {
        for (const auto& p : pairs)
            if (p.native_holds != p.transported_holds)
                return false;
        return true;
    }
    std::size_t failures() const noexcept {
        std::size_t n = 0;
        for (const auto& p : pairs)
            n += p.native_holds ? 0 : 1;
        return n;
    }
};

namespace detail {

inline double checked_lambda(double lambda, double margin) {
    if (!(lambda >= -margin && lambda < 1.0 - margin))
        throw DomainError(fmt::format("contraction constant {} is outside [0, 1)", lambda));
    return lambda;
}

/// d(Tx, Ty) ≤ lambda · d(x, y).
inline bool classical_contraction_holds(double image_distance, double distance, double lambda,
                                        const Tolerance& tol) {
    return tol.less_equal(image_distance, lambda * distance);
}

/// d_alpha(Tx, Ty) ≤̇ k ×̇ d_alpha(x, y), compared through pulled-back reals.
/// The right side is the alpha-product alpha(alpha^-1(k) · alpha^-1(d)).
inline bool alpha_contraction_holds(const Generator& g, double image_distance, double distance, double k,
                                    const Tolerance& tol) {
    const double bound = g.forward(g.inverse(k) * g.inverse(distance));
    return tol.less_equal(g.inverse(image_distance), g.inverse(bound));
}

inline std::size_t pair_offset(std::size_t n, std::size_t i) { return i * (2 * n - i - 1) / 2; }

template <class Point>
void require_pairs(std::span<const Point> sample) {
    if (sample.size() < 2)
        throw DomainError("contraction checks need at least two sample points");
}

template <class Point>
std::vector<Point> images(const MapFn<Point>& map, std::span<const Point> sample) {
    std::vector<Point> out(sample.size());
    parallel_for(sample.size(), [&](std::size_t i) { out[i] = map(sample[i]); });
    return out;
}

/// Fills the pair list row by row; verdict(i, j) returns {native, transported}.
template <class Verdict>
std::vector<PairVerdict> pair_verdicts(std::size_t n, Verdict&& verdict) {
    std::vector<PairVerdict> pairs(n * (n - 1) / 2);
    parallel_for(n, [&](std::size_t i) {
        std::size_t slot = pair_offset(n, i);
        for (std::size_t j = i + 1; j < n; ++j, ++slot) {
            const auto [native, transported] = verdict(i, j);
            pairs[slot] = PairVerdict{i, j, native, transported};
        }
    });
    return pairs;
}

} // namespace detail

/// Checks the classical inequality on every sampled pair and, alongside,
/// the inequality transported to `transport` (push-forward metric and
/// k = alpha(lambda)). Throws DomainError for lambda outside [0, 1).
template <class Point>
ContractionReport verify_contraction(const ClassicalContraction<Point>& spec, std::span<const Point> sample,
                                     const Generator& transport, const Tolerance& tol = {}) {
    detail::require_pairs(sample);
    const double lambda = detail::checked_lambda(spec.lambda, tol.rtol);
    const AlphaContraction<Point> alpha = push_forward_contraction(transport, spec);
    const double k = alpha.k.value;
    const auto mapped = detail::images(spec.map, sample);
    ContractionReport report{"classical", transport.name(), lambda, {}};
    report.pairs = detail::pair_verdicts(sample.size(), [&](std::size_t i, std::size_t j) {
        const bool native = detail::classical_contraction_holds(spec.space.distance(mapped[i], mapped[j]),
                                                                spec.space.distance(sample[i], sample[j]),
                                                                lambda, tol);
        const bool transported =
            detail::alpha_contraction_holds(transport, alpha.space.distance(mapped[i], mapped[j]),
                                            alpha.space.distance(sample[i], sample[j]), k, tol);
        return std::pair{native, transported};
    });
    return report;
}

/// Checks the alpha inequality on every sampled pair and, alongside, the
/// pulled-back classical inequality with lambda = alpha^-1(k).
template <class Point>
ContractionReport verify_contraction(const AlphaContraction<Point>& spec, std::span<const Point> sample,
                                     const Tolerance& tol = {}) {
    detail::require_pairs(sample);
    const Generator& g = spec.space.generator;
    const ConstantConversion conversion = convert_contraction_constant(g, spec.k, tol.rtol);
    const double lambda = detail::checked_lambda(conversion.lambda, tol.rtol);
    const ClassicalContraction<Point> classical = pull_back_contraction(spec);
    const double k = spec.k.value;
    const auto mapped = detail::images(spec.map, sample);
    ContractionReport report{g.name(), "classical", lambda, {}};
    report.pairs = detail::pair_verdicts(sample.size(), [&](std::size_t i, std::size_t j) {
        const bool native = detail::alpha_contraction_holds(g, spec.space.distance(mapped[i], mapped[j]),
                                                            spec.space.distance(sample[i], sample[j]), k, tol);
        const bool transported = detail::classical_contraction_holds(
            classical.space.distance(mapped[i], mapped[j]), classical.space.distance(sample[i], sample[j]),
            lambda, tol);
        return std::pair{native, transported};
    });
    return report;
}

enum class Termination { converged, max_iters, diverged };

std::string_view to_string(Termination t) noexcept;

struct IterationOptions {
    double tolerance = 1e-8;
    std::size_t max_iters = 1000;
    /// Consecutive strictly increasing steps that declare divergence.
    std::size_t divergence_streak = 10;
};

template <class Point>
struct IterationTrace {
    /// x_0 .. x_n.
    std::vector<Point> iterates;
    /// d_alpha(x_i, x_{i+1}); empty for classical runs.
    std::vector<double> alpha_distances;
    /// d(x_i, x_{i+1}), pulled back for alpha runs.
    std::vector<double> distances;
    Termination reason = Termination::max_iters;
    std::size_t iterations = 0;

    const Point& final_point() const { return iterates.back(); }
    bool has_alpha_column() const noexcept { return !alpha_distances.empty(); }
};

namespace detail {

template <class Point>
void require_finite(const Point& p, std::size_t index) {
    if constexpr (std::floating_point<Point>) {
        if (!std::isfinite(p))
            throw NumericError(fmt::format("map produced non-finite iterate {} at index {}", p, index), index);
    }
}

/// step(a, b) returns {alpha distance or nullopt, classical distance}.
template <class Point, class Step>
IterationTrace<Point> iterate(const MapFn<Point>& map, const Point& x0, const IterationOptions& options,
                              Step&& step) {
    if (options.max_iters < 1)
        throw DomainError("max_iters must be at least 1");
    if (!(options.tolerance > 0.0))
        throw DomainError(fmt::format("tolerance must be positive, got {}", options.tolerance));
    require_finite(x0, 0);

    IterationTrace<Point> trace;
    trace.iterates.push_back(x0);
    std::size_t streak = 0;
    while (trace.iterations < options.max_iters) {
        const Point next = map(trace.iterates.back());
        const std::size_t index = trace.iterates.size();
        require_finite(next, index);
        const auto [alpha_distance, distance] = step(trace.iterates.back(), next);
        if (!std::isfinite(distance))
            throw NumericError(fmt::format("non-finite step distance at index {}", index), index);
        if (alpha_distance)
            trace.alpha_distances.push_back(*alpha_distance);
        trace.distances.push_back(distance);
        trace.iterates.push_back(next);
        ++trace.iterations;

        if (distance < options.tolerance) {
            trace.reason = Termination::converged;
            return trace;
        }
        const std::size_t n = trace.distances.size();
        streak = (n >= 2 && trace.distances[n - 1] > trace.distances[n - 2]) ? streak + 1 : 0;
        if (options.divergence_streak > 0 && streak >= options.divergence_streak) {
            trace.reason = Termination::diverged;
            return trace;
        }
    }
    trace.reason = Termination::max_iters;
    return trace;
}

} // namespace detail

/// x_{i+1} = T(x_i) until d(x_i, x_{i+1}) < tolerance.
template <class Point>
IterationTrace<Point> banach_iterate(const ClassicalContraction<Point>& spec, const Point& x0,
                                     const IterationOptions& options = {}) {
    return detail::iterate(spec.map, x0, options, [&](const Point& a, const Point& b) {
        return std::pair{std::optional<double>{}, spec.space.distance(a, b)};
    });
}

/// x_{i+1} = T(x_i) until alpha^-1(d_alpha(x_i, x_{i+1})) < tolerance, which
/// is the classical rule transported to the alpha-space. Both distance
/// columns are recorded.
template <class Point>
IterationTrace<Point> banach_iterate(const AlphaContraction<Point>& spec, const Point& x0,
                                     const IterationOptions& options = {}) {
    const Generator& g = spec.space.generator;
    return detail::iterate(spec.map, x0, options, [&](const Point& a, const Point& b) {
        const double raw = spec.space.distance(a, b);
        return std::pair{std::optional<double>{raw}, g.inverse(raw)};
    });
}

template <class Point>
struct DualRunReport {
    IterationTrace<Point> alpha_run;
    IterationTrace<Point> classical_run;
    bool iterates_identical = false;
    bool stop_indices_equal = false;

    bool consistent() const noexcept {
        return iterates_identical && stop_indices_equal && alpha_run.reason == classical_run.reason;
    }
};

/// Runs the alpha-space iteration and the iteration on its pull-back from
/// the same start and compares the two traces.
template <class Point>
DualRunReport<Point> compare_dual_runs(const AlphaContraction<Point>& spec_alpha, const Generator& g, const Point& x0,
                                       const IterationOptions& options = {}) {
    if (spec_alpha.space.generator.name() != g.name())
        throw DomainError("contraction space is generated by '" + spec_alpha.space.generator.name() +
                          "', not by '" + g.name() + "'");
    DualRunReport<Point> report{banach_iterate(spec_alpha, x0, options),
                                banach_iterate(pull_back_contraction(spec_alpha), x0, options), false, false};
    report.iterates_identical = report.alpha_run.iterates == report.classical_run.iterates;
    report.stop_indices_equal = report.alpha_run.iterations == report.classical_run.iterations;
    return report;
}

} // namespace nnm
