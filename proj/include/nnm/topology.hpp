#pragma once

// Open balls, radius conversion and the finite-prefix forms of ball,
// convergence and Cauchy equivalence between a classical space and its
// alpha counterpart.
//
// Ball membership is strict. Equivalence checks flag candidates whose
// classical distance lies within a boundary band of the radius instead of
// counting them as discrepancies.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <fmt/format.h>

#include "nnm/arithmetic.hpp"
#include "nnm/errors.hpp"
#include "nnm/metric.hpp"
#include "nnm/parallel.hpp"

namespace nnm {

inline constexpr double kDefaultBoundaryBand = 1e-9;

/// delta > 0 paired with epsilon = alpha(delta) >̇ 0̇.
struct RadiusPair {
    double classical = 0.0;
    AlphaNumber alpha;
};

/// delta -> (delta, alpha(delta)). Throws DomainError unless delta > 0.
RadiusPair convert_radius(const Generator& g, double delta);
/// epsilon -> (alpha^-1(epsilon), epsilon). Throws DomainError unless epsilon >̇ 0̇.
RadiusPair convert_radius(const Generator& g, const AlphaNumber& epsilon);

/// y ∈ B_alpha(center, epsilon), i.e. d_alpha(center, y) <̇ epsilon.
template <class Point>
bool alpha_ball_contains(const NonNewtonianMetricSpace<Point>& s, const Point& center, const AlphaNumber& epsilon,
                         const Point& candidate) {
    const double radius = convert_radius(s.generator, epsilon).classical;
    return s.pulled_distance(center, candidate) < radius;
}

/// y ∈ B(center, delta), i.e. d(center, y) < delta.
template <class Point>
bool ball_contains(const ClassicalMetricSpace<Point>& s, const Point& center, double delta, const Point& candidate) {
    if (!(delta > 0.0))
        throw DomainError(fmt::format("ball radius must be positive, got {}", delta));
    return s.distance(center, candidate) < delta;
}

struct BallMembership {
    std::size_t index = 0;
    double classical_distance = 0.0;
    bool in_alpha_ball = false;
    bool in_classical_ball = false;
    bool near_boundary = false;

    friend bool operator==(const BallMembership&, const BallMembership&) = default;
};

struct BallEquivalenceReport {
    RadiusPair radius;
    std::vector<BallMembership> entries;
    /// Disagreements away from the boundary band.
    std::size_t discrepancies = 0;
    /// Disagreements inside the band; reported, not counted as failures.
    std::size_t boundary_discrepancies = 0;

    bool equivalent() const noexcept { return discrepancies == 0; }
};

namespace detail {

template <class Point>
void require_pull_back_pair(const Generator& g, const NonNewtonianMetricSpace<Point>& alpha_space,
                            const ClassicalMetricSpace<Point>& classical, const Point& a, const Point& b,
                            const Tolerance& tol) {
    const double pulled = alpha_space.pulled_distance(a, b);
    const double direct = classical.distance(a, b);
    if (!tol.close(direct, pulled))
        throw DomainError(fmt::format("space '{}' is not the {} pull-back of '{}' (d = {} but alpha^-1(d_alpha) = {})",
                                      classical.name, g.name(), alpha_space.name, direct, pulled));
}

template <class Point>
BallMembership ball_membership(const NonNewtonianMetricSpace<Point>& s_alpha,
                               const ClassicalMetricSpace<Point>& s_classical, const Point& center,
                               const RadiusPair& radius, const Point& candidate, std::size_t index,
                               double boundary_band) {
    BallMembership m;
    m.index = index;
    m.classical_distance = s_classical.distance(center, candidate);
    m.in_classical_ball = m.classical_distance < radius.classical;
    m.in_alpha_ball = alpha_ball_contains(s_alpha, center, radius.alpha, candidate);
    m.near_boundary = std::abs(m.classical_distance - radius.classical) < boundary_band;
    return m;
}

inline void tally(BallEquivalenceReport& report) {
    for (const auto& e : report.entries) {
        if (e.in_alpha_ball == e.in_classical_ball)
            continue;
        if (e.near_boundary)
            ++report.boundary_discrepancies;
        else
            ++report.discrepancies;
    }
}

} // namespace detail

/// For every sampled y: y ∈ B_alpha(center, alpha(delta)) ⇔ y ∈ B(center, delta).
/// Throws DomainError if `s_classical` does not agree with the pull-back of
/// `s_alpha` on the sampled center distances.
template <class Point>
BallEquivalenceReport check_ball_equivalence(const Generator& g, const NonNewtonianMetricSpace<Point>& s_alpha,
                                             const ClassicalMetricSpace<Point>& s_classical, const Point& center,
                                             double delta, std::span<const Point> sample,
                                             double boundary_band = kDefaultBoundaryBand,
                                             const Tolerance& tol = {}) {
    if (s_alpha.generator.name() != g.name())
        throw DomainError("space '" + s_alpha.name + "' is not generated by '" + g.name() + "'");
    BallEquivalenceReport report{convert_radius(g, delta), std::vector<BallMembership>(sample.size()), 0, 0};
    parallel_for(sample.size(), [&](std::size_t i) {
        detail::require_pull_back_pair(g, s_alpha, s_classical, center, sample[i], tol);
        report.entries[i] = detail::ball_membership(s_alpha, s_classical, center, report.radius, sample[i], i,
                                                    boundary_band);
    });
    detail::tally(report);
    return report;
}

/// Finite prefix x_1..x_N of a sequence, with an optional limit candidate.
template <class Point>
struct SequencePrefix {
    std::vector<Point> points;
    std::optional<Point> limit;
};

namespace detail {

template <class Point>
void require_window(const SequencePrefix<Point>& seq, double tail_tolerance, std::size_t tail_window) {
    if (seq.points.empty())
        throw DomainError("sequence prefix is empty");
    if (tail_window < 2)
        throw DomainError(fmt::format("tail window must be at least 2, got {}", tail_window));
    if (tail_window > seq.points.size())
        throw DomainError(fmt::format("tail window {} is larger than the prefix length {}", tail_window,
                                      seq.points.size()));
    if (!(tail_tolerance > 0.0))
        throw DomainError(fmt::format("tail tolerance must be positive, got {}", tail_tolerance));
}

/// True iff less(d(x_i, x_j)) for every pair in the final `window` points.
template <class Point, class Within>
bool tail_within(const SequencePrefix<Point>& seq, std::size_t window, Within&& within) {
    const std::size_t start = seq.points.size() - window;
    for (std::size_t i = start; i < seq.points.size(); ++i)
        for (std::size_t j = i + 1; j < seq.points.size(); ++j)
            if (!within(seq.points[i], seq.points[j]))
                return false;
    return true;
}

/// Smallest 1-based n such that inside(x_m) holds for every m >= n in the
/// prefix; nullopt when the last point is outside.
template <class Point, class Inside>
std::optional<std::size_t> entry_index(const SequencePrefix<Point>& seq, Inside&& inside) {
    std::size_t n = seq.points.size();
    while (n > 0 && inside(seq.points[n - 1]))
        --n;
    if (n == seq.points.size())
        return std::nullopt;
    return n + 1;
}

} // namespace detail

/// Finite-prefix Cauchy heuristic: all pairwise distances among the last
/// `tail_window` points are below `tail_tolerance`.
template <class Point>
bool is_cauchy_prefix(const ClassicalMetricSpace<Point>& s, const SequencePrefix<Point>& seq, double tail_tolerance,
                      std::size_t tail_window) {
    detail::require_window(seq, tail_tolerance, tail_window);
    return detail::tail_within(seq, tail_window,
                               [&](const Point& a, const Point& b) { return s.distance(a, b) < tail_tolerance; });
}

/// Same heuristic in the alpha-space, with the tolerance transported to
/// alpha(tail_tolerance) and compared in the alpha-order.
template <class Point>
bool is_cauchy_prefix(const NonNewtonianMetricSpace<Point>& s, const SequencePrefix<Point>& seq,
                      double tail_tolerance, std::size_t tail_window) {
    detail::require_window(seq, tail_tolerance, tail_window);
    const RadiusPair radius = convert_radius(s.generator, tail_tolerance);
    const double threshold = s.generator.pull(radius.alpha);
    return detail::tail_within(seq, tail_window,
                               [&](const Point& a, const Point& b) { return s.pulled_distance(a, b) < threshold; });
}

/// 1-based index after which every prefix point lies in B(limit, delta).
template <class Point>
std::optional<std::size_t> convergence_index(const ClassicalMetricSpace<Point>& s, const SequencePrefix<Point>& seq,
                                             double delta) {
    if (!seq.limit)
        throw DomainError("sequence has no limit candidate");
    if (!(delta > 0.0))
        throw DomainError(fmt::format("ball radius must be positive, got {}", delta));
    return detail::entry_index(seq, [&](const Point& x) { return ball_contains(s, *seq.limit, delta, x); });
}

/// 1-based index after which every prefix point lies in B_alpha(limit, epsilon).
template <class Point>
std::optional<std::size_t> convergence_index(const NonNewtonianMetricSpace<Point>& s,
                                             const SequencePrefix<Point>& seq, const AlphaNumber& epsilon) {
    if (!seq.limit)
        throw DomainError("sequence has no limit candidate");
    convert_radius(s.generator, epsilon);
    return detail::entry_index(seq,
                               [&](const Point& x) { return alpha_ball_contains(s, *seq.limit, epsilon, x); });
}

struct ConvergenceStep {
    double delta = 0.0;
    AlphaNumber epsilon;
    std::optional<std::size_t> classical_index;
    std::optional<std::size_t> alpha_index;

    bool match() const noexcept { return classical_index == alpha_index; }
    bool converged() const noexcept { return classical_index.has_value() && alpha_index.has_value(); }
};

struct ConvergenceReport {
    std::vector<ConvergenceStep> steps;

    bool equivalent() const noexcept {
        for (const auto& s : steps)
            if (!s.match())
                return false;
        return true;
    }
};

/// For each delta in `schedule`, the entry index n0 into B(limit, delta)
/// next to the entry index into B_alpha(limit, alpha(delta)). Steps are
/// evaluated concurrently and reported in schedule order.
template <class Point>
ConvergenceReport check_convergence_equivalence(const ClassicalMetricSpace<Point>& classical,
                                                const NonNewtonianMetricSpace<Point>& alpha_space,
                                                const SequencePrefix<Point>& seq, std::span<const double> schedule) {
    if (schedule.empty())
        throw DomainError("radius schedule is empty");
    if (!seq.limit)
        throw DomainError("sequence has no limit candidate");
    ConvergenceReport report{std::vector<ConvergenceStep>(schedule.size())};
    parallel_for(schedule.size(), [&](std::size_t i) {
        const RadiusPair radius = convert_radius(alpha_space.generator, schedule[i]);
        auto& step = report.steps[i];
        step.delta = radius.classical;
        step.epsilon = radius.alpha;
        step.classical_index = convergence_index(classical, seq, radius.classical);
        step.alpha_index = convergence_index(alpha_space, seq, radius.alpha);
    });
    return report;
}

} // namespace nnm
