#pragma once

// Classical and non-Newtonian metric spaces, sample-based axiom checks and
// the transports d = alpha^-1 o d_alpha (pull-back) and d_alpha = alpha o d
// (push-forward).
//
// Axioms are universally quantified; the checkers only ever see a finite
// sample and report its size. Pairwise distances of the sample are
// materialized once into a table and the O(n^3) triangle scan runs on the
// OpenMP team. nnm/reference.hpp keeps the plain serial loops.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <fmt/format.h>

#include "nnm/arithmetic.hpp"
#include "nnm/errors.hpp"
#include "nnm/parallel.hpp"
#include "nnm/tolerance.hpp"

namespace nnm {

template <class Point>
using DistanceFn = std::function<double(const Point&, const Point&)>;
template <class Point>
using EqualityFn = std::function<bool(const Point&, const Point&)>;
/// Produces `count` carrier points from `seed`.
template <class Point>
using Sampler = std::function<std::vector<Point>(std::size_t count, std::uint64_t seed)>;

template <class Point>
struct ClassicalMetricSpace {
    std::string name;
    DistanceFn<Point> distance;
    EqualityFn<Point> equal = std::equal_to<Point>{};
    Sampler<Point> sampler = {};
};

/// `distance` returns raw elements of R_alpha; alpha_distance tags them.
template <class Point>
struct NonNewtonianMetricSpace {
    std::string name;
    Generator generator;
    DistanceFn<Point> distance;
    EqualityFn<Point> equal = std::equal_to<Point>{};
    Sampler<Point> sampler = {};

    AlphaNumber alpha_distance(const Point& x, const Point& y) const {
        return generator.make(distance(x, y));
    }
    double pulled_distance(const Point& x, const Point& y) const {
        return generator.inverse(distance(x, y));
    }
};

/// Indices into the checked sample. Pair axioms leave z at `none`.
struct Witness {
    static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

    std::size_t x = none;
    std::size_t y = none;
    std::size_t z = none;
    double residual = 0.0;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct AxiomResult {
    std::string name;
    std::string description;
    bool passed = true;
    double worst_residual = 0.0;
    std::size_t evaluations = 0;
    /// Worst failures first, capped at CheckOptions::max_witnesses.
    std::vector<Witness> witnesses;

    friend bool operator==(const AxiomResult&, const AxiomResult&) = default;
};

struct AxiomReport {
    std::string checker;
    std::size_t sample_size = 0;
    std::vector<AxiomResult> axioms;

    bool all_passed() const noexcept {
        return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.passed; });
    }

    const AxiomResult& at(std::string_view name) const {
        for (const auto& a : axioms)
            if (a.name == name)
                return a;
        throw DomainError("report has no axiom named '" + std::string(name) + "'");
    }

    friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

struct CheckOptions {
    Tolerance tolerance{};
    std::size_t max_witnesses = 8;
};

namespace detail {

struct Verdict {
    double residual;
    bool fail;
};

/// Rules for distances valued in the ordinary reals, either classical or
/// pulled back through alpha^-1.
struct AdditiveRules {
    Tolerance tol;

    Verdict identity(bool same, double d) const {
        if (same) {
            const double r = std::abs(d);
            return {r, r > tol.band(0.0)};
        }
        return {std::max(0.0, -d), !(d > 0.0)};
    }
    Verdict symmetry(double a, double b) const {
        const double r = std::abs(a - b);
        return {r, r > tol.band(std::max(std::abs(a), std::abs(b)))};
    }
    Verdict triangle(double xy, double xz, double zy) const {
        const double rhs = xz + zy;
        return {std::max(0.0, xy - rhs), !tol.less_equal(xy, rhs)};
    }
};

/// Rules for multiplicative distances: identity 1, product triangle.
struct ProductRules {
    Tolerance tol;

    Verdict identity(bool same, double d) const {
        if (same) {
            const double r = std::abs(d - 1.0);
            return {r, r > tol.band(1.0)};
        }
        return {std::max(0.0, 1.0 - d), !(d > 1.0)};
    }
    Verdict symmetry(double a, double b) const {
        const double r = std::abs(a - b);
        return {r, r > tol.band(std::max(std::abs(a), std::abs(b)))};
    }
    Verdict triangle(double xy, double xz, double zy) const {
        const double rhs = xz * zy;
        return {std::max(0.0, xy - rhs), !tol.less_equal(xy, rhs)};
    }
};

inline bool witness_before(const Witness& a, const Witness& b) {
    if (a.residual != b.residual)
        return a.residual > b.residual;
    if (a.x != b.x)
        return a.x < b.x;
    if (a.y != b.y)
        return a.y < b.y;
    return a.z < b.z;
}

inline void keep_worst(std::vector<Witness>& witnesses, std::size_t cap) {
    std::sort(witnesses.begin(), witnesses.end(), witness_before);
    if (witnesses.size() > cap)
        witnesses.resize(cap);
}

struct AxiomAccumulator {
    double worst = 0.0;
    std::size_t evaluations = 0;
    bool failed = false;
    std::vector<Witness> witnesses;

    void record(Verdict v, Witness w, std::size_t cap) {
        ++evaluations;
        worst = std::max(worst, v.residual);
        if (!v.fail)
            return;
        failed = true;
        w.residual = v.residual;
        witnesses.push_back(w);
        if (witnesses.size() > 4 * cap + 16)
            keep_worst(witnesses, cap);
    }

    void merge(const AxiomAccumulator& other) {
        worst = std::max(worst, other.worst);
        evaluations += other.evaluations;
        failed = failed || other.failed;
        witnesses.insert(witnesses.end(), other.witnesses.begin(), other.witnesses.end());
    }

    AxiomResult finish(std::string name, std::string description, std::size_t cap) {
        keep_worst(witnesses, cap);
        return AxiomResult{std::move(name), std::move(description), !failed, worst, evaluations,
                           std::move(witnesses)};
    }
};

struct AxiomNames {
    std::string checker;
    std::array<std::string, 3> names;
    std::array<std::string, 3> descriptions;
};

inline AxiomNames alpha_names() {
    return {"alpha",
            {"αm1", "αm2", "αm3"},
            {"0̇ ≤̇ d(x,y) and d(x,y) = 0̇ iff x = y", "d(x,y) = d(y,x)", "d(x,y) ≤̇ d(x,z) +̇ d(z,y)"}};
}

inline AxiomNames multiplicative_names() {
    return {"multiplicative",
            {"mm1", "mm2", "mm3"},
            {"1 ≤ d(x,y) and d(x,y) = 1 iff x = y", "d(x,y) = d(y,x)", "d(x,y) ≤ d(x,z)·d(z,y)"}};
}

inline AxiomNames classical_names() {
    return {"classical",
            {"m1", "m2", "m3"},
            {"0 ≤ d(x,y) and d(x,y) = 0 iff x = y", "d(x,y) = d(y,x)", "d(x,y) ≤ d(x,z) + d(z,y)"}};
}

/// Row-major n x n table of sample distances plus the point-equality mask.
struct PairTable {
    std::size_t n = 0;
    std::vector<double> values;
    std::vector<unsigned char> same;

    explicit PairTable(std::size_t size) : n(size), values(size * size), same(size * size) {}

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
    bool same_point(std::size_t i, std::size_t j) const { return same[i * n + j] != 0; }
};

template <class Point>
std::string describe_point(const Point& p, std::size_t index) {
    if constexpr (std::is_arithmetic_v<Point>)
        return fmt::format("{}", p);
    else
        return fmt::format("sample[{}]", index);
}

template <class Point>
[[noreturn]] void throw_pair_range(std::string_view space, double value, std::span<const Point> sample,
                                   std::size_t i, std::size_t j, std::string_view range) {
    throw RangeError(fmt::format("distance d({}, {}) = {} in space '{}' is outside the range {}",
                                 describe_point(sample[i], i), describe_point(sample[j], j), value, space,
                                 range));
}

/// Fills a table with cell(i, j) for every ordered pair, one row per task.
template <class Point, class Cell, class Equal>
PairTable build_table(std::span<const Point> sample, Cell&& cell, const Equal& equal) {
    PairTable table(sample.size());
    parallel_for(sample.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < sample.size(); ++j) {
            table.values[i * table.n + j] = cell(i, j);
            table.same[i * table.n + j] = (i == j || equal(sample[i], sample[j])) ? 1 : 0;
        }
    });
    return table;
}

/// One task per row x: identity on (x, y), symmetry on (x, y > x) and the
/// triangle on (x, y, z) for every y, z.
template <class Rules>
AxiomReport run_axiom_kernel(const PairTable& t, const Rules& rules, const AxiomNames& names,
                             std::size_t max_witnesses) {
    const std::size_t cap = std::max<std::size_t>(1, max_witnesses);
    const std::size_t n = t.n;
    std::vector<std::array<AxiomAccumulator, 3>> rows(n);
    parallel_for(n, [&](std::size_t i) {
        auto& acc = rows[i];
        for (std::size_t j = 0; j < n; ++j) {
            const double xy = t.at(i, j);
            acc[0].record(rules.identity(t.same_point(i, j), xy), Witness{i, j, Witness::none, 0.0}, cap);
            if (j > i)
                acc[1].record(rules.symmetry(xy, t.at(j, i)), Witness{i, j, Witness::none, 0.0}, cap);
            for (std::size_t k = 0; k < n; ++k)
                acc[2].record(rules.triangle(xy, t.at(i, k), t.at(k, j)), Witness{i, j, k, 0.0}, cap);
        }
    });

    std::array<AxiomAccumulator, 3> total;
    for (const auto& row : rows)
        for (std::size_t a = 0; a < 3; ++a)
            total[a].merge(row[a]);

    AxiomReport report{names.checker, n, {}};
    for (std::size_t a = 0; a < 3; ++a)
        report.axioms.push_back(total[a].finish(names.names[a], names.descriptions[a], cap));
    return report;
}

template <class Point>
void require_nonempty(std::span<const Point> sample) {
    if (sample.empty())
        throw DomainError("axiom checks need a nonempty sample");
}

} // namespace detail

/// Checks αm1-αm3 on every pair and triple of `sample`, comparing in the
/// alpha-order through pulled-back reals.
template <class Point>
AxiomReport check_alpha_axioms(const NonNewtonianMetricSpace<Point>& s, std::span<const Point> sample,
                               const CheckOptions& options = {}) {
    detail::require_nonempty(sample);
    const Generator& g = s.generator;
    const auto range = g.range().to_string();
    auto table = detail::build_table<Point>(
        sample,
        [&](std::size_t i, std::size_t j) {
            const double raw = s.distance(sample[i], sample[j]);
            if (!g.in_range(raw))
                detail::throw_pair_range(s.name, raw, sample, i, j, range);
            return g.inverse(raw);
        },
        s.equal);
    return detail::run_axiom_kernel(table, detail::AdditiveRules{options.tolerance}, detail::alpha_names(),
                                    options.max_witnesses);
}

/// Checks mm1-mm3 directly on the multiplicative values (no logarithms).
template <class Point>
AxiomReport check_multiplicative_axioms(const NonNewtonianMetricSpace<Point>& s, std::span<const Point> sample,
                                        const CheckOptions& options = {}) {
    if (s.generator.name() != "exp")
        throw DomainError("multiplicative axioms need the exp generator, got '" + s.generator.name() + "'");
    detail::require_nonempty(sample);
    const Generator& g = s.generator;
    const auto range = g.range().to_string();
    auto table = detail::build_table<Point>(
        sample,
        [&](std::size_t i, std::size_t j) {
            const double raw = s.distance(sample[i], sample[j]);
            if (!g.in_range(raw))
                detail::throw_pair_range(s.name, raw, sample, i, j, range);
            return raw;
        },
        s.equal);
    return detail::run_axiom_kernel(table, detail::ProductRules{options.tolerance},
                                    detail::multiplicative_names(), options.max_witnesses);
}

/// Classical m1-m3: nonnegativity with identity of indiscernibles, symmetry
/// and the triangle inequality.
template <class Point>
AxiomReport check_metric_axioms(const ClassicalMetricSpace<Point>& s, std::span<const Point> sample,
                                const CheckOptions& options = {}) {
    detail::require_nonempty(sample);
    auto table = detail::build_table<Point>(
        sample,
        [&](std::size_t i, std::size_t j) {
            const double d = s.distance(sample[i], sample[j]);
            if (!std::isfinite(d))
                detail::throw_pair_range(s.name, d, sample, i, j, "(-inf, inf)");
            return d;
        },
        s.equal);
    return detail::run_axiom_kernel(table, detail::AdditiveRules{options.tolerance}, detail::classical_names(),
                                    options.max_witnesses);
}

/// d = alpha^-1 o d_alpha.
template <class Point>
ClassicalMetricSpace<Point> pull_back_metric(const Generator& g, const NonNewtonianMetricSpace<Point>& s) {
    if (s.generator.name() != g.name())
        throw DomainError("space '" + s.name + "' is generated by '" + s.generator.name() +
                          "', not by '" + g.name() + "'");
    return ClassicalMetricSpace<Point>{
        "pull-back of " + s.name,
        [g, d = s.distance](const Point& x, const Point& y) { return g.inverse(d(x, y)); },
        s.equal,
        s.sampler,
    };
}

/// d_alpha = alpha o d.
template <class Point>
NonNewtonianMetricSpace<Point> push_forward_metric(const Generator& g, const ClassicalMetricSpace<Point>& s) {
    return NonNewtonianMetricSpace<Point>{
        g.name() + " push-forward of " + s.name,
        g,
        [g, d = s.distance](const Point& x, const Point& y) { return g.forward(d(x, y)); },
        s.equal,
        s.sampler,
    };
}

} // namespace nnm
