#include "nnm/arithmetic.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nnm/errors.hpp"

namespace nnm {

bool Interval::contains(double x) const noexcept {
    if (!std::isfinite(x))
        return false;
    const bool above = lo_open ? x > lo : x >= lo;
    const bool below = hi_open ? x < hi : x <= hi;
    return above && below;
}

std::string Interval::to_string() const {
    return fmt::format("{}{}, {}{}", lo_open ? '(' : '[', lo, hi, hi_open ? ')' : ']');
}

Generator::Generator(std::string name, Map forward, Map inverse, Interval range,
                     double roundtrip_tolerance)
    : name_(std::move(name)),
      forward_(std::move(forward)),
      inverse_(std::move(inverse)),
      range_(range),
      roundtrip_tolerance_(roundtrip_tolerance) {
    if (!forward_ || !inverse_)
        throw DomainError("generator '" + name_ + "' needs both forward and inverse maps");
    if (!(roundtrip_tolerance_ >= 0.0))
        throw DomainError("generator '" + name_ + "' has a negative roundtrip tolerance");
    const auto grid = default_grid();
    const GeneratorCheck check = validate(grid);
    if (!check.strictly_increasing)
        throw DomainError("generator '" + name_ + "' is not strictly increasing");
    if (!check.range_membership)
        throw DomainError("generator '" + name_ + "' maps outside its declared range " +
                          range_.to_string());
    if (!check.inverse_consistent)
        throw DomainError(fmt::format("generator '{}' has an inconsistent inverse (roundtrip error {})",
                                      name_, check.worst_roundtrip));
}

double Generator::forward(double u) const {
    const double x = forward_(u);
    if (!range_.contains(x))
        throw RangeError(fmt::format("{}({}) = {} is outside the range {}", name_, u, x,
                                     range_.to_string()));
    return x;
}

double Generator::inverse(double x) const {
    if (!range_.contains(x))
        throw RangeError(fmt::format("{} is outside the range {} of generator '{}'", x,
                                     range_.to_string(), name_));
    return inverse_(x);
}

AlphaNumber Generator::make(double value) const {
    if (!range_.contains(value))
        throw RangeError(fmt::format("{} is outside the range {} of generator '{}'", value,
                                     range_.to_string(), name_));
    return AlphaNumber{value, name_};
}

double Generator::pull(const AlphaNumber& x) const {
    if (x.generator_id != name_)
        throw DomainError("value tagged '" + x.generator_id + "' used with generator '" + name_ + "'");
    return inverse(x.value);
}

GeneratorCheck Generator::validate(std::span<const double> domain_samples) const {
    GeneratorCheck check;
    double previous_u = 0.0;
    double previous_x = 0.0;
    bool first = true;
    for (double u : domain_samples) {
        const double x = forward_(u);
        if (!range_.contains(x)) {
            check.range_membership = false;
            continue;
        }
        if (!first && u > previous_u && !(x > previous_x))
            check.strictly_increasing = false;
        if (!first && u < previous_u && !(x < previous_x))
            check.strictly_increasing = false;
        first = false;
        previous_u = u;
        previous_x = x;

        const double back = inverse_(x) - u;
        const double there = forward_(inverse_(x)) - x;
        const double err = std::max(std::abs(back) / (1.0 + std::abs(u)),
                                    std::abs(there) / (1.0 + std::abs(x)));
        check.worst_roundtrip = std::max(check.worst_roundtrip, err);
        if (!(err <= roundtrip_tolerance_))
            check.inverse_consistent = false;
    }
    return check;
}

std::vector<double> Generator::default_grid() {
    std::vector<double> grid;
    grid.reserve(401);
    for (int i = -200; i <= 200; ++i)
        grid.push_back(i * 0.1);
    return grid;
}

Generator identity_generator() {
    return Generator("identity", [](double u) { return u; }, [](double x) { return x; }, Interval{});
}

Generator exp_generator() {
    Interval positive{0.0, std::numeric_limits<double>::infinity(), true, true};
    return Generator("exp", [](double u) { return std::exp(u); }, [](double x) { return std::log(x); },
                     positive);
}

Generator cube_generator() {
    return Generator("cube", [](double u) { return u * u * u; }, [](double x) { return std::cbrt(x); },
                     Interval{});
}

Generator generator_by_name(std::string_view name) {
    if (name == "identity")
        return identity_generator();
    if (name == "exp")
        return exp_generator();
    if (name == "cube")
        return cube_generator();
    throw DomainError("unknown generator '" + std::string(name) + "' (expected identity, exp or cube)");
}

std::vector<Generator> builtin_generators() {
    return {identity_generator(), exp_generator(), cube_generator()};
}

std::string_view to_string(Ordering o) noexcept {
    switch (o) {
    case Ordering::less:
        return "less";
    case Ordering::equal:
        return "equal";
    case Ordering::greater:
        return "greater";
    }
    return "?";
}

namespace {

void require_same_generator(const Generator& g, const AlphaNumber& x, const AlphaNumber& y) {
    if (x.generator_id != y.generator_id)
        throw DomainError("operands tagged '" + x.generator_id + "' and '" + y.generator_id +
                          "' belong to different arithmetics");
    if (x.generator_id != g.name())
        throw DomainError("operands tagged '" + x.generator_id + "' used with generator '" + g.name() +
                          "'");
}

template <class Op>
AlphaNumber combine(const Generator& g, const AlphaNumber& x, const AlphaNumber& y, Op op) {
    require_same_generator(g, x, y);
    const double u = g.inverse(x.value);
    const double v = g.inverse(y.value);
    return g.make(g.forward(op(u, v)));
}

} // namespace

AlphaNumber alpha_add(const Generator& g, const AlphaNumber& x, const AlphaNumber& y) {
    return combine(g, x, y, [](double u, double v) { return u + v; });
}

AlphaNumber alpha_sub(const Generator& g, const AlphaNumber& x, const AlphaNumber& y) {
    return combine(g, x, y, [](double u, double v) { return u - v; });
}

AlphaNumber alpha_mul(const Generator& g, const AlphaNumber& x, const AlphaNumber& y) {
    return combine(g, x, y, [](double u, double v) { return u * v; });
}

AlphaNumber alpha_div(const Generator& g, const AlphaNumber& x, const AlphaNumber& y, double epsilon) {
    require_same_generator(g, x, y);
    const double u = g.inverse(x.value);
    const double v = g.inverse(y.value);
    if (std::abs(v) <= epsilon)
        throw DivisionByAlphaZero(fmt::format("division by alpha-zero: {}^-1({}) = {}", g.name(), y.value, v));
    return g.make(g.forward(u / v));
}

Ordering alpha_compare(const Generator& g, const AlphaNumber& x, const AlphaNumber& y) {
    require_same_generator(g, x, y);
    const double u = g.inverse(x.value);
    const double v = g.inverse(y.value);
    if (u < v)
        return Ordering::less;
    if (v < u)
        return Ordering::greater;
    return Ordering::equal;
}

std::pair<AlphaNumber, AlphaNumber> alpha_identity_elements(const Generator& g) {
    return {g.lift(0.0), g.lift(1.0)};
}

} // namespace nnm
