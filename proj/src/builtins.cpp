#include "nnm/builtins.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "nnm/errors.hpp"

namespace nnm::builtin {

namespace {

Sampler<double> uniform_sampler(double lo, double hi) {
    return [lo, hi](std::size_t count, std::uint64_t seed) { return uniform_sample(count, seed, lo, hi); };
}

Sampler<double> positive_sampler() {
    return [](std::size_t count, std::uint64_t seed) { return log_uniform_sample(count, seed, 0.1, 100.0); };
}

double parse_real(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw DomainError(fmt::format("cannot parse {} '{}'", what, text));
    return value;
}

} // namespace

RealSpace euclidean() {
    return {"euclidean", [](double x, double y) { return std::abs(x - y); }, std::equal_to<double>{},
            uniform_sampler(-10.0, 10.0)};
}

RealSpace discrete() {
    return {"discrete", [](double x, double y) { return x == y ? 0.0 : 1.0; }, std::equal_to<double>{},
            uniform_sampler(-10.0, 10.0)};
}

RealSpace log_ratio() {
    return {"log-ratio", [](double x, double y) { return std::abs(std::log(x) - std::log(y)); },
            std::equal_to<double>{}, positive_sampler()};
}

RealAlphaSpace mult_absdiff() {
    return {"mult-absdiff", exp_generator(), [](double x, double y) { return std::exp(std::abs(x - y)); },
            std::equal_to<double>{}, uniform_sampler(-10.0, 10.0)};
}

RealAlphaSpace max_ratio() {
    return {"max-ratio", exp_generator(), [](double x, double y) { return std::max(x / y, y / x); },
            std::equal_to<double>{}, positive_sampler()};
}

RealAlphaSpace broken_asym() {
    return {"broken-asym", exp_generator(), [](double x, double y) { return std::exp(x - y); },
            std::equal_to<double>{}, uniform_sampler(-10.0, 10.0)};
}

RealAlphaSpace constant_one() {
    return {"constant-one", exp_generator(), [](double, double) { return 1.0; }, std::equal_to<double>{},
            uniform_sampler(-10.0, 10.0)};
}

std::vector<std::string> classical_space_names() { return {"euclidean", "discrete", "log-ratio"}; }

std::vector<std::string> multiplicative_space_names() {
    return {"mult-absdiff", "max-ratio", "broken-asym", "constant-one"};
}

bool is_classical_space(std::string_view name) {
    const auto names = classical_space_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

RealSpace classical_space(std::string_view name) {
    if (name == "euclidean")
        return euclidean();
    if (name == "discrete")
        return discrete();
    if (name == "log-ratio")
        return log_ratio();
    throw DomainError(fmt::format("unknown classical space '{}'", name));
}

RealAlphaSpace alpha_space(std::string_view name, const Generator& g) {
    if (is_classical_space(name))
        return push_forward_metric(g, classical_space(name));
    RealAlphaSpace space = [&] {
        if (name == "mult-absdiff")
            return mult_absdiff();
        if (name == "max-ratio")
            return max_ratio();
        if (name == "broken-asym")
            return broken_asym();
        if (name == "constant-one")
            return constant_one();
        throw DomainError(fmt::format("unknown space '{}'", name));
    }();
    if (g.name() != "exp")
        throw DomainError(fmt::format("space '{}' is multiplicative and needs --gen exp, got '{}'", name, g.name()));
    return space;
}

std::vector<double> uniform_sample(std::size_t count, std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(count);
    for (auto& x : out)
        x = dist(rng);
    return out;
}

std::vector<double> log_uniform_sample(std::size_t count, std::uint64_t seed, double lo, double hi) {
    if (!(lo > 0.0 && hi > lo))
        throw DomainError("log-uniform sampling needs 0 < lo < hi");
    auto out = uniform_sample(count, seed, std::log(lo), std::log(hi));
    for (auto& x : out)
        x = std::exp(x);
    return out;
}

NamedMap affine_map(double a, double b) {
    return {fmt::format("affine:{},{}", a, b), [a, b](const double& x) { return a * x + b; }, std::abs(a),
            "euclidean"};
}

NamedMap sqrt_map() {
    return {"sqrt", [](const double& x) { return std::sqrt(x); }, 0.5, "log-ratio"};
}

NamedMap double_map() {
    return {"double", [](const double& x) { return 2.0 * x; }, 2.0, "euclidean"};
}

NamedMap map_by_spec(std::string_view spec) {
    if (spec == "sqrt")
        return sqrt_map();
    if (spec == "double")
        return double_map();
    constexpr std::string_view prefix = "affine:";
    if (spec.substr(0, prefix.size()) == prefix) {
        const auto args = spec.substr(prefix.size());
        const auto comma = args.find(',');
        if (comma == std::string_view::npos)
            throw DomainError(fmt::format("affine map needs 'affine:a,b', got '{}'", spec));
        return affine_map(parse_real(args.substr(0, comma), "affine slope"),
                          parse_real(args.substr(comma + 1), "affine offset"));
    }
    throw DomainError(fmt::format("unknown map '{}' (expected affine:a,b, sqrt or double)", spec));
}

} // namespace nnm::builtin
