#pragma once

// Named spaces and maps on the real line used by the CLI and the tests.

#include <string>
#include <string_view>
#include <vector>

#include "nnm/arithmetic.hpp"
#include "nnm/fixedpoint.hpp"
#include "nnm/metric.hpp"

namespace nnm::builtin {

using RealSpace = ClassicalMetricSpace<double>;
using RealAlphaSpace = NonNewtonianMetricSpace<double>;

/// |x - y| on the reals.
RealSpace euclidean();
/// 0 for x = y, 1 otherwise.
RealSpace discrete();
/// |ln x - ln y| on the positive reals.
RealSpace log_ratio();

/// e^|x - y| on the reals.
RealAlphaSpace mult_absdiff();
/// max(x/y, y/x) on the positive reals.
RealAlphaSpace max_ratio();
/// e^(x - y): not symmetric.
RealAlphaSpace broken_asym();
/// Constantly 1: fails identity of indiscernibles.
RealAlphaSpace constant_one();

std::vector<std::string> classical_space_names();
std::vector<std::string> multiplicative_space_names();

bool is_classical_space(std::string_view name);
RealSpace classical_space(std::string_view name);
/// Native multiplicative spaces by name, or the push-forward of a named
/// classical space under `g`. Native spaces require g = exp.
RealAlphaSpace alpha_space(std::string_view name, const Generator& g);

/// Uniform points in [lo, hi].
std::vector<double> uniform_sample(std::size_t count, std::uint64_t seed, double lo, double hi);
/// Log-uniform points in [lo, hi], lo > 0.
std::vector<double> log_uniform_sample(std::size_t count, std::uint64_t seed, double lo, double hi);

struct NamedMap {
    std::string name;
    MapFn<double> map;
    /// Lipschitz constant of the map in its natural metric.
    double lipschitz;
    /// "euclidean" or "log-ratio".
    std::string natural_metric;
};

NamedMap affine_map(double a, double b);
NamedMap sqrt_map();
NamedMap double_map();
/// "affine:a,b", "sqrt" or "double".
NamedMap map_by_spec(std::string_view spec);

} // namespace nnm::builtin
