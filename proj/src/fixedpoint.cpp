#include "nnm/fixedpoint.hpp"

namespace nnm {

ConstantConversion convert_contraction_constant(const Generator& g, const AlphaNumber& k, double margin) {
    const double lambda = g.pull(k);
    return ConstantConversion{lambda, lambda >= -margin && lambda < 1.0 - margin};
}

double multiplicative_contraction_bound(double distance, double lambda) {
    if (!(distance > 0.0))
        throw RangeError(fmt::format("multiplicative distance {} is not positive", distance));
    return std::pow(distance, lambda);
}

std::string_view to_string(Termination t) noexcept {
    switch (t) {
    case Termination::converged:
        return "converged";
    case Termination::max_iters:
        return "max_iters";
    case Termination::diverged:
        return "diverged";
    }
    return "?";
}

} // namespace nnm
