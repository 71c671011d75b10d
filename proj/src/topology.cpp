#include "nnm/topology.hpp"

namespace nnm {

RadiusPair convert_radius(const Generator& g, double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw DomainError(fmt::format("classical radius must be a positive real, got {}", delta));
    return RadiusPair{delta, g.lift(delta)};
}

RadiusPair convert_radius(const Generator& g, const AlphaNumber& epsilon) {
    const double delta = g.pull(epsilon);
    if (!(delta > 0.0))
        throw DomainError(fmt::format("alpha radius {} is not above the alpha-zero {} of generator '{}'",
                                      epsilon.value, g.forward(0.0), g.name()));
    return RadiusPair{delta, epsilon};
}

} // namespace nnm
