#pragma once

#include <cmath>

namespace nnm {

inline constexpr double kDefaultRtol = 1e-9;
inline constexpr double kDefaultDivisionEpsilon = 1e-12;

/// Relative tolerance of the form rtol * (1 + |expected|).
struct Tolerance {
    double rtol = kDefaultRtol;

    double band(double expected) const noexcept { return rtol * (1.0 + std::abs(expected)); }

    bool close(double actual, double expected) const noexcept {
        return std::abs(actual - expected) <= band(expected);
    }

    /// lhs <= rhs, allowing lhs to exceed rhs by the band around rhs.
    bool less_equal(double lhs, double rhs) const noexcept { return lhs - rhs <= band(rhs); }
};

} // namespace nnm
