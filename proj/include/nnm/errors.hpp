#pragma once

#include <stdexcept>
#include <string>

namespace nnm {

/// Argument outside an operation's mathematical domain (mismatched
/// generators, nonpositive radii, invalid contraction constants).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Value outside the range R_alpha of a generator.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// alpha-division where the pulled-back divisor is zero.
class DivisionByAlphaZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A map or distance produced a non-finite value.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, std::size_t index)
        : std::runtime_error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

} // namespace nnm
