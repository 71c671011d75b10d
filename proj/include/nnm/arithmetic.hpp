#pragma once

// Generators and the arithmetic they induce.
//
// A generator is a strictly increasing bijection alpha from the reals onto
// a range R_alpha. Every operation x (op) y of the induced arithmetic is
// alpha(alpha^-1(x) op alpha^-1(y)), and the induced order compares the
// pulled-back values.

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnm/tolerance.hpp"

namespace nnm {

/// Interval of the real line; bounds may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = true;
    bool hi_open = true;

    bool contains(double x) const noexcept;
    std::string to_string() const;
};

struct AlphaNumber {
    double value = 0.0;
    std::string generator_id;

    friend bool operator==(const AlphaNumber&, const AlphaNumber&) = default;
};

struct GeneratorCheck {
    bool strictly_increasing = true;
    bool inverse_consistent = true;
    bool range_membership = true;
    double worst_roundtrip = 0.0;

    bool ok() const noexcept { return strictly_increasing && inverse_consistent && range_membership; }
};

class Generator {
public:
    using Map = std::function<double(double)>;

    /// Throws DomainError if the pair fails validation on the default grid.
    Generator(std::string name, Map forward, Map inverse, Interval range,
              double roundtrip_tolerance = kDefaultRtol);

    const std::string& name() const noexcept { return name_; }
    const Interval& range() const noexcept { return range_; }
    double roundtrip_tolerance() const noexcept { return roundtrip_tolerance_; }

    /// alpha(u). Throws RangeError when the image leaves R_alpha (overflow).
    double forward(double u) const;
    /// alpha^-1(x). Throws RangeError when x is outside R_alpha.
    double inverse(double x) const;

    bool in_range(double x) const noexcept { return range_.contains(x); }

    /// Tags a raw value; throws RangeError if it is outside R_alpha.
    AlphaNumber make(double value) const;
    /// alpha(u) as a tagged value.
    AlphaNumber lift(double u) const { return make(forward(u)); }

    /// Pulls back a tagged value; checks the tag and range.
    double pull(const AlphaNumber& x) const;

    GeneratorCheck validate(std::span<const double> domain_samples) const;

    /// Grid used by the constructor: 401 points over [-20, 20].
    static std::vector<double> default_grid();

private:
    std::string name_;
    Map forward_;
    Map inverse_;
    Interval range_;
    double roundtrip_tolerance_;
};

Generator identity_generator();
Generator exp_generator();
/// alpha(u) = u^3, a third arithmetic on the whole real line.
Generator cube_generator();

/// Resolves "identity", "exp" or "cube"; throws DomainError otherwise.
Generator generator_by_name(std::string_view name);
std::vector<Generator> builtin_generators();

enum class Ordering { less, equal, greater };

std::string_view to_string(Ordering o) noexcept;

AlphaNumber alpha_add(const Generator& g, const AlphaNumber& x, const AlphaNumber& y);
AlphaNumber alpha_sub(const Generator& g, const AlphaNumber& x, const AlphaNumber& y);
AlphaNumber alpha_mul(const Generator& g, const AlphaNumber& x, const AlphaNumber& y);
/// Throws DivisionByAlphaZero when |alpha^-1(y)| <= epsilon.
AlphaNumber alpha_div(const Generator& g, const AlphaNumber& x, const AlphaNumber& y,
                      double epsilon = kDefaultDivisionEpsilon);
Ordering alpha_compare(const Generator& g, const AlphaNumber& x, const AlphaNumber& y);

/// (alpha(0), alpha(1)): the additive and multiplicative identities.
std::pair<AlphaNumber, AlphaNumber> alpha_identity_elements(const Generator& g);

} // namespace nnm
