#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include "locc/rational.hpp"

namespace locc {

template <class S>
inline constexpr bool is_exact_scalar_v = !std::is_floating_point_v<S>;

/// Comparison policy for one numeric backend. The exact backend (rational)
/// compares exactly; the floating backend treats two values within `eps` as
/// equal, so strict comparisons require a gap larger than `eps`.
template <class S>
struct numeric_config {
    S eps = is_exact_scalar_v<S> ? S(0) : S(1e-12);

    bool eq(const S& a, const S& b) const {
        using std::abs;
        return abs(a - b) <= eps;
    }
    /// Strict: b exceeds a by more than eps.
    bool lt(const S& a, const S& b) const { return a + eps < b; }
    bool leq(const S& a, const S& b) const { return a <= b + eps; }
    /// Above the zero threshold; used for rank counting.
    bool positive(const S& a) const { return a > eps; }

    static constexpr bool exact() { return is_exact_scalar_v<S>; }
};

template <class S>
S scalar_from_ratio(std::int64_t num, std::int64_t den) {
    if constexpr (is_exact_scalar_v<S>)
        return S(num, den);
    else
        return static_cast<S>(num) / static_cast<S>(den);
}

template <class S>
S scalar_from_double(double d) {
    if constexpr (is_exact_scalar_v<S>)
        return rational_from_double(d);
    else
        return d;
}

/// Accepts "p/q", integers, and decimal literals in either backend.
template <class S>
S scalar_from_string(std::string_view text) {
    rational r = rational_from_string(text);
    if constexpr (is_exact_scalar_v<S>)
        return r;
    else
        return to_double(r);
}

}  // namespace locc
