#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace locc {

/// Arbitrary-precision rational scalar used by the exact numeric backend.
/// Expression templates are disabled so the type has plain value semantics
/// (ternaries, std::min/max lists, template deduction).
using rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

namespace detail {

inline boost::multiprecision::cpp_int pow10(int e) {
    boost::multiprecision::cpp_int r = 1;
    for (int i = 0; i < e; ++i) r *= 10;
    return r;
}

}  // namespace detail

/// Parses a decimal literal ("0.4", "-1.25e-3", "12") into an exact rational.
/// Throws std::invalid_argument on malformed input.
inline rational rational_from_decimal(std::string_view text) {
    std::size_t pos = 0;
    auto fail = [&]() -> rational {
        throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = (text[pos] == '-');
        ++pos;
    }

    boost::multiprecision::cpp_int mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
        mantissa = mantissa * 10 + (text[pos] - '0');
        any_digit = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos) {
            mantissa = mantissa * 10 + (text[pos] - '0');
            ++scale;
            any_digit = true;
        }
    }
    if (!any_digit) return fail();

    int exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_neg = (text[pos] == '-');
            ++pos;
        }
        if (pos == text.size()) return fail();
        for (; pos < text.size() && text[pos] >= '0' && text[pos] <= '9'; ++pos)
            exponent = exponent * 10 + (text[pos] - '0');
        if (exp_neg) exponent = -exponent;
    }
    if (pos != text.size()) return fail();

    rational value(mantissa, 1);
    int net = exponent - scale;
    if (net > 0)
        value *= rational(detail::pow10(net), 1);
    else if (net < 0)
        value /= rational(detail::pow10(-net), 1);
    if (negative) value = -value;
    return value;
}

/// Exact rational matching the shortest decimal representation of `d`.
/// 0.4 therefore maps to 2/5, not to the binary fraction nearest 0.4.
inline rational rational_from_double(double d) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    return rational_from_decimal(std::string_view(buf, res.ptr - buf));
}

/// Parses "p/q", an integer, or a decimal literal.
inline rational rational_from_string(std::string_view text) {
    if (text.find('/') != std::string_view::npos) {
        return rational{std::string(text)};
    }
    return rational_from_decimal(text);
}

/// Canonical "p/q" rendering (plain "p" when the denominator is 1).
inline std::string to_fraction_string(const rational& r) { return r.str(); }

inline double to_double(const rational& r) { return r.convert_to<double>(); }
inline double to_double(double d) { return d; }

}  // namespace locc
