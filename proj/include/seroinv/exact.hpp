#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace seroinv {

// Arbitrary-precision rational with expression templates disabled, so that
// generic code can use `auto` on intermediate results safely.
using Exact = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline double to_double(const Exact& x) { return x.convert_to<double>(); }

inline int sign_of(const Exact& x) { return x.sign(); }
inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

inline bool is_integral(const Exact& x) {
    return boost::multiprecision::denominator(x) == 1;
}

/// Sign of `x + c * sqrt(y)` for rational x, y >= 0 and c in {-1, +1},
/// decided without forming the square root.
inline int sign_plus_sqrt(const Exact& x, int c, const Exact& y) {
    const int sx = sign_of(x);
    const int sr = y.sign() == 0 ? 0 : c;
    if (sr == 0) return sx;
    if (sx == 0 || sx == sr) return sr;
    // Opposite signs: the larger magnitude wins.
    const Exact x2 = x * x;
    if (x2 > y) return sx;
    if (x2 < y) return sr;
    return 0;
}

/// Parses a plain decimal literal ("12", "-0.25", "3.5e2") into an exact
/// rational. No thousands separators; '.' is the only decimal mark.
inline Exact parse_decimal(std::string_view text) {
    auto fail = [&] {
        return std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    };
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    boost::multiprecision::cpp_int mantissa = 0;
    std::int64_t scale = 0;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            mantissa = mantissa * 10 + (ch - '0');
            if (seen_point) ++scale;
            any_digit = true;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw fail();
    std::int64_t exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        bool exp_digit = false;
        for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
            exponent = exponent * 10 + (text[i] - '0');
            exp_digit = true;
            if (exponent > 4096) throw fail();
        }
        if (!exp_digit) throw fail();
        if (exp_negative) exponent = -exponent;
    }
    if (i != text.size()) throw fail();
    const std::int64_t shift = exponent - scale;
    boost::multiprecision::cpp_int ten_pow = boost::multiprecision::pow(
        boost::multiprecision::cpp_int(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    Exact value = shift >= 0 ? Exact(mantissa * ten_pow) : Exact(mantissa, ten_pow);
    return negative ? -value : value;
}

}  // namespace seroinv
