#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "homstat/errors.hpp"

namespace homstat {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Dense rational vector.
using Vector = std::vector<Rational>;

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) { return r.str(); }

/**
 * Parse an exact rational from "num/den", an integer, or a base-10 decimal
 * with optional exponent ("-1.25", "3e-2"). Never goes through binary floating point.
 */
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw InvalidInput("not an exact rational: \"" + std::string(text) + "\"");
    };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        return fail();

    auto parse_int = [&](std::string_view digits) -> Integer {
        std::size_t i = 0;
        bool negative = false;
        if (i < digits.size() && (digits[i] == '+' || digits[i] == '-'))
            negative = digits[i++] == '-';
        if (i == digits.size())
            fail();
        Integer v = 0;
        for (; i < digits.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(digits[i])))
                fail();
            v = v * 10 + (digits[i] - '0');
        }
        return negative ? Integer(-v) : v;
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num = parse_int(std::string_view(s).substr(0, slash));
        Integer den = parse_int(std::string_view(s).substr(slash + 1));
        if (den == 0)
            fail();
        return Rational(num, den);
    }

    std::string_view view(s);
    long exponent = 0;
    if (auto e = view.find_first_of("eE"); e != std::string_view::npos) {
        Integer ex = parse_int(view.substr(e + 1));
        if (abs(ex) > 4096)
            fail();
        exponent = ex.convert_to<long>();
        view = view.substr(0, e);
    }
    bool negative = false;
    if (!view.empty() && (view[0] == '+' || view[0] == '-')) {
        negative = view[0] == '-';
        view.remove_prefix(1);
    }
    std::string digits;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : view) {
        if (c == '.') {
            if (seen_point)
                fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point)
                --exponent;
        } else {
            fail();
        }
    }
    if (!seen_digit)
        fail();
    Rational value(parse_int(digits));
    Rational ten_power = 1;
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k)
        ten_power *= 10;
    value = exponent < 0 ? value / ten_power : value * ten_power;
    return negative ? Rational(-value) : value;
}

/**
 * Fixed-point decimal rendering rounded half away from zero, computed with
 * integer arithmetic. Used only for SVG geometry, never for reports.
 */
inline std::string to_decimal(const Rational& r, unsigned places = 6) {
    Integer scale = 1;
    for (unsigned i = 0; i < places; ++i)
        scale *= 10;
    Integer num = numerator(r);
    Integer den = denominator(r);
    bool negative = num < 0;
    if (negative)
        num = -num;
    Integer scaled = (num * scale * 2 + den) / (den * 2);
    Integer whole = scaled / scale;
    Integer frac = scaled % scale;
    std::string out = whole.str();
    if (places > 0) {
        std::string f = frac.str();
        f.insert(0, places - f.size(), '0');
        while (!f.empty() && f.back() == '0')
            f.pop_back();
        if (!f.empty())
            out += "." + f;
    }
    if (negative && scaled != 0)
        out.insert(0, "-");
    return out;
}

} // namespace homstat
