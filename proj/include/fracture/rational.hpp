#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "fracture/error.hpp"

namespace fracture {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den)
{
    require(den != 0, ErrorKind::invalid_input, "zero denominator");
    return Rational(num, den);
}

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

// Always "p/q", including integers ("3/1").
inline std::string to_string(const Rational& q)
{
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(BigInt(text));
        return make_rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorKind::invalid_input, "malformed rational '" + text + "'");
    }
}

inline BigInt floor_of(const Rational& q)
{
    BigInt num = numerator_of(q), den = denominator_of(q);
    BigInt quot = num / den;
    if (num % den != 0 && num < 0)
        --quot;
    return quot;
}

inline BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

inline Rational pow(const Rational& base, unsigned exponent)
{
    Rational out = 1;
    for (unsigned i = 0; i < exponent; ++i)
        out *= base;
    return out;
}

inline BigInt binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out *= n - k + i;
        out /= i;
    }
    return out;
}

// Decimal rendering with `digits` places, rounded toward -inf (floor) or +inf (ceil).
inline std::string render_decimal(const Rational& q, int digits, bool round_up)
{
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    Rational scaled = q * Rational(scale);
    BigInt units = round_up ? ceil_of(scaled) : floor_of(scaled);
    bool negative = units < 0;
    if (negative)
        units = -units;
    std::string s = units.str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits)
            s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(s.size())), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return negative ? "-" + s : s;
}

} // namespace fracture
