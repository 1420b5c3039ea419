#pragma once

/*
 * Exact rational scalar used throughout the library.
 *
 * Backed by boost::multiprecision (header-only): values are always reduced,
 * denominators always positive, and no operation ever rounds.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace schemelab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer rat_num(const Rational& r) { return numerator(r); }
inline Integer rat_den(const Rational& r) { return denominator(r); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

/* Exact conversion; throws if r is not an integer. */
inline Integer to_integer(const Rational& r) {
    if (!is_integer(r)) throw std::invalid_argument("to_integer: not an integer: " + r.str());
    return rat_num(r);
}

inline long to_long(const Rational& r) { return static_cast<long>(to_integer(r)); }

inline Integer floor_int(const Rational& r) {
    Integer q = rat_num(r) / rat_den(r);
    if (r < 0 && q * rat_den(r) != rat_num(r)) --q;
    return q;
}

inline Integer ceil_int(const Rational& r) { return -floor_int(-r); }

/* Exact integer square root when n is a perfect square. */
inline std::optional<Integer> exact_sqrt(const Integer& n) {
    if (n < 0) return std::nullopt;
    Integer s = boost::multiprecision::sqrt(n);
    if (s * s == n) return s;
    return std::nullopt;
}

/* Exact rational square root when r is a square of a rational. */
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    auto sn = exact_sqrt(rat_num(r));
    auto sd = exact_sqrt(rat_den(r));
    if (!sn || !sd) return std::nullopt;
    return Rational(*sn, *sd);
}

inline Integer binom(const Integer& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("binom: negative n");
    Integer r = 1;
    for (unsigned i = 0; i < k; ++i) { r *= (n - i); r /= (i + 1); }
    return r;
}

inline Integer gcd_int(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

/* Parses "p/q", "p", or "-p/q"; rejects decimals and malformed input. */
inline Rational rat_parse(const std::string& s) {
    auto bad = [&]() -> std::runtime_error {
        return std::runtime_error("invalid rational literal: '" + s + "'");
    };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        if (t.empty()) throw bad();
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw bad();
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw bad();
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    Integer d(den);
    if (d == 0) throw bad();
    return Rational(Integer(num), d);
}

inline std::string rat_str(const Rational& r) {
    if (is_integer(r)) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

/*
 * Renders r rounded half-away-from-zero to `decimals` places, e.g. for
 * comparing exact values against a table printed to fixed precision.
 */
inline std::string rat_fixed(const Rational& r, unsigned decimals) {
    Integer scale = 1;
    for (unsigned i = 0; i < decimals; ++i) scale *= 10;
    Rational scaled = r * scale;
    Rational abs_scaled = scaled < 0 ? Rational(-scaled) : scaled;
    Integer mag = floor_int(abs_scaled + Rational(1, 2));
    bool neg = scaled < 0 && mag != 0;
    std::string digits = mag.str();
    if (decimals == 0) return (neg ? "-" : "") + digits;
    while (digits.size() <= decimals) digits.insert(digits.begin(), '0');
    digits.insert(digits.size() - decimals, ".");
    return (neg ? "-" : "") + digits;
}

}  // namespace schemelab
