#pragma once

// Exact rational scalars and coordinate vectors. Everything downstream computes
// with these; no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperalg/errors.hpp"

namespace hyperalg {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatVec   = std::vector<Rational>;

inline Rational rational_abs(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

inline std::string format_rational(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    std::string out = num.str();
    if (den != 1) {
        out += '/';
        out += den.str();
    }
    return out;
}

inline std::string format_vector(const RatVec& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_rational(v[i]);
    }
    out += ')';
    return out;
}

// Strict literal syntax: [+-]digits or [+-]digits/digits with nonzero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t pos = 0;
    if (text[pos] == '+' || text[pos] == '-') ++pos;
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') { ++pos; ++digits; }
    if (digits == 0) return std::nullopt;
    if (pos == text.size())
        return Rational(Integer(std::string(text)));
    if (text[pos] != '/') return std::nullopt;
    const std::string_view num = text.substr(0, pos);
    const std::string_view den = text.substr(pos + 1);
    if (den.empty()) return std::nullopt;
    for (char c : den)
        if (c < '0' || c > '9') return std::nullopt;
    const Integer d{std::string(den)};
    if (d == 0) return std::nullopt;
    return Rational(Integer(std::string(num)), d);
}

inline int compare_rational(const Rational& a, const Rational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

// Lexicographic; shorter vector precedes its extensions. Within one carrier all
// vectors share a dimension, so the length rule only matters across carriers.
inline int compare_vec(const RatVec& a, const RatVec& b) {
    const std::size_t n = a.size() < b.size() ? a.size() : b.size();
    for (std::size_t i = 0; i < n; ++i)
        if (int c = compare_rational(a[i], b[i]); c != 0) return c;
    if (a.size() < b.size()) return -1;
    if (a.size() > b.size()) return 1;
    return 0;
}

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DomainError("vector dimension mismatch");
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline RatVec vec_neg(const RatVec& a) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

inline RatVec vec_scale(const Rational& c, const RatVec& a) {
    RatVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

inline Rational vec_dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw DomainError("vector dimension mismatch");
    Rational out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
    return out;
}

inline bool vec_is_zero(const RatVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline std::optional<Integer> exact_integer_sqrt(const Integer& n) {
    if (n < 0) return std::nullopt;
    const Integer r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

// Exact square root when the rational is a perfect square of a rational.
inline std::optional<Rational> exact_rational_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    const auto num = exact_integer_sqrt(boost::multiprecision::numerator(r));
    if (!num) return std::nullopt;
    const auto den = exact_integer_sqrt(boost::multiprecision::denominator(r));
    if (!den) return std::nullopt;
    return Rational(*num, *den);
}

} // namespace hyperalg
