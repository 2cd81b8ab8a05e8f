#ifndef OCRP_SCALAR_HPP
#define OCRP_SCALAR_HPP

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace ocrp {

using BigInt = boost::multiprecision::cpp_int;
// Exact scalar: always lowest terms, positive denominator.
using Rational = boost::multiprecision::cpp_rational;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

// "p/q" or "p"; whitespace not accepted, q > 0 enforced by normalization.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("not a rational: '" + text + "'"); };
    if (text.empty()) bad();
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        if (q == 0) bad();
        if (q < 0) {
            p = -p;
            q = -q;
        }
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

// Canonical form: integers as "p", others as "p/q".
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

// Locale-independent, round-trippable enough for reports.
inline std::string format_double(double x, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::string(buf);
}

template <class S>
inline std::string scalar_to_string(const S& v) {
    if constexpr (is_exact_v<S>)
        return to_string(v);
    else
        return format_double(v);
}

template <class S>
inline double scalar_to_double(const S& v) {
    if constexpr (is_exact_v<S>)
        return to_double(v);
    else
        return v;
}

template <class S>
inline S scalar_from_rational(const Rational& r) {
    if constexpr (is_exact_v<S>)
        return r;
    else
        return to_double(r);
}

template <class S>
inline S scalar_abs(const S& v) {
    return v < S(0) ? S(-v) : v;
}

// (a)_k = a (a+1) ... (a+k-1), empty product for k = 0.
template <class S>
inline S rising_factorial(const S& a, std::int64_t k) {
    S out(1);
    for (std::int64_t j = 0; j < k; ++j) out *= a + S(static_cast<int>(j));
    return out;
}

// a^(falling k) = a (a-1) ... (a-k+1).
template <class S>
inline S falling_factorial(const S& a, std::int64_t k) {
    S out(1);
    for (std::int64_t j = 0; j < k; ++j) out *= a - S(static_cast<int>(j));
    return out;
}

inline BigInt factorial(std::int64_t n) {
    BigInt out = 1;
    for (std::int64_t j = 2; j <= n; ++j) out *= j;
    return out;
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        out *= n - k + j;
        out /= j;  // exact: prefix is binom(n-k+j, j)
    }
    return out;
}

}  // namespace ocrp

#endif
