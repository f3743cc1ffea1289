#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace kq {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

inline double to_double(const Rat& q) { return static_cast<double>(q); }

inline std::string to_string(const Rat& q) {
    if (rat_den(q) == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + rat_den(q).str();
}

// Best rational approximation to x with denominator <= max_den, by
// continued-fraction expansion. Returns nullopt for non-finite input.
inline std::optional<Rat> rationalize(double x, std::int64_t max_den = 1000000) {
    if (!std::isfinite(x)) return std::nullopt;
    bool neg = x < 0;
    double y = neg ? -x : x;
    // convergents p/q of the continued fraction of y
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = y;
    for (int step = 0; step < 64; ++step) {
        double fl = std::floor(frac);
        if (fl > 9e17) break;
        std::int64_t a = static_cast<std::int64_t>(fl);
        std::int64_t p2 = a * p1 + p0;
        std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0 || p2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rat r = Rat(Int(p1), Int(q1));
    return neg ? Rat(-r) : r;
}

} // namespace kq
