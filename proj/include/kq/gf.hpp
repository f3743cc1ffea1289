#pragma once

#include <cstdint>

namespace kq {

// Prime field GF(P) for the small primes used by the brute-force oracle.
template <int P>
struct GF {
    static_assert(P == 2 || P == 3, "only GF(2) and GF(3) are supported");
    int v = 0;

    GF() = default;
    GF(int x) : v(((x % P) + P) % P) {}
    GF(long long x) : v(static_cast<int>(((x % P) + P) % P)) {}

    friend GF operator+(GF a, GF b) { return GF(a.v + b.v); }
    friend GF operator-(GF a, GF b) { return GF(a.v - b.v); }
    friend GF operator*(GF a, GF b) { return GF(a.v * b.v); }
    friend GF operator-(GF a) { return GF(-a.v); }
    friend bool operator==(GF a, GF b) { return a.v == b.v; }
    friend bool operator!=(GF a, GF b) { return a.v != b.v; }

    GF inv() const {
        // for P in {2, 3} every nonzero x satisfies x^2 = 1, so x^{-1} = x
        return *this;
    }
    friend GF operator/(GF a, GF b) { return a * b.inv(); }

    GF& operator+=(GF o) { *this = *this + o; return *this; }
    GF& operator-=(GF o) { *this = *this - o; return *this; }
    GF& operator*=(GF o) { *this = *this * o; return *this; }
};

} // namespace kq
