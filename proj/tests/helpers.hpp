#pragma once

#include "modgl2/grothendieck_ring.hpp"

#include <cstdint>
#include <random>

namespace modgl2::testing {

inline RingElement L(const FieldParams& p, int n, std::int64_t m, const Rational& c = 1)
{
    return RingElement::basis_element(p, Basis::L, n, m, c);
}

inline RingElement S(const FieldParams& p, int n, std::int64_t m, const Rational& c = 1)
{
    return RingElement::basis_element(p, Basis::S, n, m, c);
}

// Small random L-basis element with integer coefficients in [-3, 3].
inline RingElement random_element(const FieldParams& p, std::mt19937_64& rng, int terms = 3)
{
    RingElement v(p, Basis::L);
    for (int t = 0; t < terms; ++t) {
        int n = static_cast<int>(rng() % static_cast<std::uint64_t>(p.q()));
        int m = static_cast<int>(rng() % static_cast<std::uint64_t>(p.modulus()));
        long c = static_cast<long>(rng() % 7) - 3;
        if (c != 0)
            v += L(p, n, m, c);
    }
    return v;
}

// Random element with one central character alpha and positive coefficients.
inline RingElement random_homogeneous(const FieldParams& p, std::mt19937_64& rng, int alpha, int terms = 3)
{
    RingElement v(p, Basis::L);
    const int mod = p.modulus();
    for (int t = 0; t < terms; ++t) {
        int n = static_cast<int>(rng() % static_cast<std::uint64_t>(p.q()));
        // need n + 2m = alpha mod q-1
        for (int m = 0; m < mod; ++m)
            if (((n + 2 * m - alpha) % mod + mod) % mod == 0) {
                v += L(p, n, m, static_cast<long>(rng() % 3) + 1);
                break;
            }
    }
    return v;
}

} // namespace modgl2::testing
