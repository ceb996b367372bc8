#pragma once

// 128-bit integer helpers. All public interfaces of the library use i128 so
// that desk-scale quantities (discriminants up to 1e7, curve discriminants,
// Bernoulli numerators) always fit with headroom.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace goldscan {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 x = neg ? -(u128)v : (u128)v;
    char buf[48];
    int i = 48;
    while (x > 0) { buf[--i] = char('0' + (int)(x % 10)); x /= 10; }
    if (neg) buf[--i] = '-';
    return std::string(buf + i, 48 - i);
}

inline i128 parse_i128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; i = 1; }
    if (i == s.size()) throw std::invalid_argument("bad integer literal: " + s);
    i128 v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

inline i128 iabs(i128 v) { return v < 0 ? -v : v; }

inline int sign(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Integer square root, exact floor.
inline i128 isqrt(i128 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    if (n == 0) return 0;
    i128 x = (i128)__builtin_sqrtl((long double)n);
    while (x > 0 && x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

inline bool is_perfect_square(i128 n) {
    if (n < 0) return false;
    i128 r = isqrt(n);
    return r * r == n;
}

// (a * b) mod m for full 128-bit operands, via shift-add. Used only by the
// 3-adic routines where moduli reach 3^80; volume there is tiny.
inline u128 mulmod_u128(u128 a, u128 b, u128 m) {
    a %= m;
    b %= m;
    if (a == 0 || b == 0) return 0;
    if (m <= (u128)UINT64_MAX) return (u128)((a % m) * (b % m) % m);
    // keep a < m and double it, adding when the corresponding bit of b is set
    u128 r = 0;
    while (b > 0) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        b >>= 1;
        if (b) {
            a <<= 1;
            if (a >= m) a -= m;
        }
    }
    return r;
}

inline u128 powmod_u128(u128 base, u128 exp, u128 m) {
    u128 r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod_u128(r, base, m);
        base = mulmod_u128(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline u128 pow_u128(u128 base, unsigned exp) {
    u128 r = 1;
    while (exp--) r *= base;
    return r;
}

}  // namespace goldscan
