#pragma once

// Exact integer primitives: Kronecker symbol, factorization (trial division +
// Miller-Rabin + Pollard rho, exact below 2^63), fundamental discriminants,
// sixth-power-free cores, CRT, and the sieves shared by the scanners.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "goldscan/int128.hpp"

namespace goldscan {

inline i128 gcd_i128(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b) { i128 t = a % b; a = b; b = t; }
    return a;
}

// g = gcd(a,b) = x*a + y*b
inline i128 xgcd(i128 a, i128 b, i128& x, i128& y) {
    i128 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b) {
        i128 q = a / b;
        i128 t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    x = x0;
    y = y0;
    return a;
}

// Kronecker symbol (a/n), full convention:
//   (a/0) = 1 iff |a| = 1; (a/-1) = 1 if a >= 0 else -1;
//   (a/2) = 0 for even a, +1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
inline int kronecker(i128 a, i128 n) {
    if (a == 0 && n == 0) throw std::domain_error("kronecker(0,0) undefined");
    if (n == 0) return iabs(a) == 1 ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // factor out twos of n
    if (n % 2 == 0) {
        if (a % 2 == 0) return 0;
        int t = 0;
        while (n % 2 == 0) { n /= 2; ++t; }
        if (t & 1) {
            int am8 = (int)(((a % 8) + 8) % 8);
            if (am8 == 3 || am8 == 5) result = -result;
        }
    }
    // now n odd positive; standard Jacobi loop
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int nm8 = (int)(n % 8);
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

// ---------------------------------------------------------------------------
// Primality and factorization
// ---------------------------------------------------------------------------

namespace detail {

inline uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((u128)a * b % m);
}

inline uint64_t powmod64(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, b, m);
        b = mulmod64(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

// Deterministic Miller-Rabin, valid for all n < 2^64.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = detail::powmod64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_prime(i128 n) {
    if (n < 2) return false;
    if (n > (i128)UINT64_MAX) throw std::domain_error("is_prime: operand exceeds 2^64");
    return is_prime_u64((uint64_t)n);
}

namespace detail {

inline uint64_t pollard_rho(uint64_t n) {
    if (n % 2 == 0) return 2;
    // Brent's variant with deterministic restarts
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        uint64_t q = 1;
        int lam = 1;
        while (d == 1) {
            x = y;
            for (int i = 0; i < lam; ++i) y = (mulmod64(y, y, n) + c) % n;
            int k = 0;
            while (k < lam && d == 1) {
                uint64_t ys = y;
                int lim = std::min(128, lam - k);
                for (int i = 0; i < lim; ++i) {
                    y = (mulmod64(y, y, n) + c) % n;
                    uint64_t diff = x > y ? x - y : y - x;
                    if (diff) q = mulmod64(q, diff, n);
                }
                d = std::gcd(q, n);
                if (d == 1) {
                    k += lim;
                } else if (d == n) {
                    // backtrack step by step
                    d = 1;
                    y = ys;
                    do {
                        y = (mulmod64(y, y, n) + c) % n;
                        uint64_t diff = x > y ? x - y : y - x;
                        d = std::gcd(diff ? diff : n, n);
                    } while (d == 1);
                    break;
                } else {
                    break;
                }
            }
            lam *= 2;
        }
        if (d != n) return d;
    }
}

}  // namespace detail

struct Factorization {
    // (prime, exponent) pairs, primes strictly increasing, exponents >= 1
    std::vector<std::pair<i128, int>> factors;

    i128 value() const {
        i128 v = 1;
        for (auto& [p, e] : factors)
            for (int i = 0; i < e; ++i) v *= p;
        return v;
    }
    int exponent_of(i128 p) const {
        for (auto& [q, e] : factors)
            if (q == p) return e;
        return 0;
    }
    std::vector<i128> primes() const {
        std::vector<i128> ps;
        ps.reserve(factors.size());
        for (auto& [p, e] : factors) ps.push_back(p);
        return ps;
    }
};

namespace detail {
inline const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        const uint32_t bound = 1000000;
        std::vector<bool> comp(bound + 1, false);
        std::vector<uint32_t> ps;
        for (uint32_t i = 2; i <= bound; ++i) {
            if (!comp[i]) {
                ps.push_back(i);
                for (uint64_t j = (uint64_t)i * i; j <= bound; j += i) comp[j] = true;
            }
        }
        return ps;
    }();
    return primes;
}
}  // namespace detail

// Exact factorization of |n|. Sign is the caller's business.
inline Factorization factorize(i128 n) {
    if (n == 0) throw std::domain_error("factorize(0)");
    u128 m = (u128)iabs(n);
    if (m > ((u128)1 << 63)) throw std::domain_error("factorize: |n| exceeds 2^63 cap");
    Factorization f;
    for (uint32_t p : detail::small_primes()) {
        if ((u128)p * p > m) break;
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.factors.push_back({(i128)p, e});
        }
    }
    if (m > 1) {
        // remaining cofactor has no prime factor below 1e6
        std::vector<uint64_t> stack{(uint64_t)m};
        std::vector<std::pair<uint64_t, int>> big;
        while (!stack.empty()) {
            uint64_t v = stack.back();
            stack.pop_back();
            if (is_prime_u64(v)) {
                bool merged = false;
                for (auto& [p, e] : big)
                    if (p == v) { ++e; merged = true; break; }
                if (!merged) big.push_back({v, 1});
                continue;
            }
            uint64_t d = detail::pollard_rho(v);
            stack.push_back(d);
            stack.push_back(v / d);
        }
        std::sort(big.begin(), big.end());
        for (auto& [p, e] : big) f.factors.push_back({(i128)p, e});
    }
    return f;
}

inline bool is_squarefree(i128 n) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n).factors)
        if (e >= 2) return false;
    return true;
}

// Largest squarefree divisor, with sign of n.
inline i128 squarefree_core(i128 n) {
    if (n == 0) throw std::domain_error("squarefree_core(0)");
    i128 core = 1;
    for (auto& [p, e] : factorize(n).factors)
        if (e & 1) core *= p;
    return sign(n) * core;
}

inline bool is_fundamental_discriminant(i128 d) {
    if (d == 0 || d == 1) return false;
    i128 m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return is_squarefree(d);
    if (m4 != 0) return false;
    i128 m = d / 4;
    i128 mm4 = ((m % 4) + 4) % 4;
    return (mm4 == 2 || mm4 == 3) && is_squarefree(m);
}

// Discriminant of Q(sqrt(n)); n must not be a square (and not 0).
inline i128 fundamental_discriminant_of(i128 n) {
    if (n == 0) throw std::domain_error("fundamental discriminant of 0");
    i128 core = squarefree_core(n);
    if (core == 1) throw std::domain_error("fundamental discriminant of a square");
    i128 m4 = ((core % 4) + 4) % 4;
    return m4 == 1 ? core : 4 * core;
}

// d = core * scale^6 with core sixth-power-free; core determines the sextic
// twist E_d up to isomorphism.
inline std::pair<i128, i128> sixth_power_free_core(i128 d) {
    if (d == 0) throw std::domain_error("sixth_power_free_core(0)");
    i128 core = 1, scale = 1;
    for (auto& [p, e] : factorize(d).factors) {
        for (int i = 0; i < e % 6; ++i) core *= p;
        for (int i = 0; i < e / 6; ++i) scale *= p;
    }
    return {sign(d) * core, scale};
}

// Chinese remainder theorem; residue/modulus pairs with consistent overlap
// merged, inconsistent overlap rejected.
inline std::pair<i128, i128> crt(const std::vector<std::pair<i128, i128>>& pairs) {
    i128 r = 0, m = 1;
    for (auto& [ri, mi] : pairs) {
        if (mi <= 0) throw std::domain_error("crt: modulus must be positive");
        i128 x, y;
        i128 g = xgcd(m, mi, x, y);
        i128 diff = ri - r;
        if (diff % g != 0) throw std::domain_error("crt: inconsistent residues");
        i128 lcm = m / g * mi;
        // r' = r + m * ((diff/g * x) mod (mi/g))
        i128 step = (diff / g) % (mi / g);
        i128 k = (step * (x % (mi / g))) % (mi / g);
        r = r + m * k;
        m = lcm;
        r %= m;
        if (r < 0) r += m;
    }
    return {r, m};
}

// ---------------------------------------------------------------------------
// Sieves for range scans
// ---------------------------------------------------------------------------

// flags[n] = 1 iff n is squarefree, for 0 <= n <= bound
inline std::vector<uint8_t> squarefree_sieve(int64_t bound) {
    std::vector<uint8_t> sq(bound + 1, 1);
    if (bound >= 0) sq[0] = 0;
    for (int64_t p = 2; p * p <= bound; ++p)
        for (int64_t j = p * p; j <= bound; j += p * p) sq[j] = 0;
    return sq;
}

// flags[|d|] bit 0: |d| is a positive fundamental discriminant d = |d|
// flags[|d|] bit 1: -|d| is a (negative) fundamental discriminant
inline std::vector<uint8_t> fundamental_sieve(int64_t bound) {
    auto sq = squarefree_sieve(bound);
    std::vector<uint8_t> f(bound + 1, 0);
    for (int64_t a = 1; a <= bound; ++a) {
        uint8_t bits = 0;
        if (a % 4 == 1 && sq[a] && a > 1) bits |= 1;   // d = a > 0 (d = 1 excluded)
        if (a % 4 == 3 && sq[a]) bits |= 2;            // d = -a < 0 (-a = 1 mod 4)
        if (a % 4 == 0) {
            int64_t m = a / 4;
            if (sq[m]) {
                if (m % 4 == 2 || m % 4 == 3) bits |= 1;      // 4m with m = 2,3 mod 4
                int64_t mm = ((-m) % 4 + 4) % 4;               // -a = 4*(-m)
                if (mm == 2 || mm == 3) bits |= 2;
            }
        }
        f[a] = bits;
    }
    return f;
}

// Primes up to bound via plain sieve.
inline std::vector<int64_t> primes_up_to(int64_t bound) {
    std::vector<uint8_t> comp(bound + 1, 0);
    std::vector<int64_t> ps;
    for (int64_t i = 2; i <= bound; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (int64_t j = i * i; j <= bound; j += i) comp[j] = 1;
        }
    }
    return ps;
}

// Smallest-prime-factor table for 0..bound.
inline std::vector<int32_t> spf_sieve(int64_t bound) {
    std::vector<int32_t> spf(bound + 1, 0);
    for (int64_t i = 2; i <= bound; ++i) {
        if (spf[i] == 0) {
            for (int64_t j = i; j <= bound; j += i)
                if (spf[j] == 0) spf[j] = (int32_t)i;
        }
    }
    return spf;
}

}  // namespace goldscan
