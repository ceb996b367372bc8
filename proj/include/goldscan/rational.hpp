#pragma once

// Exact rationals on 128-bit integers. Wide enough for every quantity the
// library produces (Bernoulli numerators are bounded by f^2 <= 1e14 at the
// class-group cap, Euler products stay far smaller).

#include <stdexcept>
#include <string>

#include "goldscan/arith.hpp"
#include "goldscan/int128.hpp"

namespace goldscan {

struct Rational {
    i128 num = 0;
    i128 den = 1;  // always positive

    Rational() = default;
    Rational(i128 n) : num(n), den(1) {}
    Rational(i128 n, i128 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i128 g = gcd_i128(num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::domain_error("rational division by zero");
        return Rational(num * o.den, den * o.num);
    }
    Rational operator-() const { return Rational(-num, den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    // p-adic valuation; throws on zero.
    int ord(i128 p) const {
        if (num == 0) throw std::domain_error("valuation of zero");
        int v = 0;
        i128 n = iabs(num);
        while (n % p == 0) { n /= p; ++v; }
        i128 d = den;
        while (d % p == 0) { d /= p; --v; }
        return v;
    }
    int ord3() const { return ord(3); }

    // true if ord_3 >= 0 (denominator prime to 3); zero counts as integral
    bool is_3integral() const { return den % 3 != 0; }

    // residue mod m of a 3-integral rational (m a power of 3), in [0, m)
    i128 residue_mod(i128 m) const {
        if (den % m == 0 || gcd_i128(den, m) != 1) throw std::domain_error("rational not integral at modulus");
        i128 x, y;
        xgcd(den % m, m, x, y);
        i128 r = ((num % m) * (x % m)) % m;
        if (r < 0) r += m;
        return r;
    }

    std::string str() const {
        if (den == 1) return to_string(num);
        return to_string(num) + "/" + to_string(den);
    }
};

}  // namespace goldscan
