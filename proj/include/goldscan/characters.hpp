#pragma once

// Quadratic Dirichlet characters psi_d (Kronecker characters of fundamental
// discriminants, plus the trivial character), the psi_0 construction, and
// exact generalized Bernoulli numbers B_{1,psi}.

#include <stdexcept>

#include "goldscan/arith.hpp"
#include "goldscan/rational.hpp"

namespace goldscan {

// disc = 1 encodes the trivial character (conductor 1, identically 1).
// Otherwise disc is a fundamental discriminant and the character is the
// Kronecker symbol n -> (disc/n), real-valued in {-1,0,1}, with conductor
// |disc| and parity given by sign(disc) (even iff disc > 0).
struct QuadraticCharacter {
    i128 disc = 1;

    QuadraticCharacter() = default;
    explicit QuadraticCharacter(i128 d) : disc(d) {
        if (d != 1 && !is_fundamental_discriminant(d))
            throw std::domain_error("QuadraticCharacter: " + to_string(d) + " is not a fundamental discriminant");
    }

    static QuadraticCharacter trivial() { return QuadraticCharacter(); }
    // character of Q(sqrt(n)) for any non-square n
    static QuadraticCharacter of_field(i128 n) { return QuadraticCharacter(fundamental_discriminant_of(n)); }

    bool is_trivial() const { return disc == 1; }
    i128 conductor() const { return iabs(disc); }
    bool is_even() const { return disc > 0; }
    bool is_odd() const { return disc < 0; }

    int eval(i128 n) const {
        if (disc == 1) return 1;
        return kronecker(disc, n);
    }
    int operator()(i128 n) const { return eval(n); }

    bool operator==(const QuadraticCharacter& o) const { return disc == o.disc; }
    bool operator!=(const QuadraticCharacter& o) const { return disc != o.disc; }
};

inline QuadraticCharacter omega3() { return QuadraticCharacter(-3); }  // mod-3 cyclotomic character

// The unique primitive character agreeing with the pointwise product away
// from common conductor support: chi_{d1} * chi_{d2} = chi of Q(sqrt(d1*d2)).
inline QuadraticCharacter product(const QuadraticCharacter& c1, const QuadraticCharacter& c2) {
    if (c1.is_trivial()) return c2;
    if (c2.is_trivial()) return c1;
    if (c1.disc == c2.disc) return QuadraticCharacter::trivial();
    return QuadraticCharacter::of_field(c1.disc * c2.disc);
}

// psi_0 = psi if even, psi * eps_K if odd (always even). K < 0 fundamental.
inline QuadraticCharacter psi0(const QuadraticCharacter& psi, i128 K) {
    if (K >= 0 || !is_fundamental_discriminant(K))
        throw std::domain_error("psi0: K must be a negative fundamental discriminant");
    if (psi.is_even()) return psi;
    return product(psi, QuadraticCharacter(K));
}

// B_{1,psi} = (1/f) sum_{m=1}^{f} psi(m) m, exact. Nontrivial characters only.
inline Rational bernoulli1(const QuadraticCharacter& chi) {
    if (chi.is_trivial()) throw std::domain_error("bernoulli1: trivial character rejected");
    i128 f = chi.conductor();
    i128 sum = 0;
    for (i128 m = 1; m <= f; ++m) {
        int v = chi.eval(m);
        if (v == 1) sum += m;
        else if (v == -1) sum -= m;
    }
    return Rational(sum, f);
}

// 3-adic valuation of B_{1,psi} for odd psi (nonzero by the class number
// formula, h >= 1).
inline int bernoulli1_ord3(const QuadraticCharacter& chi) {
    if (!chi.is_odd()) throw std::domain_error("bernoulli1_ord3: character must be odd");
    Rational b = bernoulli1(chi);
    return b.ord3();
}

}  // namespace goldscan
