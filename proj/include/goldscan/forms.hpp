#pragma once

// Binary quadratic forms (a,b,c) of discriminant b^2 - 4ac, both definite
// (D < 0, class groups of imaginary quadratic fields) and indefinite
// (D > 0, narrow class groups via reduction cycles).

#include <stdexcept>
#include <vector>

#include "goldscan/arith.hpp"
#include "goldscan/int128.hpp"

namespace goldscan {

struct Form {
    i128 a = 1, b = 0, c = 0;

    i128 disc() const { return b * b - 4 * a * c; }
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const Form& o) const { return !(*this == o); }
    bool operator<(const Form& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
    Form inverse() const { return {a, -b, c}; }
    std::string str() const { return "(" + to_string(a) + "," + to_string(b) + "," + to_string(c) + ")"; }
};

inline Form principal_form(i128 D) {
    i128 b = (((D % 2) + 2) % 2);  // 0 or 1 matching parity of D
    return {1, b, (b * b - D) / 4};
}

// ---------------------------------------------------------------------------
// Definite reduction (D < 0, a > 0)
// ---------------------------------------------------------------------------

inline bool is_reduced_definite(const Form& f) {
    if (f.a <= 0) return false;
    if (!(iabs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((iabs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

inline Form reduce_definite(Form f) {
    if (f.a <= 0 || f.disc() >= 0) throw std::domain_error("reduce_definite: not a positive definite form");
    while (true) {
        // normalize: -a < b <= a
        if (f.b > f.a || f.b <= -f.a) {
            i128 r = f.b % (2 * f.a);
            if (r > f.a) r -= 2 * f.a;
            if (r <= -f.a) r += 2 * f.a;
            i128 q = (f.b - r) / (2 * f.a);
            f.c = f.c - q * (f.b + r) / 2;
            f.b = r;
        }
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if ((f.b < 0) && (f.a == f.c || f.a == -f.b)) f.b = -f.b;
    return f;
}

// ---------------------------------------------------------------------------
// Composition (Gauss composition via extended gcds; valid for both signs)
// ---------------------------------------------------------------------------

inline Form compose_raw(const Form& f1, const Form& f2) {
    i128 s = (f1.b + f2.b) / 2;
    i128 u0, v0, g;
    g = xgcd(f1.a, f2.a, u0, v0);  // g = u0 a1 + v0 a2
    i128 v1, w, d;
    d = xgcd(g, s, v1, w);         // d = v1 g + w s
    i128 v = v0 * v1;
    i128 a2d = f2.a / d;
    i128 A = (f1.a / d) * a2d;
    i128 t = ((s - f2.b) * v - w * f2.c) * a2d * 2;
    i128 B = f2.b + t;
    // C from the discriminant
    i128 D = f1.disc();
    B %= (2 * A);
    i128 C = (B * B - D) / (4 * A);
    return {A, B, C};
}

inline Form compose_definite(const Form& f1, const Form& f2) {
    return reduce_definite(compose_raw(f1, f2));
}

inline Form square_definite(const Form& f) {
    // simplified composition for squaring
    i128 u, v, d;
    d = xgcd(f.a, f.b, u, v);  // d = u a + v b
    i128 ad = f.a / d;
    i128 A = ad * ad;
    i128 B = f.b - 2 * v * f.c * ad;
    i128 D = f.disc();
    B %= (2 * A);
    i128 C = (B * B - D) / (4 * A);
    return reduce_definite({A, B, C});
}

inline Form pow_definite(Form f, i128 e) {
    i128 D = f.disc();
    if (e < 0) { f = f.inverse(); e = -e; }
    Form r = reduce_definite(principal_form(D));
    f = reduce_definite(f);
    while (e > 0) {
        if (e & 1) r = compose_definite(r, f);
        f = square_definite(f);
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Indefinite reduction and cycles (D > 0 non-square)
// ---------------------------------------------------------------------------

// (a,b,c) of positive non-square disc D with s = floor(sqrt(D)) is reduced
// iff 0 < b <= s and s - b < 2|a| <= s + b (equivalently |sqrt D - 2|a|| < b).
inline bool is_reduced_indefinite(const Form& f, i128 s) {
    if (f.b <= 0 || f.b > s) return false;
    i128 t = 2 * iabs(f.a);
    return s - f.b < t && t <= s + f.b;
}

// One rho step: (a,b,c) -> (c, r, (r^2-D)/(4c)) with r = -b mod 2|c| in the
// standard window. Iterating reaches a reduced form and then walks its cycle.
inline Form rho_indefinite(const Form& f, i128 D, i128 s) {
    i128 cc = f.c;
    i128 t = 2 * iabs(cc);
    i128 r;
    if (iabs(cc) > s) {
        // minimal residue: -|c| < r <= |c|
        r = (-f.b) % t;
        if (r > iabs(cc)) r -= t;
        if (r <= -iabs(cc)) r += t;
    } else {
        // window: s - 2|c| < r <= s  (r = sqrt(D)-adjacent residue)
        r = (-f.b) % t;
        r += ((s - r) / t) * t;
        while (r > s) r -= t;
        while (r + t <= s) r += t;
    }
    return {cc, r, (r * r - D) / (4 * cc)};
}

inline Form reduce_indefinite(Form f, i128 D, i128 s) {
    int guard = 0;
    while (!is_reduced_indefinite(f, s)) {
        f = rho_indefinite(f, D, s);
        if (++guard > 100000) throw std::runtime_error("reduce_indefinite: no convergence");
    }
    return f;
}

// Full rho-cycle of a reduced indefinite form (its equivalence class).
inline std::vector<Form> indefinite_cycle(const Form& start, i128 D, i128 s) {
    std::vector<Form> cyc;
    Form f = start;
    do {
        cyc.push_back(f);
        f = rho_indefinite(f, D, s);
    } while (!(f == start));
    return cyc;
}

inline Form compose_indefinite(const Form& f1, const Form& f2, i128 D, i128 s) {
    return reduce_indefinite(compose_raw(f1, f2), D, s);
}

// Reduced principal form of positive discriminant: (1, b0, ...) with b0 the
// largest b <= floor(sqrt(D)) of the right parity.
inline Form principal_form_indefinite(i128 D, i128 s) {
    i128 b0 = s;
    if (((b0 - D) % 2 + 2) % 2 != 0) b0 -= 1;
    return {1, b0, (b0 * b0 - D) / 4};
}

// Enumerate all reduced forms of discriminant D.
//   D < 0: the h(D) reduced definite representatives.
//   D > 0: every reduced indefinite form (classes = rho-cycles).
inline std::vector<Form> all_reduced_forms(i128 D) {
    std::vector<Form> out;
    if (D < 0) {
        i128 amax = isqrt(iabs(D) / 3);
        for (i128 a = 1; a <= amax; ++a) {
            for (i128 b = 0; b <= a; ++b) {
                i128 num = b * b - D;  // = b^2 + |D| = 4ac
                if (num % (4 * a) != 0) continue;
                i128 c = num / (4 * a);
                if (c < a) continue;
                if (gcd_i128(gcd_i128(a, b), c) != 1) continue;
                out.push_back({a, b, c});
                if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
            }
        }
    } else {
        i128 s = isqrt(D);
        if (s * s == D) throw std::domain_error("all_reduced_forms: square discriminant");
        for (i128 b = 1; b <= s; ++b) {
            if ((D - b * b) % 4 != 0) continue;
            i128 m = (D - b * b) / 4;  // = |a c|, with a c < 0
            for (i128 u = 1; u * u <= m; ++u) {
                if (m % u != 0) continue;
                i128 vv = m / u;
                i128 cands[2] = {u, vv};
                int ncand = vv == u ? 1 : 2;
                for (int k = 0; k < ncand; ++k) {
                    i128 aa = cands[k];
                    i128 t = 2 * aa;
                    if (!(s - b < t && t <= s + b)) continue;
                    i128 cc = -(m / aa);
                    if (gcd_i128(gcd_i128(aa, b), cc) != 1) continue;
                    out.push_back({aa, b, cc});
                    out.push_back({-aa, b, -cc});
                }
            }
        }
    }
    return out;
}

}  // namespace goldscan
