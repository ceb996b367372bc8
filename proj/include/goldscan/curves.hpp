#pragma once

// Weierstrass curves: invariants, coordinate changes, Tate's algorithm
// (all Kodaira types, minimalization restart, Tamagawa numbers), naive point
// counts a_p, Hecke coefficients a_n, the sextic twist family E_d, and the
// curve-table parser.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "goldscan/arith.hpp"
#include "goldscan/characters.hpp"

namespace goldscan {

struct WeierstrassCurve {
    i128 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    std::string label;

    i128 b2() const { return a1 * a1 + 4 * a2; }
    i128 b4() const { return 2 * a4 + a1 * a3; }
    i128 b6() const { return a3 * a3 + 4 * a6; }
    i128 b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    i128 c4() const { return b2() * b2() - 24 * b4(); }
    i128 c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
    i128 discriminant() const {
        i128 B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    // (x, y) = (u^2 x' + r, u^3 y' + s u^2 x' + t); all divisions must be exact
    WeierstrassCurve transformed(i128 u, i128 r, i128 s, i128 t) const {
        auto exact = [](i128 num, i128 den) {
            if (num % den != 0) throw std::domain_error("curve transformation is not integral");
            return num / den;
        };
        i128 u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
        WeierstrassCurve e;
        e.a1 = exact(a1 + 2 * s, u);
        e.a2 = exact(a2 - s * a1 + 3 * r - s * s, u2);
        e.a3 = exact(a3 + r * a1 + 2 * t, u3);
        e.a4 = exact(a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t, u4);
        e.a6 = exact(a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1, u6);
        e.label = label;
        return e;
    }

    bool operator==(const WeierstrassCurve& o) const {
        return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
    }
    std::string str() const {
        return "[" + to_string(a1) + "," + to_string(a2) + "," + to_string(a3) + "," + to_string(a4) + "," +
               to_string(a6) + "]";
    }
};

enum class Kodaira { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

inline std::string kodaira_str(Kodaira k, int n) {
    switch (k) {
        case Kodaira::I0: return "I0";
        case Kodaira::In: return "I" + std::to_string(n);
        case Kodaira::II: return "II";
        case Kodaira::III: return "III";
        case Kodaira::IV: return "IV";
        case Kodaira::I0star: return "I0*";
        case Kodaira::Instar: return "I" + std::to_string(n) + "*";
        case Kodaira::IVstar: return "IV*";
        case Kodaira::IIIstar: return "III*";
        case Kodaira::IIstar: return "II*";
    }
    return "?";
}

enum class Reduction { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

struct CurveLocalData {
    i128 p = 0;
    Kodaira kodaira = Kodaira::I0;
    int n = 0;  // the index of I_n / I_n*
    int f_exp = 0;
    i128 tamagawa = 1;
    Reduction reduction = Reduction::Good;

    std::string kodaira_symbol() const { return kodaira_str(kodaira, n); }
};

namespace detail {

inline i128 mod_p(i128 x, i128 p) {
    x %= p;
    return x < 0 ? x + p : x;
}

inline i128 inv_mod(i128 x, i128 p) {
    i128 a, b;
    i128 g = xgcd(mod_p(x, p), p, a, b);
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod_p(a, p);
}

inline int valuation(i128 x, i128 p) {
    if (x == 0) return 1 << 20;  // effectively infinite
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
}

// quadratic y^2 + alpha y - beta over F_p: number of distinct roots (0, 1, 2)
// and, if a double root exists, its value
struct QuadInfo {
    int nroots;       // distinct roots in F_p
    bool double_root;
    i128 root;        // the double root when double_root
};

inline QuadInfo quad_roots(i128 alpha, i128 beta, i128 p) {
    alpha = mod_p(alpha, p);
    beta = mod_p(beta, p);
    if (p == 2) {
        if (alpha % 2 == 1) {
            // separable: y^2 + y + beta: roots iff beta = 0
            return {beta == 0 ? 2 : 0, false, 0};
        }
        // y^2 = beta: double root sqrt(beta) = beta
        return {1, true, beta};
    }
    i128 disc = mod_p(alpha * alpha + 4 * beta, p);
    if (disc == 0) return {1, true, mod_p(-alpha * inv_mod(2, p), p)};
    return {kronecker(disc, p) == 1 ? 2 : 0, false, 0};
}

// general quadratic a y^2 + b y + c with a a unit mod p
inline QuadInfo quad_roots_general(i128 a, i128 b, i128 c, i128 p) {
    a = mod_p(a, p);
    b = mod_p(b, p);
    c = mod_p(c, p);
    if (p == 2) {
        if (b % 2 == 1) return {c == 0 ? 2 : 0, false, 0};  // z^2+z+(ac) after normalizing
        return {1, true, mod_p(c * a, p)};                  // y^2 = c/a, sqrt = c*a mod 2
    }
    i128 disc = mod_p(b * b - 4 * a * c, p);
    if (disc == 0) return {1, true, mod_p(-b * inv_mod(2 * a, p), p)};
    return {kronecker(disc, p) == 1 ? 2 : 0, false, 0};
}

// cubic T^3 + A T^2 + B T + C over F_p: root structure
struct CubicInfo {
    int distinct_roots;   // number of distinct roots in F_p
    int max_multiplicity; // 1 = separable, 2 = double root, 3 = triple root
    i128 rep_root;        // the repeated root when multiplicity > 1
};

inline CubicInfo cubic_roots(i128 A, i128 B, i128 C, i128 p) {
    A = mod_p(A, p);
    B = mod_p(B, p);
    C = mod_p(C, p);
    if (p <= 49) {
        // scan
        int distinct = 0, maxmult = 1;
        i128 rep = 0;
        for (i128 r = 0; r < p; ++r) {
            i128 v = mod_p(((r + A) * r + B) * r + C, p);
            if (v != 0) continue;
            ++distinct;
            // multiplicity via derivative(s)
            i128 d1 = mod_p(3 * r * r + 2 * A * r + B, p);
            if (d1 == 0) {
                i128 d2 = mod_p(6 * r + 2 * A, p);
                int m = d2 == 0 ? 3 : 2;
                if (m > maxmult) { maxmult = m; rep = r; }
            }
        }
        return {distinct, maxmult, rep};
    }
    // p >= 53 (in particular p != 2, 3): use gcds
    // multiplicity structure via gcd(P, P')
    i128 i3 = inv_mod(3, p);
    // P'(T) = 3T^2 + 2AT + B; normalize monic: T^2 + (2A/3)T + B/3
    i128 pa = mod_p(2 * A * i3, p), pb = mod_p(B * i3, p);
    // gcd(P, P'): first reduce P mod P' (P = (T + (A - pa)) * P' + remainder)
    i128 q1 = mod_p(A - pa, p);
    // remainder coefficients of P - (T + q1) * (T^2 + pa T + pb)
    i128 r1 = mod_p(B - pb - q1 * pa, p);   // coefficient of T
    i128 r0 = mod_p(C - q1 * pb, p);        // constant
    i128 rep = 0;
    int maxmult = 1;
    if (r1 == 0 && r0 == 0) {
        // P' divides P: triple root at T = -A/3
        rep = mod_p(-A * i3, p);
        maxmult = 3;
    } else if (r1 != 0) {
        i128 root = mod_p(-r0 * inv_mod(r1, p), p);
        i128 val = mod_p(((root + A) * root + B) * root + C, p);
        i128 dval = mod_p(3 * root * root + 2 * A * root + B, p);
        if (val == 0 && dval == 0) { maxmult = 2; rep = root; }
    }
    // count distinct roots: deg gcd(T^p - T, P)
    // compute T^p mod P by binary exponentiation in F_p[T]/(P)
    auto mulmodP = [&](const std::array<i128, 3>& f, const std::array<i128, 3>& g) {
        i128 c0 = 0, c1 = 0, c2 = 0, c3 = 0, c4v = 0;
        auto acc = [&](i128& slot, i128 v) { slot = mod_p(slot + v, p); };
        acc(c0, f[0] * g[0]);
        acc(c1, f[0] * g[1] + f[1] * g[0]);
        acc(c2, f[0] * g[2] + f[1] * g[1] + f[2] * g[0]);
        acc(c3, f[1] * g[2] + f[2] * g[1]);
        acc(c4v, f[2] * g[2]);
        // reduce degree 4 then 3: T^3 = -(A T^2 + B T + C)
        c3 = mod_p(c3 - c4v * A, p);
        c2 = mod_p(c2 - c4v * B, p);
        c1 = mod_p(c1 - c4v * C, p);
        c2 = mod_p(c2 - c3 * A, p);
        c1 = mod_p(c1 - c3 * B, p);
        c0 = mod_p(c0 - c3 * C, p);
        return std::array<i128, 3>{c0, c1, c2};
    };
    std::array<i128, 3> result{1, 0, 0}, base{0, 1, 0};
    i128 e = p;
    while (e > 0) {
        if (e & 1) result = mulmodP(result, base);
        base = mulmodP(base, base);
        e >>= 1;
    }
    // T^p - T mod P
    std::array<i128, 3> fro{result[0], mod_p(result[1] - 1, p), result[2]};
    // gcd of P (deg 3) with fro (deg <= 2), by Euclid; only the degree matters
    auto polydeg = [&](const std::vector<i128>& f) {
        int d = (int)f.size() - 1;
        while (d >= 0 && f[d] == 0) --d;
        return d;
    };
    std::vector<i128> F{C, B, A, 1}, G{fro[0], fro[1], fro[2]};
    while (true) {
        int dg = polydeg(G);
        if (dg < 0) { return {3, maxmult, rep}; }  // gcd = P itself: all roots rational (with multiplicity)
        // F mod G
        int df = polydeg(F);
        i128 lead = inv_mod(G[dg], p);
        std::vector<i128> R = F;
        for (int d = df; d >= dg; --d) {
            i128 coef = mod_p(R[d] * lead, p);
            if (coef == 0) continue;
            for (int j = 0; j <= dg; ++j) R[d - dg + j] = mod_p(R[d - dg + j] - coef * G[j], p);
        }
        R.resize(dg);
        if (polydeg(R) < 0) {
            // G divides F: gcd has degree dg, but roots of gcd may repeat
            // distinct roots of P = dg here since gcd(T^p-T, P) is squarefree
            return {dg, maxmult, rep};
        }
        F = G;
        G = R;
    }
}

}  // namespace detail

// Tate's algorithm at p, with the non-minimal restart. Returns the local data
// and the locally-minimal (possibly translated) model together with the
// accumulated scaling exponent.
struct TateResult {
    CurveLocalData local;
    WeierstrassCurve minimal;  // locally minimal at p (coordinates possibly translated)
    int u_exponent = 0;        // the model was scaled by u = p^u_exponent
};

inline TateResult tate_algorithm(WeierstrassCurve e, i128 p) {
    using namespace detail;
    if (p < 2 || !is_prime(p)) throw std::domain_error("tate_algorithm: p must be prime");
    TateResult res;
    res.local.p = p;

restart:
    i128 Delta = e.discriminant();
    if (Delta == 0) throw std::domain_error("tate_algorithm: singular curve");
    int vD = valuation(Delta, p);
    if (vD == 0) {
        res.local.kodaira = Kodaira::I0;
        res.local.f_exp = 0;
        res.local.tamagawa = 1;
        res.local.reduction = Reduction::Good;
        res.minimal = e;
        return res;
    }

    // move the singular point of the reduction to (0,0)
    {
        i128 r = 0, t = 0;
        if (p == 2 || p == 3) {
            bool found = false;
            for (i128 x = 0; x < p && !found; ++x) {
                for (i128 y = 0; y < p && !found; ++y) {
                    i128 F = y * y + e.a1 * x * y + e.a3 * y - (x * x * x + e.a2 * x * x + e.a4 * x + e.a6);
                    i128 Fx = e.a1 * y - (3 * x * x + 2 * e.a2 * x + e.a4);
                    i128 Fy = 2 * y + e.a1 * x + e.a3;
                    if (mod_p(F, p) == 0 && mod_p(Fx, p) == 0 && mod_p(Fy, p) == 0) {
                        r = x;
                        t = y;
                        found = true;
                    }
                }
            }
            if (!found) throw std::runtime_error("tate: singular point not found mod " + to_string(p));
        } else {
            // odd p: eta^2 = g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6; singular x is the
            // repeated root of g; y from eta = 2y + a1 x + a3 = 0
            i128 i4 = inv_mod(4, p);
            i128 A = mod_p(e.b2() * i4, p);
            i128 B = mod_p(2 * e.b4() * i4, p);
            i128 C = mod_p(e.b6() * i4, p);
            auto ci = cubic_roots(A, B, C, p);
            if (ci.max_multiplicity < 2) throw std::runtime_error("tate: no repeated root at singular prime");
            r = ci.rep_root;
            t = mod_p(-(e.a1 * r + e.a3) * inv_mod(2, p), p);
        }
        e = e.transformed(1, r, 0, t);
    }
    // now p | a3, a4, a6

    if (valuation(e.b2(), p) == 0) {
        // multiplicative: type I_n
        res.local.kodaira = Kodaira::In;
        res.local.n = vD;
        res.local.f_exp = 1;
        // split iff the tangent quadratic T^2 + a1 T - a2 splits mod p
        auto q = quad_roots(e.a1, e.a2, p);
        bool split = q.nroots == 2;
        res.local.reduction = split ? Reduction::SplitMultiplicative : Reduction::NonsplitMultiplicative;
        res.local.tamagawa = split ? vD : (vD % 2 == 0 ? 2 : 1);
        res.minimal = e;
        return res;
    }

    res.local.reduction = Reduction::Additive;

    if (valuation(e.a6, p) < 2) {
        res.local.kodaira = Kodaira::II;
        res.local.f_exp = vD;
        res.local.tamagawa = 1;
        res.minimal = e;
        return res;
    }
    if (valuation(e.b8(), p) < 3) {
        res.local.kodaira = Kodaira::III;
        res.local.f_exp = vD - 1;
        res.local.tamagawa = 2;
        res.minimal = e;
        return res;
    }
    if (valuation(e.b6(), p) < 3) {
        res.local.kodaira = Kodaira::IV;
        res.local.f_exp = vD - 2;
        auto q = quad_roots(e.a3 / p, e.a6 / (p * p), p);
        res.local.tamagawa = q.nroots == 2 ? 3 : 1;
        res.minimal = e;
        return res;
    }

    // normalize so that p | a1, a2; p^2 | a3, a4; p^3 | a6
    {
        i128 s, t;
        if (p == 2) {
            s = mod_p(e.a2, 2);
            e = e.transformed(1, 0, s, 0);
        } else {
            s = mod_p(-e.a1 * inv_mod(2, p), p);
            e = e.transformed(1, 0, s, 0);
        }
        auto q = quad_roots(e.a3 / p, e.a6 / (p * p), p);  // has a double root here (b6 test passed)
        t = p * q.root;
        e = e.transformed(1, 0, 0, t);
    }

    // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3)
    {
        auto ci = cubic_roots(e.a2 / p, e.a4 / (p * p), e.a6 / (p * p * p), p);
        if (ci.max_multiplicity == 1) {
            res.local.kodaira = Kodaira::I0star;
            res.local.f_exp = vD - 4;
            res.local.tamagawa = 1 + ci.distinct_roots;
            res.minimal = e;
            return res;
        }
        if (ci.max_multiplicity == 2) {
            // type I_nu*: translate the double root to 0 and run the index loop
            e = e.transformed(1, p * ci.rep_root, 0, 0);
            // invariants: v(a1),v(a3) >= 1? a1 untouched; v(a2) = 1, v(a4) >= 3, v(a6) >= 4
            int q = 2;
            while (true) {
                // quadratic in Y: Y^2 + (a3/p^q) Y - a6/p^(2q)
                auto qy = quad_roots(e.a3 / pow_u128(p, q), e.a6 / (i128)pow_u128(p, 2 * q), p);
                if (!qy.double_root) {
                    int nu = 2 * q - 3;
                    res.local.kodaira = Kodaira::Instar;
                    res.local.n = nu;
                    res.local.f_exp = vD - 4 - nu;
                    res.local.tamagawa = qy.nroots == 2 ? 4 : 2;
                    res.minimal = e;
                    return res;
                }
                e = e.transformed(1, 0, 0, (i128)pow_u128(p, q) * qy.root);
                // quadratic in X: (a2/p) X^2 + (a4/p^(q+1)) X + a6/p^(2q+1)
                auto qx = quad_roots_general(e.a2 / p, e.a4 / (i128)pow_u128(p, q + 1),
                                             e.a6 / (i128)pow_u128(p, 2 * q + 1), p);
                if (!qx.double_root) {
                    int nu = 2 * q - 2;
                    res.local.kodaira = Kodaira::Instar;
                    res.local.n = nu;
                    res.local.f_exp = vD - 4 - nu;
                    res.local.tamagawa = qx.nroots == 2 ? 4 : 2;
                    res.minimal = e;
                    return res;
                }
                e = e.transformed(1, (i128)pow_u128(p, q) * qx.root, 0, 0);
                ++q;
            }
        }
        // triple root: translate to 0; then v(a2) >= 2, v(a4) >= 3, v(a6) >= 4
        e = e.transformed(1, p * ci.rep_root, 0, 0);
    }

    // quadratic Y^2 + (a3/p^2) Y - a6/p^4
    {
        auto q = quad_roots(e.a3 / (p * p), e.a6 / (i128)pow_u128(p, 4), p);
        if (!q.double_root) {
            res.local.kodaira = Kodaira::IVstar;
            res.local.f_exp = vD - 6;
            res.local.tamagawa = q.nroots == 2 ? 3 : 1;
            res.minimal = e;
            return res;
        }
        e = e.transformed(1, 0, 0, p * p * q.root);
    }
    if (valuation(e.a4, p) < 4) {
        res.local.kodaira = Kodaira::IIIstar;
        res.local.f_exp = vD - 7;
        res.local.tamagawa = 2;
        res.minimal = e;
        return res;
    }
    if (valuation(e.a6, p) < 6) {
        res.local.kodaira = Kodaira::IIstar;
        res.local.f_exp = vD - 8;
        res.local.tamagawa = 1;
        res.minimal = e;
        return res;
    }
    // not minimal: rescale and restart
    e = e.transformed(p, 0, 0, 0);
    res.u_exponent += 1;
    goto restart;
}

inline CurveLocalData tate_local_data(const WeierstrassCurve& e, i128 p) { return tate_algorithm(e, p).local; }

// Normalize a1 to {0,1}, a2 to {-1,0,1}, a3 to {0,1} (Laska-Kraus-Connell
// tidy-up; a pure translation, does not affect minimality).
inline WeierstrassCurve tidy_model(WeierstrassCurve e) {
    auto floordiv = [](i128 a, i128 b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    i128 s = -floordiv(e.a1, 2);
    e = e.transformed(1, 0, s, 0);
    i128 a2new = e.a2;
    i128 r = -floordiv(a2new + 1, 3);
    e = e.transformed(1, r, 0, 0);
    i128 t = -floordiv(e.a3, 2);
    e = e.transformed(1, 0, 0, t);
    return e;
}

// Globally minimal model. When the bad-prime support is known, pass it to
// avoid factoring the raw discriminant.
inline WeierstrassCurve minimal_model(WeierstrassCurve e, std::vector<i128> support = {}) {
    if (e.discriminant() == 0) throw std::domain_error("minimal_model: singular curve");
    if (support.empty()) {
        for (auto& pr : factorize(e.discriminant()).factors) support.push_back(pr.first);
    }
    for (i128 p : support) {
        if (detail::valuation(e.discriminant(), p) == 0) continue;
        auto r = tate_algorithm(e, p);
        e = r.minimal;
        e.label = r.minimal.label;
    }
    return tidy_model(e);
}

// Conductor from local data over the given (or factored) support.
inline i128 conductor(const WeierstrassCurve& e, std::vector<i128> support = {}) {
    if (support.empty()) {
        for (auto& pr : factorize(e.discriminant()).factors) support.push_back(pr.first);
    }
    i128 N = 1;
    for (i128 p : support) {
        auto d = tate_local_data(e, p);
        for (int i = 0; i < d.f_exp; ++i) N *= p;
    }
    return N;
}

// N = N_split * N_nonsplit * N_add
struct ReductionDecomposition {
    i128 n_split = 1;
    i128 n_nonsplit = 1;
    i128 n_add = 1;
    i128 conductor() const { return n_split * n_nonsplit * n_add; }
};

inline ReductionDecomposition reduction_decomposition(const WeierstrassCurve& e, std::vector<i128> support = {}) {
    if (support.empty()) {
        for (auto& pr : factorize(e.discriminant()).factors) support.push_back(pr.first);
    }
    ReductionDecomposition d;
    for (i128 p : support) {
        auto loc = tate_local_data(e, p);
        i128 pf = 1;
        for (int i = 0; i < loc.f_exp; ++i) pf *= p;
        switch (loc.reduction) {
            case Reduction::Good: break;
            case Reduction::SplitMultiplicative: d.n_split *= pf; break;
            case Reduction::NonsplitMultiplicative: d.n_nonsplit *= pf; break;
            case Reduction::Additive: d.n_add *= pf; break;
        }
    }
    return d;
}

// ---------------------------------------------------------------------------
// Point counts and Hecke coefficients
// ---------------------------------------------------------------------------

// a_p on a globally minimal model: point count at good p, the standard
// +1/-1/0 convention at bad p. Naive O(p) loop, capped.
inline i128 ap_minimal(const WeierstrassCurve& e, i128 p, i128 cap = 1000000) {
    if (p > cap) throw std::domain_error("ap: prime exceeds the naive counting cap");
    using detail::mod_p;
    int vD = detail::valuation(e.discriminant(), p);
    if (vD > 0) {
        auto d = tate_local_data(e, p);
        switch (d.reduction) {
            case Reduction::SplitMultiplicative: return 1;
            case Reduction::NonsplitMultiplicative: return -1;
            case Reduction::Additive: return 0;
            case Reduction::Good: break;  // unreachable on a minimal model
        }
    }
    i128 count;
    if (p == 2 || p == 3) {
        count = 1;  // point at infinity
        for (i128 x = 0; x < p; ++x)
            for (i128 y = 0; y < p; ++y) {
                i128 F = y * y + e.a1 * x * y + e.a3 * y - (x * x * x + e.a2 * x * x + e.a4 * x + e.a6);
                if (mod_p(F, p) == 0) ++count;
            }
    } else {
        // y^2 = x^3 + A x + B with A = -27 c4, B = -54 c6 (u = 6 twist-free change)
        int64_t pp = (int64_t)p;
        int64_t A = (int64_t)mod_p(-27 * e.c4(), p);
        int64_t B = (int64_t)mod_p(-54 * e.c6(), p);
        std::vector<int8_t> chi(pp, -1);
        chi[0] = 0;
        for (int64_t i = 1; i <= pp / 2; ++i) chi[(int64_t)((i128)i * i % pp)] = 1;
        int64_t sum = 0;
        for (int64_t x = 0; x < pp; ++x) {
            int64_t v = (int64_t)(((i128)x * x % pp * x + (i128)A * x + B) % pp);
            sum += chi[v];
        }
        count = p + 1 + sum;
    }
    i128 apv = p + 1 - count;
    if (apv * apv > 4 * p) throw std::runtime_error("ap: Hasse bound violated (non-minimal model?)");
    return apv;
}

inline i128 ap(const WeierstrassCurve& e, i128 p, std::vector<i128> support = {}, i128 cap = 1000000) {
    return ap_minimal(minimal_model(e, std::move(support)), p, cap);
}

// a_n by multiplicativity; curve must be minimal.
// good p:          a_{p^(k+1)} = a_p a_{p^k} - p a_{p^(k-1)}
// multiplicative:  a_{p^k} = a_p^k
// additive:        a_{p^k} = 0 for k >= 1
inline i128 an_minimal(const WeierstrassCurve& e, i128 n, i128 cap = 1000000) {
    if (n <= 0) throw std::domain_error("an: n must be positive");
    if (n == 1) return 1;
    i128 result = 1;
    for (auto& [p, k] : factorize(n).factors) {
        i128 a1v = ap_minimal(e, p, cap);
        i128 prev = 1, cur = a1v;
        bool good = detail::valuation(e.discriminant(), p) == 0;
        for (int i = 2; i <= k; ++i) {
            i128 next;
            if (good)
                next = a1v * cur - p * prev;
            else
                next = a1v * cur;
            prev = cur;
            cur = next;
        }
        result *= cur;
    }
    return result;
}

inline i128 an(const WeierstrassCurve& e, i128 n, std::vector<i128> support = {}, i128 cap = 1000000) {
    return an_minimal(minimal_model(e, std::move(support)), n, cap);
}

// Table of a_n for 1 <= n <= nmax (minimal model required).
inline std::vector<int64_t> an_table(const WeierstrassCurve& e, int64_t nmax) {
    std::vector<int64_t> a(nmax + 1, 0);
    a[1] = 1;
    auto spf = spf_sieve(nmax);
    std::vector<uint8_t> good(nmax + 1, 0);
    std::vector<int64_t> app(nmax + 1, 0);  // a_p at primes
    for (int64_t p = 2; p <= nmax; ++p) {
        if (spf[p] != p) continue;
        app[p] = (int64_t)ap_minimal(e, p, nmax + 1);
        good[p] = detail::valuation(e.discriminant(), p) == 0;
    }
    for (int64_t n = 2; n <= nmax; ++n) {
        int64_t p = spf[n];
        int64_t pk = p, m = n / p;
        while (m % p == 0) { pk *= p; m /= p; }
        if (m > 1) {
            a[n] = a[pk] * a[m];
            continue;
        }
        // n = p^k
        if (pk == p) {
            a[n] = app[p];
        } else {
            int64_t pk1 = pk / p;
            if (good[p])
                a[n] = app[p] * a[pk1] - p * a[pk1 / p];
            else
                a[n] = app[p] * a[pk1];
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// The sextic twist family E_d : y^2 = x^3 - 432 d
// ---------------------------------------------------------------------------

struct SexticTwist {
    i128 d;

    explicit SexticTwist(i128 dv) : d(dv) {
        if (d == 0) throw std::domain_error("sextic twist: d must be nonzero");
        auto [core, scale] = sixth_power_free_core(d);
        if (scale != 1) throw std::domain_error("sextic twist: d must be sixth-power-free");
    }

    WeierstrassCurve curve() const {
        WeierstrassCurve e;
        e.a6 = -432 * d;
        e.label = "E_" + to_string(d);
        return e;
    }

    std::vector<i128> bad_prime_support() const {
        std::vector<i128> s{2, 3};
        for (auto& [p, ee] : factorize(d).factors)
            if (p > 3) s.push_back(p);
        return s;
    }
};

// E_d[3]^ss = F_3(psi_d) + F_3(psi_d * omega)
inline std::pair<QuadraticCharacter, QuadraticCharacter> mod3_characters(const SexticTwist& t) {
    QuadraticCharacter psi = squarefree_core(t.d) == 1 ? QuadraticCharacter::trivial()
                                                       : QuadraticCharacter::of_field(t.d);
    return {psi, product(psi, omega3())};
}

// Lemma-style closed form for c_3(E_d): 3 iff d = 2 mod 9, else 1, on the
// congruence classes d = 2 mod 3 or d = 3 mod 9.
inline i128 tamagawa_c3_formula(i128 d) {
    if (!is_fundamental_discriminant(d)) throw std::domain_error("tamagawa_c3_formula: d must be fundamental");
    i128 m9 = ((d % 9) + 9) % 9;
    i128 m3 = m9 % 3;
    if (!(m3 == 2 || m9 == 3)) throw std::domain_error("tamagawa_c3_formula: d outside the covered congruence classes");
    return m9 == 2 ? 3 : 1;
}

// Quadratic twist by a fundamental discriminant (or any nonzero integer),
// returned as a globally minimal model.
inline WeierstrassCurve quadratic_twist(const WeierstrassCurve& e, i128 d) {
    if (d == 0) throw std::domain_error("quadratic_twist: d = 0");
    WeierstrassCurve t;
    t.a4 = -27 * e.c4() * d * d;
    t.a6 = -54 * e.c6() * d * d * d;
    t.label = e.label.empty() ? "" : e.label + "^(" + to_string(d) + ")";
    std::vector<i128> support{2, 3};
    for (auto& [p, ee] : factorize(e.discriminant()).factors)
        if (p > 3) support.push_back(p);
    for (auto& [p, ee] : factorize(d).factors)
        if (p > 3) support.push_back(p);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    auto m = minimal_model(t, support);
    m.label = t.label;
    return m;
}

// ---------------------------------------------------------------------------
// Curve tables
// ---------------------------------------------------------------------------

// one line: label|a1,a2,a3,a4,a6
inline WeierstrassCurve parse_curve_line(const std::string& line, int lineno = 0) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("curve table line " + std::to_string(lineno) + ": " + why);
    };
    auto bar = line.find('|');
    if (bar == std::string::npos) fail("missing '|' separator");
    std::string label = line.substr(0, bar);
    if (label.empty()) fail("empty label");
    std::string rest = line.substr(bar + 1);
    std::vector<i128> vals;
    std::string cur;
    for (size_t i = 0; i <= rest.size(); ++i) {
        if (i == rest.size() || rest[i] == ',') {
            if (cur.empty()) fail("empty coefficient");
            try {
                vals.push_back(parse_i128(cur));
            } catch (const std::exception&) {
                fail("bad integer '" + cur + "'");
            }
            cur.clear();
        } else if (!isspace((unsigned char)rest[i])) {
            cur += rest[i];
        }
    }
    if (vals.size() != 5) fail("expected 5 coefficients, got " + std::to_string(vals.size()));
    WeierstrassCurve e{vals[0], vals[1], vals[2], vals[3], vals[4], label};
    if (e.discriminant() == 0) fail("singular curve");
    return e;
}

inline std::vector<WeierstrassCurve> parse_curve_table(std::istream& in) {
    std::vector<WeierstrassCurve> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        out.push_back(parse_curve_line(line, lineno));
    }
    return out;
}

// The named curves used throughout.
inline WeierstrassCurve builtin_curve(const std::string& label) {
    static const std::map<std::string, std::array<int64_t, 5>> table{
        {"19a1", {0, 1, 1, -9, -15}},
        {"27a1", {0, 0, 1, 0, -7}},
        {"144a1", {0, 0, 0, 0, -1}},
        {"37a1", {0, 0, 1, -1, 0}},
        {"11a1", {0, -1, 1, -10, -20}},
        {"14a1", {1, 0, 1, 4, -6}},
    };
    auto it = table.find(label);
    if (it == table.end()) {
        // E_d labels
        if (label.size() > 2 && label.substr(0, 2) == "E_") {
            return SexticTwist(parse_i128(label.substr(2))).curve();
        }
        throw std::invalid_argument("unknown curve label: " + label);
    }
    auto& a = it->second;
    return WeierstrassCurve{a[0], a[1], a[2], a[3], a[4], label};
}

}  // namespace goldscan
