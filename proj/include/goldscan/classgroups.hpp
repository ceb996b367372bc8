#pragma once

// Class groups of quadratic fields via binary quadratic forms.
//   D < 0: reduced definite forms, Gauss composition, structure by counting
//          p-power torsion (brute-force elementary divisors).
//   D > 0: narrow class group h+ from reduction cycles of indefinite forms;
//          the 3-part is unaffected by [h+ : h] in {1,2}.
// h3(D) is the 3-class number |Cl(Q(sqrt(D)))[3]| = 3^rank3.
//
// The *_scan functions are block-enumeration engines used by the density
// scans and the Nakagawa-Horie average checks; they compute 3-ranks for every
// fundamental discriminant in a range without per-discriminant enumeration.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "goldscan/arith.hpp"
#include "goldscan/forms.hpp"
#include "goldscan/int128.hpp"

namespace goldscan {

struct ClassGroupData {
    i128 disc = 0;
    i128 h = 1;                        // narrow class number for disc > 0
    std::vector<i128> cyclic_factors;  // ascending, each divides the next; empty for h = 1
    i128 h3 = 1;                       // |Cl[3]| = 3^rank3
    int rank3 = 0;
};

// Dispatching reduction with discriminant validation.
inline Form reduce(const Form& f, i128 D) {
    if (f.disc() != D) throw std::domain_error("reduce: form has discriminant " + to_string(f.disc()) + ", expected " + to_string(D));
    if (D < 0) return reduce_definite(f);
    return reduce_indefinite(f, D, isqrt(D));
}

namespace detail {

// Assemble elementary divisors from per-prime torsion counts.
// For each prime p | h, counts[j] = #{x : x^(p^j) = 1} = p^(m_j); the
// conjugate of (m_j - m_{j-1}) is the partition of exponent vectors.
struct PrimePartition {
    i128 p;
    std::vector<int> exponents;  // descending
};

inline std::vector<i128> divisors_from_partitions(std::vector<PrimePartition>& parts, i128 h) {
    size_t k = 0;
    for (auto& pp : parts) k = std::max(k, pp.exponents.size());
    std::vector<i128> divs(k, 1);
    for (auto& pp : parts) {
        for (size_t i = 0; i < pp.exponents.size(); ++i) {
            i128 q = 1;
            for (int j = 0; j < pp.exponents[i]; ++j) q *= pp.p;
            divs[i] *= q;  // slot 0 gets the largest exponent
        }
    }
    std::reverse(divs.begin(), divs.end());  // ascending, each divides the next
    i128 prod = 1;
    for (i128 d : divs) prod *= d;
    if (prod != h) throw std::runtime_error("class group structure: divisor product mismatch");
    return divs;
}

}  // namespace detail

inline ClassGroupData class_group(i128 D, i128 cap = 10000000) {
    if (!is_fundamental_discriminant(D)) throw std::domain_error("class_group: not a fundamental discriminant: " + to_string(D));
    if (iabs(D) > cap) throw std::domain_error("class_group: |D| exceeds cap");

    ClassGroupData cg;
    cg.disc = D;

    std::vector<Form> classes;           // one representative per class
    std::function<Form(const Form&, const Form&)> op;
    std::function<bool(const Form&)> is_id;

    i128 s = 0;
    std::vector<Form> forms;             // all reduced forms, sorted (indefinite only)
    std::vector<int> cycle_id;
    if (D < 0) {
        classes = all_reduced_forms(D);
        op = [](const Form& x, const Form& y) { return compose_definite(x, y); };
        Form one = reduce_definite(principal_form(D));
        is_id = [one](const Form& x) { return x == one; };
    } else {
        s = isqrt(D);
        forms = all_reduced_forms(D);
        std::sort(forms.begin(), forms.end());
        cycle_id.assign(forms.size(), -1);
        auto index_of = [&](const Form& f) {
            auto it = std::lower_bound(forms.begin(), forms.end(), f);
            if (it == forms.end() || !(*it == f)) throw std::runtime_error("indefinite form lookup failed");
            return (int)(it - forms.begin());
        };
        int ncyc = 0;
        for (size_t i = 0; i < forms.size(); ++i) {
            if (cycle_id[i] >= 0) continue;
            Form f = forms[i];
            int id = ncyc++;
            classes.push_back(f);
            while (true) {
                int idx = index_of(f);
                if (cycle_id[idx] >= 0) break;
                cycle_id[idx] = id;
                f = rho_indefinite(f, D, s);
            }
        }
        int principal_cycle = cycle_id[index_of(principal_form_indefinite(D, s))];
        op = [D, s](const Form& x, const Form& y) { return compose_indefinite(x, y, D, s); };
        is_id = [&forms, &cycle_id, principal_cycle, index_of](const Form& x) {
            return cycle_id[index_of(x)] == principal_cycle;
        };
    }

    cg.h = (i128)classes.size();
    if (cg.h > 1) {
        auto class_pow = [&](Form f, i128 e) {
            Form r = D < 0 ? reduce_definite(principal_form(D)) : principal_form_indefinite(D, s);
            while (e > 0) {
                if (e & 1) r = op(r, f);
                f = op(f, f);
                e >>= 1;
            }
            return r;
        };
        std::vector<detail::PrimePartition> parts;
        for (auto& [p, e] : factorize(cg.h).factors) {
            std::vector<int> m(e + 1, 0);  // m[j] = log_p #{x : x^(p^j) = 1}
            for (int j = 1; j <= e; ++j) {
                i128 pj = 1;
                for (int t = 0; t < j; ++t) pj *= p;
                i128 cnt = 0;
                for (auto& cls : classes)
                    if (is_id(class_pow(cls, pj))) ++cnt;
                int lg = 0;
                i128 c = cnt;
                while (c > 1) { if (c % p != 0) throw std::runtime_error("torsion count not a p-power"); c /= p; ++lg; }
                m[j] = lg;
                if (j > 1 && m[j] == m[j - 1]) { for (int t = j + 1; t <= e; ++t) m[t] = m[j]; break; }
            }
            // conjugate partition
            std::vector<int> colsize;
            for (int j = 1; j <= e; ++j)
                if (m[j] > m[j - 1]) colsize.push_back(m[j] - m[j - 1]);
            int nfac = m[1];
            std::vector<int> expo(nfac, 0);
            for (int i = 0; i < nfac; ++i)
                for (size_t j = 0; j < colsize.size(); ++j)
                    if (colsize[j] >= i + 1) expo[i] = (int)j + 1;
            std::sort(expo.rbegin(), expo.rend());
            parts.push_back({p, expo});
            if (p == 3) {
                cg.rank3 = nfac;
                cg.h3 = 1;
                for (int i = 0; i < nfac; ++i) cg.h3 *= 3;
            }
        }
        cg.cyclic_factors = detail::divisors_from_partitions(parts, cg.h);
    }
    return cg;
}

// 3-class number h3 = |Cl(Q(sqrt(D)))[3]|. Non-fundamental D is normalized to
// the fundamental discriminant of Q(sqrt(D)) first.
inline i128 h3(i128 D, i128 cap = 10000000) {
    if (D == 0 || is_perfect_square(D)) throw std::domain_error("h3: argument must be a non-square nonzero integer");
    i128 Df = fundamental_discriminant_of(D);
    if (iabs(Df) > cap) throw std::domain_error("h3: |D| exceeds cap");
    if (Df < 0) {
        auto forms = all_reduced_forms(Df);
        Form one = reduce_definite(principal_form(Df));
        i128 cnt = 0;
        for (auto& f : forms) {
            Form cube = compose_definite(square_definite(f), f);
            if (cube == one) ++cnt;
        }
        return cnt;
    }
    i128 s = isqrt(Df);
    auto forms = all_reduced_forms(Df);
    std::sort(forms.begin(), forms.end());
    std::vector<int> cycle_id(forms.size(), -1);
    auto index_of = [&](const Form& f) {
        auto it = std::lower_bound(forms.begin(), forms.end(), f);
        if (it == forms.end() || !(*it == f)) throw std::runtime_error("indefinite form lookup failed");
        return (int)(it - forms.begin());
    };
    std::vector<Form> reps;
    int ncyc = 0;
    for (size_t i = 0; i < forms.size(); ++i) {
        if (cycle_id[i] >= 0) continue;
        Form f = forms[i];
        reps.push_back(f);
        int id = ncyc++;
        while (cycle_id[index_of(f)] < 0) {
            cycle_id[index_of(f)] = id;
            f = rho_indefinite(f, Df, s);
        }
    }
    int principal = cycle_id[index_of(principal_form_indefinite(Df, s))];
    i128 cnt = 0;
    for (auto& rep : reps) {
        Form cube = compose_indefinite(compose_indefinite(rep, rep, Df, s), rep, Df, s);
        if (cycle_id[index_of(cube)] == principal) ++cnt;
    }
    return cnt;
}

inline int rank3_of(i128 D, i128 cap = 10000000) {
    i128 t = h3(D, cap);
    int r = 0;
    while (t > 1) { t /= 3; ++r; }
    return r;
}

// Scholz reflection check: rank3 of Q(sqrt(d)) vs Q(sqrt(-3d)) for d > 1.
struct ScholzResult {
    int r_plus;
    int r_minus;
    bool ok;
};

inline ScholzResult scholz_check(i128 d, i128 cap = 10000000) {
    if (d <= 1 || !is_fundamental_discriminant(d)) throw std::domain_error("scholz_check: d must be a positive fundamental discriminant > 1");
    int rp = rank3_of(d, cap);
    int rm = rank3_of(fundamental_discriminant_of(-3 * d), cap);
    return {rp, rm, rp <= rm && rm <= rp + 1};
}

// ---------------------------------------------------------------------------
// Range scans
// ---------------------------------------------------------------------------

namespace detail {

// int64 forms with 128-bit intermediates, for the batch paths
struct SmallForm {
    int64_t a, b, c;
};

inline SmallForm reduce_definite64(i128 a, i128 b, i128 c) {
    Form f = reduce_definite({a, b, c});
    return {(int64_t)f.a, (int64_t)f.b, (int64_t)f.c};
}

// cube of the class of (a,b,c), reduced; returns true iff principal
inline bool cube_is_principal_definite(int64_t a, int64_t b, int64_t c) {
    Form f{a, b, c};
    Form cube = compose_definite(square_definite(f), f);
    return cube.a == 1;
}

}  // namespace detail

// 3-ranks of all negative fundamental discriminants -X < D < 0.
// out[|D|] = rank3, or -1 when |D| is not a negative fundamental discriminant.
// Enumerates every reduced definite form of the range once, in blocks.
inline std::vector<int8_t> imaginary_rank3_scan(int64_t X, int workers = 1) {
    auto fund = fundamental_sieve(X);
    std::vector<int8_t> out(X + 1, -1);

    const int64_t block = 1 << 15;
    std::vector<int64_t> starts;
    for (int64_t lo = 3; lo <= X; lo += block) starts.push_back(lo);

    std::atomic<size_t> next{0};
    auto work = [&]() {
        std::vector<int32_t> cnt;
        std::vector<int32_t> offs;
        std::vector<std::pair<int32_t, int32_t>> store;  // (a, b) with weight in sign of a
        while (true) {
            size_t bi = next.fetch_add(1);
            if (bi >= starts.size()) break;
            int64_t lo = starts[bi];
            int64_t hi = std::min(lo + block - 1, X);  // |D| in [lo, hi]
            int64_t n = hi - lo + 1;
            cnt.assign(n, 0);
            int64_t amax = (int64_t)isqrt((i128)hi / 3);
            // pass 1: count reduced forms per |D|
            for (int64_t a = 1; a <= amax; ++a) {
                for (int64_t b = 0; b <= a; ++b) {
                    // |D| = 4ac - b^2, c >= a
                    int64_t foura = 4 * a;
                    int64_t cmin = a;
                    int64_t t = lo + b * b;  // 4ac >= t
                    int64_t c0 = (t + foura - 1) / foura;
                    if (c0 > cmin) cmin = c0;
                    int64_t cmax = (hi + b * b) / foura;
                    for (int64_t c = cmin; c <= cmax; ++c) {
                        int64_t absD = foura * c - b * b;
                        if (absD < lo || absD > hi) continue;
                        if (!(fund[absD] & 2)) continue;  // -|D| fundamental?
                        ++cnt[absD - lo];
                    }
                }
            }
            offs.assign(n + 1, 0);
            for (int64_t i = 0; i < n; ++i) offs[i + 1] = offs[i] + cnt[i];
            store.assign(offs[n], {0, 0});
            std::vector<int32_t> fill(offs.begin(), offs.end() - 1);
            // pass 2: store forms
            for (int64_t a = 1; a <= amax; ++a) {
                for (int64_t b = 0; b <= a; ++b) {
                    int64_t foura = 4 * a;
                    int64_t cmin = a;
                    int64_t t = lo + b * b;
                    int64_t c0 = (t + foura - 1) / foura;
                    if (c0 > cmin) cmin = c0;
                    int64_t cmax = (hi + b * b) / foura;
                    for (int64_t c = cmin; c <= cmax; ++c) {
                        int64_t absD = foura * c - b * b;
                        if (absD < lo || absD > hi) continue;
                        if (!(fund[absD] & 2)) continue;
                        int w = (b == 0 || b == a || a == c) ? 1 : 2;
                        store[fill[absD - lo]++] = {(int32_t)(w == 2 ? -a : a), (int32_t)b};
                    }
                }
            }
            // per-discriminant: count classes with trivial cube
            for (int64_t i = 0; i < n; ++i) {
                if (!(fund[lo + i] & 2)) continue;
                int64_t absD = lo + i;
                int64_t cl3 = 0;
                for (int32_t j = offs[i]; j < offs[i + 1]; ++j) {
                    int64_t a = iabs((i128)store[j].first), b = store[j].second;
                    int w = store[j].first < 0 ? 2 : 1;
                    int64_t c = (b * b + absD) / (4 * a);
                    if (detail::cube_is_principal_definite(a, b, c)) cl3 += w;
                }
                int r = 0;
                while (cl3 > 1) { cl3 /= 3; ++r; }
                out[absD] = (int8_t)r;
            }
        }
    };
    std::vector<std::thread> ts;
    for (int i = 0; i < std::max(1, workers); ++i) ts.emplace_back(work);
    for (auto& t : ts) t.join();
    return out;
}

// 3-ranks of all positive fundamental discriminants 1 < D <= X, via the
// narrow class group (reduction cycles). out[D] = rank3 or -1.
inline std::vector<int8_t> real_rank3_scan(int64_t X, int workers = 1) {
    auto fund = fundamental_sieve(X);
    std::vector<int8_t> out(X + 1, -1);

    const int64_t block = 1 << 13;
    std::vector<int64_t> starts;
    for (int64_t lo = 5; lo <= X; lo += block) starts.push_back(lo);

    std::atomic<size_t> next{0};
    auto work = [&]() {
        std::vector<int32_t> cnt, offs, fill, cyc;
        std::vector<std::pair<int32_t, int32_t>> store;  // (a signed, b)
        while (true) {
            size_t bi = next.fetch_add(1);
            if (bi >= starts.size()) break;
            int64_t lo = starts[bi];
            int64_t hi = std::min(lo + block - 1, X);
            int64_t n = hi - lo + 1;
            cnt.assign(n, 0);
            int64_t smax = (int64_t)isqrt((i128)hi);
            // enumeration: reduced (a,b,c), 0 < b <= sqrt(D), s-b < 2|a| <= s+b
            auto visit = [&](auto&& fn) {
                for (int64_t b = 1; b <= smax; ++b) {
                    int64_t bb = b * b;
                    // D = bb + 4|a||c|, both sign patterns
                    int64_t abs_amax = (smax + b) / 2;
                    for (int64_t aa = 1; aa <= abs_amax; ++aa) {
                        int64_t foura = 4 * aa;
                        int64_t ccmin = ((lo - bb) + foura - 1) / foura;
                        if (ccmin < 1) ccmin = 1;
                        int64_t ccmax = (hi - bb) / foura;
                        for (int64_t cc = ccmin; cc <= ccmax; ++cc) {
                            int64_t D = bb + foura * cc;
                            if (D < lo || D > hi) continue;
                            if (!(fund[D] & 1)) continue;
                            int64_t s = (int64_t)isqrt((i128)D);
                            if (!(s - b < 2 * aa && 2 * aa <= s + b)) continue;
                            fn(D, aa, b, cc);
                        }
                    }
                }
            };
            visit([&](int64_t D, int64_t, int64_t, int64_t) { cnt[D - lo] += 2; });
            offs.assign(n + 1, 0);
            for (int64_t i = 0; i < n; ++i) offs[i + 1] = offs[i] + cnt[i];
            store.assign(offs[n], {0, 0});
            fill.assign(offs.begin(), offs.end() - 1);
            visit([&](int64_t D, int64_t aa, int64_t b, int64_t cc) {
                store[fill[D - lo]++] = {(int32_t)aa, (int32_t)b};     // (a, b, -c)
                store[fill[D - lo]++] = {(int32_t)(-aa), (int32_t)b};  // (-a, b, c)
            });
            for (int64_t i = 0; i < n; ++i) {
                if (!(fund[lo + i] & 1)) continue;
                int64_t D = lo + i;
                int64_t s = (int64_t)isqrt((i128)D);
                int32_t lo_j = offs[i], hi_j = offs[i + 1];
                int m = hi_j - lo_j;
                if (m == 0) { out[D] = 0; continue; }  // cannot happen: principal form exists
                // sort this discriminant's forms for lookup
                std::sort(store.begin() + lo_j, store.begin() + hi_j);
                auto idx = [&](int64_t a, int64_t b) {
                    auto it = std::lower_bound(store.begin() + lo_j, store.begin() + hi_j,
                                               std::make_pair((int32_t)a, (int32_t)b));
                    if (it == store.begin() + hi_j || it->first != a || it->second != b)
                        throw std::runtime_error("real scan: reduced form missing from table");
                    return (int32_t)(it - (store.begin() + lo_j));
                };
                cyc.assign(m, -1);
                std::vector<std::pair<int64_t, int64_t>> reps;
                int ncyc = 0;
                for (int j = 0; j < m; ++j) {
                    if (cyc[j] >= 0) continue;
                    int id = ncyc++;
                    int64_t a = store[lo_j + j].first, b = store[lo_j + j].second;
                    reps.push_back({a, b});
                    while (true) {
                        int32_t k = idx(a, b);
                        if (cyc[k] >= 0) break;
                        cyc[k] = id;
                        Form g = rho_indefinite({a, b, (i128)(b * b - D) / (4 * a)}, D, s);
                        a = (int64_t)g.a;
                        b = (int64_t)g.b;
                    }
                }
                Form pr = principal_form_indefinite(D, s);
                int principal = cyc[idx((int64_t)pr.a, (int64_t)pr.b)];
                int64_t cl3 = 0;
                for (auto& [ra, rb] : reps) {
                    Form f{ra, rb, (i128)(rb * rb - D) / (4 * ra)};
                    Form cube = compose_indefinite(compose_indefinite(f, f, D, s), f, D, s);
                    if (cyc[idx((int64_t)cube.a, (int64_t)cube.b)] == principal) ++cl3;
                }
                int r = 0;
                while (cl3 > 1) { cl3 /= 3; ++r; }
                out[D] = (int8_t)r;
            }
        }
    };
    std::vector<std::thread> ts;
    for (int i = 0; i < std::max(1, workers); ++i) ts.emplace_back(work);
    for (auto& t : ts) t.join();
    return out;
}

// Mean of h3 over fundamental discriminants (Nakagawa-Horie / Davenport-
// Heilbronn statistics): imaginary mean -> 2, real mean -> 4/3.
struct H3Means {
    double imaginary_mean;
    double real_mean;
    int64_t imaginary_count;
    int64_t real_count;
};

inline H3Means h3_means(int64_t X, int workers = 1) {
    auto rneg = imaginary_rank3_scan(X - 1, workers);
    auto rpos = real_rank3_scan(X - 1, workers);
    double si = 0, sr = 0;
    int64_t ci = 0, cr = 0;
    for (int64_t v = 1; v < X; ++v) {
        if (v < (int64_t)rneg.size() && rneg[v] >= 0) {
            double t = 1;
            for (int k = 0; k < rneg[v]; ++k) t *= 3;
            si += t;
            ++ci;
        }
        if (v < (int64_t)rpos.size() && rpos[v] >= 0) {
            double t = 1;
            for (int k = 0; k < rpos[v]; ++k) t *= 3;
            sr += t;
            ++cr;
        }
    }
    return {si / ci, sr / cr, ci, cr};
}

}  // namespace goldscan
