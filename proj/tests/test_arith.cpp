#include "testutil.hpp"
#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "goldscan/arith.hpp"

using namespace goldscan;

namespace {
// independent oracle: Euler criterion a^((p-1)/2) mod p for odd prime p
int legendre_oracle(int64_t a, int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    int64_t r = 1, base = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}
}  // namespace

TEST_CASE("kronecker: pinned values") {
    CHECK(kronecker(1, 7) == 1);
    // (8/19): Euler criterion gives 8^9 = 18 mod 19
    CHECK(legendre_oracle(8, 19) == -1);
    CHECK(kronecker(8, 19) == -1);
    // (-23/2): -23 = 1 mod 8
    CHECK(kronecker(-23, 2) == 1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(6, 2) == 0);
    // sign conventions at n = -1 and n = 0
    CHECK(kronecker(3, -1) == 1);
    CHECK(kronecker(-3, -1) == -1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(2, 0) == 0);
    CHECK_THROWS_AS(kronecker(0, 0), std::domain_error);
}

TEST_CASE("kronecker agrees with Legendre at odd primes") {
    for (int64_t p : {3, 5, 7, 11, 13, 19, 97, 101}) {
        for (int64_t a = -30; a <= 30; ++a) {
            CHECK(kronecker(a, p) == legendre_oracle(a, p));
        }
    }
}

TEST_CASE("kronecker multiplicativity in both arguments") {
    for (int64_t n = -40; n <= 40; ++n) {
        for (int64_t a = -15; a <= 15; ++a) {
            for (int64_t b = -15; b <= 15; ++b) {
                if ((a == 0 && n == 0) || (b == 0 && n == 0) || (a * b == 0 && n == 0)) continue;
                // (0/-1) = +1 under the sign convention at -1, so the law is
                // void when one factor is 0 and n = -1
                if (n == -1 && (a == 0 || b == 0)) continue;
                if (kronecker(a, n) * kronecker(b, n) != kronecker(a * b, n))
                    FAIL("top multiplicativity at a=" << a << " b=" << b << " n=" << n);
            }
        }
    }
    // bottom argument
    for (int64_t a = -15; a <= 15; ++a) {
        for (int64_t m = -20; m <= 20; ++m) {
            for (int64_t n = -20; n <= 20; ++n) {
                if (m == 0 || n == 0) continue;
                if (a == 0 && (iabs(m) == 1) != (iabs(n) == 1)) continue;  // same (0/-1) corner
                if (kronecker(a, m) * kronecker(a, n) != kronecker(a, m * n))
                    FAIL("bottom multiplicativity at a=" << a << " m=" << m << " n=" << n);
            }
        }
    }
}

TEST_CASE("kronecker periodicity for fundamental discriminants") {
    for (int64_t d = -200; d <= 200; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        for (int64_t n = 1; n <= 3 * iabs(d); ++n) {
            CHECK(kronecker(d, n) == kronecker(d, n + iabs(d)));
        }
    }
}

TEST_CASE("factorize: pinned values and round trip") {
    auto f = factorize(432);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<i128, int>{2, 4});
    CHECK(f.factors[1] == std::pair<i128, int>{3, 3});
    CHECK(factorize(1).factors.empty());
    auto g = factorize(-19);
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0] == std::pair<i128, int>{19, 1});
    CHECK_THROWS_AS(factorize(0), std::domain_error);

    for (int64_t n = 1; n <= 20000; ++n) {
        auto fn = factorize(n);
        CHECK(fn.value() == n);
        for (size_t i = 1; i < fn.factors.size(); ++i)
            CHECK(fn.factors[i - 1].first < fn.factors[i].first);
    }
    // a couple of large semiprimes exercise the rho path
    i128 big = (i128)1000003 * 1000033;
    auto fb = factorize(big);
    REQUIRE(fb.factors.size() == 2);
    CHECK(fb.factors[0].first == 1000003);
    CHECK(fb.factors[1].first == 1000033);
    CHECK_THROWS_AS(factorize(((i128)1 << 64)), std::domain_error);
}

TEST_CASE("factorize round trip to 1e6") {
    for (int64_t n = 1; n <= 1000000; n += 1) {
        auto f = factorize(n);
        i128 v = 1;
        for (auto& [p, e] : f.factors)
            for (int i = 0; i < e; ++i) v *= p;
        if (v != n) FAIL("round trip failed at " << n);
    }
}

TEST_CASE("is_fundamental_discriminant") {
    CHECK(is_fundamental_discriminant(8));
    CHECK_FALSE(is_fundamental_discriminant(9));
    CHECK(is_fundamental_discriminant(-4));
    CHECK(is_fundamental_discriminant(-3));
    CHECK(is_fundamental_discriminant(5));
    CHECK_FALSE(is_fundamental_discriminant(1));
    CHECK_FALSE(is_fundamental_discriminant(-1));
    CHECK_FALSE(is_fundamental_discriminant(4));
    CHECK_FALSE(is_fundamental_discriminant(-8 * 4));
    CHECK(is_fundamental_discriminant(-8));
    CHECK(is_fundamental_discriminant(12));
    // brute-force oracle on a window
    for (int64_t d = -500; d <= 500; ++d) {
        if (d == 0) continue;
        bool expect = false;
        if (d != 1 && ((d % 4 + 4) % 4 == 1) && is_squarefree(d)) expect = true;
        if ((d % 4 + 4) % 4 == 0) {
            int64_t m = d / 4;
            int64_t mm = (m % 4 + 4) % 4;
            if ((mm == 2 || mm == 3) && is_squarefree(m)) expect = true;
        }
        CHECK(is_fundamental_discriminant(d) == expect);
    }
}

TEST_CASE("fundamental discriminant density approaches 3/pi^2") {
    const int64_t X = 1000000;
    auto f = fundamental_sieve(X);
    int64_t cnt = 0;
    for (int64_t a = 1; a <= X; ++a)
        if (f[a] & 1) ++cnt;
    double density = (double)cnt / (double)X;
    double target = 3.0 / (3.141592653589793 * 3.141592653589793);
    CHECK(density == Catch::Approx(target).epsilon(0.02));
}

TEST_CASE("fundamental_sieve matches is_fundamental_discriminant") {
    auto f = fundamental_sieve(2000);
    for (int64_t a = 1; a <= 2000; ++a) {
        CHECK(((f[a] & 1) != 0) == is_fundamental_discriminant(a));
        CHECK(((f[a] & 2) != 0) == is_fundamental_discriminant(-a));
    }
}

TEST_CASE("sixth_power_free_core") {
    CHECK(sixth_power_free_core(320) == std::pair<i128, i128>{5, 2});
    CHECK(sixth_power_free_core(7) == std::pair<i128, i128>{7, 1});
    CHECK(sixth_power_free_core(-432) == std::pair<i128, i128>{-432, 1});
    CHECK(sixth_power_free_core(-64) == std::pair<i128, i128>{-1, 2});
    for (int64_t d = -3000; d <= 3000; ++d) {
        if (d == 0) continue;
        auto [core, scale] = sixth_power_free_core(d);
        i128 s6 = 1;
        for (int i = 0; i < 6; ++i) s6 *= scale;
        CHECK(core * s6 == d);
        for (auto& [p, e] : factorize(core).factors) CHECK(e < 6);
    }
}

TEST_CASE("crt") {
    // oracle by enumeration
    auto brute = [](std::vector<std::pair<i128, i128>> pairs) -> std::pair<i128, i128> {
        i128 M = 1;
        for (auto& [r, m] : pairs) M = m / gcd_i128(M, m) * M;
        for (i128 x = 0; x < M; ++x) {
            bool ok = true;
            for (auto& [r, m] : pairs)
                if (((x - r) % m + m) % m != 0) ok = false;
            if (ok) return {x, M};
        }
        throw std::runtime_error("no solution");
    };
    std::vector<std::pair<i128, i128>> a{{2, 3}, {1, 8}};
    CHECK(crt(a) == brute(a));
    CHECK(crt(a) == std::pair<i128, i128>{17, 24});
    std::vector<std::pair<i128, i128>> b{{0, 1}};
    CHECK(crt(b) == std::pair<i128, i128>{0, 1});
    std::vector<std::pair<i128, i128>> c{{3, 9}, {1, 5}};
    CHECK(crt(c) == brute(c));
    CHECK(crt(c) == std::pair<i128, i128>{21, 45});
    // consistent overlap merged, inconsistent rejected
    std::vector<std::pair<i128, i128>> d{{2, 6}, {5, 9}};
    CHECK(crt(d) == brute(d));
    std::vector<std::pair<i128, i128>> e{{2, 6}, {4, 9}};
    CHECK_THROWS_AS(crt(e), std::domain_error);
}

TEST_CASE("misc integer helpers") {
    CHECK(isqrt((i128)0) == 0);
    CHECK(isqrt((i128)1) == 1);
    for (int64_t n = 0; n <= 100000; ++n) {
        i128 r = isqrt((i128)n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
    CHECK(to_string(parse_i128("-170141183460469231731687303715884105727")) ==
          "-170141183460469231731687303715884105727");
    CHECK(squarefree_core(-19 * 4) == -19);
    CHECK(fundamental_discriminant_of(-36) == -4);
    CHECK(fundamental_discriminant_of(108) == 12);
    CHECK(fundamental_discriminant_of(-69) == -276);
}
