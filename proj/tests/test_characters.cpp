#include "testutil.hpp"
#include <catch2/catch_amalgamated.hpp>

#include "goldscan/characters.hpp"
#include "goldscan/classgroups.hpp"

using namespace goldscan;

TEST_CASE("character evaluation") {
    QuadraticCharacter psi_m4(-4);
    CHECK(psi_m4.eval(3) == -1);
    CHECK(psi_m4.conductor() == 4);
    CHECK(psi_m4.is_odd());

    QuadraticCharacter psi8(8);
    CHECK(psi8.eval(-19) == -1);  // (8/19) = -1, (8/-1) = 1
    CHECK(psi8.is_even());

    QuadraticCharacter psi_m23(-23);
    for (i128 k = 1; k <= 10; ++k) CHECK(psi_m23.eval(-23 * k) == 0);

    QuadraticCharacter triv = QuadraticCharacter::trivial();
    CHECK(triv.eval(0) == 1);
    CHECK(triv.eval(6) == 1);
    CHECK(triv.conductor() == 1);
    CHECK(triv.is_even());

    CHECK_THROWS_AS(QuadraticCharacter(9), std::domain_error);

    // eval vanishes exactly on non-units mod the conductor
    for (i128 d : {(i128)-4, (i128)8, (i128)-23, (i128)12, (i128)-3}) {
        QuadraticCharacter chi(d);
        for (i128 n = -50; n <= 50; ++n)
            CHECK((chi.eval(n) == 0) == (gcd_i128(n, chi.conductor()) > 1));
    }
}

TEST_CASE("character product") {
    CHECK(product(QuadraticCharacter(-4), QuadraticCharacter(-7)).disc == 28);
    CHECK(product(QuadraticCharacter(-3), QuadraticCharacter(-3)).is_trivial());
    CHECK(product(QuadraticCharacter(8), QuadraticCharacter(8)).is_trivial());
    CHECK(product(QuadraticCharacter(12), QuadraticCharacter(-3)).disc == -4);
    CHECK(product(QuadraticCharacter::trivial(), QuadraticCharacter(5)).disc == 5);

    // pointwise agreement away from common support
    for (i128 d1 : {(i128)-4, (i128)8, (i128)-3, (i128)5, (i128)-23, (i128)12}) {
        for (i128 d2 : {(i128)-4, (i128)8, (i128)-3, (i128)5, (i128)-23, (i128)12}) {
            QuadraticCharacter c1(d1), c2(d2), cp = product(c1, c2);
            for (i128 n = 1; n <= 200; ++n) {
                if (c1.eval(n) == 0 || c2.eval(n) == 0) continue;
                CHECK(cp.eval(n) == c1.eval(n) * c2.eval(n));
            }
        }
    }
}

TEST_CASE("psi0 construction") {
    CHECK(psi0(QuadraticCharacter(8), -23).disc == 8);
    CHECK(psi0(QuadraticCharacter(-4), -7).disc == 28);
    CHECK(psi0(QuadraticCharacter::trivial(), -7).is_trivial());
    CHECK_THROWS_AS(psi0(QuadraticCharacter(8), 5), std::domain_error);
    // output always even
    for (i128 d = -60; d <= 60; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        for (i128 K : {(i128)-7, (i128)-23, (i128)-31}) {
            CHECK(psi0(QuadraticCharacter(d), K).is_even());
        }
    }
}

TEST_CASE("bernoulli1 pinned values") {
    CHECK(bernoulli1(QuadraticCharacter(-4)) == Rational(-1, 2));
    CHECK(bernoulli1(QuadraticCharacter(-3)) == Rational(-1, 3));
    CHECK(bernoulli1(QuadraticCharacter(5)).is_zero());
    CHECK(bernoulli1(QuadraticCharacter(-23)) == Rational(-3));
    CHECK_THROWS_AS(bernoulli1(QuadraticCharacter::trivial()), std::domain_error);

    CHECK(bernoulli1_ord3(QuadraticCharacter(-4)) == 0);
    CHECK(bernoulli1_ord3(QuadraticCharacter(-3)) == -1);
    CHECK(bernoulli1_ord3(QuadraticCharacter(-23)) == 1);
    CHECK_THROWS_AS(bernoulli1_ord3(QuadraticCharacter(5)), std::domain_error);
}

TEST_CASE("even characters have vanishing B1") {
    for (i128 d = 2; d <= 400; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        CHECK(bernoulli1(QuadraticCharacter(d)).is_zero());
    }
}

TEST_CASE("class number formula B1 = -2h/w on a window") {
    // cross-module identity against the form-counting class number
    for (i128 d = -400; d <= -3; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        auto cg = class_group(d);
        i128 w = d == -3 ? 6 : (d == -4 ? 4 : 2);
        Rational expect = Rational(-2 * cg.h, w);
        CHECK(bernoulli1(QuadraticCharacter(d)) == expect);
    }
}

TEST_CASE("Bernoulli 3-integrality and Corollary-style h3 link on a window") {
    for (i128 d = -500; d <= -3; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        QuadraticCharacter chi(d);
        int v = bernoulli1_ord3(chi);
        if (d != -3) CHECK(v >= 0);
        if (d != -3 && h3(d) == 1) CHECK(v == 0);
    }
}
