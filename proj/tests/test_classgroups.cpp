#include "testutil.hpp"
#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "goldscan/classgroups.hpp"

using namespace goldscan;

TEST_CASE("definite reduction") {
    CHECK(reduce(Form{2, 2, 3}, -20) == Form{2, 2, 3});
    CHECK(reduce(Form{6, 1, 1}, -23) == Form{1, 1, 6});
    CHECK_THROWS_AS(reduce(Form{1, 1, 1}, -23), std::domain_error);
    // uniqueness: reducing any small form of disc -23 lands on one of the 3 classes
    std::set<Form> reps;
    for (i128 a = 1; a <= 12; ++a)
        for (i128 b = -12; b <= 12; ++b) {
            i128 num = b * b + 23;
            if (num % (4 * a)) continue;
            reps.insert(reduce_definite(Form{a, b, num / (4 * a)}));
        }
    CHECK(reps.size() == 3);
}

TEST_CASE("indefinite reduction lands in the principal cycle of disc 8") {
    i128 D = 8, s = isqrt(D);
    Form f = reduce(Form{1, 0, -2}, D);
    CHECK(is_reduced_indefinite(f, s));
    auto cyc = indefinite_cycle(principal_form_indefinite(D, s), D, s);
    CHECK(std::find(cyc.begin(), cyc.end(), f) != cyc.end());
}

TEST_CASE("class group of -23") {
    auto cg = class_group(-23);
    CHECK(cg.h == 3);
    REQUIRE(cg.cyclic_factors.size() == 1);
    CHECK(cg.cyclic_factors[0] == 3);
    CHECK(cg.h3 == 3);
    CHECK(cg.rank3 == 1);
    auto forms = all_reduced_forms((i128)-23);
    std::set<Form> expect{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}};
    CHECK(std::set<Form>(forms.begin(), forms.end()) == expect);
}

TEST_CASE("class group of -4 and other pinned values") {
    auto cg = class_group(-4);
    CHECK(cg.h == 1);
    CHECK(cg.h3 == 1);
    CHECK(cg.cyclic_factors.empty());
    CHECK(all_reduced_forms((i128)-4) == std::vector<Form>{{1, 0, 1}});

    // h(-47) = 5, h(-71) = 7, h(-163) = 1 (classical values)
    CHECK(class_group(-47).h == 5);
    CHECK(class_group(-71).h == 7);
    CHECK(class_group(-163).h == 1);
    // -3299 = first imaginary with 3-rank 2: Cl = Z/3 x Z/9
    auto cg2 = class_group(-3299);
    CHECK(cg2.h == 27);
    REQUIRE(cg2.cyclic_factors.size() == 2);
    CHECK(cg2.cyclic_factors[0] == 3);
    CHECK(cg2.cyclic_factors[1] == 9);
    CHECK(cg2.rank3 == 2);
    CHECK(cg2.h3 == 9);
}

TEST_CASE("narrow class group of 229 has h3 = 3") {
    auto cg = class_group(229);
    CHECK(cg.h == 3);
    CHECK(cg.h3 == 3);
    CHECK(cg.rank3 == 1);
    CHECK(h3((i128)229) == 3);
}

TEST_CASE("h3 pinned values") {
    CHECK(h3((i128)-69) == 1);   // field Q(sqrt(-69)), disc -276
    CHECK(h3((i128)-1) == 1);    // Q(i)
    CHECK(h3((i128)-23) == 3);
    CHECK(h3((i128)-3) == 1);
    CHECK(h3((i128)-2484) == 1);  // Q(sqrt(-69)) again, non-fundamental input
    CHECK(h3((i128)-36) == 1);    // Q(i) again
    CHECK_THROWS_AS(h3((i128)16), std::domain_error);
    CHECK_THROWS_AS(h3((i128)0), std::domain_error);
}

TEST_CASE("composition group laws on sampled discriminants") {
    std::mt19937_64 rng(20260809);
    for (i128 D : {(i128)-23, (i128)-47, (i128)-71, (i128)-311, (i128)-479, (i128)-983}) {
        auto forms = all_reduced_forms(D);
        Form one = reduce_definite(principal_form(D));
        // identity and inverse
        for (auto& f : forms) {
            CHECK(compose_definite(f, one) == f);
            CHECK(compose_definite(f, reduce_definite(f.inverse())) == one);
            CHECK(square_definite(f) == compose_definite(f, f));
        }
        // associativity and commutativity on random triples
        std::uniform_int_distribution<size_t> pick(0, forms.size() - 1);
        for (int t = 0; t < 200; ++t) {
            Form x = forms[pick(rng)], y = forms[pick(rng)], z = forms[pick(rng)];
            CHECK(compose_definite(x, y) == compose_definite(y, x));
            CHECK(compose_definite(compose_definite(x, y), z) == compose_definite(x, compose_definite(y, z)));
        }
        // closure: composing any two reduced forms gives a reduced form of the set
        std::set<Form> all(forms.begin(), forms.end());
        for (auto& x : forms)
            for (auto& y : forms) CHECK(all.count(compose_definite(x, y)) == 1);
    }
}

TEST_CASE("form counting h equals composition-generated group order, |D| <= 2000") {
    for (i128 absD = 3; absD <= 2000; ++absD) {
        if (!is_fundamental_discriminant(-absD)) continue;
        auto forms = all_reduced_forms(-absD);
        // BFS closure from all generators
        std::set<Form> seen;
        std::vector<Form> frontier{reduce_definite(principal_form(-absD))};
        seen.insert(frontier[0]);
        while (!frontier.empty()) {
            Form f = frontier.back();
            frontier.pop_back();
            for (auto& g : forms) {
                Form h = compose_definite(f, g);
                if (seen.insert(h).second) frontier.push_back(h);
            }
        }
        if (seen.size() != forms.size()) FAIL("closure mismatch at D = " << -absD);
    }
}

TEST_CASE("3-part consistency: brute-force 3-torsion count equals 3^rank3, |D| <= 4000") {
    for (i128 absD = 3; absD <= 4000; ++absD) {
        if (!is_fundamental_discriminant(-absD)) continue;
        auto cg = class_group(-absD);
        Form one = reduce_definite(principal_form(-absD));
        i128 cnt = 0;
        for (auto& f : all_reduced_forms(-absD))
            if (compose_definite(square_definite(f), f) == one) ++cnt;
        i128 expect = 1;
        for (int i = 0; i < cg.rank3; ++i) expect *= 3;
        if (cnt != expect) FAIL("3-torsion mismatch at D = " << -absD);
        if (cg.h3 != expect) FAIL("h3 mismatch at D = " << -absD);
    }
}

TEST_CASE("narrow class numbers match form counting for positive discriminants") {
    // pinned: h+(5)=1, h+(8)=1, h+(12)=2, h+(40)=2, h+(60)=4, h+(229)=3
    CHECK(class_group(5).h == 1);
    CHECK(class_group(8).h == 1);
    CHECK(class_group(12).h == 2);
    CHECK(class_group(40).h == 2);
    CHECK(class_group(60).h == 4);
    CHECK(class_group(229).h == 3);
    // group laws on cycles for disc 229: the nontrivial class has order 3
    i128 D = 229, s = isqrt(D);
    auto cg = class_group(D);
    CHECK(cg.cyclic_factors == std::vector<i128>{3});
}

TEST_CASE("scholz reflection") {
    auto r5 = scholz_check(5);
    CHECK(r5.r_plus == 0);
    CHECK(r5.r_minus == 0);
    CHECK(r5.ok);
    auto r229 = scholz_check(229);
    CHECK(r229.r_plus == 1);
    CHECK((r229.r_minus == 1 || r229.r_minus == 2));
    CHECK(r229.ok);
    auto r8 = scholz_check(8);
    CHECK(r8.r_plus == 0);
    CHECK((r8.r_minus == 0 || r8.r_minus == 1));
    CHECK(r8.ok);

    for (i128 d = 5; d <= 3000; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        auto r = scholz_check(d);
        if (!r.ok) FAIL("Scholz reflection violated at d = " << (int64_t)d);
    }
}

TEST_CASE("range scans agree with per-discriminant computation") {
    const int64_t X = 4000;
    auto rneg = imaginary_rank3_scan(X, 2);
    auto rpos = real_rank3_scan(X, 2);
    for (int64_t a = 2; a <= X; ++a) {
        if (is_fundamental_discriminant(-a)) {
            if (rneg[a] != rank3_of(-a)) FAIL("imaginary scan mismatch at -" << a);
        } else {
            CHECK(rneg[a] == -1);
        }
        if (is_fundamental_discriminant(a)) {
            if (rpos[a] != rank3_of(a)) FAIL("real scan mismatch at " << a);
        } else {
            CHECK(rpos[a] == -1);
        }
    }
}

TEST_CASE("Nakagawa-Horie style means at small scale are in a loose window") {
    auto m = h3_means(100000, 2);
    // limits are 2 and 4/3; convergence is slow and from below
    CHECK(m.imaginary_mean > 1.5);
    CHECK(m.imaginary_mean < 2.1);
    CHECK(m.real_mean > 1.15);
    CHECK(m.real_mean < 1.4);
}
