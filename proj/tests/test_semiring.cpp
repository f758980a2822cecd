#include <catch2/catch_amalgamated.hpp>

#include "oracle_util.hpp"
#include "sfc/semiring.hpp"

using namespace sfc;

namespace {

CanonicalRating parity_rating() {
    Alphabet a = Alphabet::of("a");
    auto even = syntactic_morphism(compile_regex("(aa)*", a));
    auto odd = syntactic_morphism(compile_regex("a(aa)*", a));
    return canonical_rating_map({even, odd});
}

}  // namespace

TEST_CASE("powerset semiring basics") {
    Alphabet a = Alphabet::of("a");

    SECTION("trivial monoid gives the 2-element semiring") {
        auto rec = syntactic_morphism(dfa_all(a));
        PowersetSemiring r(rec.morphism.target);
        REQUIRE(r.bits() == 1);
        REQUIRE(r.zero() != r.one());
        check_powerset_axioms(r);
    }

    SECTION("Z/2Z: 4 elements, {g}{g} = {e}") {
        auto rec = syntactic_morphism(compile_regex("(aa)*", a));
        PowersetSemiring r(rec.morphism.target);
        REQUIRE(r.bits() == 2);
        int g = rec.morphism.letter_img[0];
        REQUIRE(r.mul(r.singleton(g), r.singleton(g)) ==
                r.singleton(rec.morphism.target.identity));
        check_powerset_axioms(r);
        // zero annihilates
        DynBitset full = r.add(r.one(), r.singleton(g));
        REQUIRE(r.mul(r.zero(), full) == r.zero());
    }

    SECTION("axioms on the (ab)* monoid, checked exhaustively") {
        Alphabet ab = Alphabet::of("ab");
        auto rec = syntactic_morphism(compile_regex("(ab)*", ab));
        PowersetSemiring r(rec.morphism.target);
        check_powerset_axioms(r, 6);
    }
}

TEST_CASE("canonical rating map") {
    auto cr = parity_rating();
    REQUIRE(cr.alpha.target.n == 2);  // both parts recognized by parity
    REQUIRE(cr.accepting[0] != cr.accepting[1]);
    REQUIRE(cr.accepting[0].size() == 1);
    REQUIRE(cr.accepting[1].size() == 1);

    SECTION("single language A*") {
        Alphabet a = Alphabet::of("a");
        auto all = syntactic_morphism(dfa_all(a));
        auto cr1 = canonical_rating_map({all});
        REQUIRE(cr1.alpha.target.n == 1);
        REQUIRE(evaluate(cr1.rho, dfa_all(a)) == cr1.semiring->one());
        REQUIRE(evaluate(cr1.rho, dfa_empty(a)) == cr1.semiring->zero());
    }
}

TEST_CASE("evaluate") {
    auto cr = parity_rating();
    Alphabet a = Alphabet::of("a");
    int e = cr.alpha.target.identity;

    REQUIRE(evaluate(cr.rho, compile_regex("(aa)*", a)) == cr.semiring->singleton(e));
    REQUIRE(evaluate(cr.rho, dfa_epsilon(a)) == cr.semiring->one());
    REQUIRE(evaluate(cr.rho, dfa_empty(a)) == cr.semiring->zero());
    REQUIRE(evaluate(cr.rho, dfa_all(a)).count() == 2);
}

TEST_CASE("evaluate is additive and multiplicative on random regexes") {
    Alphabet ab = Alphabet::of("ab");
    auto abstar = syntactic_morphism(compile_regex("(ab)*", ab));
    auto aa = syntactic_morphism(compile_regex("~(0)aa~(0)", ab));
    auto cr = canonical_rating_map({abstar, aa});
    std::mt19937 rng(2026);
    for (int round = 0; round < 25; ++round) {
        Dfa l = compile(*sfc::testing::random_ast(rng, ab, 3), ab);
        Dfa r = compile(*sfc::testing::random_ast(rng, ab, 3), ab);
        REQUIRE(evaluate(cr.rho, unite(l, r)) ==
                cr.semiring->add(evaluate(cr.rho, l), evaluate(cr.rho, r)));
        REQUIRE(evaluate(cr.rho, concat(l, r)) ==
                cr.semiring->mul(evaluate(cr.rho, l), evaluate(cr.rho, r)));
    }
}

TEST_CASE("downclose and cover imprints") {
    auto cr = parity_rating();
    Alphabet a = Alphabet::of("a");
    int e = cr.alpha.target.identity;
    int g = cr.alpha.letter_img[0];

    REQUIRE(downclose({}).empty());

    SECTION("cover {A*} has full imprint") {
        Antichain im = imprint_of_cover({dfa_all(a)}, cr.rho);
        auto members = enumerate_downset(im, cr.semiring->bits());
        REQUIRE(members.size() == 4);  // all subsets of {e, g}
    }

    SECTION("cover {(aa)*, a(aa)*} splits parity") {
        Antichain im =
            imprint_of_cover({compile_regex("(aa)*", a), compile_regex("a(aa)*", a)}, cr.rho);
        REQUIRE(im.contains(cr.semiring->singleton(e)));
        REQUIRE(im.contains(cr.semiring->singleton(g)));
        REQUIRE(!im.contains(cr.semiring->add(cr.semiring->singleton(e),
                                              cr.semiring->singleton(g))));
    }
}

TEST_CASE("antichain behaviour") {
    auto cr = parity_rating();
    const auto& r = *cr.semiring;
    int g = cr.alpha.letter_img[0];

    Antichain a;
    REQUIRE(a.insert(r.singleton(g)));
    REQUIRE(!a.insert(r.zero()));           // dominated
    REQUIRE(a.insert(r.one()));             // incomparable
    REQUIRE(a.size() == 2);
    REQUIRE(a.insert(r.add(r.one(), r.singleton(g))));  // dominates both
    REQUIRE(a.size() == 1);
    REQUIRE(a.contains(r.zero()));
    REQUIRE(a.contains(r.one()));
}

TEST_CASE("omega sums in the powerset semiring") {
    auto cr = parity_rating();
    const auto& r = *cr.semiring;
    int g = cr.alpha.letter_img[0];

    // {g}^omega = {e}, {g}^{omega+1} = {g}: sum is {e,g}
    REQUIRE(r.omega_sum(r.singleton(g)) == r.add(r.one(), r.singleton(g)));
    // idempotents are their own omega sums
    REQUIRE(r.omega_sum(r.one()) == r.one());
    REQUIRE(r.omega_sum(r.zero()) == r.zero());
}

TEST_CASE("rating values stabilize regardless of enumeration cutoffs") {
    // evaluate() works on the reachable value graph; check against the
    // word-sum definition on increasing cutoffs
    auto cr = parity_rating();
    Alphabet a = Alphabet::of("a");
    Dfa K = compile_regex("a(aa)*+aaaa", a);
    DynBitset direct = cr.semiring->zero();
    for (const auto& w : enumerate(K, 9))
        direct = cr.semiring->add(direct, cr.rho.of_word(w));
    REQUIRE(evaluate(cr.rho, K) == direct);
}
