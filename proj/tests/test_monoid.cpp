#include <catch2/catch_amalgamated.hpp>

#include "oracle_util.hpp"
#include "sfc/monoid.hpp"

using namespace sfc;

TEST_CASE("transition monoid of simple languages") {
    Alphabet a = Alphabet::of("a");
    Alphabet ab = Alphabet::of("ab");

    SECTION("A* gives the trivial monoid") {
        auto rec = syntactic_morphism(compile_regex("~(0)", ab));
        REQUIRE(rec.morphism.target.n == 1);
        REQUIRE(rec.accepting == std::vector<int>{0});
    }

    SECTION("(aa)* gives Z/2Z") {
        auto rec = syntactic_morphism(compile_regex("(aa)*", a));
        const auto& m = rec.morphism.target;
        REQUIRE(m.n == 2);
        int g = rec.morphism.letter_img[0];
        REQUIRE(g != m.identity);
        REQUIRE(m.mul(g, g) == m.identity);
    }

    SECTION("(ab)* monoid enumerated from the 3-state minimal DFA") {
        // transformations of {L, b(ab)*, sink}: id, a, b, ab, ba and the zero;
        // six in total, all satisfying x^2 = x^3
        auto rec = syntactic_morphism(compile_regex("(ab)*", ab));
        const auto& mo = rec.morphism;
        REQUIRE(mo.target.n == 6);
        int za = mo.of_word("aa");
        REQUIRE(za == mo.of_word("bb"));  // shared zero
        for (int x = 0; x < mo.target.n; ++x)
            REQUIRE(mo.target.mul(za, x) == za);
        for (int x : mo.image_set) {
            int x2 = mo.target.mul(x, x);
            REQUIRE(mo.target.mul(x2, x) == x2);
        }
    }
}

TEST_CASE("recognition is exact") {
    Alphabet ab = Alphabet::of("ab");
    std::mt19937 rng(99);
    auto words = sfc::testing::all_words(ab, 8);
    for (int round = 0; round < 12; ++round) {
        Dfa d = compile(*sfc::testing::random_ast(rng, ab, 3), ab);
        auto rec = syntactic_morphism(d);
        for (const auto& w : words) {
            bool in = std::binary_search(rec.accepting.begin(), rec.accepting.end(),
                                         rec.morphism.of_word(w));
            REQUIRE(in == d.accepts(w));
        }
        REQUIRE(preimage_dfa(rec.morphism, rec.accepting) == minimized(d));
    }
}

TEST_CASE("morphism laws hold on random words") {
    Alphabet ab = Alphabet::of("ab");
    std::mt19937 rng(3);
    auto words = sfc::testing::all_words(ab, 5);
    Dfa d = compile_regex("(ab+ba)*", ab);
    auto rec = syntactic_morphism(d);
    REQUIRE(rec.morphism.of_word("") == rec.morphism.target.identity);
    for (int round = 0; round < 100; ++round) {
        const auto& u = words[rng() % words.size()];
        const auto& v = words[rng() % words.size()];
        REQUIRE(rec.morphism.of_word(u + v) ==
                rec.morphism.target.mul(rec.morphism.of_word(u), rec.morphism.of_word(v)));
    }
}

TEST_CASE("omega powers") {
    Alphabet a = Alphabet::of("a");

    SECTION("trivial monoid") {
        auto rec = syntactic_morphism(dfa_all(a));
        auto w = rec.morphism.target.omega(0);
        REQUIRE(w.exponent == 1);
        REQUIRE(w.omega == 0);
        REQUIRE(w.omega_plus_1 == 0);
    }

    SECTION("Z/2Z generator") {
        auto rec = syntactic_morphism(compile_regex("(aa)*", a));
        const auto& m = rec.morphism.target;
        int g = rec.morphism.letter_img[0];
        auto w = m.omega(g);
        REQUIRE(w.omega == m.identity);
        REQUIRE(w.omega_plus_1 == g);
        REQUIRE(w.exponent == 2);
    }

    SECTION("omega identities on every element") {
        Alphabet ab = Alphabet::of("ab");
        auto rec = syntactic_morphism(compile_regex("(ab)*", ab));
        const auto& m = rec.morphism.target;
        for (int s = 0; s < m.n; ++s) {
            auto w = m.omega(s);
            REQUIRE(m.mul(w.omega, w.omega) == w.omega);
            REQUIRE(m.omega(w.omega).omega == w.omega);
            if (m.is_idempotent(s)) {
                REQUIRE(w.omega == s);
                REQUIRE(w.omega_plus_1 == s);
            }
        }
    }
}

TEST_CASE("product morphisms") {
    Alphabet a = Alphabet::of("a");
    auto even = syntactic_morphism(compile_regex("(aa)*", a));
    auto triv = syntactic_morphism(dfa_all(a));

    SECTION("single part is itself") {
        auto p = product_morphism({even.morphism});
        REQUIRE(p.morphism.target.n == even.morphism.target.n);
    }

    SECTION("two parity parts stay diagonal") {
        auto p = product_morphism({even.morphism, even.morphism});
        REQUIRE(p.morphism.target.n == 2);  // only (k mod 2, k mod 2) reachable
        for (const auto& comp : p.components)
            REQUIRE(comp[0] == comp[1]);
    }

    SECTION("trivial times M is M") {
        auto p = product_morphism({triv.morphism, even.morphism});
        REQUIRE(p.morphism.target.n == 2);
    }

    SECTION("budget guard") {
        REQUIRE_THROWS_AS(product_morphism({even.morphism, even.morphism}, 1), BudgetError);
    }

    SECTION("empty list rejected") {
        REQUIRE_THROWS_AS(product_morphism({}), std::invalid_argument);
    }
}

TEST_CASE("image of a language under a morphism") {
    Alphabet a = Alphabet::of("a");
    auto rec = syntactic_morphism(compile_regex("(aa)*", a));
    int g = rec.morphism.letter_img[0];
    int e = rec.morphism.target.identity;
    REQUIRE(image_of_language(rec.morphism, compile_regex("(aa)*", a)) == std::vector<int>{e});
    REQUIRE(image_of_language(rec.morphism, compile_regex("a(aa)*", a)) == std::vector<int>{g});
    std::vector<int> both{std::min(e, g), std::max(e, g)};
    REQUIRE(image_of_language(rec.morphism, dfa_all(a)) == both);
    REQUIRE(image_of_language(rec.morphism, dfa_empty(a)).empty());
}

TEST_CASE("morphism file round-trip") {
    Alphabet ab = Alphabet::of("ab");
    auto rec = syntactic_morphism(compile_regex("(ab)*", ab));
    MonoidMorphism back = parse_morphism(format_morphism(rec.morphism));
    REQUIRE(back.target.table == rec.morphism.target.table);
    REQUIRE(back.letter_img == rec.morphism.letter_img);

    REQUIRE_THROWS(parse_morphism("classes: 2\nidentity: 0\nletter a -> 1\n"));
}

TEST_CASE("associativity check rejects bad tables") {
    FiniteMonoid bad;
    bad.n = 2;
    bad.identity = 0;
    bad.table = {0, 1, 1, 1};
    REQUIRE_NOTHROW(bad.check());  // this one is fine (right-zero band with 1)
    bad.table = {0, 1, 1, 0};      // Z/2Z, fine too
    REQUIRE_NOTHROW(bad.check());
    bad.identity = 1;
    REQUIRE_THROWS_AS(bad.check(), std::invalid_argument);
}
