#include <catch2/catch_amalgamated.hpp>

#include "oracle_util.hpp"
#include "sfc/automata.hpp"

using namespace sfc;

TEST_CASE("regex parsing") {
    Alphabet ab = Alphabet::of("ab");

    auto e = parse_regex("(ab)*", ab);
    REQUIRE(e->kind == RegexAst::Kind::star);
    REQUIRE(e->left->kind == RegexAst::Kind::concat);
    REQUIRE(e->left->left->letter == 'a');
    REQUIRE(e->left->right->letter == 'b');

    auto full = parse_regex("~(0)", ab);
    REQUIRE(full->kind == RegexAst::Kind::complement);
    REQUIRE(full->left->kind == RegexAst::Kind::empty);
    REQUIRE(is_universal(compile(*full, ab)));

    SECTION("unbalanced parenthesis reports the open position") {
        try {
            parse_regex("(a(b", ab);
            FAIL("expected ParseError");
        } catch (const ParseError& err) {
            REQUIRE(err.offset == 3);  // 1-based offset of the unclosed '('
        }
    }

    SECTION("letter outside alphabet") {
        REQUIRE_THROWS_AS(parse_regex("ac", ab), ParseError);
    }
}

TEST_CASE("compile basics") {
    Alphabet a = Alphabet::of("a");
    Alphabet ab = Alphabet::of("ab");

    Dfa empty = compile_regex("0", ab);
    REQUIRE(empty.num_states() == 1);
    REQUIRE(is_empty(empty));

    // (aa)* over {a}: parity of length, even accepting
    Dfa even = compile_regex("(aa)*", a);
    REQUIRE(even.num_states() == 2);
    REQUIRE(even.accepting[even.initial]);
    REQUIRE(even.accepts(""));
    REQUIRE(!even.accepts("a"));
    REQUIRE(even.accepts("aa"));

    Dfa all = compile_regex("~(0)", ab);
    REQUIRE(all.num_states() == 1);
    REQUIRE(all.accepting[0]);

    // compiled DFAs are already minimal: re-minimizing is the identity
    REQUIRE(minimized(even) == even);
    REQUIRE(minimized(all) == all);
}

TEST_CASE("boolean operations") {
    Alphabet a = Alphabet::of("a");
    Dfa even = compile_regex("(aa)*", a);
    Dfa odd = compile_regex("a(aa)*", a);

    REQUIRE(complement(even) == odd);
    REQUIRE(intersect(even, dfa_all(a)) == even);
    REQUIRE(unite(even, dfa_empty(a)) == even);
    REQUIRE(is_empty(intersect(even, odd)));

    SECTION("alphabet mismatch is rejected") {
        Dfa other = compile_regex("b*", Alphabet::of("b"));
        REQUIRE_THROWS_AS(intersect(even, other), std::invalid_argument);
    }
}

TEST_CASE("quotients") {
    Alphabet a = Alphabet::of("a");
    Alphabet ab = Alphabet::of("ab");
    Dfa even = compile_regex("(aa)*", a);
    Dfa odd = compile_regex("a(aa)*", a);

    REQUIRE(quotient(QuotientSide::left, "a", even) == odd);
    REQUIRE(quotient(QuotientSide::left, "", even) == even);

    Dfa abstar = compile_regex("(ab)*", ab);
    Dfa abstar_a = compile_regex("(ab)*a", ab);
    REQUIRE(quotient(QuotientSide::right, "b", abstar) == abstar_a);
}

TEST_CASE("emptiness and enumeration") {
    Alphabet a = Alphabet::of("a");
    Alphabet ab = Alphabet::of("ab");

    REQUIRE(is_empty(intersect(compile_regex("(aa)*", a), compile_regex("a(aa)*", a))));

    Dfa abstar = compile_regex("(ab)*", ab);
    REQUIRE(enumerate(abstar, 4) == std::vector<std::string>{"", "ab", "abab"});
    REQUIRE(enumerate(dfa_empty(ab), 10).empty());

    REQUIRE(shortest_word(abstar) == std::string(""));
    REQUIRE(shortest_word(compile_regex("a(aa)*", a)) == std::string("a"));
    REQUIRE(!shortest_word(dfa_empty(ab)).has_value());
}

TEST_CASE("dfa file format round-trip") {
    Alphabet ab = Alphabet::of("ab");
    Dfa d = compile_regex("(ab+ba)*", ab);
    Dfa back = parse_dfa(format_dfa(d));
    REQUIRE(back == d);
    REQUIRE_THROWS(parse_dfa("alphabet: ab\nstates: 1\ninitial: 0\naccepting: 0\n"));
}

TEST_CASE("compiled language agrees with AST semantics on random regexes") {
    Alphabet ab = Alphabet::of("ab");
    std::mt19937 rng(20260810);
    auto words = sfc::testing::all_words(ab, 6);
    for (int round = 0; round < 60; ++round) {
        RegexPtr e = sfc::testing::random_ast(rng, ab, 3);
        Dfa d = compile(*e, ab);
        for (const auto& w : words) {
            INFO("round " << round << " word '" << w << "'");
            REQUIRE(d.accepts(w) == sfc::testing::ast_matches(*e, w));
        }
    }
}

TEST_CASE("De Morgan on random pairs") {
    Alphabet ab = Alphabet::of("ab");
    std::mt19937 rng(42);
    for (int round = 0; round < 30; ++round) {
        Dfa l = compile(*sfc::testing::random_ast(rng, ab, 3), ab);
        Dfa r = compile(*sfc::testing::random_ast(rng, ab, 3), ab);
        REQUIRE(complement(unite(l, r)) == intersect(complement(l), complement(r)));
    }
}

TEST_CASE("left quotient composes") {
    Alphabet ab = Alphabet::of("ab");
    std::mt19937 rng(7);
    auto words = sfc::testing::all_words(ab, 3);
    for (int round = 0; round < 20; ++round) {
        Dfa d = compile(*sfc::testing::random_ast(rng, ab, 3), ab);
        const std::string& v = words[rng() % words.size()];
        const std::string& w = words[rng() % words.size()];
        REQUIRE(quotient_left(w, quotient_left(v, d)) == quotient_left(v + w, d));
    }
}
