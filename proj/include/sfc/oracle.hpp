// oracle.hpp -- deliberately naive brute-force checks and seeded corpus
// generators.  These share no code with the engines they cross-check.

#pragma once

#include <random>
#include <vector>

#include "sfc/automata.hpp"
#include "sfc/monoid.hpp"

namespace sfc {

// K separates L1 from L2: L1 subseteq K and K cap L2 = empty.
inline bool verify_separator(const Dfa& K, const Dfa& L1, const Dfa& L2) {
    return subset_of(L1, K) && is_empty(intersect(K, L2));
}

// Exists m <= mmax with L cap (A^m)* = empty, by direct product emptiness.
inline bool brute_mod_eps_separable(const Dfa& L, int mmax) {
    Dfa a_any = dfa_empty(L.alphabet);
    {
        // A as a DFA
        Dfa d;
        d.alphabet = L.alphabet;
        d.accepting = {false, true, false};
        d.trans.assign(3 * static_cast<size_t>(L.alphabet.size()), 2);
        for (int i = 0; i < L.alphabet.size(); ++i)
            d.trans[i] = 1;
        a_any = minimized(d);
    }
    for (int m = 1; m <= mmax; ++m) {
        Dfa multiples = star(pow(a_any, m));
        if (is_empty(intersect(L, multiples)))
            return true;
    }
    return false;
}

// Every element satisfies s^omega = s^{omega+1}, by direct power iteration.
inline bool brute_aperiodic(const FiniteMonoid& m) {
    for (int s = 0; s < m.n; ++s) {
        // find the idempotent power without the omega() helper
        int p = s;
        int steps = 0;
        while (m.mul(p, p) != p && steps++ <= m.n + 1)
            p = m.mul(p, s);
        if (m.mul(p, s) != p)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Seeded corpora.  Raw rng() arithmetic keeps results identical across
// standard library implementations.

struct CorpusParams {
    uint64_t seed = 1;
    int count = 100;
    int max_states = 4;
    int alphabet_size = 2;
};

inline Dfa random_dfa(std::mt19937_64& rng, const Alphabet& alpha, int max_states) {
    int n = 1 + static_cast<int>(rng() % max_states);
    Dfa d;
    d.alphabet = alpha;
    d.initial = 0;
    d.accepting.resize(n);
    d.trans.resize(static_cast<size_t>(n) * alpha.size());
    for (int q = 0; q < n; ++q) {
        d.accepting[q] = rng() % 2 == 0;
        for (int a = 0; a < alpha.size(); ++a)
            d.trans[static_cast<size_t>(q) * alpha.size() + a] = static_cast<int>(rng() % n);
    }
    return minimized(d);
}

inline std::vector<Dfa> random_dfas(const CorpusParams& p) {
    Alphabet alpha = Alphabet::of(std::string("abcdefgh").substr(0, p.alphabet_size));
    std::mt19937_64 rng(p.seed);
    std::vector<Dfa> out;
    out.reserve(p.count);
    for (int i = 0; i < p.count; ++i)
        out.push_back(random_dfa(rng, alpha, p.max_states));
    return out;
}

// Unary-length structures for exercising the MOD separability oracle.
inline std::vector<Dfa> random_unary_dfas(uint64_t seed, int count, int max_states = 7) {
    Alphabet a = Alphabet::of("a");
    std::mt19937_64 rng(seed);
    std::vector<Dfa> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.push_back(random_dfa(rng, a, max_states));
    return out;
}

}  // namespace sfc
