// baseclass.hpp -- the parameter class C.  Finite quotient-closed Boolean
// algebras come in as a canonical congruence morphism onto A*/~C; classes of
// group languages come in as an oracle deciding whether {epsilon} is
// C-separable from a regular language.  Ships TRIV, user-supplied finite
// classes (also length-mod-m helpers) and MOD.

#pragma once

#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "sfc/automata.hpp"
#include "sfc/monoid.hpp"

namespace sfc {

struct BaseClass {
    enum class Kind { finite, group };

    Kind kind;
    std::string name;

    // finite kind: canonical morphism onto A*/~C (surjective by construction)
    MonoidMorphism canon;

    // group kind: true iff {epsilon} is C-separable from the argument
    std::function<bool(const Dfa&)> eps_separable;

    bool is_finite() const { return kind == Kind::finite; }

    int class_count() const { return canon.target.n; }

    int class_of(std::string_view w) const { return canon.of_word(w); }

    // [u][v] = [uv]
    int class_mul(int c, int d) const { return canon.target.mul(c, d); }

    bool class_idempotent(int c) const { return canon.target.is_idempotent(c); }

    // DFA of the union of the given ~C-classes (a language of C)
    Dfa class_language(const std::vector<int>& classes) const {
        return preimage_dfa(canon, classes);
    }
};

// Restricts a candidate congruence morphism to its reachable quotient; the
// result is surjective, as the canonical morphism must be.
inline BaseClass finite_from_morphism(const MonoidMorphism& canon) {
    if (static_cast<int>(canon.image_set.size()) == canon.target.n)
        return {BaseClass::Kind::finite, "finite", canon, nullptr};

    std::vector<int> remap(canon.target.n, -1);
    for (size_t i = 0; i < canon.image_set.size(); ++i)
        remap[canon.image_set[i]] = static_cast<int>(i);
    FiniteMonoid m;
    m.n = static_cast<int>(canon.image_set.size());
    m.identity = remap[canon.target.identity];
    m.table.resize(static_cast<size_t>(m.n) * m.n);
    for (int x = 0; x < m.n; ++x)
        for (int y = 0; y < m.n; ++y)
            m.table[static_cast<size_t>(x) * m.n + y] =
                remap[canon.target.mul(canon.image_set[x], canon.image_set[y])];
    MonoidMorphism mo;
    mo.alphabet = canon.alphabet;
    mo.target = std::move(m);
    mo.letter_img.resize(canon.alphabet.size());
    for (int a = 0; a < canon.alphabet.size(); ++a)
        mo.letter_img[a] = remap[canon.letter_img[a]];
    detail::close_image(mo);
    return {BaseClass::Kind::finite, "finite", std::move(mo), nullptr};
}

// TRIV = {empty, A*}: one-class quotient.
inline BaseClass triv(const Alphabet& alpha) {
    MonoidMorphism mo;
    mo.alphabet = alpha;
    mo.target = FiniteMonoid{1, {0}, 0};
    mo.letter_img.assign(alpha.size(), 0);
    detail::close_image(mo);
    BaseClass c = finite_from_morphism(mo);
    c.name = "triv";
    return c;
}

// Finite class of the congruence |u| = |v| mod m.
inline BaseClass length_mod(const Alphabet& alpha, int m) {
    if (m <= 0)
        throw std::invalid_argument("modulus must be positive");
    FiniteMonoid mon;
    mon.n = m;
    mon.identity = 0;
    mon.table.resize(static_cast<size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            mon.table[static_cast<size_t>(x) * m + y] = (x + y) % m;
    MonoidMorphism mo;
    mo.alphabet = alpha;
    mo.target = std::move(mon);
    mo.letter_img.assign(alpha.size(), 1 % m);
    detail::close_image(mo);
    BaseClass c = finite_from_morphism(mo);
    c.name = "mod" + std::to_string(m);
    return c;
}

// ---------------------------------------------------------------------------
// MOD: Boolean combinations of {w : |w| = k mod m}.

// The set {|w| : w in L} as an eventually periodic structure: the sporadic
// lengths below `threshold` plus, for each j in `residues`, the arithmetic
// progression threshold + j + k*cycle (k >= 0).
struct LengthLasso {
    int threshold = 0;
    int cycle = 1;
    std::vector<int> sporadic;  // lengths < threshold
    std::vector<int> residues;  // offsets j in [0, cycle)
};

inline LengthLasso length_lasso(const Dfa& d) {
    const int n = d.num_states();
    const int k = d.alphabet.size();
    std::map<std::vector<bool>, int> seen;
    std::vector<std::vector<bool>> frontier;
    std::vector<bool> cur(n, false);
    cur[d.initial] = true;

    int start, at = 0;
    for (;;) {
        auto [it, fresh] = seen.emplace(cur, at);
        if (!fresh) {
            start = it->second;
            break;
        }
        frontier.push_back(cur);
        std::vector<bool> next(n, false);
        for (int q = 0; q < n; ++q)
            if (cur[q])
                for (int a = 0; a < k; ++a)
                    next[d.step(q, a)] = true;
        cur = std::move(next);
        ++at;
    }

    auto hits = [&](const std::vector<bool>& s) {
        for (int q = 0; q < n; ++q)
            if (s[q] && d.accepting[q])
                return true;
        return false;
    };

    LengthLasso out;
    out.threshold = start;
    out.cycle = at - start;
    for (int len = 0; len < start; ++len)
        if (hits(frontier[len]))
            out.sporadic.push_back(len);
    for (int j = 0; j < out.cycle; ++j)
        if (hits(frontier[start + j]))
            out.residues.push_back(j);
    return out;
}

// Exact test: is there some K in MOD with epsilon in K and K cap L empty?
// Any MOD language containing epsilon contains a whole residue-0 class, so
// this reduces to finding a modulus whose multiples all miss the length set
// of L.  With the lasso (t, c): a modulus exists iff 0 is not a length and
// either the length set is finite (exceed its maximum) or some divisor g of
// c has (t + j) mod g != 0 for every residue j.
inline bool mod_eps_separable(const Dfa& L) {
    if (L.accepting[L.initial])
        return false;  // epsilon in L defeats every modulus
    LengthLasso lasso = length_lasso(L);
    for (int len : lasso.sporadic)
        if (len == 0)
            return false;
    if (lasso.residues.empty())
        return true;  // finitely many lengths; any large enough modulus works
    for (int g = 1; g <= lasso.cycle; ++g) {
        if (lasso.cycle % g != 0)
            continue;
        bool ok = true;
        for (int j : lasso.residues)
            if ((lasso.threshold + j) % g == 0) {
                ok = false;
                break;
            }
        if (ok)
            return true;  // a multiple of g avoiding the sporadic part exists
    }
    return false;
}

inline BaseClass mod_class(const Alphabet& alpha) {
    BaseClass c;
    c.kind = BaseClass::Kind::group;
    c.name = "mod";
    c.canon.alphabet = alpha;
    c.eps_separable = [](const Dfa& L) { return mod_eps_separable(L); };
    return c;
}

inline BaseClass parse_finite_class(std::string_view text) {
    BaseClass c = finite_from_morphism(parse_morphism(text));
    return c;
}

}  // namespace sfc
