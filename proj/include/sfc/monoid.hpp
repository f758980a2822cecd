// monoid.hpp -- finite monoids, morphisms from A*, transition/syntactic
// monoids, omega powers and product morphisms.

#pragma once

#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfc/automata.hpp"

namespace sfc {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FiniteMonoid {
    int n = 0;
    std::vector<int> table;  // row-major n*n
    int identity = 0;

    int mul(int x, int y) const { return table[static_cast<size_t>(x) * n + y]; }

    bool is_idempotent(int x) const { return mul(x, x) == x; }

    // Throws if the table is not an associative monoid with the declared identity.
    void check() const {
        if (n <= 0 || static_cast<int>(table.size()) != n * n)
            throw std::invalid_argument("bad multiplication table size");
        for (int v : table)
            if (v < 0 || v >= n)
                throw std::invalid_argument("table entry out of range");
        for (int x = 0; x < n; ++x)
            if (mul(identity, x) != x || mul(x, identity) != x)
                throw std::invalid_argument("identity law fails");
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (mul(mul(x, y), z) != mul(x, mul(y, z)))
                        throw std::invalid_argument("multiplication not associative");
    }

    struct OmegaInfo {
        int exponent;      // least k >= 1 with s^k idempotent
        int omega;         // s^k
        int omega_plus_1;  // s^k * s
    };

    // Power iteration; every element of a finite monoid has an idempotent power.
    OmegaInfo omega(int s) const {
        int p = s;
        for (int k = 1; k <= n + 1; ++k) {
            if (is_idempotent(p))
                return {k, p, mul(p, s)};
            p = mul(p, s);
        }
        throw std::logic_error("no idempotent power found");
    }

    bool operator==(const FiniteMonoid&) const = default;
};

struct MonoidMorphism {
    Alphabet alphabet;
    FiniteMonoid target;
    std::vector<int> letter_img;          // per alphabet letter
    std::vector<int> image_set;           // sorted; {alpha(w) : w in A*}
    std::vector<std::string> witness;     // shortest witness word per element ("" = unreachable, except identity)

    int of_letter(int a) const { return letter_img[a]; }

    int of_word(std::string_view w) const {
        int m = target.identity;
        for (char c : w) {
            int a = alphabet.index(c);
            if (a < 0)
                throw std::invalid_argument(std::string("letter '") + c + "' outside alphabet");
            m = target.mul(m, letter_img[a]);
        }
        return m;
    }

    bool in_image(int e) const {
        return std::binary_search(image_set.begin(), image_set.end(), e);
    }
};

namespace detail {

// Length-lex BFS over right multiplication by letter images; fills
// image_set and shortest witnesses.
inline void close_image(MonoidMorphism& mo) {
    const int n = mo.target.n;
    mo.witness.assign(n, "");
    std::vector<bool> seen(n, false);
    std::deque<int> queue;
    seen[mo.target.identity] = true;
    queue.push_back(mo.target.identity);
    mo.image_set.clear();
    while (!queue.empty()) {
        int m = queue.front();
        queue.pop_front();
        mo.image_set.push_back(m);
        for (int a = 0; a < mo.alphabet.size(); ++a) {
            int to = mo.target.mul(m, mo.letter_img[a]);
            if (!seen[to]) {
                seen[to] = true;
                mo.witness[to] = mo.witness[m] + mo.alphabet.letter(a);
                queue.push_back(to);
            }
        }
    }
    std::sort(mo.image_set.begin(), mo.image_set.end());
}

}  // namespace detail

// A language given by a morphism and the accepting subset F: L = alpha^{-1}(F).
struct RecognizedLanguage {
    MonoidMorphism morphism;
    std::vector<int> accepting;  // sorted element ids
};

// Transition monoid of a complete DFA; for a minimal DFA this is the
// syntactic morphism of its language (up to isomorphism).
inline RecognizedLanguage transition_monoid(const Dfa& d) {
    const int n = d.num_states();
    const int k = d.alphabet.size();

    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> elems;

    std::vector<int> id_tf(n);
    for (int q = 0; q < n; ++q)
        id_tf[q] = q;
    ids.emplace(id_tf, 0);
    elems.push_back(id_tf);

    std::vector<std::vector<int>> letter_tf(k, std::vector<int>(n));
    for (int a = 0; a < k; ++a)
        for (int q = 0; q < n; ++q)
            letter_tf[a][q] = d.step(q, a);

    // BFS: right-compose with letter transformations
    for (size_t i = 0; i < elems.size(); ++i) {
        for (int a = 0; a < k; ++a) {
            std::vector<int> next(n);
            for (int q = 0; q < n; ++q)
                next[q] = letter_tf[a][elems[i][q]];
            auto [it, fresh] = ids.emplace(next, static_cast<int>(elems.size()));
            if (fresh)
                elems.push_back(std::move(next));
        }
    }

    const int m = static_cast<int>(elems.size());
    FiniteMonoid mon;
    mon.n = m;
    mon.identity = 0;
    mon.table.resize(static_cast<size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            std::vector<int> comp(n);
            for (int q = 0; q < n; ++q)
                comp[q] = elems[y][elems[x][q]];  // apply x, then y
            mon.table[static_cast<size_t>(x) * m + y] = ids.at(comp);
        }

    MonoidMorphism mo;
    mo.alphabet = d.alphabet;
    mo.target = std::move(mon);
    mo.letter_img.resize(k);
    for (int a = 0; a < k; ++a)
        mo.letter_img[a] = ids.at(letter_tf[a]);
    detail::close_image(mo);

    std::vector<int> acc;
    for (int x = 0; x < m; ++x)
        if (d.accepting[elems[x][d.initial]])
            acc.push_back(x);
    return {std::move(mo), std::move(acc)};
}

inline RecognizedLanguage syntactic_morphism(const Dfa& d) {
    return transition_monoid(minimized(d));
}

// DFA of alpha^{-1}(F): states are the image elements, edges are right
// multiplication by letter images.
inline Dfa preimage_dfa(const MonoidMorphism& mo, const std::vector<int>& accepting) {
    const int k = mo.alphabet.size();
    std::vector<int> remap(mo.target.n, -1);
    for (size_t i = 0; i < mo.image_set.size(); ++i)
        remap[mo.image_set[i]] = static_cast<int>(i);

    Dfa d;
    d.alphabet = mo.alphabet;
    d.accepting.assign(mo.image_set.size(), false);
    for (int e : accepting)
        if (e >= 0 && e < mo.target.n && remap[e] >= 0)
            d.accepting[remap[e]] = true;
    d.trans.resize(mo.image_set.size() * k);
    for (size_t i = 0; i < mo.image_set.size(); ++i)
        for (int a = 0; a < k; ++a)
            d.trans[i * k + a] = remap[mo.target.mul(mo.image_set[i], mo.letter_img[a])];
    d.initial = remap[mo.target.identity];
    return minimized(d);
}

// Image set {alpha(w) : w in L} for a regular L over the same alphabet.
inline std::vector<int> image_of_language(const MonoidMorphism& mo, const Dfa& lang) {
    if (lang.alphabet != mo.alphabet)
        throw std::invalid_argument("alphabet mismatch");
    const int k = mo.alphabet.size();
    std::set<std::pair<int, int>> seen;  // (dfa state, monoid element)
    std::vector<std::pair<int, int>> stack{{lang.initial, mo.target.identity}};
    seen.insert(stack[0]);
    std::set<int> out;
    while (!stack.empty()) {
        auto [q, m] = stack.back();
        stack.pop_back();
        if (lang.accepting[q])
            out.insert(m);
        for (int a = 0; a < k; ++a) {
            std::pair<int, int> next{lang.step(q, a), mo.target.mul(m, mo.letter_img[a])};
            if (seen.insert(next).second)
                stack.push_back(next);
        }
    }
    return {out.begin(), out.end()};
}

// Direct product of morphisms, restricted to the reachable elements
// (plus the identity tuple). Components stay recoverable per element.
struct ProductMorphism {
    MonoidMorphism morphism;
    std::vector<std::vector<int>> components;  // per element, one id per part
};

inline ProductMorphism product_morphism(const std::vector<MonoidMorphism>& parts,
                                        int budget = 0) {
    if (parts.empty())
        throw std::invalid_argument("empty morphism list");
    const Alphabet& alpha = parts[0].alphabet;
    for (const auto& p : parts)
        if (p.alphabet != alpha)
            throw std::invalid_argument("alphabet mismatch");
    const int k = alpha.size();
    const size_t np = parts.size();

    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<int>> elems;
    std::vector<int> unit(np);
    for (size_t i = 0; i < np; ++i)
        unit[i] = parts[i].target.identity;
    ids.emplace(unit, 0);
    elems.push_back(unit);

    for (size_t i = 0; i < elems.size(); ++i)
        for (int a = 0; a < k; ++a) {
            std::vector<int> next(np);
            for (size_t j = 0; j < np; ++j)
                next[j] = parts[j].target.mul(elems[i][j], parts[j].letter_img[a]);
            auto [it, fresh] = ids.emplace(next, static_cast<int>(elems.size()));
            if (fresh) {
                elems.push_back(std::move(next));
                if (budget > 0 && static_cast<int>(elems.size()) > budget)
                    throw BudgetError("product monoid exceeds budget of " +
                                      std::to_string(budget) + " elements");
            }
        }

    // The reachable set is the image submonoid: it is closed under products.
    const int m = static_cast<int>(elems.size());
    FiniteMonoid mon;
    mon.n = m;
    mon.identity = 0;
    mon.table.resize(static_cast<size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            std::vector<int> prod(np);
            for (size_t j = 0; j < np; ++j)
                prod[j] = parts[j].target.mul(elems[x][j], elems[y][j]);
            auto it = ids.find(prod);
            if (it == ids.end())
                throw std::logic_error("image submonoid not closed");
            mon.table[static_cast<size_t>(x) * m + y] = it->second;
        }

    MonoidMorphism mo;
    mo.alphabet = alpha;
    mo.target = std::move(mon);
    mo.letter_img.resize(k);
    for (int a = 0; a < k; ++a) {
        std::vector<int> img(np);
        for (size_t j = 0; j < np; ++j)
            img[j] = parts[j].letter_img[a];
        mo.letter_img[a] = ids.at(img);
    }
    detail::close_image(mo);
    return {std::move(mo), std::move(elems)};
}

// Is every reachable element of the product actually a word image?  Holds by
// construction (we only generate by letters); kept for documentation.

// Monoid/morphism file format:
//   classes: n
//   identity: i
//   letter a -> i
//   mult i j -> k
inline std::string format_morphism(const MonoidMorphism& mo) {
    std::ostringstream os;
    os << "classes: " << mo.target.n << "\n";
    os << "identity: " << mo.target.identity << "\n";
    for (int a = 0; a < mo.alphabet.size(); ++a)
        os << "letter " << mo.alphabet.letter(a) << " -> " << mo.letter_img[a] << "\n";
    for (int x = 0; x < mo.target.n; ++x)
        for (int y = 0; y < mo.target.n; ++y)
            os << "mult " << x << ' ' << y << " -> " << mo.target.mul(x, y) << "\n";
    return os.str();
}

inline MonoidMorphism parse_morphism(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    int n = -1, identity = -1;
    std::vector<std::pair<char, int>> letters;
    std::vector<std::array<int, 3>> mults;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key.empty() || key[0] == '#')
            continue;
        if (key == "classes:") {
            ls >> n;
        } else if (key == "identity:") {
            ls >> identity;
        } else if (key == "letter") {
            char a;
            std::string arrow;
            int img;
            if (!(ls >> a >> arrow >> img) || arrow != "->")
                throw std::invalid_argument("bad letter line: " + line);
            letters.push_back({a, img});
        } else if (key == "mult") {
            int x, y, z;
            std::string arrow;
            if (!(ls >> x >> y >> arrow >> z) || arrow != "->")
                throw std::invalid_argument("bad mult line: " + line);
            mults.push_back({x, y, z});
        } else {
            throw std::invalid_argument("bad morphism line: " + line);
        }
    }
    if (n <= 0 || identity < 0 || identity >= n || letters.empty())
        throw std::invalid_argument("morphism file missing classes/identity/letters");
    FiniteMonoid mon;
    mon.n = n;
    mon.identity = identity;
    mon.table.assign(static_cast<size_t>(n) * n, -1);
    for (auto [x, y, z] : mults) {
        if (x < 0 || x >= n || y < 0 || y >= n || z < 0 || z >= n)
            throw std::invalid_argument("mult entry out of range");
        mon.table[static_cast<size_t>(x) * n + y] = z;
    }
    for (int v : mon.table)
        if (v < 0)
            throw std::invalid_argument("multiplication table not total");
    mon.check();

    std::string chars;
    for (auto [a, img] : letters)
        chars.push_back(a);
    MonoidMorphism mo;
    mo.alphabet = Alphabet::of(chars);
    mo.letter_img.resize(mo.alphabet.size());
    for (auto [a, img] : letters) {
        if (img < 0 || img >= n)
            throw std::invalid_argument("letter image out of range");
        mo.letter_img[mo.alphabet.index(a)] = img;
    }
    mo.target = std::move(mon);
    detail::close_image(mo);
    return mo;
}

// Debug dump: multiplication table as an integer grid, elements named by
// their shortest witness word.
inline std::string dump_monoid(const MonoidMorphism& mo) {
    std::ostringstream os;
    auto name = [&](int e) -> std::string {
        if (e == mo.target.identity)
            return "1";
        return mo.witness[e].empty() ? "#" + std::to_string(e) : mo.witness[e];
    };
    os << "elements:";
    for (int e : mo.image_set)
        os << ' ' << name(e);
    os << "\n";
    for (int x : mo.image_set) {
        for (int y : mo.image_set)
            os << name(mo.target.mul(x, y)) << '\t';
        os << "\n";
    }
    return os.str();
}

}  // namespace sfc
