// semiring.hpp -- finite idempotent semirings and nice multiplicative rating
// maps.  The shipped rating sets are powerset semirings 2^M over a finite
// monoid: addition is union (zero = {}), multiplication is the lifted monoid
// product (unit = {1_M}), the canonical order is inclusion.  Elements are bit
// sets over M.
//
// Downward-closed subsets of 2^M (imprints, saturation rows) are held as
// antichains of maximal elements; all the closure rules are monotone for
// inclusion, so working with maxima is lossless.

#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sfc/automata.hpp"
#include "sfc/monoid.hpp"

namespace sfc {

// Bit set over a fixed universe; all operands of one semiring share a width.
struct DynBitset {
    std::vector<uint64_t> w;

    static DynBitset empty(int bits) {
        return DynBitset{std::vector<uint64_t>((bits + 63) / 64, 0)};
    }
    void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    bool none() const {
        for (uint64_t x : w)
            if (x)
                return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (uint64_t x : w)
            c += __builtin_popcountll(x);
        return c;
    }
    bool subset_of(const DynBitset& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i])
                return false;
        return true;
    }
    bool intersects(const DynBitset& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & o.w[i])
                return true;
        return false;
    }
    DynBitset operator|(const DynBitset& o) const {
        DynBitset r = *this;
        for (size_t i = 0; i < w.size(); ++i)
            r.w[i] |= o.w[i];
        return r;
    }
    template <class Fn>
    void for_each(Fn fn) const {
        for (size_t i = 0; i < w.size(); ++i)
            for (uint64_t x = w[i]; x; x &= x - 1)
                fn(static_cast<int>(i * 64 + __builtin_ctzll(x)));
    }
    auto operator<=>(const DynBitset&) const = default;
};

// 2^M for a finite monoid M.
class PowersetSemiring {
public:
    using Elem = DynBitset;

    explicit PowersetSemiring(FiniteMonoid m)
        : monoid_(std::move(m)), words_((monoid_.n + 63) / 64) {}

    const FiniteMonoid& monoid() const { return monoid_; }
    int bits() const { return monoid_.n; }

    Elem zero() const { return DynBitset::empty(monoid_.n); }
    Elem one() const { return singleton(monoid_.identity); }
    Elem singleton(int m) const {
        Elem e = zero();
        e.set(m);
        return e;
    }

    Elem add(const Elem& a, const Elem& b) const { return a | b; }

    Elem mul(const Elem& a, const Elem& b) const {
        Elem r = zero();
        a.for_each([&](int x) {
            b.for_each([&](int y) { r.set(monoid_.mul(x, y)); });
        });
        return r;
    }

    // canonical order r <= s iff r + s = s, i.e. inclusion
    bool leq(const Elem& a, const Elem& b) const { return a.subset_of(b); }

    // X^omega + X^{omega+1}, with the idempotent power found per element by
    // cycle detection on X, X^2, ...
    Elem omega_sum(const Elem& x) const {
        Elem p = x;
        for (int k = 1; k <= (1 << 20); ++k) {
            if (mul(p, p) == p)
                return add(p, mul(p, x));
            p = mul(p, x);
        }
        throw std::logic_error("no idempotent power");
    }

    std::string to_string(const Elem& e, const MonoidMorphism* names = nullptr) const {
        std::ostringstream os;
        os << '{';
        bool first = true;
        e.for_each([&](int m) {
            if (!first)
                os << ',';
            first = false;
            if (names) {
                if (m == names->target.identity)
                    os << "1";
                else if (!names->witness[m].empty())
                    os << names->witness[m];
                else
                    os << '#' << m;
            } else {
                os << m;
            }
        });
        os << '}';
        return os.str();
    }

private:
    FiniteMonoid monoid_;
    int words_;
};

// ---------------------------------------------------------------------------
// Antichains of maximal elements, standing for downward-closed subsets of R.

struct Antichain {
    std::vector<DynBitset> elems;  // sorted, pairwise incomparable

    bool contains(const DynBitset& x) const {
        for (const auto& e : elems)
            if (x.subset_of(e))
                return true;
        return false;
    }

    // returns true if x enlarged the downward closure
    bool insert(const DynBitset& x) {
        if (contains(x))
            return false;
        std::erase_if(elems, [&](const DynBitset& e) { return e.subset_of(x); });
        elems.insert(std::lower_bound(elems.begin(), elems.end(), x), x);
        return true;
    }

    bool insert_all(const Antichain& o) {
        bool grew = false;
        for (const auto& e : o.elems)
            grew = insert(e) || grew;
        return grew;
    }

    size_t size() const { return elems.size(); }
    bool empty() const { return elems.empty(); }

    auto operator<=>(const Antichain&) const = default;
};

inline Antichain downclose(const std::vector<DynBitset>& xs) {
    Antichain a;
    for (const auto& x : xs)
        a.insert(x);
    return a;
}

// Explicit members of the downward closure; test helper, exponential in the
// element sizes, so guarded.
inline std::vector<DynBitset> enumerate_downset(const Antichain& a, int bits,
                                                size_t limit = 1 << 20) {
    std::set<DynBitset> out;
    for (const auto& e : a.elems) {
        std::vector<int> members;
        e.for_each([&](int i) { members.push_back(i); });
        if (members.size() > 20)
            throw std::invalid_argument("downset too large to enumerate");
        for (uint64_t mask = 0; mask < (uint64_t(1) << members.size()); ++mask) {
            DynBitset s = DynBitset::empty(bits);
            for (size_t i = 0; i < members.size(); ++i)
                if ((mask >> i) & 1)
                    s.set(members[i]);
            out.insert(s);
            if (out.size() > limit)
                throw std::invalid_argument("downset too large to enumerate");
        }
    }
    if (a.elems.empty())
        return {};
    return {out.begin(), out.end()};
}

// Downward-closed subsets of R as a semiring of their own: addition is
// union, multiplication is lifted elementwise.  This is the rating set 2^R
// of the auxiliary maps eta_{rho,S}, represented up to downward closure
// in R (sound: every consumer of these values is monotone under it).
class AntichainSemiring {
public:
    using Elem = Antichain;

    explicit AntichainSemiring(const PowersetSemiring& base) : base_(&base) {}

    const PowersetSemiring& base() const { return *base_; }

    Elem zero() const { return {}; }
    Elem one() const { return Antichain{{base_->one()}}; }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = a;
        r.insert_all(b);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        Elem r;
        for (const auto& x : a.elems)
            for (const auto& y : b.elems)
                r.insert(base_->mul(x, y));
        return r;
    }

    bool leq(const Elem& a, const Elem& b) const {
        for (const auto& x : a.elems)
            if (!b.contains(x))
                return false;
        return true;
    }

    std::string to_string(const Elem& e, const MonoidMorphism* names = nullptr) const {
        std::ostringstream os;
        os << '{';
        for (size_t i = 0; i < e.elems.size(); ++i)
            os << (i ? "," : "") << base_->to_string(e.elems[i], names);
        os << '}';
        return os.str();
    }

private:
    const PowersetSemiring* base_;
};

// ---------------------------------------------------------------------------
// Nice multiplicative rating maps: determined by the letter values.

template <class S>
struct RatingMap {
    Alphabet alphabet;
    const S* semiring = nullptr;
    std::vector<typename S::Elem> letter_val;

    typename S::Elem of_letter(int a) const { return letter_val[a]; }

    typename S::Elem of_word(std::string_view w) const {
        auto v = semiring->one();
        for (char c : w) {
            int a = alphabet.index(c);
            if (a < 0)
                throw std::invalid_argument(std::string("letter '") + c + "' outside alphabet");
            v = semiring->mul(v, letter_val[a]);
        }
        return v;
    }
};

// rho(K) = sum of rho*(w) over w in K: the join of the word values reachable
// at accepting states of K, computed on the product of K with the value
// graph of rho*.
template <class S>
typename S::Elem evaluate(const RatingMap<S>& rho, const Dfa& K) {
    if (K.alphabet != rho.alphabet)
        throw std::invalid_argument("alphabet mismatch");
    const int k = K.alphabet.size();
    using Elem = typename S::Elem;
    std::map<std::pair<int, Elem>, bool> seen;
    std::vector<std::pair<int, Elem>> stack{{K.initial, rho.semiring->one()}};
    seen.emplace(stack[0], true);
    Elem acc = rho.semiring->zero();
    while (!stack.empty()) {
        auto [q, v] = stack.back();
        stack.pop_back();
        if (K.accepting[q])
            acc = rho.semiring->add(acc, v);
        for (int a = 0; a < k; ++a) {
            std::pair<int, Elem> next{K.step(q, a), rho.semiring->mul(v, rho.letter_val[a])};
            if (seen.emplace(next, true).second)
                stack.push_back(next);
        }
    }
    return acc;
}

// Imprint of a cover: downward closure of its evaluations.
template <class S>
Antichain imprint_of_cover(const std::vector<Dfa>& cover, const RatingMap<S>& rho) {
    Antichain out;
    for (const Dfa& K : cover)
        out.insert(evaluate(rho, K));
    return out;
}

// ---------------------------------------------------------------------------
// The canonical rating map of a covering instance: rho* w = {alpha(w)} in
// 2^{M} for the product morphism alpha recognizing every input exactly.

struct CanonicalRating {
    std::shared_ptr<PowersetSemiring> semiring;
    MonoidMorphism alpha;                      // the product morphism
    RatingMap<PowersetSemiring> rho;           // rho*(a) = {alpha(a)}
    std::vector<std::vector<int>> accepting;   // per input part, lifted F_i
};

inline CanonicalRating canonical_rating_map(const std::vector<RecognizedLanguage>& parts,
                                            int budget = 0) {
    std::vector<MonoidMorphism> morphisms;
    morphisms.reserve(parts.size());
    for (const auto& p : parts)
        morphisms.push_back(p.morphism);
    ProductMorphism prod = product_morphism(morphisms, budget);

    CanonicalRating out;
    out.semiring = std::make_shared<PowersetSemiring>(prod.morphism.target);
    out.rho.alphabet = prod.morphism.alphabet;
    out.rho.semiring = out.semiring.get();
    for (int a = 0; a < prod.morphism.alphabet.size(); ++a)
        out.rho.letter_val.push_back(out.semiring->singleton(prod.morphism.letter_img[a]));

    out.accepting.resize(parts.size());
    for (size_t i = 0; i < parts.size(); ++i)
        for (int e = 0; e < prod.morphism.target.n; ++e)
            if (std::binary_search(parts[i].accepting.begin(), parts[i].accepting.end(),
                                   prod.components[e][i]))
                out.accepting[i].push_back(e);
    out.alpha = std::move(prod.morphism);
    return out;
}

// Semiring axioms, checked by explicit enumeration on small carriers.
inline void check_powerset_axioms(const PowersetSemiring& r, int max_bits = 3) {
    if (r.bits() > max_bits)
        throw std::invalid_argument("carrier too large for explicit axiom check");
    std::vector<DynBitset> all;
    for (uint64_t m = 0; m < (uint64_t(1) << r.bits()); ++m) {
        DynBitset e = DynBitset::empty(r.bits());
        for (int i = 0; i < r.bits(); ++i)
            if ((m >> i) & 1)
                e.set(i);
        all.push_back(e);
    }
    for (const auto& a : all) {
        if (r.add(a, a) != a)
            throw std::logic_error("addition not idempotent");
        if (r.mul(r.zero(), a) != r.zero() || r.mul(a, r.zero()) != r.zero())
            throw std::logic_error("zero does not annihilate");
        if (r.mul(r.one(), a) != a || r.mul(a, r.one()) != a)
            throw std::logic_error("unit law fails");
        for (const auto& b : all) {
            if (r.add(a, b) != r.add(b, a))
                throw std::logic_error("addition not commutative");
            for (const auto& c : all) {
                if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
                    throw std::logic_error("multiplication not associative");
                if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
                    throw std::logic_error("left distributivity fails");
                if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)))
                    throw std::logic_error("right distributivity fails");
            }
        }
    }
}

}  // namespace sfc
