// sdlang.hpp -- bounded synchronization delay: prefix-code and delay
// checkers, the BSD(C) expression language with a compiling validator, star
// elimination into star-free expressions, and constructive synthesis of
// s-safe BSD(C)-partitions from C-aperiodic morphisms.

#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sfc/baseclass.hpp"
#include "sfc/monoid.hpp"
#include "sfc/stutter.hpp"

namespace sfc {

// ---------------------------------------------------------------------------
// Prefix codes and synchronization delay

inline Dfa dfa_single_letters(const Alphabet& alpha) {
    Dfa d;
    d.alphabet = alpha;
    d.accepting = {false, true, false};
    d.trans.assign(3 * static_cast<size_t>(alpha.size()), 2);
    for (int a = 0; a < alpha.size(); ++a)
        d.trans[a] = 1;
    return minimized(d);
}

// epsilon not in K and K cap KA+ = empty; on violation, a witness word.
inline std::optional<std::string> prefix_code_violation(const Dfa& K) {
    if (K.accepting[K.initial])
        return std::string("");
    Dfa bad = intersect(K, concat(K, plus(dfa_single_letters(K.alphabet))));
    return shortest_word(bad);
}

inline bool is_prefix_code(const Dfa& K) { return !prefix_code_violation(K).has_value(); }

struct DelayWitness {
    std::string u, v, w;  // uvw in K+, v in K^d, uv not in K+
    std::string word() const { return u + v + w; }
};

// Searches for a delay-d violation with a three-track product automaton: the
// K+-DFA runs over the whole word, the K^d-DFA over the guessed middle
// segment, and a second K+-DFA over the prefix (which must end rejecting).
inline std::optional<DelayWitness> sync_delay_witness(const Dfa& K, int d) {
    if (auto bad = prefix_code_violation(K))
        throw std::invalid_argument("not a prefix code (witness '" + *bad + "')");
    if (d < 1)
        throw std::invalid_argument("delay must be >= 1");
    const Alphabet& alpha = K.alphabet;
    const int k = alpha.size();
    Dfa full = plus(K);
    Dfa mid = pow(K, d);

    // state: (phase, q_full, q_prefix, q_mid); -1 marks an inactive track
    using State = std::array<int, 4>;
    std::map<State, int> ids;
    std::vector<State> states;
    std::vector<std::tuple<int, int, int>> parent;  // (state, letter or -1 split, prev)
    auto intern = [&](const State& st, int via, int prev) {
        auto [it, fresh] = ids.emplace(st, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(st);
            parent.push_back({prev, via, -1});
        }
        return std::pair{it->second, fresh};
    };

    State start{0, full.initial, full.initial, -1};
    intern(start, -2, -1);
    int accept_at = -1;
    for (size_t i = 0; i < states.size() && accept_at < 0; ++i) {
        auto [phase, qf, qp, qm] = states[i];
        if (phase == 0) {
            // guess the first split point: start the middle track
            intern({1, qf, qp, mid.initial}, -1, static_cast<int>(i));
            for (int a = 0; a < k; ++a)
                intern({0, full.step(qf, a), full.step(qp, a), -1}, a, static_cast<int>(i));
        } else if (phase == 1) {
            // guess the second split point: requires v in K^d and uv not in K+
            if (mid.accepting[qm] && !full.accepting[qp])
                intern({2, qf, -1, -1}, -1, static_cast<int>(i));
            for (int a = 0; a < k; ++a)
                intern({1, full.step(qf, a), full.step(qp, a), mid.step(qm, a)}, a,
                       static_cast<int>(i));
        } else {
            if (full.accepting[qf]) {
                accept_at = static_cast<int>(i);
                break;
            }
            for (int a = 0; a < k; ++a)
                intern({2, full.step(qf, a), -1, -1}, a, static_cast<int>(i));
        }
    }
    if (accept_at < 0)
        return std::nullopt;

    // reconstruct letters and the two split points
    std::string rev;
    std::vector<size_t> splits;
    for (int at = accept_at; at >= 0;) {
        auto [prev, via, unused] = parent[at];
        if (via >= 0)
            rev.push_back(alpha.letter(via));
        else if (via == -1)
            splits.push_back(rev.size());
        at = prev;
    }
    std::string word(rev.rbegin(), rev.rend());
    size_t cut2 = word.size() - splits[0];  // end of v
    size_t cut1 = word.size() - splits[1];  // end of u
    return DelayWitness{word.substr(0, cut1), word.substr(cut1, cut2 - cut1),
                        word.substr(cut2)};
}

inline bool sync_delay_holds(const Dfa& K, int d) {
    return !sync_delay_witness(K, d).has_value();
}

// Least d <= dmax with synchronization delay d, if any.
inline std::optional<int> min_sync_delay(const Dfa& K, int dmax = 8) {
    for (int d = 1; d <= dmax; ++d)
        if (sync_delay_holds(K, d))
            return d;
    return std::nullopt;
}

struct AmbiguityWitness {
    std::string word;
    size_t split1, split2;  // two distinct K.L cut positions, split1 < split2
};

// A word of KL with two distinct K.L decompositions, found by guessing the
// two cut positions in parallel; at least one letter must separate them.
inline std::optional<AmbiguityWitness> unambiguity_witness(const Dfa& K, const Dfa& L) {
    if (K.alphabet != L.alphabet)
        throw std::invalid_argument("alphabet mismatch");
    const Alphabet& alpha = K.alphabet;
    const int k = alpha.size();

    // phases: 0 shared prefix (x = y = K-state); 1 first cut taken, no letter
    // read yet (x = L-state, y = K-state); 2 like 1 after >= 1 letter;
    // 3 both cuts taken (x, y = L-states)
    using State = std::array<int, 3>;
    std::map<State, int> ids;
    std::vector<State> states;
    std::vector<std::pair<int, int>> parent;  // (prev, letter or -1 cut)
    auto intern = [&](const State& st, int via, int prev) {
        auto [it, fresh] = ids.emplace(st, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(st);
            parent.push_back({prev, via});
        }
        return it->second;
    };

    intern({0, K.initial, K.initial}, -2, -1);
    int accept_at = -1;
    for (size_t i = 0; i < states.size() && accept_at < 0; ++i) {
        auto [phase, x, y] = states[i];
        if (phase == 0) {
            if (K.accepting[x])
                intern({1, L.initial, y}, -1, static_cast<int>(i));
            for (int a = 0; a < k; ++a)
                intern({0, K.step(x, a), K.step(y, a)}, a, static_cast<int>(i));
        } else if (phase == 1) {
            for (int a = 0; a < k; ++a)
                intern({2, L.step(x, a), K.step(y, a)}, a, static_cast<int>(i));
        } else if (phase == 2) {
            if (K.accepting[y])
                intern({3, x, L.initial}, -1, static_cast<int>(i));
            for (int a = 0; a < k; ++a)
                intern({2, L.step(x, a), K.step(y, a)}, a, static_cast<int>(i));
        } else {
            if (L.accepting[x] && L.accepting[y]) {
                accept_at = static_cast<int>(i);
                break;
            }
            for (int a = 0; a < k; ++a)
                intern({3, L.step(x, a), L.step(y, a)}, a, static_cast<int>(i));
        }
    }
    if (accept_at < 0)
        return std::nullopt;

    std::string rev;
    std::vector<size_t> splits;
    for (int at = accept_at; at >= 0;) {
        auto [prev, via] = parent[at];
        if (via >= 0)
            rev.push_back(alpha.letter(via));
        else if (via == -1)
            splits.push_back(rev.size());
        at = prev;
    }
    std::string word(rev.rbegin(), rev.rend());
    return AmbiguityWitness{word, word.size() - splits[1], word.size() - splits[0]};
}

inline bool is_unambiguous(const Dfa& K, const Dfa& L) {
    return !unambiguity_witness(K, L).has_value();
}

// ---------------------------------------------------------------------------
// BSD(C) expressions

struct SdExpr;
using SdExprPtr = std::shared_ptr<const SdExpr>;

struct SdExpr {
    enum class Kind { empty, letter, inter_class, disj_union, unamb_product, star };

    Kind kind;
    char letter = 0;
    std::vector<int> classes;  // inter_class
    SdExprPtr left, right;
    int delay = 0;  // star

    static SdExprPtr make_empty() {
        auto n = std::make_shared<SdExpr>();
        n->kind = Kind::empty;
        return n;
    }
    static SdExprPtr make_letter(char c) {
        auto n = std::make_shared<SdExpr>();
        n->kind = Kind::letter;
        n->letter = c;
        return n;
    }
    static SdExprPtr make_inter_class(SdExprPtr e, std::vector<int> classes) {
        auto n = std::make_shared<SdExpr>();
        n->kind = Kind::inter_class;
        n->left = std::move(e);
        n->classes = std::move(classes);
        return n;
    }
    static SdExprPtr make_union(SdExprPtr l, SdExprPtr r) {
        auto n = std::make_shared<SdExpr>();
        n->kind = Kind::disj_union;
        n->left = std::move(l);
        n->right = std::move(r);
        return n;
    }
    static SdExprPtr make_product(SdExprPtr l, SdExprPtr r) {
        auto n = std::make_shared<SdExpr>();
        n->kind = Kind::unamb_product;
        n->left = std::move(l);
        n->right = std::move(r);
        return n;
    }
    static SdExprPtr make_star(SdExprPtr e, int delay) {
        auto n = std::make_shared<SdExpr>();
        n->kind = Kind::star;
        n->left = std::move(e);
        n->delay = delay;
        return n;
    }
};

inline std::string to_string(const SdExpr& e) {
    switch (e.kind) {
        case SdExpr::Kind::empty:
            return "0";
        case SdExpr::Kind::letter:
            return std::string(1, e.letter);
        case SdExpr::Kind::inter_class: {
            std::string s = to_string(*e.left) + "^{";
            for (size_t i = 0; i < e.classes.size(); ++i)
                s += (i ? "," : "") + std::to_string(e.classes[i]);
            return s + "}";
        }
        case SdExpr::Kind::disj_union:
            return "(" + to_string(*e.left) + " | " + to_string(*e.right) + ")";
        case SdExpr::Kind::unamb_product:
            return "(" + to_string(*e.left) + " . " + to_string(*e.right) + ")";
        case SdExpr::Kind::star:
            return to_string(*e.left) + "*" + std::to_string(e.delay);
    }
    return "?";
}

namespace detail {

class SdParser {
public:
    SdParser(std::string_view text, const Alphabet& alpha) : text_(text), alpha_(alpha) {}

    SdExprPtr parse() {
        SdExprPtr e = parse_alt();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected character", static_cast<int>(pos_) + 1);
        return e;
    }

private:
    std::string_view text_;
    const Alphabet& alpha_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    int parse_int() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            throw ParseError("expected a number", static_cast<int>(pos_) + 1);
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    SdExprPtr parse_alt() {
        SdExprPtr e = parse_cat();
        while (eat('|'))
            e = SdExpr::make_union(e, parse_cat());
        return e;
    }
    SdExprPtr parse_cat() {
        SdExprPtr e = parse_post();
        while (eat('.'))
            e = SdExpr::make_product(e, parse_post());
        return e;
    }
    SdExprPtr parse_post() {
        SdExprPtr e = parse_atom();
        for (;;) {
            if (eat('*')) {
                e = SdExpr::make_star(e, parse_int());
            } else if (eat('^')) {
                if (!eat('{'))
                    throw ParseError("expected '{'", static_cast<int>(pos_) + 1);
                std::vector<int> ids{parse_int()};
                while (eat(','))
                    ids.push_back(parse_int());
                if (!eat('}'))
                    throw ParseError("expected '}'", static_cast<int>(pos_) + 1);
                e = SdExpr::make_inter_class(e, std::move(ids));
            } else {
                return e;
            }
        }
    }
    SdExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", static_cast<int>(pos_) + 1);
        char c = text_[pos_];
        if (c == '(') {
            size_t open = pos_++;
            SdExprPtr e = parse_alt();
            if (!eat(')'))
                throw ParseError("unclosed '('", static_cast<int>(open) + 1);
            return e;
        }
        if (c == '0') {
            ++pos_;
            return SdExpr::make_empty();
        }
        if (alpha_.contains(c)) {
            ++pos_;
            return SdExpr::make_letter(c);
        }
        throw ParseError(std::string("unexpected character '") + c + "'",
                         static_cast<int>(pos_) + 1);
    }
};

}  // namespace detail

// Surface syntax: `0`, letters, `e^{ids}`, `e | e`, `e . e`, `e*d`.
inline SdExprPtr parse_sd(std::string_view text, const Alphabet& alpha) {
    return detail::SdParser(text, alpha).parse();
}

// Validation failure: which rule broke, where, and a witness word.
struct SdError : std::runtime_error {
    std::string rule;
    std::string witness;
    std::string node;
    SdError(const std::string& rule_, const std::string& witness_, const std::string& node_)
        : std::runtime_error("BSD validation failed: " + rule_ + " at " + node_ +
                             " (witness '" + witness_ + "')"),
          rule(rule_), witness(witness_), node(node_) {}
};

// Compiles bottom-up while checking every node's side condition: disjoint
// unions, unambiguous products, prefix-code stars within their declared
// delay, and class intersections against a finite base.
class SdValidator {
public:
    SdValidator(const Alphabet& alpha, const BaseClass* finite_base, int dmax = 8)
        : alpha_(alpha), base_(finite_base), dmax_(dmax) {}

    Dfa run(const SdExprPtr& e) {
        auto it = memo_.find(e.get());
        if (it != memo_.end())
            return it->second;
        Dfa d = compile(e);
        memo_.emplace(e.get(), d);
        return d;
    }

private:
    const Alphabet& alpha_;
    const BaseClass* base_;
    int dmax_;
    std::map<const SdExpr*, Dfa> memo_;

    Dfa compile(const SdExprPtr& e) {
        switch (e->kind) {
            case SdExpr::Kind::empty:
                return dfa_empty(alpha_);
            case SdExpr::Kind::letter:
                return dfa_letter(alpha_, e->letter);
            case SdExpr::Kind::inter_class: {
                if (!base_ || !base_->is_finite())
                    throw SdError("class-intersection needs a finite base class", "",
                                  to_string(*e));
                for (int cid : e->classes)
                    if (cid < 0 || cid >= base_->class_count())
                        throw SdError("class id out of range", std::to_string(cid),
                                      to_string(*e));
                return intersect(run(e->left), base_->class_language(e->classes));
            }
            case SdExpr::Kind::disj_union: {
                Dfa l = run(e->left), r = run(e->right);
                Dfa both = intersect(l, r);
                if (auto w = shortest_word(both))
                    throw SdError("union operands intersect", *w, to_string(*e));
                return unite(l, r);
            }
            case SdExpr::Kind::unamb_product: {
                Dfa l = run(e->left), r = run(e->right);
                if (auto w = unambiguity_witness(l, r))
                    throw SdError("ambiguous product", w->word, to_string(*e));
                return concat(l, r);
            }
            case SdExpr::Kind::star: {
                Dfa k = run(e->left);
                if (auto w = prefix_code_violation(k))
                    throw SdError("star operand is not a prefix code", *w, to_string(*e));
                if (e->delay < 1 || e->delay > dmax_)
                    throw SdError("declared delay out of range [1, dmax]",
                                  std::to_string(e->delay), to_string(*e));
                if (auto w = sync_delay_witness(k, e->delay))
                    throw SdError("synchronization delay " + std::to_string(e->delay) +
                                      " fails",
                                  w->word(), to_string(*e));
                return star(k);
            }
        }
        throw std::logic_error("bad SdExpr");
    }
};

inline Dfa validate(const SdExprPtr& e, const BaseClass* finite_base, const Alphabet& alpha,
                    int dmax = 8) {
    return SdValidator(alpha, finite_base, dmax).run(e);
}

// ---------------------------------------------------------------------------
// Star-free expressions and star elimination

struct SfExpr;
using SfExprPtr = std::shared_ptr<const SfExpr>;

struct SfExpr {
    enum class Kind { empty, letter, class_lang, union_, complement, concat };

    Kind kind;
    char letter = 0;
    std::vector<int> classes;
    SfExprPtr left, right;

    static SfExprPtr make(Kind k, SfExprPtr l = nullptr, SfExprPtr r = nullptr) {
        auto n = std::make_shared<SfExpr>();
        n->kind = k;
        n->left = std::move(l);
        n->right = std::move(r);
        return n;
    }
    static SfExprPtr make_letter(char c) {
        auto n = std::make_shared<SfExpr>();
        n->kind = Kind::letter;
        n->letter = c;
        return n;
    }
    static SfExprPtr make_class_lang(std::vector<int> classes) {
        auto n = std::make_shared<SfExpr>();
        n->kind = Kind::class_lang;
        n->classes = std::move(classes);
        return n;
    }
};

inline SfExprPtr sf_empty() { return SfExpr::make(SfExpr::Kind::empty); }
inline SfExprPtr sf_union(SfExprPtr l, SfExprPtr r) {
    return SfExpr::make(SfExpr::Kind::union_, std::move(l), std::move(r));
}
inline SfExprPtr sf_complement(SfExprPtr e) {
    return SfExpr::make(SfExpr::Kind::complement, std::move(e));
}
inline SfExprPtr sf_concat(SfExprPtr l, SfExprPtr r) {
    return SfExpr::make(SfExpr::Kind::concat, std::move(l), std::move(r));
}
inline SfExprPtr sf_all() { return sf_complement(sf_empty()); }
inline SfExprPtr sf_letters(const Alphabet& alpha) {
    SfExprPtr e;
    for (char c : alpha.letters) {
        SfExprPtr l = SfExpr::make_letter(c);
        e = e ? sf_union(e, l) : l;
    }
    return e;
}
inline SfExprPtr sf_epsilon(const Alphabet& alpha) {
    // {eps} = A* \ (A.A*)
    return sf_complement(sf_concat(sf_letters(alpha), sf_all()));
}

inline Dfa compile_sf(const SfExprPtr& e, const Alphabet& alpha,
                      const BaseClass* finite_base = nullptr) {
    switch (e->kind) {
        case SfExpr::Kind::empty:
            return dfa_empty(alpha);
        case SfExpr::Kind::letter:
            return dfa_letter(alpha, e->letter);
        case SfExpr::Kind::class_lang:
            if (!finite_base || !finite_base->is_finite())
                throw std::invalid_argument("class language needs a finite base");
            return finite_base->class_language(e->classes);
        case SfExpr::Kind::union_:
            return unite(compile_sf(e->left, alpha, finite_base),
                         compile_sf(e->right, alpha, finite_base));
        case SfExpr::Kind::complement:
            return complement(compile_sf(e->left, alpha, finite_base));
        case SfExpr::Kind::concat:
            return concat(compile_sf(e->left, alpha, finite_base),
                          compile_sf(e->right, alpha, finite_base));
    }
    throw std::logic_error("bad SfExpr");
}

// K* as a star-free expression, for K a prefix code with synchronization
// delay d given in star-free form:
//   H = (A* K^d  cap  ~(A* K^{d+1} cup K^0 cup ... cup K^d)) A*
//   G = (K^0 cup ... cup K^{d-1}) cup (A* K^d cap ~H)
inline SfExprPtr star_eliminate(const Dfa& K, int d, const SfExprPtr& K_sf) {
    const Alphabet& alpha = K.alphabet;
    if (!same_language(compile_sf(K_sf, alpha), K))
        throw std::invalid_argument("star-free form does not denote K");
    if (!sync_delay_holds(K, d))
        throw std::invalid_argument("K does not have synchronization delay " +
                                    std::to_string(d));

    std::vector<SfExprPtr> kpow{sf_epsilon(alpha)};  // K^0
    for (int h = 1; h <= d + 1; ++h)
        kpow.push_back(h == 1 ? K_sf : sf_concat(kpow[h - 1], K_sf));

    auto union_upto = [&](int hmax) {
        SfExprPtr u = kpow[0];
        for (int h = 1; h <= hmax; ++h)
            u = sf_union(u, kpow[h]);
        return u;
    };

    SfExprPtr astar_kd = sf_concat(sf_all(), kpow[d]);
    SfExprPtr astar_kd1 = sf_concat(sf_all(), kpow[d + 1]);
    SfExprPtr h_core = sf_complement(sf_union(astar_kd1, union_upto(d)));
    // X cap Y = ~(~X cup ~Y)
    auto sf_inter = [](SfExprPtr x, SfExprPtr y) {
        return sf_complement(sf_union(sf_complement(std::move(x)), sf_complement(std::move(y))));
    };
    SfExprPtr H = sf_concat(sf_inter(astar_kd, h_core), sf_all());
    SfExprPtr G = sf_union(d >= 1 ? union_upto(d - 1) : sf_epsilon(alpha),
                           sf_inter(astar_kd, sf_complement(H)));
    return G;
}

// ---------------------------------------------------------------------------
// Synthesis of s-safe BSD(C)-partitions

struct PartItem {
    SdExprPtr expr;
    Dfa lang;
    int value;  // the single element of s.alpha(part)
};

struct PartitionCertificate {
    Dfa domain;  // the partitioned language
    int s;       // context element of M
    std::vector<PartItem> parts;
};

struct SynthesisStats {
    using Measure = std::array<size_t, 3>;  // (|alpha(P+)|, |Hparts|, |s.alpha(P*)|)
    struct Call {
        Measure parent, child;
    };
    std::vector<Call> calls;  // one per recursive edge
    int num_calls = 0;
    int max_depth = 0;
};

struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<int> mul_set(const FiniteMonoid& m, const std::vector<int>& xs, int t) {
    std::set<int> out;
    for (int x : xs)
        out.insert(m.mul(x, t));
    return {out.begin(), out.end()};
}

inline std::vector<int> premul_set(const FiniteMonoid& m, int s, const std::vector<int>& xs) {
    std::set<int> out;
    for (int x : xs)
        out.insert(m.mul(s, x));
    return {out.begin(), out.end()};
}

class Synthesizer {
public:
    Synthesizer(const MonoidMorphism& alpha, const BaseClass& c, SynthesisStats& stats)
        : alpha_(alpha), c_(c), stats_(stats) {}

    // P: prefix code with measured delay p_delay; hparts: 1_M-safe
    // BSD(C)-partition of P.  Returns an s-safe partition of P*.
    //
    // The result depends only on (P, the part languages and values, s), and
    // sub-case 1 spawns one recursion per U-part, so identical subproblems
    // recur massively; the memo collapses them.  A cached certificate stays
    // valid at other call sites: its expressions compile to the same part
    // languages no matter which expressions the caller holds for hparts.
    PartitionCertificate run(const Dfa& P, int p_delay, const std::vector<PartItem>& hparts,
                             int s, int depth,
                             std::optional<SynthesisStats::Measure> parent) {
        std::string key = memo_key(P, hparts, s);
        if (auto it = memo_.find(key); it != memo_.end()) {
            ++stats_.num_calls;
            if (parent) {
                if (!(it->second.measure < *parent))
                    throw SynthesisError("recursion measure failed to decrease");
                stats_.calls.push_back({*parent, it->second.measure});
            }
            return it->second.cert;
        }
        SynthesisStats::Measure measure{};
        PartitionCertificate cert = solve(P, p_delay, hparts, s, depth, parent, measure);
        memo_.emplace(std::move(key), Memoized{cert, measure});
        return cert;
    }

private:
    PartitionCertificate solve(const Dfa& P, int p_delay, const std::vector<PartItem>& hparts,
                               int s, int depth, std::optional<SynthesisStats::Measure> parent,
                               SynthesisStats::Measure& measure_out) {
        ++stats_.num_calls;
        stats_.max_depth = std::max(stats_.max_depth, depth);

        const FiniteMonoid& M = alpha_.target;
        Dfa pstar = star(P);
        std::vector<int> img_pstar = image_of_language(alpha_, pstar);
        std::vector<int> s_img_pstar = premul_set(M, s, img_pstar);
        std::vector<int> img_pplus;
        {
            std::set<int> acc;
            for (const auto& h : hparts)
                for (int x : img_pstar)
                    acc.insert(M.mul(x, h.value));
            img_pplus.assign(acc.begin(), acc.end());
        }

        SynthesisStats::Measure measure{img_pplus.size(), hparts.size(), s_img_pstar.size()};
        measure_out = measure;
        if (parent) {
            if (!(measure < *parent))  // lexicographic
                throw SynthesisError("recursion measure failed to decrease");
            stats_.calls.push_back({*parent, measure});
        }

        if (is_empty(P))
            return epsilon_partition(s);
        if (hparts.empty())
            throw SynthesisError("non-empty P with an empty partition");

        // H-stability: s.alpha(P*) = s.alpha(P*H) for every part H
        int violating = -1;
        for (size_t i = 0; i < hparts.size(); ++i) {
            if (premul_set(M, s, mul_set(M, img_pstar, hparts[i].value)) != s_img_pstar) {
                violating = static_cast<int>(i);
                break;
            }
        }

        if (violating < 0)
            return base_case(P, p_delay, hparts, s, pstar);

        // inductive step
        const PartItem& H = hparts[violating];
        std::vector<PartItem> gparts;
        for (size_t i = 0; i < hparts.size(); ++i)
            if (static_cast<int>(i) != violating)
                gparts.push_back(hparts[i]);

        Dfa pmh = difference(P, H.lang);
        int pmh_delay = p_delay;
        if (!is_empty(pmh)) {
            auto d = min_sync_delay(pmh, p_delay);
            if (!d)
                throw SynthesisError("P\\H exceeded the delay bound of P");
            pmh_delay = *d;
        }
        PartitionCertificate U = run(pmh, pmh_delay, gparts, M.identity, depth + 1, measure);

        bool subcase1 = mul_set(M, img_pstar, H.value) == img_pplus;
        if (subcase1) {
            // K = U cup { U H W : W in W_U }, with W_U the s.r_U.t-safe
            // partition of P*
            PartitionCertificate out;
            out.domain = pstar;
            out.s = s;
            for (const auto& u : U.parts)
                out.parts.push_back({u.expr, u.lang, M.mul(s, u.value)});
            for (const auto& u : U.parts) {
                int context = M.mul(M.mul(s, u.value), H.value);
                PartitionCertificate W =
                    run(P, p_delay, hparts, context, depth + 1, measure);
                for (const auto& w : W.parts) {
                    SdExprPtr expr = SdExpr::make_product(
                        SdExpr::make_product(u.expr, H.expr), w.expr);
                    out.parts.push_back(
                        {expr, concat(concat(u.lang, H.lang), w.lang), w.value});
                }
            }
            return out;
        }

        // sub-case 2: Q = (P\H)* H, V a 1_M-safe partition of Q*, K = {VU}
        Dfa Q = concat(star(pmh), H.lang);
        auto dq = min_sync_delay(Q, p_delay + 1);
        if (!dq)
            throw SynthesisError("(P\\H)*H exceeded the delay bound d+1");
        std::vector<PartItem> fparts;
        for (const auto& u : U.parts)
            fparts.push_back({SdExpr::make_product(u.expr, H.expr), concat(u.lang, H.lang),
                              M.mul(u.value, H.value)});
        PartitionCertificate V = run(Q, *dq, fparts, M.identity, depth + 1, measure);

        PartitionCertificate out;
        out.domain = pstar;
        out.s = s;
        for (const auto& v : V.parts)
            for (const auto& u : U.parts)
                out.parts.push_back({SdExpr::make_product(v.expr, u.expr),
                                     concat(v.lang, u.lang),
                                     M.mul(M.mul(s, v.value), u.value)});
        return out;
    }

    const MonoidMorphism& alpha_;
    const BaseClass& c_;
    SynthesisStats& stats_;

    struct Memoized {
        PartitionCertificate cert;
        SynthesisStats::Measure measure;
    };
    std::map<std::string, Memoized> memo_;

    static std::string memo_key(const Dfa& P, const std::vector<PartItem>& hparts, int s) {
        std::ostringstream os;
        os << s << '\n' << format_dfa(minimized(P));
        for (const auto& h : hparts)
            os << h.value << '\n' << format_dfa(minimized(h.lang));
        return os.str();
    }

    PartitionCertificate epsilon_partition(int s) const {
        // P = {} so P* = {eps}; the empty set is a prefix code of any delay
        PartitionCertificate out;
        out.domain = dfa_epsilon(alpha_.alphabet);
        out.s = s;
        out.parts.push_back(
            {SdExpr::make_star(SdExpr::make_empty(), 1), out.domain, s});
        return out;
    }

    // s is H-stable: split P* by the ~C-classes (the paper's D can be taken
    // to be C itself, C being finite already).
    PartitionCertificate base_case(const Dfa& P, int p_delay,
                                   const std::vector<PartItem>& hparts, int s,
                                   const Dfa& pstar) const {
        SdExprPtr p_expr = hparts[0].expr;
        for (size_t i = 1; i < hparts.size(); ++i)
            p_expr = SdExpr::make_union(p_expr, hparts[i].expr);
        SdExprPtr pstar_expr = SdExpr::make_star(p_expr, p_delay);

        PartitionCertificate out;
        out.domain = pstar;
        out.s = s;
        for (int cid = 0; cid < c_.class_count(); ++cid) {
            Dfa part = intersect(pstar, c_.class_language({cid}));
            if (is_empty(part))
                continue;
            std::vector<int> vals = detail::premul_set(alpha_.target, s,
                                                       image_of_language(alpha_, part));
            if (vals.size() != 1)
                throw SynthesisError("base case part is not s-safe (stability broken)");
            out.parts.push_back(
                {SdExpr::make_inter_class(pstar_expr, {cid}), part, vals[0]});
        }
        return out;
    }
};

}  // namespace detail

// Certificate checks: parts pairwise disjoint, union equal to the domain,
// s-safety of every part, and every expression re-validated (all side
// conditions) and equal to its DFA.
inline void verify_certificate(const PartitionCertificate& cert, const MonoidMorphism& alpha,
                               const BaseClass& c, int dmax = 8) {
    int max_delay = dmax;
    for (const auto& p : cert.parts) {
        std::vector<const SdExpr*> stack{p.expr.get()};
        while (!stack.empty()) {
            const SdExpr* e = stack.back();
            stack.pop_back();
            if (e->kind == SdExpr::Kind::star)
                max_delay = std::max(max_delay, e->delay);
            if (e->left)
                stack.push_back(e->left.get());
            if (e->right)
                stack.push_back(e->right.get());
        }
    }
    SdValidator validator(alpha.alphabet, &c, max_delay);

    Dfa seen = dfa_empty(alpha.alphabet);
    for (const auto& p : cert.parts) {
        Dfa compiled = validator.run(p.expr);
        if (compiled != minimized(p.lang))
            throw std::logic_error("certificate expr does not compile to its language");
        if (!is_empty(intersect(seen, p.lang)))
            throw std::logic_error("certificate parts are not pairwise disjoint");
        seen = unite(seen, p.lang);
        std::vector<int> vals =
            detail::premul_set(alpha.target, cert.s, image_of_language(alpha, p.lang));
        if (vals != std::vector<int>{p.value})
            throw std::logic_error("certificate part is not s-safe");
    }
    if (seen != minimized(cert.domain))
        throw std::logic_error("certificate parts do not cover the domain");
}

struct SynthesisOutput {
    PartitionCertificate cert;  // 1_M-safe partition of A*
    SynthesisStats stats;
};

// Runs the recursion from P = A with the singleton letter partition.
inline SynthesisOutput synthesize_partition_of_all(const MonoidMorphism& alpha,
                                                   const BaseClass& c) {
    if (!c.is_finite())
        throw std::invalid_argument("synthesis needs a finite base class");
    auto aper = is_c_aperiodic(alpha, c);
    if (!aper.aperiodic)
        throw SynthesisError("morphism is not C-aperiodic (element " +
                             std::to_string(*aper.bad_element) + " violates s^w = s^{w+1})");

    SynthesisOutput out;
    std::vector<PartItem> letters;
    for (int a = 0; a < alpha.alphabet.size(); ++a) {
        char ch = alpha.alphabet.letter(a);
        letters.push_back(
            {SdExpr::make_letter(ch), dfa_letter(alpha.alphabet, ch), alpha.of_letter(a)});
    }
    detail::Synthesizer syn(alpha, c, out.stats);
    out.cert = syn.run(dfa_single_letters(alpha.alphabet), 1, letters,
                       alpha.target.identity, 0, std::nullopt);
    return out;
}

// Public entry matching the recursion itself: an s-safe partition of P*
// from a 1_M-safe partition of P.
inline PartitionCertificate synthesize_partition(const Dfa& P,
                                                 const std::vector<PartItem>& hparts, int s,
                                                 const MonoidMorphism& alpha,
                                                 const BaseClass& c, int dmax = 8,
                                                 SynthesisStats* stats = nullptr) {
    if (!c.is_finite())
        throw std::invalid_argument("synthesis needs a finite base class");
    auto aper = is_c_aperiodic(alpha, c);
    if (!aper.aperiodic)
        throw SynthesisError("morphism is not C-aperiodic");
    auto d = is_empty(P) ? std::optional<int>(1) : min_sync_delay(P, dmax);
    if (!d)
        throw SynthesisError("P has no synchronization delay within dmax");
    SynthesisStats local;
    detail::Synthesizer syn(alpha, c, stats ? *stats : local);
    return syn.run(P, *d, hparts, s, 0, std::nullopt);
}

// An SdExpr denoting alpha^{-1}(t), built from the 1_M-safe partition of A*.
inline SdExprPtr synthesize_language(const MonoidMorphism& alpha, int t, const BaseClass& c,
                                     SynthesisStats* stats = nullptr) {
    SynthesisOutput out = synthesize_partition_of_all(alpha, c);
    if (stats)
        *stats = out.stats;
    SdExprPtr expr;
    for (const auto& p : out.cert.parts)
        if (p.value == t)
            expr = expr ? SdExpr::make_union(expr, p.expr) : p.expr;
    return expr ? expr : SdExpr::make_empty();
}

}  // namespace sfc
