// automata.hpp -- regular-language carriers: regexes, complete DFAs and
// the Boolean/quotient algebra on them.
//
// Every Dfa produced by the operations below is minimal and canonically
// numbered (BFS order from the initial state), so language equality is
// plain operator==.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sfc {

// ---------------------------------------------------------------------------
// Alphabet

struct Alphabet {
    std::string letters;  // sorted, unique, visible ASCII

    static Alphabet of(std::string_view chars) {
        std::string s(chars);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty())
            throw std::invalid_argument("alphabet must be non-empty");
        for (char c : s)
            if (!(std::islower(static_cast<unsigned char>(c)) ||
                  std::isdigit(static_cast<unsigned char>(c))))
                throw std::invalid_argument(std::string("bad alphabet letter '") + c + "'");
        return Alphabet{std::move(s)};
    }

    int size() const { return static_cast<int>(letters.size()); }

    int index(char c) const {
        auto pos = letters.find(c);
        return pos == std::string::npos ? -1 : static_cast<int>(pos);
    }

    char letter(int i) const { return letters[static_cast<size_t>(i)]; }

    bool contains(char c) const { return index(c) >= 0; }

    bool operator==(const Alphabet&) const = default;
};

// ---------------------------------------------------------------------------
// Regex AST

struct RegexAst;
using RegexPtr = std::shared_ptr<const RegexAst>;

struct RegexAst {
    enum class Kind { empty, epsilon, letter, union_, concat, star, complement, intersect };

    Kind kind;
    char letter = 0;
    RegexPtr left, right;

    static RegexPtr make(Kind k, RegexPtr l = nullptr, RegexPtr r = nullptr) {
        auto n = std::make_shared<RegexAst>();
        n->kind = k;
        n->left = std::move(l);
        n->right = std::move(r);
        return n;
    }
    static RegexPtr make_letter(char c) {
        auto n = std::make_shared<RegexAst>();
        n->kind = Kind::letter;
        n->letter = c;
        return n;
    }
};

struct ParseError : std::runtime_error {
    int offset;  // 1-based position in the input
    ParseError(const std::string& msg, int off)
        : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

namespace detail {

class RegexParser {
public:
    RegexParser(std::string_view text, const Alphabet& alpha) : text_(text), alpha_(alpha) {}

    RegexPtr parse() {
        RegexPtr e = parse_union();
        if (pos_ != text_.size())
            fail("unexpected character", pos_);
        return e;
    }

private:
    std::string_view text_;
    const Alphabet& alpha_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, size_t at) const {
        throw ParseError(msg, static_cast<int>(at) + 1);
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    bool starts_atom(char c) const {
        return c == '(' || c == '0' || c == '1' || c == '~' ||
               std::islower(static_cast<unsigned char>(c)) ||
               std::isdigit(static_cast<unsigned char>(c));
    }

    RegexPtr parse_union() {
        RegexPtr e = parse_intersect();
        while (!eof() && peek() == '+') {
            ++pos_;
            e = RegexAst::make(RegexAst::Kind::union_, e, parse_intersect());
        }
        return e;
    }

    RegexPtr parse_intersect() {
        RegexPtr e = parse_concat();
        while (!eof() && peek() == '&') {
            ++pos_;
            e = RegexAst::make(RegexAst::Kind::intersect, e, parse_concat());
        }
        return e;
    }

    RegexPtr parse_concat() {
        RegexPtr e = parse_factor();
        while (!eof() && starts_atom(peek()))
            e = RegexAst::make(RegexAst::Kind::concat, e, parse_factor());
        return e;
    }

    RegexPtr parse_factor() {
        if (!eof() && peek() == '~') {
            ++pos_;
            if (eof())
                fail("dangling '~'", pos_);
            return RegexAst::make(RegexAst::Kind::complement, parse_factor());
        }
        RegexPtr e = parse_atom();
        while (!eof() && peek() == '*') {
            ++pos_;
            e = RegexAst::make(RegexAst::Kind::star, e);
        }
        return e;
    }

    RegexPtr parse_atom() {
        if (eof())
            fail("unexpected end of input", pos_);
        char c = peek();
        if (c == '(') {
            size_t open = pos_;
            ++pos_;
            RegexPtr e = parse_union();
            if (eof() || peek() != ')')
                fail("unclosed '('", open);
            ++pos_;
            return e;
        }
        if (c == '0') {
            ++pos_;
            return RegexAst::make(RegexAst::Kind::empty);
        }
        if (c == '1') {
            ++pos_;
            return RegexAst::make(RegexAst::Kind::epsilon);
        }
        if (std::islower(static_cast<unsigned char>(c)) ||
            std::isdigit(static_cast<unsigned char>(c))) {
            if (!alpha_.contains(c))
                fail(std::string("letter '") + c + "' outside alphabet", pos_);
            ++pos_;
            return RegexAst::make_letter(c);
        }
        fail("unexpected character", pos_);
    }
};

}  // namespace detail

// Grammar: letters, `0` = empty, `1` = epsilon, juxtaposition = concat,
// `+` union, `&` intersect, `~` complement, postfix `*`, parentheses.
inline RegexPtr parse_regex(std::string_view text, const Alphabet& alpha) {
    return detail::RegexParser(text, alpha).parse();
}

// Letters of [a-z2-9] occurring in a regex; used to infer a session alphabet.
inline std::string regex_letters(std::string_view text) {
    std::string out;
    for (char c : text)
        if ((std::islower(static_cast<unsigned char>(c)) ||
             std::isdigit(static_cast<unsigned char>(c))) &&
            c != '0' && c != '1')
            out.push_back(c);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Complete DFA

struct Dfa {
    Alphabet alphabet;
    int initial = 0;
    std::vector<int> trans;       // row-major: trans[q * |A| + a]
    std::vector<bool> accepting;  // one flag per state

    int num_states() const { return static_cast<int>(accepting.size()); }

    int step(int q, int a) const { return trans[static_cast<size_t>(q) * alphabet.size() + a]; }

    int run(int q, std::string_view w) const {
        for (char c : w) {
            int a = alphabet.index(c);
            if (a < 0)
                throw std::invalid_argument(std::string("letter '") + c + "' outside alphabet");
            q = step(q, a);
        }
        return q;
    }

    bool accepts(std::string_view w) const { return accepting[run(initial, w)]; }

    bool operator==(const Dfa&) const = default;
};

namespace detail {

inline Dfa trim_reachable(const Dfa& d) {
    const int k = d.alphabet.size();
    std::vector<int> remap(d.num_states(), -1);
    std::vector<int> order;
    remap[d.initial] = 0;
    order.push_back(d.initial);
    for (size_t i = 0; i < order.size(); ++i)
        for (int a = 0; a < k; ++a) {
            int to = d.step(order[i], a);
            if (remap[to] < 0) {
                remap[to] = static_cast<int>(order.size());
                order.push_back(to);
            }
        }
    Dfa out;
    out.alphabet = d.alphabet;
    out.initial = 0;
    out.accepting.resize(order.size());
    out.trans.resize(order.size() * k);
    for (size_t i = 0; i < order.size(); ++i) {
        out.accepting[i] = d.accepting[order[i]];
        for (int a = 0; a < k; ++a)
            out.trans[i * k + a] = remap[d.step(order[i], a)];
    }
    return out;
}

}  // namespace detail

// Hopcroft-style refinement (Moore iteration) + canonical BFS renumbering.
inline Dfa minimized(const Dfa& input) {
    Dfa d = detail::trim_reachable(input);
    const int n = d.num_states();
    const int k = d.alphabet.size();

    std::vector<int> cls(n);
    for (int q = 0; q < n; ++q)
        cls[q] = d.accepting[q] ? 1 : 0;

    for (;;) {
        // signature of a state: its class plus the classes of its successors
        std::map<std::vector<int>, int> sig_id;
        std::vector<int> next(n);
        for (int q = 0; q < n; ++q) {
            std::vector<int> sig(k + 1);
            sig[0] = cls[q];
            for (int a = 0; a < k; ++a)
                sig[a + 1] = cls[d.step(q, a)];
            auto [it, fresh] = sig_id.emplace(std::move(sig), static_cast<int>(sig_id.size()));
            next[q] = it->second;
        }
        if (next == cls)
            break;
        cls = std::move(next);
    }

    int m = *std::max_element(cls.begin(), cls.end()) + 1;

    // quotient automaton
    std::vector<int> qtrans(static_cast<size_t>(m) * k, -1);
    std::vector<bool> qacc(m, false);
    for (int q = 0; q < n; ++q) {
        qacc[cls[q]] = d.accepting[q];
        for (int a = 0; a < k; ++a)
            qtrans[static_cast<size_t>(cls[q]) * k + a] = cls[d.step(q, a)];
    }

    // canonical BFS numbering from the initial class
    std::vector<int> remap(m, -1);
    std::vector<int> order;
    remap[cls[d.initial]] = 0;
    order.push_back(cls[d.initial]);
    for (size_t i = 0; i < order.size(); ++i)
        for (int a = 0; a < k; ++a) {
            int to = qtrans[static_cast<size_t>(order[i]) * k + a];
            if (remap[to] < 0) {
                remap[to] = static_cast<int>(order.size());
                order.push_back(to);
            }
        }

    Dfa out;
    out.alphabet = d.alphabet;
    out.initial = 0;
    out.accepting.resize(order.size());
    out.trans.resize(order.size() * k);
    for (size_t i = 0; i < order.size(); ++i) {
        out.accepting[i] = qacc[order[i]];
        for (int a = 0; a < k; ++a)
            out.trans[i * k + a] = remap[qtrans[static_cast<size_t>(order[i]) * k + a]];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constant languages

inline Dfa dfa_empty(const Alphabet& alpha) {
    Dfa d;
    d.alphabet = alpha;
    d.accepting = {false};
    d.trans.assign(alpha.size(), 0);
    return d;
}

inline Dfa dfa_all(const Alphabet& alpha) {
    Dfa d;
    d.alphabet = alpha;
    d.accepting = {true};
    d.trans.assign(alpha.size(), 0);
    return d;
}

inline Dfa dfa_epsilon(const Alphabet& alpha) {
    Dfa d;
    d.alphabet = alpha;
    d.accepting = {true, false};
    d.trans.assign(2 * static_cast<size_t>(alpha.size()), 1);
    return d;
}

inline Dfa dfa_letter(const Alphabet& alpha, char c) {
    int a = alpha.index(c);
    if (a < 0)
        throw std::invalid_argument(std::string("letter '") + c + "' outside alphabet");
    Dfa d;
    d.alphabet = alpha;
    d.accepting = {false, true, false};
    d.trans.assign(3 * static_cast<size_t>(alpha.size()), 2);
    d.trans[a] = 1;
    return minimized(d);
}

inline Dfa dfa_word(const Alphabet& alpha, std::string_view w);  // below

// ---------------------------------------------------------------------------
// NFA scaffolding for concatenation, star and determinization

namespace detail {

struct Nfa {
    int k = 0;  // alphabet size
    // edges[q] = list of (letter, target); letter -1 means epsilon
    std::vector<std::vector<std::pair<int, int>>> edges;
    std::vector<int> initial;
    std::vector<bool> accepting;

    int add_state() {
        edges.emplace_back();
        accepting.push_back(false);
        return static_cast<int>(edges.size()) - 1;
    }
};

inline Nfa nfa_of(const Dfa& d) {
    Nfa n;
    n.k = d.alphabet.size();
    n.edges.resize(d.num_states());
    n.accepting.assign(d.accepting.begin(), d.accepting.end());
    n.initial = {d.initial};
    for (int q = 0; q < d.num_states(); ++q)
        for (int a = 0; a < n.k; ++a)
            n.edges[q].push_back({a, d.step(q, a)});
    return n;
}

// appends all states of src into dst, returns the offset
inline int nfa_append(Nfa& dst, const Nfa& src) {
    int off = static_cast<int>(dst.edges.size());
    for (size_t q = 0; q < src.edges.size(); ++q) {
        int s = dst.add_state();
        dst.accepting[s] = src.accepting[q];
        for (auto [a, to] : src.edges[q])
            dst.edges[s].push_back({a, to + off});
    }
    return off;
}

inline void eps_close(const Nfa& n, std::set<int>& states) {
    std::vector<int> stack(states.begin(), states.end());
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (auto [a, to] : n.edges[q])
            if (a < 0 && states.insert(to).second)
                stack.push_back(to);
    }
}

inline Dfa determinize(const Nfa& n, const Alphabet& alpha) {
    std::map<std::set<int>, int> ids;
    std::vector<std::set<int>> subsets;
    std::set<int> start(n.initial.begin(), n.initial.end());
    eps_close(n, start);
    ids.emplace(start, 0);
    subsets.push_back(start);

    Dfa d;
    d.alphabet = alpha;
    const int k = alpha.size();
    for (size_t i = 0; i < subsets.size(); ++i) {
        if (d.trans.size() < (i + 1) * k)
            d.trans.resize((i + 1) * k);
        bool acc = false;
        for (int q : subsets[i])
            acc = acc || n.accepting[q];
        if (d.accepting.size() < i + 1)
            d.accepting.resize(i + 1);
        d.accepting[i] = acc;
        for (int a = 0; a < k; ++a) {
            std::set<int> next;
            for (int q : subsets[i])
                for (auto [b, to] : n.edges[q])
                    if (b == a)
                        next.insert(to);
            eps_close(n, next);
            auto [it, fresh] = ids.emplace(next, static_cast<int>(subsets.size()));
            if (fresh)
                subsets.push_back(next);
            d.trans[i * k + a] = it->second;
        }
    }
    return minimized(d);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Language algebra

enum class BoolOp { union_, intersect, complement, difference };

inline Dfa complement(const Dfa& d) {
    Dfa out = d;
    for (size_t i = 0; i < out.accepting.size(); ++i)
        out.accepting[i] = !out.accepting[i];
    return minimized(out);
}

namespace detail {

template <class Combine>
inline Dfa product(const Dfa& l, const Dfa& r, Combine comb) {
    if (l.alphabet != r.alphabet)
        throw std::invalid_argument("alphabet mismatch");
    const int k = l.alphabet.size();
    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> pairs;
    ids.emplace(std::pair{l.initial, r.initial}, 0);
    pairs.push_back({l.initial, r.initial});
    Dfa d;
    d.alphabet = l.alphabet;
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [ql, qr] = pairs[i];
        d.accepting.resize(pairs.size());
        d.trans.resize(pairs.size() * k);
        d.accepting[i] = comb(l.accepting[ql], r.accepting[qr]);
        for (int a = 0; a < k; ++a) {
            std::pair<int, int> next{l.step(ql, a), r.step(qr, a)};
            auto [it, fresh] = ids.emplace(next, static_cast<int>(pairs.size()));
            if (fresh)
                pairs.push_back(next);
            d.trans[i * k + a] = it->second;
        }
    }
    return minimized(d);
}

}  // namespace detail

inline Dfa intersect(const Dfa& l, const Dfa& r) {
    return detail::product(l, r, [](bool a, bool b) { return a && b; });
}

inline Dfa unite(const Dfa& l, const Dfa& r) {
    return detail::product(l, r, [](bool a, bool b) { return a || b; });
}

inline Dfa difference(const Dfa& l, const Dfa& r) {
    return detail::product(l, r, [](bool a, bool b) { return a && !b; });
}

inline Dfa bool_op(BoolOp op, const Dfa& l, const Dfa* r = nullptr) {
    switch (op) {
        case BoolOp::complement:
            return complement(l);
        case BoolOp::union_:
            return unite(l, *r);
        case BoolOp::intersect:
            return intersect(l, *r);
        case BoolOp::difference:
            return difference(l, *r);
    }
    throw std::logic_error("bad op");
}

inline Dfa concat(const Dfa& l, const Dfa& r) {
    if (l.alphabet != r.alphabet)
        throw std::invalid_argument("alphabet mismatch");
    detail::Nfa n = detail::nfa_of(l);
    int off = detail::nfa_append(n, detail::nfa_of(r));
    for (int q = 0; q < off; ++q)
        if (n.accepting[q]) {
            n.accepting[q] = false;
            n.edges[q].push_back({-1, off + r.initial});
        }
    return detail::determinize(n, l.alphabet);
}

inline Dfa star(const Dfa& d) {
    detail::Nfa n = detail::nfa_of(d);
    int s = n.add_state();
    n.accepting[s] = true;
    n.edges[s].push_back({-1, d.initial});
    for (int q = 0; q + 1 < static_cast<int>(n.edges.size()); ++q)
        if (n.accepting[q])
            n.edges[q].push_back({-1, s});
    n.initial = {s};
    return detail::determinize(n, d.alphabet);
}

inline Dfa plus(const Dfa& d) { return concat(d, star(d)); }

// d-fold concatenation; pow(d, 0) = {epsilon}
inline Dfa pow(const Dfa& d, int exponent) {
    Dfa acc = dfa_epsilon(d.alphabet);
    for (int i = 0; i < exponent; ++i)
        acc = concat(acc, d);
    return acc;
}

inline Dfa quotient_left(std::string_view w, const Dfa& d) {
    Dfa out = d;
    out.initial = d.run(d.initial, w);
    return minimized(out);
}

inline Dfa quotient_right(std::string_view w, const Dfa& d) {
    Dfa out = d;
    for (int q = 0; q < d.num_states(); ++q)
        out.accepting[q] = d.accepting[d.run(q, w)];
    return minimized(out);
}

enum class QuotientSide { left, right };

inline Dfa quotient(QuotientSide side, std::string_view w, const Dfa& d) {
    return side == QuotientSide::left ? quotient_left(w, d) : quotient_right(w, d);
}

inline Dfa dfa_word(const Alphabet& alpha, std::string_view w) {
    Dfa d = dfa_epsilon(alpha);
    for (char c : w)
        d = concat(d, dfa_letter(alpha, c));
    return d;
}

inline bool is_empty(const Dfa& d) {
    // canonical DFAs are trim, but accept any input
    std::vector<bool> seen(d.num_states(), false);
    std::vector<int> stack{d.initial};
    seen[d.initial] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        if (d.accepting[q])
            return false;
        for (int a = 0; a < d.alphabet.size(); ++a)
            if (!seen[d.step(q, a)]) {
                seen[d.step(q, a)] = true;
                stack.push_back(d.step(q, a));
            }
    }
    return true;
}

inline bool is_universal(const Dfa& d) { return is_empty(complement(d)); }

inline bool subset_of(const Dfa& l, const Dfa& r) { return is_empty(difference(l, r)); }

inline bool same_language(const Dfa& l, const Dfa& r) {
    return minimized(l) == minimized(r);
}

// All members of length <= maxlen, in length-lexicographic order.
inline std::vector<std::string> enumerate(const Dfa& d, int maxlen) {
    const int k = d.alphabet.size();
    const int n = d.num_states();
    // can_end[len][q]: some accepting state reachable from q in exactly len steps
    std::vector<std::vector<char>> can_end(maxlen + 1, std::vector<char>(n, 0));
    for (int q = 0; q < n; ++q)
        can_end[0][q] = d.accepting[q];
    for (int len = 1; len <= maxlen; ++len)
        for (int q = 0; q < n; ++q)
            for (int a = 0; a < k && !can_end[len][q]; ++a)
                can_end[len][q] = can_end[len - 1][d.step(q, a)];

    std::vector<std::string> out;
    std::string word;
    auto dfs = [&](auto&& self, int q, int remaining) -> void {
        if (remaining == 0) {
            out.push_back(word);
            return;
        }
        for (int a = 0; a < k; ++a)
            if (can_end[remaining - 1][d.step(q, a)]) {
                word.push_back(d.alphabet.letter(a));
                self(self, d.step(q, a), remaining - 1);
                word.pop_back();
            }
    };
    for (int len = 0; len <= maxlen; ++len)
        if (can_end[len][d.initial])
            dfs(dfs, d.initial, len);
    return out;
}

// Length-lexicographically least member, if any.
inline std::optional<std::string> shortest_word(const Dfa& d) {
    std::vector<int> parent(d.num_states(), -1), via(d.num_states(), -1);
    std::deque<int> queue{d.initial};
    std::vector<bool> seen(d.num_states(), false);
    seen[d.initial] = true;
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        if (d.accepting[q]) {
            std::string w;
            for (int s = q; via[s] >= 0; s = parent[s])
                w.push_back(d.alphabet.letter(via[s]));
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (int a = 0; a < d.alphabet.size(); ++a) {
            int to = d.step(q, a);
            if (!seen[to]) {
                seen[to] = true;
                parent[to] = q;
                via[to] = a;
                queue.push_back(to);
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Regex compilation

inline Dfa compile(const RegexAst& ast, const Alphabet& alpha) {
    using K = RegexAst::Kind;
    switch (ast.kind) {
        case K::empty:
            return dfa_empty(alpha);
        case K::epsilon:
            return dfa_epsilon(alpha);
        case K::letter:
            return dfa_letter(alpha, ast.letter);
        case K::union_:
            return unite(compile(*ast.left, alpha), compile(*ast.right, alpha));
        case K::intersect:
            return intersect(compile(*ast.left, alpha), compile(*ast.right, alpha));
        case K::complement:
            return complement(compile(*ast.left, alpha));
        case K::concat:
            return concat(compile(*ast.left, alpha), compile(*ast.right, alpha));
        case K::star:
            return star(compile(*ast.left, alpha));
    }
    throw std::logic_error("bad ast");
}

inline Dfa compile_regex(std::string_view text, const Alphabet& alpha) {
    return compile(*parse_regex(text, alpha), alpha);
}

// ---------------------------------------------------------------------------
// DFA file format: line-oriented
//   alphabet: ab
//   states: n
//   initial: i
//   accepting: i j ...
//   trans q a q'

inline std::string format_dfa(const Dfa& d) {
    std::ostringstream os;
    os << "alphabet: " << d.alphabet.letters << "\n";
    os << "states: " << d.num_states() << "\n";
    os << "initial: " << d.initial << "\n";
    os << "accepting:";
    for (int q = 0; q < d.num_states(); ++q)
        if (d.accepting[q])
            os << ' ' << q;
    os << "\n";
    for (int q = 0; q < d.num_states(); ++q)
        for (int a = 0; a < d.alphabet.size(); ++a)
            os << "trans " << q << ' ' << d.alphabet.letter(a) << ' ' << d.step(q, a) << "\n";
    return os.str();
}

inline Dfa parse_dfa(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    Dfa d;
    int nstates = -1;
    std::vector<std::array<int, 3>> edges;  // (q, a, q')
    std::vector<int> accepting;
    int initial = 0;
    std::string letters;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key.empty() || key[0] == '#')
            continue;
        if (key == "alphabet:") {
            ls >> letters;
        } else if (key == "states:") {
            ls >> nstates;
        } else if (key == "initial:") {
            ls >> initial;
        } else if (key == "accepting:") {
            int q;
            while (ls >> q)
                accepting.push_back(q);
        } else if (key == "trans") {
            int q, qq;
            char a;
            if (!(ls >> q >> a >> qq))
                throw std::invalid_argument("bad trans line: " + line);
            edges.push_back({q, a, qq});
        } else {
            throw std::invalid_argument("bad DFA line: " + line);
        }
    }
    if (letters.empty() || nstates <= 0)
        throw std::invalid_argument("DFA file missing alphabet/states");
    d.alphabet = Alphabet::of(letters);
    d.initial = initial;
    d.accepting.assign(nstates, false);
    for (int q : accepting) {
        if (q < 0 || q >= nstates)
            throw std::invalid_argument("accepting state out of range");
        d.accepting[q] = true;
    }
    d.trans.assign(static_cast<size_t>(nstates) * d.alphabet.size(), -1);
    for (auto [q, a, qq] : edges) {
        int ai = d.alphabet.index(static_cast<char>(a));
        if (q < 0 || q >= nstates || qq < 0 || qq >= nstates || ai < 0)
            throw std::invalid_argument("bad transition");
        d.trans[static_cast<size_t>(q) * d.alphabet.size() + ai] = qq;
    }
    for (int v : d.trans)
        if (v < 0)
            throw std::invalid_argument("DFA transition function not total");
    if (initial < 0 || initial >= nstates)
        throw std::invalid_argument("initial state out of range");
    return d;
}

}  // namespace sfc
