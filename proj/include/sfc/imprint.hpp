// imprint.hpp -- the fixpoint engines behind SF(C)-covering.
//
// Finite C: the least set of pairs (class, r) in (A*/~C) x R closed under
// trivial elements, downset, multiplication, and the SF(C)-closure
// (E, r^omega + r^{omega+1}) on idempotent classes E.
//
// Group-language C: the least S subseteq R closed under downset,
// multiplication, SF(C)-closure, and the C-operation iota_C[eta_{rho,S}]
// subseteq S, where eta_{rho,S}(a) = S.{rho(a)}.S and iota is computed from
// the epsilon-separability oracle.
//
// Downward-closed sets are carried as antichains of maximal elements; every
// rule is monotone for the canonical order, so nothing is lost.  Each engine
// is a single-threaded monotone worklist; an optional seed shuffles the
// processing order (the result must not change, and tests check that).

#pragma once

#include <deque>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sfc/baseclass.hpp"
#include "sfc/semiring.hpp"
#include "sfc/stutter.hpp"

namespace sfc {

struct EngineOptions {
    int max_entries = 200000;    // derivation-log budget per saturation run
    int max_values = 20000;      // reachable rating values per iota pass
    uint64_t shuffle_seed = 0;   // 0 = deterministic FIFO worklist
};

struct Derivation {
    enum class Rule { seed_eps, seed_letter, mult, sf_closure, c_operation, letter };
    Rule rule;
    int parent1 = -1;
    int parent2 = -1;
    std::string note;  // seed letter, or a witness word for c_operation values
};

inline const char* rule_name(Derivation::Rule r) {
    switch (r) {
        case Derivation::Rule::seed_eps: return "trivial(epsilon)";
        case Derivation::Rule::seed_letter: return "trivial(letter)";
        case Derivation::Rule::mult: return "multiplication";
        case Derivation::Rule::sf_closure: return "sf-closure";
        case Derivation::Rule::c_operation: return "c-operation";
        case Derivation::Rule::letter: return "trivial(letter)";
    }
    return "?";
}

struct FixpointLog {
    struct Entry {
        int cls;  // -1 when the engine has no class component
        DynBitset val;
        Derivation how;
    };
    std::vector<Entry> entries;
};

namespace detail {

// One row per ~C-class: an antichain plus the log index of each maximal
// element.  Dominated elements are dropped from the row but stay in the log.
struct Rows {
    struct Item {
        DynBitset val;
        int entry;
    };
    std::vector<std::vector<Item>> rows;

    bool contains(int cls, const DynBitset& x) const {
        for (const auto& it : rows[cls])
            if (x.subset_of(it.val))
                return true;
        return false;
    }

    // -1 if dominated, else the new log-entry id supplied by the caller
    bool insert(int cls, const DynBitset& x, int entry) {
        if (contains(cls, x))
            return false;
        auto& row = rows[cls];
        std::erase_if(row, [&](const Item& it) { return it.val.subset_of(x); });
        row.push_back({x, entry});
        return true;
    }

    bool live(int cls, const DynBitset& x) const {
        for (const auto& it : rows[cls])
            if (it.val == x)
                return true;
        return false;
    }
};

class Worklist {
public:
    explicit Worklist(uint64_t shuffle_seed) : rng_(shuffle_seed), shuffle_(shuffle_seed != 0) {}

    void push(int idx) { pending_.push_back(idx); }
    bool empty() const { return pending_.empty(); }

    int pop() {
        if (!shuffle_) {
            int idx = pending_.front();
            pending_.pop_front();
            return idx;
        }
        size_t at = rng_() % pending_.size();
        int idx = pending_[at];
        pending_[at] = pending_.back();
        pending_.pop_back();
        return idx;
    }

private:
    std::deque<int> pending_;
    std::mt19937_64 rng_;
    bool shuffle_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Finite-C engine

struct SaturatedSet {
    int num_classes = 0;
    detail::Rows rows;   // maxima per class
    FixpointLog log;
    int iterations = 0;  // processed worklist items

    bool contains(int cls, const DynBitset& r) const { return rows.contains(cls, r); }

    Antichain row(int cls) const {
        Antichain a;
        for (const auto& it : rows.rows[cls])
            a.insert(it.val);
        return a;
    }
};

namespace detail {

// Shared mult/sf closure loop.  `cls_mul`/`cls_idem` abstract the class
// component away so the group engine can reuse it with a single class.
template <class ClsMul, class ClsIdem>
inline void close_rows(Rows& rows, FixpointLog& log, Worklist& wl,
                       const PowersetSemiring& R, ClsMul cls_mul, ClsIdem cls_idem,
                       const EngineOptions& opts, int* iterations) {
    auto insert = [&](int cls, const DynBitset& val, Derivation how) {
        if (static_cast<int>(log.entries.size()) >= opts.max_entries)
            throw BudgetError("saturation exceeded the derivation budget");
        if (!rows.contains(cls, val)) {
            log.entries.push_back({cls, val, how});
            rows.insert(cls, val, static_cast<int>(log.entries.size()) - 1);
            wl.push(static_cast<int>(log.entries.size()) - 1);
        }
    };

    while (!wl.empty()) {
        int at = wl.pop();
        const int cls = log.entries[at].cls;
        const DynBitset val = log.entries[at].val;
        if (!rows.live(cls, val))
            continue;  // dominated since queued; the dominator covers it
        ++*iterations;

        if (cls_idem(cls))
            insert(cls, R.omega_sum(val),
                   {Derivation::Rule::sf_closure, at, -1, ""});

        // snapshot: inserts may invalidate row iterators
        std::vector<std::pair<int, Rows::Item>> snapshot;
        for (int c = 0; c < static_cast<int>(rows.rows.size()); ++c)
            for (const auto& it : rows.rows[c])
                snapshot.push_back({c, it});
        for (const auto& [c, it] : snapshot) {
            insert(cls_mul(cls, c), R.mul(val, it.val),
                   {Derivation::Rule::mult, at, it.entry, ""});
            insert(cls_mul(c, cls), R.mul(it.val, val),
                   {Derivation::Rule::mult, it.entry, at, ""});
        }
    }
}

}  // namespace detail

// Least SF(C)-saturated subset of (A*/~C) x R for rho, C finite.  Seeds are
// epsilon and the letters; every other trivial pair (|w|, rho(w)) follows by
// the multiplication rule since both coordinates are morphic.
inline SaturatedSet saturate_finite(const RatingMap<PowersetSemiring>& rho,
                                    const BaseClass& c,
                                    const EngineOptions& opts = {}) {
    if (!c.is_finite())
        throw std::invalid_argument("finite-kind base class required");
    const PowersetSemiring& R = *rho.semiring;

    SaturatedSet s;
    s.num_classes = c.class_count();
    s.rows.rows.resize(s.num_classes);
    detail::Worklist wl(opts.shuffle_seed);

    auto seed = [&](int cls, const DynBitset& val, Derivation how) {
        if (!s.rows.contains(cls, val)) {
            s.log.entries.push_back({cls, val, how});
            s.rows.insert(cls, val, static_cast<int>(s.log.entries.size()) - 1);
            wl.push(static_cast<int>(s.log.entries.size()) - 1);
        }
    };
    seed(c.canon.target.identity, R.one(), {Derivation::Rule::seed_eps, -1, -1, ""});
    for (int a = 0; a < rho.alphabet.size(); ++a)
        seed(c.canon.letter_img[a], rho.of_letter(a),
             {Derivation::Rule::seed_letter, -1, -1, std::string(1, rho.alphabet.letter(a))});

    detail::close_rows(
        s.rows, s.log, wl, R, [&](int x, int y) { return c.class_mul(x, y); },
        [&](int cls) { return c.class_idempotent(cls); }, opts, &s.iterations);
    return s;
}

// Re-runs the closure on an already saturated set; returns true if anything
// grew (it must not).
inline bool resaturate(SaturatedSet& s, const RatingMap<PowersetSemiring>& rho,
                       const BaseClass& c, const EngineOptions& opts = {}) {
    size_t before = s.log.entries.size();
    detail::Worklist wl(opts.shuffle_seed);
    for (int cls = 0; cls < s.num_classes; ++cls)
        for (const auto& it : s.rows.rows[cls])
            wl.push(it.entry);
    detail::close_rows(
        s.rows, s.log, wl, *rho.semiring, [&](int x, int y) { return c.class_mul(x, y); },
        [&](int cls) { return c.class_idempotent(cls); }, opts, &s.iterations);
    return s.log.entries.size() != before;
}

// ---------------------------------------------------------------------------
// Optimal epsilon-approximations

// iota_C[tau]: the sum of all reachable values q of tau* such that {epsilon}
// is not C-separable from tau_*^{-1}(q).  Preimages are materialized as DFAs
// on the reachable value graph.
template <class S>
struct IotaResult {
    typename S::Elem value;
    // contributing values with a shortest witness word each
    std::vector<std::pair<typename S::Elem, std::string>> contributions;
};

template <class S>
IotaResult<S> iota_eps(const RatingMap<S>& tau, const BaseClass& c,
                       const EngineOptions& opts = {}) {
    if (c.is_finite())
        throw std::invalid_argument("group-kind base class required");
    using Elem = typename S::Elem;
    const S& Q = *tau.semiring;
    const int k = tau.alphabet.size();

    // deterministic BFS over reachable values
    std::map<Elem, int> ids;
    std::vector<Elem> values;
    std::vector<std::string> witness;
    std::vector<int> trans;

    ids.emplace(Q.one(), 0);
    values.push_back(Q.one());
    witness.push_back("");
    for (size_t i = 0; i < values.size(); ++i) {
        trans.resize((i + 1) * k);
        for (int a = 0; a < k; ++a) {
            Elem next = Q.mul(values[i], tau.letter_val[a]);
            auto [it, fresh] = ids.emplace(next, static_cast<int>(values.size()));
            if (fresh) {
                values.push_back(std::move(next));
                witness.push_back(witness[i] + tau.alphabet.letter(a));
                if (static_cast<int>(values.size()) > opts.max_values)
                    throw BudgetError("rating map has too many reachable values");
            }
            trans[i * k + a] = it->second;
        }
    }

    IotaResult<S> out{Q.zero(), {}};
    for (size_t v = 0; v < values.size(); ++v) {
        Dfa pre;
        pre.alphabet = tau.alphabet;
        pre.initial = 0;
        pre.accepting.assign(values.size(), false);
        pre.accepting[v] = true;
        pre.trans = trans;
        pre = minimized(pre);
        if (!c.eps_separable(pre)) {
            out.value = Q.add(out.value, values[v]);
            out.contributions.push_back({values[v], witness[v]});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Group-C engine

struct CompleteSet {
    detail::Rows rows;  // single row 0
    FixpointLog log;
    int iterations = 0;
    int c_operations = 0;

    bool contains(const DynBitset& r) const { return rows.contains(0, r); }

    Antichain set() const {
        Antichain a;
        for (const auto& it : rows.rows[0])
            a.insert(it.val);
        return a;
    }
};

namespace detail {

inline bool complete_close(CompleteSet& s, const RatingMap<PowersetSemiring>& rho,
                           const BaseClass& c, const EngineOptions& opts) {
    const PowersetSemiring& R = *rho.semiring;
    size_t before = s.log.entries.size();

    for (;;) {
        // inner closure: multiplication + SF(C)-closure (downset implicit)
        Worklist wl(opts.shuffle_seed);
        for (const auto& it : s.rows.rows[0])
            wl.push(it.entry);
        close_rows(
            s.rows, s.log, wl, R, [](int, int) { return 0; }, [](int) { return true; },
            opts, &s.iterations);

        // C-operation: iota_C[eta_{rho,S}] with eta_S(a) = S.{rho(a)}.S
        AntichainSemiring Q(R);
        Antichain S = s.set();
        RatingMap<AntichainSemiring> eta;
        eta.alphabet = rho.alphabet;
        eta.semiring = &Q;
        for (int a = 0; a < rho.alphabet.size(); ++a)
            eta.letter_val.push_back(Q.mul(Q.mul(S, Antichain{{rho.of_letter(a)}}), S));

        auto iota = iota_eps(eta, c, opts);
        ++s.c_operations;
        bool grew = false;
        for (const auto& [val, word] : iota.contributions)
            for (const DynBitset& r : val.elems)
                if (!s.rows.contains(0, r)) {
                    if (static_cast<int>(s.log.entries.size()) >= opts.max_entries)
                        throw BudgetError("saturation exceeded the derivation budget");
                    s.log.entries.push_back(
                        {0, r, {Derivation::Rule::c_operation, -1, -1, word}});
                    s.rows.insert(0, r, static_cast<int>(s.log.entries.size()) - 1);
                    grew = true;
                }
        if (!grew)
            break;
    }
    return s.log.entries.size() != before;
}

}  // namespace detail

// Least SF(C)-complete subset of R for rho, C made of group languages.  The
// worklist starts empty; the first C-operation seeds 1_R via eta(epsilon).
inline CompleteSet saturate_group(const RatingMap<PowersetSemiring>& rho,
                                  const BaseClass& c,
                                  const EngineOptions& opts = {}) {
    if (c.is_finite())
        throw std::invalid_argument("group-kind base class required");
    CompleteSet s;
    s.rows.rows.resize(1);
    detail::complete_close(s, rho, c, opts);
    return s;
}

inline bool resaturate(CompleteSet& s, const RatingMap<PowersetSemiring>& rho,
                       const BaseClass& c, const EngineOptions& opts = {}) {
    return detail::complete_close(s, rho, c, opts);
}

// ---------------------------------------------------------------------------
// Full imprint on A*

struct ImprintResult {
    Antichain imprint;
    FixpointLog log;  // derivations for the maxima (and their ancestors)
};

// Finite kind: the optimal imprint on A* is the union over all classes.
inline ImprintResult full_imprint(const SaturatedSet& s) {
    ImprintResult out;
    out.log = s.log;
    for (const auto& row : s.rows.rows)
        for (const auto& it : row)
            out.imprint.insert(it.val);
    return out;
}

// Group kind: close iota union {rho(a) : a in A} under downset and
// multiplication (no SF-closure here).
inline ImprintResult full_imprint(const CompleteSet& s,
                                  const RatingMap<PowersetSemiring>& rho,
                                  const EngineOptions& opts = {}) {
    ImprintResult out;
    out.log = s.log;
    detail::Rows rows;
    rows.rows.resize(1);
    detail::Worklist wl(opts.shuffle_seed);
    for (const auto& it : s.rows.rows[0]) {
        rows.insert(0, it.val, it.entry);
        wl.push(it.entry);
    }
    for (int a = 0; a < rho.alphabet.size(); ++a) {
        const DynBitset& v = rho.of_letter(a);
        if (!rows.contains(0, v)) {
            out.log.entries.push_back(
                {0, v,
                 {Derivation::Rule::letter, -1, -1, std::string(1, rho.alphabet.letter(a))}});
            rows.insert(0, v, static_cast<int>(out.log.entries.size()) - 1);
            wl.push(static_cast<int>(out.log.entries.size()) - 1);
        }
    }
    int iters = 0;
    detail::close_rows(
        rows, out.log, wl, *rho.semiring, [](int, int) { return 0; },
        [](int) { return false; }, opts, &iters);
    for (const auto& it : rows.rows[0])
        out.imprint.insert(it.val);
    return out;
}

// ---------------------------------------------------------------------------
// Derivation rendering (the --trace certificate)

inline int find_entry(const FixpointLog& log, const DynBitset& val, int cls = -1) {
    for (int i = 0; i < static_cast<int>(log.entries.size()); ++i)
        if (log.entries[i].val == val && (cls < 0 || log.entries[i].cls == cls))
            return i;
    return -1;
}

inline void explain_entry(const FixpointLog& log, int idx, const PowersetSemiring& R,
                          const MonoidMorphism* names, const BaseClass* finite_base,
                          std::ostream& os, int depth = 0) {
    if (idx < 0 || idx >= static_cast<int>(log.entries.size()))
        return;
    const auto& e = log.entries[idx];
    for (int i = 0; i < depth; ++i)
        os << "  ";
    if (e.cls >= 0 && finite_base && finite_base->is_finite()) {
        const auto& w = finite_base->canon.witness[e.cls];
        os << '[' << (e.cls == finite_base->canon.target.identity ? "eps" : w) << "] ";
    }
    os << R.to_string(e.val, names) << "  <- " << rule_name(e.how.rule);
    if (!e.how.note.empty())
        os << " '" << (e.how.note.empty() ? "eps" : e.how.note) << "'";
    os << "\n";
    if (depth > 12) {
        for (int i = 0; i <= depth; ++i)
            os << "  ";
        os << "...\n";
        return;
    }
    explain_entry(log, e.how.parent1, R, names, finite_base, os, depth + 1);
    explain_entry(log, e.how.parent2, R, names, finite_base, os, depth + 1);
}

}  // namespace sfc
