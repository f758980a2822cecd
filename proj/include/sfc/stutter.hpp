// stutter.hpp -- C-stutters of a morphism, C-aperiodicity, and membership
// in the star-free closure SF(C) via the algebraic characterization: a
// regular language is in SF(C) iff its syntactic morphism is C-aperiodic.

#pragma once

#include <optional>
#include <vector>

#include "sfc/baseclass.hpp"
#include "sfc/monoid.hpp"

namespace sfc {

struct StutterReport {
    // one entry per element of the morphism image, in image_set order
    struct Item {
        int element;
        bool stutter;
        // finite kind: an idempotent ~C-class meeting alpha^{-1}(element),
        // when the element is a stutter
        std::optional<int> witness_class;
    };
    std::vector<Item> items;

    bool is_stutter(int element) const {
        for (const auto& it : items)
            if (it.element == element)
                return it.stutter;
        return false;
    }
    std::vector<int> stutters() const {
        std::vector<int> out;
        for (const auto& it : items)
            if (it.stutter)
                out.push_back(it.element);
        return out;
    }
};

// Finite C: s is a stutter iff some idempotent ~C-class E meets
// alpha^{-1}(s).  The ~C-class partition is the hardest C-cover: any cover
// coarsens it, and K cap KK != empty for a union of classes reduces to an
// idempotent constituent class meeting the set.  Intersections are decided
// by product-automaton emptiness.
inline StutterReport stutters_finite(const MonoidMorphism& alpha, const BaseClass& c) {
    if (!c.is_finite())
        throw std::invalid_argument("finite-kind base class required");
    std::vector<int> idem_classes;
    for (int e = 0; e < c.class_count(); ++e)
        if (c.class_idempotent(e))
            idem_classes.push_back(e);

    StutterReport report;
    for (int s : alpha.image_set) {
        Dfa pre = preimage_dfa(alpha, {s});
        StutterReport::Item item{s, false, std::nullopt};
        for (int e : idem_classes) {
            if (!is_empty(intersect(pre, c.class_language({e})))) {
                item.stutter = true;
                item.witness_class = e;
                break;
            }
        }
        report.items.push_back(item);
    }
    return report;
}

// Group-language C: s is a stutter iff {epsilon} is NOT C-separable from
// alpha^{-1}(s).
inline StutterReport stutters_group(const MonoidMorphism& alpha, const BaseClass& c) {
    if (c.is_finite())
        throw std::invalid_argument("group-kind base class required");
    StutterReport report;
    for (int s : alpha.image_set) {
        Dfa pre = preimage_dfa(alpha, {s});
        report.items.push_back({s, !c.eps_separable(pre), std::nullopt});
    }
    return report;
}

inline StutterReport stutters(const MonoidMorphism& alpha, const BaseClass& c) {
    return c.is_finite() ? stutters_finite(alpha, c) : stutters_group(alpha, c);
}

struct AperiodicityResult {
    bool aperiodic;
    StutterReport report;
    // on failure: the violating stutter with its omega data
    std::optional<int> bad_element;
    std::optional<FiniteMonoid::OmegaInfo> bad_omega;
};

// alpha is C-aperiodic iff every C-stutter s satisfies s^omega = s^{omega+1}.
inline AperiodicityResult is_c_aperiodic(const MonoidMorphism& alpha, const BaseClass& c) {
    AperiodicityResult res{true, stutters(alpha, c), std::nullopt, std::nullopt};
    for (const auto& item : res.report.items) {
        if (!item.stutter)
            continue;
        auto w = alpha.target.omega(item.element);
        if (w.omega != w.omega_plus_1) {
            res.aperiodic = false;
            res.bad_element = item.element;
            res.bad_omega = w;
            break;
        }
    }
    return res;
}

// L in SF(C) iff the syntactic morphism of L is C-aperiodic.
inline bool membership(const Dfa& L, const BaseClass& c) {
    return is_c_aperiodic(syntactic_morphism(L).morphism, c).aperiodic;
}

}  // namespace sfc
