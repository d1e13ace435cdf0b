#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "net.hpp"

namespace revnets {

// Relations induced by inhibitor arcs.
struct DerivedRelations {
    Rel lessdot;        // pre t ∩ inib t' ≠ ∅
    Rel prevention;     // post t ∩ inib t' ≠ ∅
    Rel leadsto;        // inverse of prevention
    Rel conflict;       // prevention ∩ prevention⁻¹, stored symmetrically
    Rel lessdot_trans;  // transitive closure of lessdot

    bool operator==(const DerivedRelations&) const = default;
};

[[nodiscard]] inline DerivedRelations derived_relations(const Ipt& n) {
    NetIndex ix(n);
    DerivedRelations d;
    for (const auto& t : n.transitions)
        for (const auto& u : n.transitions) {
            if (!disjoint(ix.pre(t), ix.inib(u))) d.lessdot.insert({t, u});
            if (!disjoint(ix.post(t), ix.inib(u))) d.prevention.insert({t, u});
        }
    d.leadsto = rel::inverse(d.prevention);
    d.conflict = rel::symmetric_part(d.prevention);
    d.lessdot_trans = rel::transitive_closure(d.lessdot);
    return d;
}

namespace detail {

inline void check_pacn_body(const Ipt& n, const NetIndex& ix, const DerivedRelations& d, Report& r) {
    const auto& T = n.transitions;
    for (const auto& t : T)
        for (const auto& u : T)
            for (const auto& s : intersect(ix.post(t), ix.pre(u)))
                r.fail("post-pre-disjoint", {t, u, s}, "place " + s + " is produced by " + t + " and consumed by " + u);

    for (const auto& t : T) {
        if (ix.pre(t).size() != 1)
            r.fail("singleton-pre", {t}, "transition " + t + " has preset " + show(ix.pre(t)));
        if (ix.post(t).size() != 1)
            r.fail("singleton-post", {t}, "transition " + t + " has postset " + show(ix.post(t)));
    }
    IdSet expected = minus(n.places, ix.post(T));
    for (const auto& s : minus(expected, n.marking))
        r.fail("initial-marking", {s}, "place " + s + " is not produced by any transition but is unmarked");
    for (const auto& s : minus(n.marking, expected))
        r.fail("initial-marking", {s}, "place " + s + " is produced by a transition but is initially marked");
    IdSet attached = unite(ix.pre(T), ix.post(T));
    for (const auto& [s, t] : n.inhibitor)
        if (!attached.count(s))
            r.fail("inhibitor-places", {s, t}, "inhibitor arc (" + s + "," + t + ") starts at an isolated place");

    if (auto cyc = rel::find_cycle(d.lessdot))
        r.fail("lessdot-partial-order", *cyc, "causality has a cycle " + join(*cyc, " < "));

    Rel both = unite(d.leadsto, d.lessdot);
    for (const auto& t : T) {
        IdSet hist = rel::down(d.lessdot, t);
        if (auto cyc = rel::find_cycle(rel::restrict(both, hist))) {
            std::vector<Id> w{t};
            w.insert(w.end(), cyc->begin(), cyc->end());
            r.fail("history-acyclic", w, "weak causality and causality form a cycle among the causes of " + t);
        }
    }

    for (const auto& t : T)
        for (const auto& u : T)
            if (!disjoint(ix.pre(t), ix.inib(u)) && !disjoint(ix.post(t), ix.inib(u)))
                r.fail("cause-not-prevent", {t, u}, t + " both causes and prevents " + u);

    for (const auto& t : T)
        for (const auto& u : T)
            if (t < u && (!disjoint(ix.pre(t), ix.pre(u)) || !disjoint(ix.post(t), ix.post(u))))
                r.fail("no-shared-places", {t, u}, "transitions " + t + " and " + u + " share a place");
}

inline void check_acn_extra(const Ipt& n, const DerivedRelations& d, Report& r) {
    for (const auto& p : d.lessdot_trans)
        if (!d.lessdot.count(p))
            r.fail("lessdot-saturated", {p.first, p.second},
                   "causality is not saturated: " + p.first + " transitively causes " + p.second);
    for (const auto& p : d.lessdot)
        if (!d.leadsto.count(p))
            r.fail("lessdot-implies-leadsto", {p.first, p.second},
                   p.first + " causes " + p.second + " but " + p.second + " does not inhibit " + p.first +
                       " through its postset");
    for (const auto& [t, u] : d.conflict)
        for (const auto& v : n.transitions)
            if (d.lessdot.count({u, v}) && !d.conflict.count({t, v}))
                r.fail("conflict-inheritance", {t, u, v},
                       t + " conflicts with " + u + " and " + u + " causes " + v + ", but " + t + " and " + v +
                           " are not in conflict");
}

}  // namespace detail

[[nodiscard]] inline Report validate_pacn(const Ipt& n) {
    check_well_formed(n);
    NetIndex ix(n);
    Report r;
    detail::check_pacn_body(n, ix, derived_relations(n), r);
    return r;
}

[[nodiscard]] inline Report validate_acn(const Ipt& n) {
    check_well_formed(n);
    NetIndex ix(n);
    auto d = derived_relations(n);
    Report r;
    detail::check_pacn_body(n, ix, d, r);
    detail::check_acn_extra(n, d, r);
    return r;
}

struct Configuration {
    IdSet events;
    std::vector<Id> linearization;

    bool operator==(const Configuration&) const = default;
};

// Topological order of `order` on xs, smallest name first among ready elements.
[[nodiscard]] inline std::vector<Id> linearize(const IdSet& xs, const Rel& order) {
    Rel r = rel::restrict(order, xs);
    std::map<Id, int> indeg;
    for (const auto& x : xs) indeg[x] = 0;
    for (const auto& [a, b] : r)
        if (a != b) ++indeg[b];
    std::set<Id> ready;
    for (const auto& [x, k] : indeg)
        if (k == 0) ready.insert(x);
    std::vector<Id> out;
    while (!ready.empty()) {
        Id x = *ready.begin();
        ready.erase(ready.begin());
        out.push_back(x);
        for (const auto& y : rel::image(r, x))
            if (y != x && --indeg[y] == 0) ready.insert(y);
    }
    if (out.size() != xs.size()) throw Error("order is cyclic on " + show(xs));
    return out;
}

[[nodiscard]] inline bool is_pacn_configuration(const DerivedRelations& d, const IdSet& x) {
    for (const auto& [a, b] : d.lessdot)
        if (x.count(b) && !x.count(a)) return false;
    return rel::acyclic(rel::restrict(unite(d.leadsto, d.lessdot), x));
}

enum class ConfigMethod { automatic, subsets, extension };

// Configurations sorted by event set, each with a witnessing linearization.
[[nodiscard]] inline std::vector<Configuration> pacn_configurations(const Ipt& n,
                                                                    ConfigMethod method = ConfigMethod::automatic) {
    if (!validate_pacn(n).pass()) throw Error("net is not a pACN");
    auto d = derived_relations(n);
    Rel order = unite(d.leadsto, d.lessdot);
    std::vector<Id> ts(n.transitions.begin(), n.transitions.end());
    std::set<IdSet> found;
    if (method == ConfigMethod::automatic) method = ts.size() <= 20 ? ConfigMethod::subsets : ConfigMethod::extension;
    if (method == ConfigMethod::subsets) {
        if (ts.size() > 20) throw Error("too many transitions for subset enumeration");
        for (std::size_t mask = 0; mask < (std::size_t{1} << ts.size()); ++mask) {
            IdSet x;
            for (std::size_t i = 0; i < ts.size(); ++i)
                if (mask >> i & 1) x.insert(ts[i]);
            if (is_pacn_configuration(d, x)) found.insert(x);
        }
    } else {
        // Every prefix of a linearization is itself a configuration.
        std::vector<IdSet> stack{IdSet{}};
        found.insert(IdSet{});
        while (!stack.empty()) {
            IdSet x = stack.back();
            stack.pop_back();
            for (const auto& t : ts) {
                if (x.count(t)) continue;
                IdSet y = x;
                y.insert(t);
                if (!found.count(y) && is_pacn_configuration(d, y)) {
                    found.insert(y);
                    stack.push_back(y);
                }
            }
        }
    }
    std::vector<Configuration> out;
    for (const auto& x : found) out.push_back({x, linearize(x, order)});
    return out;
}

// Transitions that produced some token of m.
[[nodiscard]] inline IdSet producers(const Ipt& n, const Marking& m) { return NetIndex(n).pre(m); }

[[nodiscard]] inline bool is_coherent(const Ipt& n, const Marking& m) {
    NetIndex ix(n);
    auto d = derived_relations(n);
    for (const auto& t : n.transitions)
        if (subset(ix.pre(t), m) == subset(ix.post(t), m)) return false;
    for (const auto& [t, u] : d.conflict)
        if (subset(ix.post(t), m) && subset(ix.post(u), m)) return false;
    return true;
}

[[nodiscard]] inline Marking relevant_marking(const Ipt& n, const Marking& m) {
    if (!is_coherent(n, m)) throw Error("marking " + show(m) + " is not coherent");
    NetIndex ix(n);
    auto d = derived_relations(n);
    IdSet drop;
    for (const auto& [t, u] : d.conflict)
        if (!disjoint(ix.post(u), m))
            for (const auto& s : intersect(ix.pre(t), m)) drop.insert(s);
    return minus(m, drop);
}

// Conflict used for CNs: inhibitor conflicts plus transitions sharing an input place.
[[nodiscard]] inline Rel cn_conflict(const Ipt& n) {
    NetIndex ix(n);
    Rel c = derived_relations(n).conflict;
    for (const auto& t : n.transitions)
        for (const auto& u : n.transitions)
            if (t != u && !disjoint(ix.pre(t), ix.pre(u))) c.insert({t, u});
    return c;
}

inline const char* kCnConflictNote =
    "conflict for CNs is taken as inhibitor conflict together with sharing of an input place";

[[nodiscard]] inline Report validate_cn(const Ipt& n) {
    check_well_formed(n);
    NetIndex ix(n);
    auto d = derived_relations(n);
    Rel conflict = cn_conflict(n);
    const auto& T = n.transitions;
    Report r;
    r.note(kCnConflictNote);

    for (const auto& t : T)
        for (const auto& u : T)
            for (const auto& s : intersect(ix.post(t), ix.pre(u)))
                r.fail("post-pre-disjoint", {t, u, s}, "place " + s + " is produced by " + t + " and consumed by " + u);
    for (const auto& t : T)
        for (const auto& u : T)
            if (t < u)
                for (const auto& s : intersect(ix.post(t), ix.post(u)))
                    r.fail("postsets-disjoint", {t, u, s}, "place " + s + " is produced by both " + t + " and " + u);
    IdSet inhibiting = ix.inib(T);
    for (const auto& t : T)
        for (const auto& u : T)
            if (t < u)
                for (const auto& s : intersect(intersect(ix.pre(t), ix.pre(u)), inhibiting))
                    r.fail("shared-place-not-inhibitor", {t, u, s},
                           "shared input place " + s + " of " + t + " and " + u + " is also an inhibitor");
    if (!rel::irreflexive(d.lessdot)) {
        for (const auto& [a, b] : d.lessdot)
            if (a == b) r.fail("lessdot-partial-order", {a, b}, a + " causes itself");
    }
    for (const auto& p : rel::compose(d.lessdot, d.lessdot))
        if (!d.lessdot.count(p) && p.first != p.second)
            r.fail("lessdot-partial-order", {p.first, p.second}, "causality is not transitive on " + p.first + "," + p.second);
    for (const auto& t : T) {
        IdSet hist = rel::down(d.lessdot, t);
        for (const auto& [a, b] : conflict)
            if (a < b && hist.count(a) && hist.count(b))
                r.fail("history-conflict-free", {t, a, b}, "causes " + a + " and " + b + " of " + t + " conflict");
    }
    for (const auto& [t, u] : conflict)
        for (const auto& v : T)
            if (d.lessdot.count({u, v}) && !conflict.count({t, v}))
                r.fail("conflict-inheritance", {t, u, v},
                       t + " conflicts with " + u + " and " + u + " causes " + v + ", but " + t + " and " + v +
                           " are not in conflict");
    IdSet pre_t = ix.pre(T);
    for (const auto& s : minus(n.marking, pre_t))
        r.fail("initial-marking", {s}, "marked place " + s + " is not an input place");
    for (const auto& s : minus(pre_t, n.marking))
        r.fail("initial-marking", {s}, "input place " + s + " is not marked");
    for (const auto& [s, t] : n.inhibitor)
        if (!n.marking.count(s))
            r.fail("inhibitor-places", {s, t}, "inhibitor arc (" + s + "," + t + ") starts at an unmarked place");
    return r;
}

enum class CnArcs {
    postsets,  // (p, u) for p in the postset of a competitor t of u
    presets,   // (p, u) for p in the preset of t; deadlocks every competing pair
};

// Drops shared input places and replaces each such conflict by inhibitor
// arcs from one competitor to the other.
[[nodiscard]] inline Ipt cn_to_acn(const Ipt& c, CnArcs arcs = CnArcs::postsets) {
    if (!validate_cn(c).pass()) throw Error("net is not a CN");
    NetIndex ix(c);
    IdSet shared;
    for (const auto& s : c.places)
        if (ix.post(s).size() > 1) shared.insert(s);
    Ipt w;
    w.places = minus(c.places, shared);
    w.transitions = c.transitions;
    for (const auto& [x, y] : c.flow)
        if (!shared.count(x) && !shared.count(y)) w.flow.insert({x, y});
    w.inhibitor = c.inhibitor;
    for (const auto& s : shared)
        for (const auto& t : ix.post(s))
            for (const auto& u : ix.post(s))
                if (t != u) {
                    IdSet from = arcs == CnArcs::postsets ? ix.post(t) : minus(ix.pre(t), shared);
                    for (const auto& p : from) w.inhibitor.insert({p, u});
                }
    w.marking = minus(c.marking, shared);
    return w;
}

}  // namespace revnets
