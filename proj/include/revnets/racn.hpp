#pragma once

#include <deque>
#include <map>
#include <string>
#include <utility>

#include "acn.hpp"
#include "core.hpp"
#include "maps.hpp"
#include "net.hpp"

namespace revnets {

struct Racn {
    Ipt net;
    std::map<Id, Id> reverses;  // backward -> forward

    [[nodiscard]] IdSet backward() const {
        IdSet b;
        for (const auto& [k, _] : reverses) b.insert(k);
        return b;
    }
    [[nodiscard]] IdSet forward() const { return minus(net.transitions, backward()); }

    // The backward transition reversing t, if any.
    [[nodiscard]] const Id* undo_of(const Id& t) const {
        for (const auto& [b, f] : reverses)
            if (f == t) return &b;
        return nullptr;
    }

    bool operator==(const Racn&) const = default;
};

[[nodiscard]] inline Ipt restrict_transitions(const Ipt& n, const IdSet& keep) {
    Ipt out;
    out.places = n.places;
    out.transitions = intersect(n.transitions, keep);
    for (const auto& [x, y] : n.flow)
        if (keep.count(x) || keep.count(y)) out.flow.insert({x, y});
    for (const auto& [s, t] : n.inhibitor)
        if (keep.count(t)) out.inhibitor.insert({s, t});
    out.marking = n.marking;
    return out;
}

[[nodiscard]] inline Ipt forward_restriction(const Racn& v) { return restrict_transitions(v.net, v.forward()); }

struct BackwardRelations {
    Rel rev_causation;   // (t, ū): pre t ∩ inib ū ≠ ∅
    Rel rev_prevention;  // (ū, t): post t ∩ inib ū ≠ ∅
    Rel sustained;
    std::map<Id, IdSet> K;

    bool operator==(const BackwardRelations&) const = default;
};

namespace detail {

inline Rel sustained_lessdot(const Racn& v, const NetIndex& ix, const Rel& lessdot) {
    Rel base;
    for (const auto& [t, u] : lessdot) {
        const Id* b = v.undo_of(t);
        if (!b || !disjoint(ix.inib(*b), ix.post(u))) base.insert({t, u});
    }
    return rel::transitive_closure(base);
}

inline BackwardRelations backward_relations_raw(const Racn& v) {
    NetIndex ix(v.net);
    IdSet F = v.forward();
    BackwardRelations br;
    for (const auto& b : v.backward()) {
        br.K[b];
        for (const auto& t : F) {
            if (!disjoint(ix.pre(t), ix.inib(b))) {
                br.rev_causation.insert({t, b});
                br.K[b].insert(t);
            }
            if (!disjoint(ix.post(t), ix.inib(b))) br.rev_prevention.insert({b, t});
        }
    }
    br.sustained = sustained_lessdot(v, ix, derived_relations(forward_restriction(v)).lessdot);
    return br;
}

}  // namespace detail

[[nodiscard]] inline Report validate_racn(const Racn& v) {
    check_well_formed(v.net);
    Report r;
    const auto& T = v.net.transitions;
    std::map<Id, Id> seen;
    for (const auto& [b, f] : v.reverses) {
        if (!T.count(b)) r.fail("partition", {b}, "backward transition " + b + " is not declared");
        if (!T.count(f)) r.fail("partition", {f}, "reversed transition " + f + " is not declared");
        if (v.reverses.count(f)) r.fail("partition", {b, f}, b + " reverses the backward transition " + f);
        if (auto it = seen.find(f); it != seen.end())
            r.fail("partition", {it->second, b}, it->second + " and " + b + " both reverse " + f);
        seen[f] = b;
    }
    if (!r.pass()) return r;

    Ipt fwd = forward_restriction(v);
    r.merge(validate_pacn(fwd), "forward-pacn:");

    NetIndex ix(v.net);
    IdSet F = v.forward();
    for (const auto& [b, f] : v.reverses) {
        std::vector<Id> matches;
        for (const auto& t : F)
            if (ix.post(t) == ix.pre(b) && ix.pre(t) == ix.post(b) && subset(ix.pre(t), ix.inib(b)))
                matches.push_back(t);
        if (matches.size() != 1 || matches.front() != f)
            r.fail("reversal-pairing", {b},
                   b + " must swap the pre- and postset of exactly one forward transition (declared " + f +
                       ") and be inhibited by its preset");
    }

    auto d = derived_relations(fwd);
    auto br = detail::backward_relations_raw(v);
    for (const auto& [b, k] : br.K)
        if (auto cyc = rel::find_cycle(rel::restrict(d.leadsto, k))) {
            std::vector<Id> w{b};
            w.insert(w.end(), cyc->begin(), cyc->end());
            r.fail("undo-history-acyclic", w, "weak causality has a cycle among the causes of " + b);
        }
    for (const auto& b : v.backward())
        for (const auto& t : F)
            if (!disjoint(ix.pre(t), ix.inib(b)) && !disjoint(ix.post(t), ix.inib(b)))
                r.fail("undo-cause-not-prevent", {b, t}, t + " both enables and prevents " + b);
    for (const auto& [t, u] : d.conflict)
        for (const auto& w : F)
            if (br.sustained.count({u, w}) && !d.conflict.count({t, w}))
                r.fail("sustained-conflict-inheritance", {t, u, w},
                       t + " conflicts with " + u + " and " + u + " sustains " + w + ", but " + t + " and " + w +
                           " are not in conflict");
    return r;
}

[[nodiscard]] inline BackwardRelations backward_relations(const Racn& v) {
    if (!validate_racn(v).pass()) throw Error("net is not an rACN");
    return detail::backward_relations_raw(v);
}

// Nodes are X = pre(m) ∩ forward over reachable markings m. Backward
// firings are labelled by the forward transition they undo.
[[nodiscard]] inline ConfigGraph racn_configurations(const Racn& v, std::size_t bound = kDefaultBound) {
    if (!validate_racn(v).pass()) throw Error("net is not an rACN");
    auto g = reachable_markings(v.net, bound);
    NetIndex ix(v.net);
    IdSet F = v.forward();
    auto config = [&](const Marking& m) { return intersect(ix.pre(m), F); };
    ConfigGraph out;
    std::map<IdSet, Marking> owner;
    for (const auto& m : g.markings) {
        IdSet x = config(m);
        auto [it, fresh] = owner.emplace(x, m);
        if (!fresh && it->second != m)
            out.diagnostics.push_back("configuration " + show(x) + " is reached by markings " + show(it->second) +
                                      " and " + show(m));
        out.nodes.insert(x);
    }
    for (const auto& e : g.edges) {
        StepLabel l;
        if (F.count(e.transition)) l.add = {e.transition};
        else l.undo = {v.reverses.at(e.transition)};
        out.edges.insert({config(g.markings[e.from]), l, config(g.markings[e.to])});
    }
    return out;
}

enum class CrossArcs {
    all,       // every place of one component inhibits every transition of the other
    postsets,  // only places in a postset of the other component
};

struct RacnCoproduct {
    Racn sum;
    NetMorphism in0;
    NetMorphism in1;
};

[[nodiscard]] inline Id tag(int i, const Id& x) { return std::to_string(i) + ":" + x; }

[[nodiscard]] inline RacnCoproduct racn_coproduct(const Racn& v0, const Racn& v1, CrossArcs cross = CrossArcs::all) {
    if (!validate_racn(v0).pass() || !validate_racn(v1).pass()) throw Error("coproduct operands must be rACNs");
    RacnCoproduct c;
    const Racn* parts[2] = {&v0, &v1};
    NetMorphism* ins[2] = {&c.in0, &c.in1};
    for (int i = 0; i < 2; ++i) {
        const Ipt& n = parts[i]->net;
        for (const auto& s : n.places) {
            c.sum.net.places.insert(tag(i, s));
            ins[i]->places.insert({s, tag(i, s)});
        }
        for (const auto& t : n.transitions) {
            c.sum.net.transitions.insert(tag(i, t));
            ins[i]->transitions[t] = tag(i, t);
        }
        for (const auto& [x, y] : n.flow) c.sum.net.flow.insert({tag(i, x), tag(i, y)});
        for (const auto& [s, t] : n.inhibitor) c.sum.net.inhibitor.insert({tag(i, s), tag(i, t)});
        for (const auto& s : n.marking) c.sum.net.marking.insert(tag(i, s));
        for (const auto& [b, f] : parts[i]->reverses) c.sum.reverses[tag(i, b)] = tag(i, f);
    }
    for (int i = 0; i < 2; ++i) {
        const Ipt& n = parts[i]->net;
        NetIndex ix(n);
        for (const auto& s : n.places) {
            if (cross == CrossArcs::postsets) {
                // postset of some forward transition
                IdSet producers = intersect(ix.pre(s), parts[i]->forward());
                if (producers.empty()) continue;
            }
            for (const auto& t : parts[1 - i]->net.transitions) c.sum.net.inhibitor.insert({tag(i, s), tag(1 - i, t)});
        }
    }
    return c;
}

}  // namespace revnets
