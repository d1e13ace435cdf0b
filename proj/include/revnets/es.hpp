#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "maps.hpp"

namespace revnets {

struct Aes {
    IdSet events;
    Rel causation;
    Rel weak;

    bool operator==(const Aes&) const = default;
};

struct Raes {
    IdSet events;
    IdSet reversible;
    Rel causation;
    Rel weak;
    Rel rev_causation;  // (e, u): e ≺ ū
    Rel prevention;     // (u, e): ū ◁ e

    bool operator==(const Raes&) const = default;
};

namespace detail {

inline void check_declared(const IdSet& dom, const Rel& r, const std::string& what, Report& rep,
                           const IdSet* second = nullptr) {
    const IdSet& cod = second ? *second : dom;
    for (const auto& [a, b] : r)
        if (!dom.count(a) || !cod.count(b))
            rep.fail("undeclared", {a, b}, what + " pair (" + a + "," + b + ") names an undeclared event");
}

// {e' | e' <* e}
inline IdSet history(const Rel& causation, const Id& e) { return rel::down(causation, e); }

}  // namespace detail

[[nodiscard]] inline Report validate_aes(const Aes& g) {
    Report r;
    detail::check_declared(g.events, g.causation, "causation", r);
    detail::check_declared(g.events, g.weak, "weak causality", r);
    if (!r.pass()) return r;
    for (const auto& [a, b] : g.causation)
        if (a == b) r.fail("causation-partial-order", {a, b}, a + " causes itself");
    if (auto cyc = rel::find_cycle(g.causation))
        r.fail("causation-partial-order", *cyc, "causation has a cycle " + join(*cyc, " < "));
    for (const auto& p : rel::compose(g.causation, g.causation))
        if (!g.causation.count(p) && p.first != p.second)
            r.fail("causation-partial-order", {p.first, p.second},
                   "causation is not transitive: " + p.first + " < " + p.second + " is missing");
    for (const auto& p : g.causation)
        if (!g.weak.count(p))
            r.fail("causation-implies-weak", {p.first, p.second},
                   p.first + " < " + p.second + " but not " + p.first + " weakly causes " + p.second);
    for (const auto& e : g.events) {
        IdSet h = detail::history(g.causation, e);
        if (auto cyc = rel::find_cycle(rel::restrict(g.weak, h))) {
            std::vector<Id> w{e};
            w.insert(w.end(), cyc->begin(), cyc->end());
            r.fail("weak-acyclic-on-history", w, "weak causality has a cycle among the causes of " + e);
        }
    }
    Rel conflict = rel::symmetric_part(g.weak);
    for (const auto& [a, b] : conflict)
        for (const auto& c : g.events)
            if (g.causation.count({b, c}) && !conflict.count({a, c}))
                r.fail("conflict-inheritance", {a, b, c},
                       a + " # " + b + " and " + b + " < " + c + " but not " + a + " # " + c);
    return r;
}

[[nodiscard]] inline bool is_aes_configuration(const Aes& g, const IdSet& x) {
    for (const auto& [a, b] : g.causation)
        if (x.count(b) && !x.count(a)) return false;
    return rel::acyclic(rel::restrict(g.weak, x));
}

// Y extends X: X ⊆ Y and nothing added weakly causes something already in X.
[[nodiscard]] inline bool extends(const Aes& g, const IdSet& x, const IdSet& y) {
    if (!subset(x, y)) return false;
    for (const auto& [a, b] : g.weak)
        if (x.count(b) && y.count(a) && !x.count(a)) return false;
    return true;
}

struct AesConfigurations {
    std::vector<IdSet> configs;                // sorted
    std::set<std::pair<IdSet, IdSet>> extend;  // (X, Y), X ⊊ Y, Y extends X
    std::set<IdSet> reachable;
};

[[nodiscard]] inline AesConfigurations aes_configurations(const Aes& g) {
    if (!validate_aes(g).pass()) throw Error("structure is not an AES");
    std::vector<Id> es(g.events.begin(), g.events.end());
    if (es.size() > 20) throw Error("too many events for subset enumeration");
    AesConfigurations out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << es.size()); ++mask) {
        IdSet x;
        for (std::size_t i = 0; i < es.size(); ++i)
            if (mask >> i & 1) x.insert(es[i]);
        if (is_aes_configuration(g, x)) out.configs.push_back(x);
    }
    std::sort(out.configs.begin(), out.configs.end());
    for (const auto& x : out.configs)
        for (const auto& y : out.configs)
            if (x != y && extends(g, x, y)) out.extend.insert({x, y});
    std::set<IdSet> confs(out.configs.begin(), out.configs.end());
    std::deque<IdSet> queue{IdSet{}};
    out.reachable.insert(IdSet{});
    while (!queue.empty()) {
        IdSet x = queue.front();
        queue.pop_front();
        for (const auto& e : es) {
            if (x.count(e)) continue;
            IdSet y = x;
            y.insert(e);
            if (confs.count(y) && extends(g, x, y) && out.reachable.insert(y).second) queue.push_back(y);
        }
    }
    return out;
}

[[nodiscard]] inline Rel sustained_causation(const Raes& h) {
    Rel out;
    for (const auto& [e, f] : h.causation)
        if (!h.reversible.count(e) || h.prevention.count({e, f})) out.insert({e, f});
    return out;
}

[[nodiscard]] inline Report validate_raes(const Raes& h) {
    Report r;
    for (const auto& u : h.reversible)
        if (!h.events.count(u)) r.fail("undeclared", {u}, "reversible event " + u + " is not an event");
    detail::check_declared(h.events, h.causation, "causation", r);
    detail::check_declared(h.events, h.weak, "weak causality", r);
    detail::check_declared(h.events, h.rev_causation, "reverse causation", r, &h.reversible);
    detail::check_declared(h.reversible, h.prevention, "prevention", r, &h.events);
    if (!r.pass()) return r;

    for (const auto& [a, b] : h.causation)
        if (a == b) r.fail("causation-irreflexive", {a, b}, a + " causes itself");
    Rel both = unite(h.weak, h.causation);
    for (const auto& e : h.events) {
        IdSet hist = detail::history(h.causation, e);
        if (auto cyc = rel::find_cycle(rel::restrict(both, hist))) {
            std::vector<Id> w{e};
            w.insert(w.end(), cyc->begin(), cyc->end());
            r.fail("history-acyclic", w, "causation and weak causality form a cycle among the causes of " + e);
        }
    }
    for (const auto& u : h.reversible)
        if (!h.rev_causation.count({u, u}))
            r.fail("undo-self-cause", {u}, "the undoing of " + u + " does not require " + u);
    for (const auto& u : h.reversible) {
        IdSet causes = rel::preimage(h.rev_causation, u);
        if (auto cyc = rel::find_cycle(rel::restrict(both, causes))) {
            std::vector<Id> w{u};
            w.insert(w.end(), cyc->begin(), cyc->end());
            r.fail("undo-history-acyclic", w, "causation and weak causality form a cycle among the causes of undoing " + u);
        }
    }
    for (const auto& [e, u] : h.rev_causation)
        if (h.prevention.count({u, e}))
            r.fail("cause-not-prevent", {e, u}, e + " both enables and prevents the undoing of " + u);
    r.merge(validate_aes({h.events, sustained_causation(h), h.weak}), "sustained-aes:");
    for (const auto& p : h.causation)
        if (!h.weak.count(p))
            r.note("causation " + p.first + " < " + p.second + " is not mirrored by weak causality");
    return r;
}

[[nodiscard]] inline bool raes_enabled(const Raes& h, const IdSet& x, const IdSet& a, const IdSet& b) {
    if (!rel::acyclic(rel::restrict(h.weak, x))) throw Error("weak causality is cyclic on " + show(x));
    if (!disjoint(a, x) || !subset(b, x) || !subset(b, h.reversible)) return false;
    IdSet xa = unite(x, a);
    if (!rel::acyclic(rel::restrict(h.weak, xa))) return false;
    IdSet x_minus_b = minus(x, b);
    for (const auto& e : a) {
        for (const auto& c : rel::preimage(h.causation, e))
            if (!x_minus_b.count(c)) return false;
        for (const auto& f : rel::image(h.weak, e))
            if (xa.count(f)) return false;
    }
    for (const auto& u : b) {
        IdSet others = b;
        others.erase(u);
        IdSet allowed = minus(x, others);
        for (const auto& c : rel::preimage(h.rev_causation, u))
            if (!allowed.count(c)) return false;
        for (const auto& f : rel::image(h.prevention, u))
            if (xa.count(f)) return false;
    }
    return true;
}

[[nodiscard]] inline ConfigGraph raes_config_graph(const Raes& h, std::size_t bound = kDefaultBound,
                                                   bool mixed_steps = false) {
    if (!validate_raes(h).pass()) throw Error("structure is not an rAES");
    std::vector<Id> es(h.events.begin(), h.events.end());
    ConfigGraph g;
    g.nodes.insert(IdSet{});
    std::deque<IdSet> queue{IdSet{}};
    auto visit = [&](const IdSet& x, const IdSet& a, const IdSet& b) {
        if (a.empty() && b.empty()) return;
        if (!raes_enabled(h, x, a, b)) return;
        IdSet y = unite(minus(x, b), a);
        g.edges.insert({x, {a, b}, y});
        if (g.nodes.insert(y).second) {
            if (g.nodes.size() > bound) throw BoundExceeded(bound, queue.size());
            queue.push_back(y);
        }
    };
    while (!queue.empty()) {
        IdSet x = queue.front();
        queue.pop_front();
        if (!mixed_steps) {
            for (const auto& e : es) visit(x, {e}, {});
            for (const auto& u : intersect(x, h.reversible)) visit(x, {}, {u});
            continue;
        }
        std::vector<Id> addable;
        for (const auto& e : es)
            if (!x.count(e)) addable.push_back(e);
        std::vector<Id> undoable;
        for (const auto& u : intersect(x, h.reversible)) undoable.push_back(u);
        std::size_t n = addable.size() + undoable.size();
        if (n > 20) throw Error("too many candidates for mixed-step enumeration");
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            IdSet a, b;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) {
                    if (i < addable.size()) a.insert(addable[i]);
                    else b.insert(undoable[i - addable.size()]);
                }
            visit(x, a, b);
        }
    }
    return g;
}

struct RaesCoproduct {
    Raes sum;
    EsMorphism in0;
    EsMorphism in1;
};

[[nodiscard]] inline RaesCoproduct raes_coproduct(const Raes& h0, const Raes& h1) {
    if (!validate_raes(h0).pass() || !validate_raes(h1).pass()) throw Error("coproduct operands must be rAESs");
    RaesCoproduct c;
    const Raes* parts[2] = {&h0, &h1};
    EsMorphism* ins[2] = {&c.in0, &c.in1};
    auto tg = [](int i, const Id& x) { return std::to_string(i) + ":" + x; };
    auto copy = [&](int i, const Rel& from, Rel& to) {
        for (const auto& [a, b] : from) to.insert({tg(i, a), tg(i, b)});
    };
    for (int i = 0; i < 2; ++i) {
        const Raes& h = *parts[i];
        for (const auto& e : h.events) {
            c.sum.events.insert(tg(i, e));
            ins[i]->events[e] = tg(i, e);
        }
        for (const auto& u : h.reversible) c.sum.reversible.insert(tg(i, u));
        copy(i, h.causation, c.sum.causation);
        copy(i, h.weak, c.sum.weak);
        copy(i, h.rev_causation, c.sum.rev_causation);
        copy(i, h.prevention, c.sum.prevention);
    }
    for (int i = 0; i < 2; ++i)
        for (const auto& e : parts[i]->events)
            for (const auto& f : parts[1 - i]->events) {
                c.sum.weak.insert({tg(i, e), tg(1 - i, f)});
                if (parts[i]->reversible.count(e)) c.sum.prevention.insert({tg(i, e), tg(1 - i, f)});
            }
    return c;
}

// Merged-relation presentation: ≺ ⊆ E×(E∪Ū), ◁ ⊆ (E∪Ū)×E.
struct Node {
    Id id;
    bool undo = false;

    auto operator<=>(const Node&) const = default;
};

struct SRaes {
    IdSet events;
    IdSet reversible;
    std::set<std::pair<Id, Node>> causation;
    std::set<std::pair<Node, Id>> prevention;

    bool operator==(const SRaes&) const = default;
};

[[nodiscard]] inline Report validate_sraes(const SRaes& k) {
    Report r;
    for (const auto& u : k.reversible)
        if (!k.events.count(u)) r.fail("undeclared", {u}, "reversible event " + u + " is not an event");
    auto known = [&](const Node& n) { return n.undo ? k.reversible.count(n.id) > 0 : k.events.count(n.id) > 0; };
    for (const auto& [e, n] : k.causation)
        if (!k.events.count(e) || !known(n)) r.fail("undeclared", {e, n.id}, "causation pair names an undeclared event");
    for (const auto& [n, e] : k.prevention)
        if (!k.events.count(e) || !known(n)) r.fail("undeclared", {n.id, e}, "precedence pair names an undeclared event");
    if (!r.pass()) return r;

    Rel caus, prec;
    for (const auto& [e, n] : k.causation)
        if (!n.undo) caus.insert({e, n.id});
    for (const auto& [n, e] : k.prevention)
        if (!n.undo) prec.insert({n.id, e});
    for (const auto& [a, b] : caus)
        if (a == b) r.fail("causation-irreflexive", {a, b}, a + " causes itself");
    for (const auto& [a, b] : prec)
        if (a == b) r.fail("precedence-irreflexive", {a, b}, a + " precedes itself");
    Rel both = unite(caus, prec);
    std::set<Node> targets;
    for (const auto& e : k.events) targets.insert({e, false});
    for (const auto& u : k.reversible) targets.insert({u, true});
    for (const auto& alpha : targets) {
        IdSet causes;
        for (const auto& [e, n] : k.causation)
            if (n == alpha) causes.insert(e);
        if (auto cyc = rel::find_cycle(rel::restrict(both, causes))) {
            std::vector<Id> w{(alpha.undo ? "undo:" : "") + alpha.id};
            w.insert(w.end(), cyc->begin(), cyc->end());
            r.fail("causes-acyclic", w, "the causes of " + w.front() + " are cyclic");
        }
    }
    for (const auto& u : k.reversible)
        if (!k.causation.count({u, Node{u, true}}))
            r.fail("undo-self-cause", {u}, "the undoing of " + u + " does not require " + u);
    for (const auto& [e, n] : k.causation)
        if (k.prevention.count({n, e}))
            r.fail("cause-not-prevent", {e, n.id}, e + " both causes and is preceded by " + n.id);
    Rel sus;
    for (const auto& [e, f] : caus)
        if (!k.reversible.count(e) || k.prevention.count({Node{e, true}, f})) sus.insert({e, f});
    for (const auto& p : sus)
        if (!prec.count(p))
            r.fail("sustained-implies-precedence", {p.first, p.second},
                   "sustained causation " + p.first + "," + p.second + " is not a precedence");
    for (const auto& p : rel::compose(sus, sus))
        if (!sus.count(p))
            r.fail("sustained-transitive", {p.first, p.second}, "sustained causation is not transitive");
    Rel conflict = rel::symmetric_part(prec);
    for (const auto& [a, b] : conflict)
        for (const auto& c : k.events)
            if (sus.count({a, c}) && !conflict.count({b, c}))
                r.fail("conflict-inheritance", {a, b, c}, b + " # " + a + " and " + a + " sustains " + c + " but not " + b + " # " + c);
    return r;
}

[[nodiscard]] inline Raes sraes_to_raes(const SRaes& k) {
    auto rep = validate_sraes(k);
    if (!rep.pass()) {
        const auto& v = rep.violations.front();
        throw Error("not an sRAES: " + v.condition + ": " + v.text);
    }
    Raes h{k.events, k.reversible, {}, {}, {}, {}};
    for (const auto& [e, n] : k.causation) (n.undo ? h.rev_causation : h.causation).insert({e, n.id});
    for (const auto& [n, e] : k.prevention) (n.undo ? h.prevention : h.weak).insert({n.id, e});
    return h;
}

[[nodiscard]] inline SRaes raes_to_sraes(const Raes& h) {
    if (!validate_raes(h).pass()) throw Error("structure is not an rAES");
    SRaes k{h.events, h.reversible, {}, {}};
    for (const auto& [a, b] : h.causation) k.causation.insert({a, Node{b, false}});
    for (const auto& [e, u] : h.rev_causation) k.causation.insert({e, Node{u, true}});
    for (const auto& [a, b] : h.weak) k.prevention.insert({Node{a, false}, b});
    for (const auto& [u, e] : h.prevention) k.prevention.insert({Node{u, true}, e});
    return k;
}

// Closes < transitively, adds <-induced weak causality and inherits
// conflicts along sustained causation, up to a fixpoint.
[[nodiscard]] inline Raes saturate(Raes h) {
    for (;;) {
        Raes before = h;
        h.causation = rel::transitive_closure(h.causation);
        h.weak.insert(h.causation.begin(), h.causation.end());
        Rel sus = sustained_causation(h);
        Rel conflict = rel::symmetric_part(h.weak);
        for (const auto& [a, b] : conflict)
            for (const auto& c : rel::image(sus, b))
                if (a != c) {
                    h.weak.insert({a, c});
                    h.weak.insert({c, a});
                }
        if (h == before) return h;
    }
}

}  // namespace revnets
