#pragma once

// Brute-force reference implementations used only by tests. They read the
// definitions directly off arcs and subsets and share no code with the
// library beyond its plain data types.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "revnets/es.hpp"
#include "revnets/net.hpp"
#include "revnets/racn.hpp"

namespace oracle {

using revnets::Id;
using revnets::IdSet;
using revnets::Ipt;
using revnets::Rel;

inline IdSet pre(const Ipt& n, const Id& x) {
    IdSet out;
    for (const auto& [a, b] : n.flow)
        if (b == x) out.insert(a);
    return out;
}

inline IdSet post(const Ipt& n, const Id& x) {
    IdSet out;
    for (const auto& [a, b] : n.flow)
        if (a == x) out.insert(b);
    return out;
}

inline IdSet inib(const Ipt& n, const Id& t) {
    IdSet out;
    for (const auto& [s, u] : n.inhibitor)
        if (u == t) out.insert(s);
    return out;
}

inline bool meets(const IdSet& a, const IdSet& b) {
    for (const auto& x : a)
        if (b.count(x)) return true;
    return false;
}

inline std::vector<IdSet> subsets(const IdSet& xs) {
    std::vector<Id> v(xs.begin(), xs.end());
    std::vector<IdSet> out;
    for (unsigned mask = 0; mask < (1u << v.size()); ++mask) {
        IdSet s;
        for (unsigned i = 0; i < v.size(); ++i)
            if (mask & (1u << i)) s.insert(v[i]);
        out.push_back(s);
    }
    return out;
}

// Is there an ordering of xs in which every pair of `before` is respected?
inline bool orderable(const IdSet& xs, const Rel& before) {
    std::vector<Id> v(xs.begin(), xs.end());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < v.size() && ok; ++i)
            for (std::size_t j = 0; j < i && ok; ++j)
                if (before.count({v[i], v[j]})) ok = false;
        for (const auto& x : v)
            if (before.count({x, x})) ok = false;
        if (ok) return true;
    } while (std::next_permutation(v.begin(), v.end()));
    return false;
}

// Relations read off arcs: t lessdot u, t prevents u.
inline Rel lessdot(const Ipt& n) {
    Rel out;
    for (const auto& [s, u] : n.inhibitor)
        for (const auto& [x, t] : n.flow)
            if (x == s && n.transitions.count(t)) out.insert({t, u});
    return out;
}

inline Rel prevents(const Ipt& n) {
    Rel out;
    for (const auto& [s, u] : n.inhibitor)
        for (const auto& [t, x] : n.flow)
            if (x == s && n.transitions.count(t)) out.insert({t, u});
    return out;
}

inline Rel flip(const Rel& r) {
    Rel out;
    for (const auto& [a, b] : r) out.insert({b, a});
    return out;
}

// Step enabling at a set marking, step given as a set.
inline bool enabled(const Ipt& n, const IdSet& m, const IdSet& step) {
    if (step.empty()) return false;
    std::map<Id, int> need;
    for (const auto& t : step)
        for (const auto& s : pre(n, t)) ++need[s];
    for (const auto& [s, k] : need)
        if (k > (m.count(s) ? 1 : 0)) return false;
    for (const auto& t : step) {
        if (meets(inib(n, t), m)) return false;
        for (const auto& u : step)
            if (u != t && meets(inib(n, t), post(n, u))) return false;
    }
    return true;
}

// Firing; returns false when a place would hold two tokens.
inline bool fire(const Ipt& n, const IdSet& m, const IdSet& step, IdSet& out) {
    std::map<Id, int> tokens;
    for (const auto& s : m) tokens[s] = 1;
    for (const auto& t : step)
        for (const auto& s : pre(n, t)) --tokens[s];
    for (const auto& t : step)
        for (const auto& s : post(n, t)) ++tokens[s];
    out.clear();
    for (const auto& [s, k] : tokens) {
        if (k > 1) return false;
        if (k == 1) out.insert(s);
    }
    return true;
}

inline std::set<IdSet> reach(const Ipt& n) {
    std::set<IdSet> seen{n.marking};
    std::vector<IdSet> todo{n.marking};
    while (!todo.empty()) {
        IdSet m = todo.back();
        todo.pop_back();
        for (const auto& t : n.transitions) {
            IdSet m2;
            if (oracle::enabled(n, m, {t}) && oracle::fire(n, m, {t}, m2) && seen.insert(m2).second) todo.push_back(m2);
        }
    }
    return seen;
}

// Reachable (marking, fired-count) pairs with single firings.
inline std::set<std::map<Id, int>> states(const Ipt& n) {
    using State = std::pair<IdSet, std::map<Id, int>>;
    std::set<State> seen{{n.marking, {}}};
    std::vector<State> todo{{n.marking, {}}};
    while (!todo.empty()) {
        State st = todo.back();
        todo.pop_back();
        for (const auto& t : n.transitions) {
            IdSet m2;
            if (!oracle::enabled(n, st.first, {t}) || !oracle::fire(n, st.first, {t}, m2)) continue;
            State next{m2, st.second};
            ++next.second[t];
            if (seen.insert(next).second) todo.push_back(next);
        }
    }
    std::set<std::map<Id, int>> out;
    for (const auto& [m, f] : seen) out.insert(f);
    return out;
}

// pACN configurations: left-closed under lessdot, ordered by lessdot and leadsto.
inline std::set<IdSet> pacn_configs(const Ipt& n) {
    Rel ld = lessdot(n);
    Rel order = ld;
    for (const auto& p : flip(prevents(n))) order.insert(p);
    std::set<IdSet> out;
    for (const auto& x : subsets(n.transitions)) {
        bool closed = true;
        for (const auto& [a, b] : ld)
            if (x.count(b) && !x.count(a)) closed = false;
        Rel inside;
        for (const auto& [a, b] : order)
            if (x.count(a) && x.count(b)) inside.insert({a, b});
        if (closed && orderable(x, inside)) out.insert(x);
    }
    return out;
}

inline std::set<IdSet> aes_configs(const revnets::Aes& g) {
    std::set<IdSet> out;
    for (const auto& x : subsets(g.events)) {
        bool closed = true;
        for (const auto& [a, b] : g.causation)
            if (x.count(b) && !x.count(a)) closed = false;
        Rel inside;
        for (const auto& [a, b] : g.weak)
            if (x.count(a) && x.count(b)) inside.insert({a, b});
        if (closed && orderable(x, inside)) out.insert(x);
    }
    return out;
}

// Enabling of A plus the undoing of B at X, clause by clause.
inline bool raes_enabled(const revnets::Raes& h, const IdSet& x, const IdSet& a, const IdSet& b) {
    for (const auto& e : a)
        if (x.count(e)) return false;
    for (const auto& u : b)
        if (!x.count(u) || !h.reversible.count(u)) return false;
    IdSet xa = x;
    xa.insert(a.begin(), a.end());
    Rel inside;
    for (const auto& [p, q] : h.weak)
        if (xa.count(p) && xa.count(q)) inside.insert({p, q});
    if (!orderable(xa, inside)) return false;
    for (const auto& e : a)
        for (const auto& [c, d] : h.causation)
            if (d == e && (!x.count(c) || b.count(c))) return false;
    for (const auto& e : a)
        for (const auto& [c, d] : h.weak)
            if (c == e && xa.count(d)) return false;
    for (const auto& u : b) {
        for (const auto& [c, v] : h.rev_causation)
            if (v == u && (!x.count(c) || (b.count(c) && c != u))) return false;
        for (const auto& [v, d] : h.prevention)
            if (v == u && xa.count(d)) return false;
    }
    return true;
}

struct Edge {
    IdSet from;
    IdSet add;
    IdSet undo;
    IdSet to;

    auto operator<=>(const Edge&) const = default;
};

// Single-step configuration graph from the empty configuration.
inline std::pair<std::set<IdSet>, std::set<Edge>> raes_graph(const revnets::Raes& h) {
    std::set<IdSet> nodes{IdSet{}};
    std::set<Edge> edges;
    std::vector<IdSet> todo{IdSet{}};
    while (!todo.empty()) {
        IdSet x = todo.back();
        todo.pop_back();
        auto go = [&](const IdSet& a, const IdSet& b) {
            if (!oracle::raes_enabled(h, x, a, b)) return;
            IdSet y;
            for (const auto& e : x)
                if (!b.count(e)) y.insert(e);
            y.insert(a.begin(), a.end());
            edges.insert({x, a, b, y});
            if (nodes.insert(y).second) todo.push_back(y);
        };
        for (const auto& e : h.events)
            if (!x.count(e)) go({e}, {});
        for (const auto& u : x)
            if (h.reversible.count(u)) go({}, {u});
    }
    return {nodes, edges};
}

}  // namespace oracle
