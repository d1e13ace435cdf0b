#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"

namespace revnets {

// Petri net with inhibitor arcs. Markings of safe nets are plain sets.
struct Ipt {
    IdSet places;
    IdSet transitions;
    Rel flow;       // (place,transition) or (transition,place)
    Rel inhibitor;  // (place,transition)
    IdSet marking;

    bool operator==(const Ipt&) const = default;
};

using Marking = IdSet;

class UnsafeNet : public Error {
public:
    using Error::Error;
};

// Throws Error on the first broken structural invariant.
inline void check_well_formed(const Ipt& n) {
    for (const auto& p : n.places)
        if (n.transitions.count(p)) throw Error("identifier '" + p + "' is both a place and a transition");
    for (const auto& [x, y] : n.flow) {
        bool st = n.places.count(x) && n.transitions.count(y);
        bool ts = n.transitions.count(x) && n.places.count(y);
        if (!st && !ts) throw Error("flow arc (" + x + "," + y + ") does not join a place and a transition");
    }
    for (const auto& [s, t] : n.inhibitor) {
        if (!n.places.count(s)) throw Error("inhibitor arc names undeclared place '" + s + "'");
        if (!n.transitions.count(t)) throw Error("inhibitor arc names undeclared transition '" + t + "'");
    }
    for (const auto& s : n.marking)
        if (!n.places.count(s)) throw Error("marking names undeclared place '" + s + "'");
    for (const auto& t : n.transitions) {
        bool has_pre = false;
        for (const auto& [x, y] : n.flow)
            if (y == t) has_pre = true;
        if (!has_pre) throw Error("transition '" + t + "' has an empty preset");
    }
}

// Adjacency tables built once per net.
class NetIndex {
public:
    explicit NetIndex(const Ipt& n) : net_(&n) {
        for (const auto& x : n.places) touch(x);
        for (const auto& x : n.transitions) touch(x);
        for (const auto& [x, y] : n.flow) {
            post_[x].insert(y);
            pre_[y].insert(x);
        }
        for (const auto& [s, t] : n.inhibitor) {
            inib_[t].insert(s);
            inhibits_[s].insert(t);
        }
    }

    [[nodiscard]] const Ipt& net() const { return *net_; }

    [[nodiscard]] const IdSet& pre(const Id& x) const { return lookup(pre_, x); }
    [[nodiscard]] const IdSet& post(const Id& x) const { return lookup(post_, x); }
    [[nodiscard]] const IdSet& inib(const Id& t) const { return lookup(inib_, t); }
    // Transitions inhibited by place s.
    [[nodiscard]] const IdSet& inhibits(const Id& s) const { return lookup(inhibits_, s); }

    [[nodiscard]] IdSet pre(const IdSet& xs) const { return gather(pre_, xs); }
    [[nodiscard]] IdSet post(const IdSet& xs) const { return gather(post_, xs); }
    [[nodiscard]] IdSet inib(const IdSet& ts) const { return gather(inib_, ts); }

private:
    void touch(const Id& x) {
        pre_[x];
        post_[x];
        inib_[x];
        inhibits_[x];
    }

    const IdSet& lookup(const std::map<Id, IdSet>& m, const Id& x) const {
        auto it = m.find(x);
        if (it == m.end()) throw Error("unknown identifier '" + x + "'");
        return it->second;
    }

    IdSet gather(const std::map<Id, IdSet>& m, const IdSet& xs) const {
        IdSet out;
        for (const auto& x : xs) {
            const auto& s = lookup(m, x);
            out.insert(s.begin(), s.end());
        }
        return out;
    }

    const Ipt* net_;
    std::map<Id, IdSet> pre_, post_, inib_, inhibits_;
};

[[nodiscard]] inline IdSet preset(const Ipt& n, const Id& x) { return NetIndex(n).pre(x); }
[[nodiscard]] inline IdSet postset(const Ipt& n, const Id& x) { return NetIndex(n).post(x); }
[[nodiscard]] inline IdSet inhibset(const Ipt& n, const Id& t) {
    if (!n.transitions.count(t)) throw Error("unknown transition '" + t + "'");
    return NetIndex(n).inib(t);
}

namespace ms {

[[nodiscard]] inline Multiset of(const IdSet& s) {
    Multiset m;
    for (const auto& x : s) m[x] = 1;
    return m;
}

[[nodiscard]] inline IdSet flat(const Multiset& m) {
    IdSet s;
    for (const auto& [x, k] : m)
        if (k > 0) s.insert(x);
    return s;
}

[[nodiscard]] inline bool is_set(const Multiset& m) {
    for (const auto& [x, k] : m)
        if (k > 1) return false;
    return true;
}

[[nodiscard]] inline bool leq(const Multiset& a, const Multiset& b) {
    for (const auto& [x, k] : a) {
        if (k <= 0) continue;
        auto it = b.find(x);
        if (it == b.end() || it->second < k) return false;
    }
    return true;
}

inline void add(Multiset& m, const Id& x, int k) {
    m[x] += k;
    if (m[x] == 0) m.erase(x);
}

[[nodiscard]] inline std::size_t size(const Multiset& m) {
    std::size_t n = 0;
    for (const auto& [x, k] : m) n += static_cast<std::size_t>(k);
    return n;
}

}  // namespace ms

namespace detail {

inline Multiset step_pre(const NetIndex& ix, const Multiset& a) {
    Multiset out;
    for (const auto& [t, k] : a)
        for (const auto& s : ix.pre(t)) out[s] += k;
    return out;
}

inline Multiset step_post(const NetIndex& ix, const Multiset& a) {
    Multiset out;
    for (const auto& [t, k] : a)
        for (const auto& s : ix.post(t)) out[s] += k;
    return out;
}

inline void check_step(const Ipt& n, const Multiset& a) {
    for (const auto& [t, k] : a) {
        if (!n.transitions.count(t)) throw Error("unknown transition '" + t + "'");
        if (k < 0) throw Error("negative multiplicity for '" + t + "'");
    }
}

inline bool enabled_ms(const NetIndex& ix, const Multiset& m, const Multiset& a) {
    if (!ms::leq(step_pre(ix, a), m)) return false;
    IdSet marked = ms::flat(m);
    IdSet support = ms::flat(a);
    if (!disjoint(ix.inib(support), marked)) return false;
    for (const auto& t : support) {
        Multiset rest = a;
        ms::add(rest, t, -1);
        if (!disjoint(ix.inib(t), ms::flat(step_post(ix, rest)))) return false;
    }
    return true;
}

inline Multiset fire_ms(const NetIndex& ix, const Multiset& m, const Multiset& a) {
    Multiset out = m;
    for (const auto& [s, k] : step_pre(ix, a)) ms::add(out, s, -k);
    for (const auto& [s, k] : step_post(ix, a)) ms::add(out, s, k);
    return out;
}

}  // namespace detail

[[nodiscard]] inline bool enabled(const Ipt& n, const Marking& m, const Multiset& a) {
    detail::check_step(n, a);
    for (const auto& s : m)
        if (!n.places.count(s)) throw Error("unknown place '" + s + "'");
    NetIndex ix(n);
    return detail::enabled_ms(ix, ms::of(m), a);
}

[[nodiscard]] inline bool enabled(const Ipt& n, const Marking& m, const IdSet& a) {
    return enabled(n, m, ms::of(a));
}

[[nodiscard]] inline Marking fire(const Ipt& n, const Marking& m, const Multiset& a) {
    if (!enabled(n, m, a)) throw Error("step is not enabled");
    NetIndex ix(n);
    Multiset out = detail::fire_ms(ix, ms::of(m), a);
    if (!ms::is_set(out)) throw UnsafeNet("firing produces a place with more than one token");
    return ms::flat(out);
}

[[nodiscard]] inline Marking fire(const Ipt& n, const Marking& m, const IdSet& a) {
    return fire(n, m, ms::of(a));
}

// Fires transitions one by one; throws naming the first transition that is not enabled.
[[nodiscard]] inline Marking fire_sequence(const Ipt& n, Marking m, const std::vector<Id>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (!n.transitions.count(seq[i])) throw Error("unknown transition '" + seq[i] + "'");
        if (!enabled(n, m, IdSet{seq[i]}))
            throw Error("transition '" + seq[i] + "' at position " + std::to_string(i + 1) + " is not enabled");
        m = fire(n, m, IdSet{seq[i]});
    }
    return m;
}

struct ReachEdge {
    std::size_t from;
    Id transition;
    std::size_t to;

    bool operator==(const ReachEdge&) const = default;
};

struct ReachGraph {
    std::vector<Marking> markings;  // discovery order; markings[0] is initial
    std::vector<ReachEdge> edges;

    [[nodiscard]] std::set<Marking> set() const { return {markings.begin(), markings.end()}; }
};

// Breadth-first closure under single-transition firings.
[[nodiscard]] inline ReachGraph reachable_markings(const Ipt& n, std::size_t bound = kDefaultBound) {
    if (bound == 0) throw Error("bound must be positive");
    NetIndex ix(n);
    ReachGraph g;
    std::map<Marking, std::size_t> seen;
    std::deque<std::size_t> queue;
    g.markings.push_back(n.marking);
    seen[n.marking] = 0;
    queue.push_back(0);
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        Multiset m = ms::of(g.markings[i]);
        for (const auto& t : n.transitions) {
            Multiset a{{t, 1}};
            if (!detail::enabled_ms(ix, m, a)) continue;
            Multiset next = detail::fire_ms(ix, m, a);
            if (!ms::is_set(next)) throw UnsafeNet("firing '" + t + "' produces a place with more than one token");
            Marking nm = ms::flat(next);
            auto [it, fresh] = seen.emplace(nm, g.markings.size());
            if (fresh) {
                if (g.markings.size() >= bound) throw BoundExceeded(bound, queue.size());
                g.markings.push_back(nm);
                queue.push_back(it->second);
            }
            g.edges.push_back({i, t, it->second});
        }
    }
    return g;
}

[[nodiscard]] inline bool is_safe(const Ipt& n, std::size_t bound = kDefaultBound) {
    NetIndex ix(n);
    std::set<Multiset> seen{ms::of(n.marking)};
    std::deque<Multiset> queue{ms::of(n.marking)};
    while (!queue.empty()) {
        Multiset m = queue.front();
        queue.pop_front();
        if (!ms::is_set(m)) return false;
        for (const auto& t : n.transitions) {
            Multiset a{{t, 1}};
            if (!detail::enabled_ms(ix, m, a)) continue;
            Multiset next = detail::fire_ms(ix, m, a);
            if (seen.insert(next).second) {
                if (seen.size() > bound) throw BoundExceeded(bound, queue.size());
                queue.push_back(next);
            }
        }
    }
    return true;
}

class RepeatedFiring : public Error {
public:
    using Error::Error;
};

// Sums of executions. With steps=false only single transitions fire;
// with steps=true every enabled nonempty set of transitions is tried as a step.
[[nodiscard]] inline std::set<Multiset> states(const Ipt& n, bool require_single_fire = true,
                                               std::size_t bound = kDefaultBound, bool steps = false) {
    NetIndex ix(n);
    std::vector<Id> ts(n.transitions.begin(), n.transitions.end());
    std::vector<Multiset> candidates;
    if (steps) {
        if (ts.size() > 20) throw Error("too many transitions for step enumeration");
        for (std::size_t mask = 1; mask < (std::size_t{1} << ts.size()); ++mask) {
            Multiset a;
            for (std::size_t i = 0; i < ts.size(); ++i)
                if (mask >> i & 1) a[ts[i]] = 1;
            candidates.push_back(a);
        }
    } else {
        for (const auto& t : ts) candidates.push_back({{t, 1}});
    }
    using Node = std::pair<Multiset, Multiset>;  // marking, fired
    std::set<Node> seen{{ms::of(n.marking), {}}};
    std::deque<Node> queue{{ms::of(n.marking), {}}};
    std::set<Multiset> out;
    while (!queue.empty()) {
        auto [m, fired] = queue.front();
        queue.pop_front();
        out.insert(fired);
        for (const auto& a : candidates) {
            if (!detail::enabled_ms(ix, m, a)) continue;
            Multiset f = fired;
            for (const auto& [t, k] : a) {
                ms::add(f, t, k);
                if (require_single_fire && f[t] > 1)
                    throw RepeatedFiring("transition '" + t + "' fires twice along one execution");
            }
            Node next{detail::fire_ms(ix, m, a), f};
            if (seen.insert(next).second) {
                if (seen.size() > bound) throw BoundExceeded(bound, queue.size());
                queue.push_back(next);
            }
        }
    }
    return out;
}

}  // namespace revnets
