#pragma once

#include <string>

#include "acn.hpp"
#include "core.hpp"
#include "es.hpp"
#include "maps.hpp"
#include "racn.hpp"

namespace revnets {

// Names of the generated places and undo transitions.
struct NamingScheme {
    std::string unfired = "p:";
    std::string fired = "q:";
    std::string undo = "undo:";

    [[nodiscard]] Id p(const Id& e) const { return unfired + e; }
    [[nodiscard]] Id q(const Id& e) const { return fired + e; }
    [[nodiscard]] Id u(const Id& e) const { return undo + e; }
};

[[nodiscard]] inline Racn raes_to_racn(const Raes& h, const NamingScheme& names = {}) {
    auto rep = validate_raes(h);
    if (!rep.pass()) throw Error("not an rAES: " + rep.violations.front().condition);
    Racn v;
    Ipt& n = v.net;
    for (const auto& e : h.events) {
        n.places.insert(names.p(e));
        n.places.insert(names.q(e));
        n.transitions.insert(e);
        n.flow.insert({names.p(e), e});
        n.flow.insert({e, names.q(e)});
        n.marking.insert(names.p(e));
    }
    for (const auto& u : h.reversible) {
        Id b = names.u(u);
        n.transitions.insert(b);
        n.flow.insert({names.q(u), b});
        n.flow.insert({b, names.p(u)});
        v.reverses[b] = u;
    }
    for (const auto& [e, f] : h.causation) n.inhibitor.insert({names.p(e), f});
    for (const auto& [e, f] : h.weak) n.inhibitor.insert({names.q(f), e});
    for (const auto& [e, u] : h.rev_causation) n.inhibitor.insert({names.p(e), names.u(u)});
    for (const auto& [u, e] : h.prevention) n.inhibitor.insert({names.q(e), names.u(u)});
    check_well_formed(n);
    return v;
}

// Events are the forward transitions; relations are read off the inhibitor arcs.
[[nodiscard]] inline Raes racn_to_raes(const Racn& v) {
    auto rep = validate_racn(v);
    if (!rep.pass()) throw Error("not an rACN: " + rep.violations.front().condition);
    auto d = derived_relations(forward_restriction(v));
    auto br = backward_relations(v);
    Raes h;
    h.events = v.forward();
    for (const auto& [b, t] : v.reverses) h.reversible.insert(t);
    h.causation = d.lessdot;
    h.weak = d.leadsto;
    for (const auto& [t, b] : br.rev_causation) h.rev_causation.insert({t, v.reverses.at(b)});
    for (const auto& [b, t] : br.rev_prevention) h.prevention.insert({v.reverses.at(b), t});
    return h;
}

[[nodiscard]] inline Racn acn_as_racn(const Ipt& n) { return Racn{n, {}}; }

[[nodiscard]] inline Raes aes_as_raes(const Aes& g) { return Raes{g.events, {}, g.causation, g.weak, {}, {}}; }

// Forward part of f_T read as an event map.
[[nodiscard]] inline EsMorphism map_morphism_net_to_es(const Racn& v0, const NetMorphism& f) {
    EsMorphism out;
    IdSet F0 = v0.forward();
    for (const auto& [t, ft] : f.transitions)
        if (F0.count(t)) out.events[t] = ft;
    return out;
}

// Image under the encoding; the marking condition needs f to be onto.
[[nodiscard]] inline NetMorphism map_morphism_es_to_net(const Raes& h0, const EsMorphism& f,
                                                        const NamingScheme& names = {}) {
    NetMorphism out;
    for (const auto& [e, fe] : f.events) {
        out.transitions[e] = fe;
        if (h0.reversible.count(e)) out.transitions[names.u(e)] = names.u(fe);
    }
    for (const auto& e : h0.events)
        if (const Id* fe = lookup(f.events, e)) {
            out.places.insert({names.p(e), names.p(*fe)});
            out.places.insert({names.q(e), names.q(*fe)});
        }
    return out;
}

// Differences between two configuration graphs over the same names.
[[nodiscard]] inline Report graph_diff(const ConfigGraph& a, const ConfigGraph& b, const std::string& left = "left",
                                       const std::string& right = "right") {
    Report r;
    for (const auto& x : a.nodes)
        if (!b.nodes.count(x)) r.fail("node-missing", std::vector<Id>(x.begin(), x.end()), show(x) + " only in " + left);
    for (const auto& x : b.nodes)
        if (!a.nodes.count(x)) r.fail("node-missing", std::vector<Id>(x.begin(), x.end()), show(x) + " only in " + right);
    auto edge_text = [](const GraphEdge& e) {
        return show(e.from) + " -[" + show(e.label.add) + "/" + show(e.label.undo) + "]-> " + show(e.to);
    };
    for (const auto& e : a.edges)
        if (!b.edges.count(e)) r.fail("edge-missing", {}, edge_text(e) + " only in " + left);
    for (const auto& e : b.edges)
        if (!a.edges.count(e)) r.fail("edge-missing", {}, edge_text(e) + " only in " + right);
    return r;
}

// Encode, decode and compare behaviours.
[[nodiscard]] inline Report round_trip_report(const Raes& h, std::size_t bound = kDefaultBound) {
    Report r;
    Racn v = raes_to_racn(h);
    r.merge(validate_racn(v), "encoding:");
    if (!r.pass()) return r;
    Raes back = racn_to_raes(v);
    if (back != h) r.fail("round-trip", {}, "decoding the encoding does not give back the rAES");
    auto net = racn_configurations(v, bound);
    for (const auto& d : net.diagnostics) r.fail("marking-determined", {}, d);
    r.merge(graph_diff(raes_config_graph(h, bound), net, "event structure", "net"), "behaviour:");
    return r;
}

}  // namespace revnets
