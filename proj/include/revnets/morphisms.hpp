#pragma once

#include <map>
#include <optional>
#include <string>

#include "acn.hpp"
#include "core.hpp"
#include "es.hpp"
#include "maps.hpp"
#include "net.hpp"
#include "racn.hpp"

namespace revnets {

[[nodiscard]] inline IdSet image_of(const EsMorphism& f, const IdSet& xs) {
    IdSet out;
    for (const auto& x : xs)
        if (const Id* y = lookup(f.events, x)) out.insert(*y);
    return out;
}

namespace detail {

inline void check_es_domain(const IdSet& e0, const IdSet& e1, const EsMorphism& f, Report& r) {
    for (const auto& [a, b] : f.events) {
        if (!e0.count(a)) r.fail("domain", {a}, "mapped event " + a + " is not in the source");
        if (!e1.count(b)) r.fail("domain", {a, b}, a + " is mapped to " + b + ", which is not in the target");
    }
}

// Shared by AES- and rAES-morphisms; the structures need not be AESs.
inline void check_aes_conditions(const IdSet& e0, const Rel& caus0, const Rel& weak0, const Rel& caus1,
                                 const Rel& weak1, const EsMorphism& f, Report& r) {
    Rel conflict0 = rel::symmetric_part(weak0);
    for (const auto& e : e0) {
        const Id* fe = lookup(f.events, e);
        if (!fe) continue;
        IdSet need = rel::down(caus1, *fe);
        IdSet have = image_of(f, rel::down(caus0, e));
        for (const auto& c : minus(need, have))
            r.fail("history-preserved", {e, c}, "cause " + c + " of " + *fe + " is not the image of a cause of " + e);
    }
    for (const auto& [a, fa] : f.events)
        for (const auto& [b, fb] : f.events) {
            if (weak1.count({fa, fb}) && !weak0.count({a, b}))
                r.fail("weak-reflected", {a, b}, fa + " weakly causes " + fb + " but " + a + " does not weakly cause " + b);
            if (a < b && fa == fb && !conflict0.count({a, b}))
                r.fail("identified-in-conflict", {a, b}, a + " and " + b + " are both mapped to " + fa + " without conflicting");
        }
}

}  // namespace detail

[[nodiscard]] inline Report check_aes_morphism(const Aes& g0, const Aes& g1, const EsMorphism& f) {
    Report r;
    detail::check_es_domain(g0.events, g1.events, f, r);
    if (!r.pass()) return r;
    detail::check_aes_conditions(g0.events, g0.causation, g0.weak, g1.causation, g1.weak, f, r);
    return r;
}

[[nodiscard]] inline Report check_raes_morphism(const Raes& h0, const Raes& h1, const EsMorphism& f) {
    Report r;
    detail::check_es_domain(h0.events, h1.events, f, r);
    if (!r.pass()) return r;
    detail::check_aes_conditions(h0.events, h0.causation, h0.weak, h1.causation, h1.weak, f, r);
    for (const auto& u : h0.reversible) {
        const Id* fu = lookup(f.events, u);
        if (!fu) continue;
        if (!h1.reversible.count(*fu)) {
            r.fail("reversible-preserved", {u}, u + " is reversible but " + *fu + " is not");
            continue;
        }
        IdSet need = rel::preimage(h1.rev_causation, *fu);
        IdSet have = image_of(f, rel::preimage(h0.rev_causation, u));
        for (const auto& c : minus(need, have))
            r.fail("reverse-causes-preserved", {u, c},
                   c + " causes undoing " + *fu + " but is not the image of a cause of undoing " + u);
        for (const auto& [e, fe] : f.events)
            if (h1.prevention.count({*fu, fe}) && !h0.prevention.count({u, e}))
                r.fail("prevention-reflected", {u, e},
                       fe + " prevents undoing " + *fu + " but " + e + " does not prevent undoing " + u);
    }
    return r;
}

// g after f.
[[nodiscard]] inline EsMorphism compose(const EsMorphism& f, const EsMorphism& g) {
    EsMorphism out;
    for (const auto& [a, b] : f.events)
        if (const Id* c = lookup(g.events, b)) out.events[a] = *c;
    return out;
}

[[nodiscard]] inline NetMorphism compose(const NetMorphism& f, const NetMorphism& g) {
    NetMorphism out;
    out.places = rel::compose(f.places, g.places);
    for (const auto& [a, b] : f.transitions)
        if (const Id* c = lookup(g.transitions, b)) out.transitions[a] = *c;
    return out;
}

// f_S applied to a set, with multiplicities.
[[nodiscard]] inline Multiset apply_places(const Rel& fs, const IdSet& xs) {
    Multiset out;
    for (const auto& x : xs)
        for (const auto& y : rel::image(fs, x)) ms::add(out, y, 1);
    return out;
}

namespace detail {

inline void check_net_domain(const Ipt& n0, const Ipt& n1, const NetMorphism& f, Report& r) {
    for (const auto& [a, b] : f.places)
        if (!n0.places.count(a) || !n1.places.count(b))
            r.fail("domain", {a, b}, "place pair (" + a + "," + b + ") is outside the nets");
    for (const auto& [a, b] : f.transitions)
        if (!n0.transitions.count(a) || !n1.transitions.count(b))
            r.fail("domain", {a, b}, "transition pair (" + a + "," + b + ") is outside the nets");
}

}  // namespace detail

// Conflict between place sets holds when some pair of members conflicts;
// an empty side never does.
[[nodiscard]] inline Report check_acn_morphism(const Ipt& c0, const Ipt& c1, const NetMorphism& f) {
    check_well_formed(c0);
    check_well_formed(c1);
    Report r;
    detail::check_net_domain(c0, c1, f, r);
    if (!r.pass()) return r;
    NetIndex ix0(c0), ix1(c1);
    auto conflict0 = derived_relations(c0).conflict;
    Rel inv = rel::inverse(f.places);

    for (const auto& [t, ft] : f.transitions) {
        if (ix1.pre(ft) != rel::image(f.places, ix0.pre(t)))
            r.fail("preset-preserved", {t, ft}, "preset of " + ft + " is not the image of the preset of " + t);
        if (ix1.post(ft) != rel::image(f.places, ix0.post(t)))
            r.fail("postset-preserved", {t, ft}, "postset of " + ft + " is not the image of the postset of " + t);
        for (const auto& s : ix1.inib(ft)) {
            IdSet back = rel::image(inv, s);
            IdSet hit;
            for (const auto& s0 : back)
                if (c0.inhibitor.count({s0, t})) hit.insert(s0);
            if (ix1.pre(s).empty()) {
                if (hit.empty())
                    r.fail("inhibitor-reflected", {t, s},
                           "no preimage of " + s + " inhibits " + t + " although " + s + " inhibits " + ft);
            } else if (hit != back) {
                r.fail("inhibitor-reflected", {t, s},
                       "some preimage of " + s + " does not inhibit " + t + " although " + s + " inhibits " + ft);
            }
        }
    }
    for (const auto& [t, ft] : f.transitions)
        for (const auto& [u, fu] : f.transitions)
            if (t < u && ft == fu && !conflict0.count({t, u}))
                r.fail("identified-in-conflict", {t, u}, t + " and " + u + " are both mapped to " + ft + " without conflicting");

    auto sets_conflict = [&](const IdSet& a, const IdSet& b) {
        for (const auto& x : a)
            for (const auto& y : b)
                if (conflict0.count({x, y})) return true;
        return false;
    };
    for (const auto& s1 : c1.places) {
        IdSet back = rel::image(inv, s1);
        for (const auto& a : back)
            for (const auto& b : back)
                if (a < b && !sets_conflict(ix0.post(a), ix0.post(b)) && !sets_conflict(ix0.pre(a), ix0.pre(b)))
                    r.fail("identified-places", {a, b, s1},
                           a + " and " + b + " are both mapped to " + s1 + " without conflicting producers or consumers");
    }
    IdSet image_marking = ms::flat(apply_places(f.places, c0.marking));
    if (image_marking != c1.marking)
        r.fail("marking", {}, "image of the initial marking is " + show(image_marking) + ", not " + show(c1.marking));
    if (r.pass())
        for (const auto& s : c1.places)
            if (ix1.pre(s).empty() && rel::image(inv, s).empty())
                r.note("place " + s + " has no producers and no preimage");
    return r;
}

[[nodiscard]] inline Report check_racn_morphism(const Racn& v0, const Racn& v1, const NetMorphism& f) {
    Report r;
    detail::check_net_domain(v0.net, v1.net, f, r);
    if (!r.pass()) return r;
    IdSet F0 = v0.forward(), F1 = v1.forward();
    for (const auto& [t, ft] : f.transitions)
        if (F0.count(t) != F1.count(ft))
            r.fail("sorting", {t, ft}, t + " and " + ft + " are not both forward or both backward");

    NetMorphism fwd{f.places, {}};
    for (const auto& [t, ft] : f.transitions)
        if (F0.count(t)) fwd.transitions[t] = ft;
    r.merge(check_acn_morphism(forward_restriction(v0), forward_restriction(v1), fwd), "forward:");

    NetIndex ix1(v1.net);
    Rel inv = rel::inverse(f.places);
    for (const auto& [b, t] : v0.reverses) {
        const Id* ft = lookup(f.transitions, t);
        if (!ft) continue;
        const Id* fb = lookup(f.transitions, b);
        const Id* want = v1.undo_of(*ft);
        if (!fb || !want || *fb != *want) {
            r.fail("reversal-mapped", {b, t}, b + " must be mapped to the reversal of " + *ft);
            continue;
        }
        for (const auto& s : ix1.inib(*fb)) {
            IdSet back = rel::image(inv, s);
            IdSet hit;
            for (const auto& s0 : back)
                if (v0.net.inhibitor.count({s0, b})) hit.insert(s0);
            if (!disjoint(ix1.post(s), F1)) {
                if (!back.empty() && hit.empty())
                    r.fail("reverse-inhibitor-reflected", {b, s},
                           "no preimage of " + s + " inhibits " + b + " although " + s + " inhibits " + *fb);
            } else if (hit != back) {
                r.fail("reverse-inhibitor-reflected", {b, s},
                       "some preimage of " + s + " does not inhibit " + b + " although " + s + " inhibits " + *fb);
            }
        }
    }
    return r;
}

// Every configuration maps to a configuration.
[[nodiscard]] inline Report check_aes_preservation(const Aes& g0, const Aes& g1, const EsMorphism& f) {
    Report r;
    for (const auto& x : aes_configurations(g0).configs) {
        IdSet y = image_of(f, x);
        if (!is_aes_configuration(g1, y))
            r.fail("configuration-preserved", std::vector<Id>(x.begin(), x.end()),
                   "image " + show(y) + " of " + show(x) + " is not a configuration");
    }
    return r;
}

// Every single step maps to a step (or to no move when nothing is mapped).
[[nodiscard]] inline Report check_raes_preservation(const Raes& h0, const Raes& h1, const EsMorphism& f,
                                                    std::size_t bound = kDefaultBound) {
    Report r;
    auto g0 = raes_config_graph(h0, bound);
    auto g1 = raes_config_graph(h1, bound);
    for (const auto& x : g0.nodes)
        if (!g1.nodes.count(image_of(f, x)))
            r.fail("configuration-preserved", std::vector<Id>(x.begin(), x.end()),
                   "image of " + show(x) + " is not a reachable configuration");
    for (const auto& e : g0.edges) {
        StepLabel l{image_of(f, e.label.add), image_of(f, e.label.undo)};
        IdSet a = image_of(f, e.from), b = image_of(f, e.to);
        bool ok = l.add.empty() && l.undo.empty() ? a == b : g1.has_edge(a, l, b);
        if (!ok)
            r.fail("step-preserved", std::vector<Id>(e.from.begin(), e.from.end()),
                   "step from " + show(e.from) + " to " + show(e.to) + " has no image step");
    }
    return r;
}

enum class Matching {
    exact,      // image of the relevant part after the step equals the target marking
    inclusion,  // image is contained in the target marking
};

// Token game through relevant markings: m -t-> m' gives
// flat(f_S(rel m)) -f_T(t)-> flat(f_S(rel m')).
[[nodiscard]] inline Report check_racn_preservation(const Racn& v0, const Racn& v1, const NetMorphism& f,
                                                    std::size_t bound = kDefaultBound,
                                                    Matching matching = Matching::exact) {
    Report r;
    auto rg = reachable_markings(v0.net, bound);
    Ipt fwd0 = forward_restriction(v0);
    auto image = [&](const Marking& m) -> std::optional<Marking> {
        if (!is_coherent(fwd0, m)) return std::nullopt;
        return ms::flat(apply_places(f.places, relevant_marking(fwd0, m)));
    };
    auto matches = [&](const Marking& got, const Marking& want) {
        return matching == Matching::exact ? got == want : subset(want, got);
    };
    for (const auto& e : rg.edges) {
        const Marking& m = rg.markings[e.from];
        const Marking& m2 = rg.markings[e.to];
        auto a = image(m), b = image(m2);
        if (!a || !b) {
            r.fail("coherent", {e.transition}, "a reachable marking around " + e.transition + " is not coherent");
            continue;
        }
        const Id* ft = lookup(f.transitions, e.transition);
        bool ok;
        if (!ft) {
            ok = matches(*a, *b);
        } else {
            ok = enabled(v1.net, *a, IdSet{*ft}) && matches(fire(v1.net, *a, IdSet{*ft}), *b);
        }
        if (!ok)
            r.fail("step-preserved", {e.transition},
                   "firing " + e.transition + " at " + show(m) + " is not matched from " + show(*a));
    }
    return r;
}

}  // namespace revnets
