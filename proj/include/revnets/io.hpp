#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "core.hpp"
#include "es.hpp"
#include "maps.hpp"
#include "net.hpp"
#include "racn.hpp"

namespace revnets {

class ParseError : public Error {
public:
    using Error::Error;
};

using Json = nlohmann::json;

// kind is one of ipt, cn, acn (Ipt), racn, aes, raes, sraes.
struct Model {
    std::string kind;
    std::variant<Ipt, Racn, Aes, Raes, SRaes> body;

    bool operator==(const Model&) const = default;
};

namespace io_detail {

inline void expect_keys(const Json& j, const std::string& what, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ParseError(what + ": expected an object");
    for (const auto& [k, _] : j.items()) {
        bool ok = k == "comment";
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw ParseError(what + ": unexpected field '" + k + "'");
    }
}

inline Id read_id(const Json& j, const std::string& field) {
    if (!j.is_string()) throw ParseError("field '" + field + "': expected a string, got " + j.dump());
    return j.get<Id>();
}

inline IdSet read_set(const Json& j, const std::string& field, bool required = false) {
    IdSet out;
    if (j.is_null()) {
        if (required) throw ParseError("missing field '" + field + "'");
        return out;
    }
    if (!j.is_array()) throw ParseError("field '" + field + "': expected an array");
    for (const auto& x : j)
        if (!out.insert(read_id(x, field)).second) throw ParseError("field '" + field + "': duplicate entry '" + x.get<Id>() + "'");
    return out;
}

inline Rel read_rel(const Json& j, const std::string& field) {
    Rel out;
    if (j.is_null()) return out;
    if (!j.is_array()) throw ParseError("field '" + field + "': expected an array of pairs");
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2) throw ParseError("field '" + field + "': expected a pair, got " + p.dump());
        Pair q{read_id(p[0], field), read_id(p[1], field)};
        if (!out.insert(q).second) throw ParseError("field '" + field + "': duplicate pair " + p.dump());
    }
    return out;
}

inline std::map<Id, Id> read_map(const Json& j, const std::string& field) {
    std::map<Id, Id> out;
    if (j.is_null()) return out;
    if (!j.is_object()) throw ParseError("field '" + field + "': expected an object");
    for (const auto& [k, v] : j.items()) out[k] = read_id(v, field + "." + k);
    return out;
}

inline Json get(const Json& j, const char* k) { return j.contains(k) ? j.at(k) : Json(); }

inline Json write_rel(const Rel& r) {
    Json a = Json::array();
    for (const auto& [x, y] : r) a.push_back({x, y});
    return a;
}

inline Json write_set(const IdSet& s) { return Json(std::vector<Id>(s.begin(), s.end())); }

inline void require_declared(const IdSet& dom, const Id& x, const std::string& field) {
    if (!dom.count(x)) throw ParseError("field '" + field + "': undeclared identifier '" + x + "'");
}

inline void require_declared(const IdSet& a, const IdSet& b, const Rel& r, const std::string& field) {
    for (const auto& [x, y] : r) {
        require_declared(a, x, field);
        require_declared(b, y, field);
    }
}

inline Ipt read_net(const Json& j) {
    Ipt n;
    n.places = read_set(get(j, "places"), "places", true);
    n.transitions = read_set(get(j, "transitions"), "transitions", true);
    n.flow = read_rel(get(j, "flow"), "flow");
    n.inhibitor = read_rel(get(j, "inhibitor"), "inhibitor");
    n.marking = read_set(get(j, "marking"), "marking");
    IdSet all = unite(n.places, n.transitions);
    require_declared(all, all, n.flow, "flow");
    require_declared(n.places, n.transitions, n.inhibitor, "inhibitor");
    for (const auto& s : n.marking) require_declared(n.places, s, "marking");
    try {
        check_well_formed(n);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return n;
}

inline Json write_net(const Ipt& n) {
    return {{"places", write_set(n.places)},   {"transitions", write_set(n.transitions)},
            {"flow", write_rel(n.flow)},       {"inhibitor", write_rel(n.inhibitor)},
            {"marking", write_set(n.marking)}};
}

inline Json write_node(const Node& n) { return n.undo ? Json{{"undo", n.id}} : Json(n.id); }

inline Node read_node(const Json& j, const std::string& field) {
    if (j.is_object()) {
        expect_keys(j, field, {"undo"});
        return {read_id(get(j, "undo"), field), true};
    }
    return {read_id(j, field), false};
}

}  // namespace io_detail

[[nodiscard]] inline Model model_from_json(const Json& j) {
    using namespace io_detail;
    if (!j.is_object() || !j.contains("kind")) throw ParseError("missing field 'kind'");
    std::string kind = read_id(j.at("kind"), "kind");
    if (kind == "ipt" || kind == "cn" || kind == "acn") {
        expect_keys(j, kind, {"kind", "places", "transitions", "flow", "inhibitor", "marking"});
        return {kind, read_net(j)};
    }
    if (kind == "racn") {
        expect_keys(j, kind, {"kind", "places", "transitions", "flow", "inhibitor", "marking", "backward"});
        Racn v{read_net(j), read_map(get(j, "backward"), "backward")};
        for (const auto& [b, f] : v.reverses) {
            require_declared(v.net.transitions, b, "backward");
            require_declared(v.net.transitions, f, "backward");
        }
        return {kind, v};
    }
    if (kind == "aes") {
        expect_keys(j, kind, {"kind", "events", "causation", "weak_causality"});
        Aes g{read_set(get(j, "events"), "events", true), read_rel(get(j, "causation"), "causation"),
              read_rel(get(j, "weak_causality"), "weak_causality")};
        require_declared(g.events, g.events, g.causation, "causation");
        require_declared(g.events, g.events, g.weak, "weak_causality");
        return {kind, g};
    }
    if (kind == "raes") {
        expect_keys(j, kind, {"kind", "events", "reversible", "causation", "weak_causality", "rev_causation", "prevention"});
        Raes h{read_set(get(j, "events"), "events", true), read_set(get(j, "reversible"), "reversible"),
               read_rel(get(j, "causation"), "causation"),         read_rel(get(j, "weak_causality"), "weak_causality"),
               read_rel(get(j, "rev_causation"), "rev_causation"), read_rel(get(j, "prevention"), "prevention")};
        for (const auto& u : h.reversible) require_declared(h.events, u, "reversible");
        require_declared(h.events, h.events, h.causation, "causation");
        require_declared(h.events, h.events, h.weak, "weak_causality");
        require_declared(h.events, h.reversible, h.rev_causation, "rev_causation");
        require_declared(h.reversible, h.events, h.prevention, "prevention");
        return {kind, h};
    }
    if (kind == "sraes") {
        expect_keys(j, kind, {"kind", "events", "reversible", "causation", "prevention"});
        SRaes k{read_set(get(j, "events"), "events", true), read_set(get(j, "reversible"), "reversible"), {}, {}};
        for (const auto& u : k.reversible) require_declared(k.events, u, "reversible");
        auto node_ok = [&](const Node& n, const std::string& field) {
            require_declared(n.undo ? k.reversible : k.events, n.id, field);
        };
        for (const auto& p : get(j, "causation")) {
            if (!p.is_array() || p.size() != 2) throw ParseError("field 'causation': expected a pair, got " + p.dump());
            std::pair<Id, Node> q{read_id(p[0], "causation"), read_node(p[1], "causation")};
            require_declared(k.events, q.first, "causation");
            node_ok(q.second, "causation");
            if (!k.causation.insert(q).second) throw ParseError("field 'causation': duplicate pair " + p.dump());
        }
        for (const auto& p : get(j, "prevention")) {
            if (!p.is_array() || p.size() != 2) throw ParseError("field 'prevention': expected a pair, got " + p.dump());
            std::pair<Node, Id> q{read_node(p[0], "prevention"), read_id(p[1], "prevention")};
            node_ok(q.first, "prevention");
            require_declared(k.events, q.second, "prevention");
            if (!k.prevention.insert(q).second) throw ParseError("field 'prevention': duplicate pair " + p.dump());
        }
        return {kind, k};
    }
    throw ParseError("unknown kind '" + kind + "'");
}

[[nodiscard]] inline Json model_to_json(const Model& m) {
    using namespace io_detail;
    Json j;
    if (auto* n = std::get_if<Ipt>(&m.body)) {
        j = write_net(*n);
    } else if (auto* v = std::get_if<Racn>(&m.body)) {
        j = write_net(v->net);
        j["backward"] = Json::object();
        for (const auto& [b, f] : v->reverses) j["backward"][b] = f;
    } else if (auto* g = std::get_if<Aes>(&m.body)) {
        j = {{"events", write_set(g->events)}, {"causation", write_rel(g->causation)}, {"weak_causality", write_rel(g->weak)}};
    } else if (auto* h = std::get_if<Raes>(&m.body)) {
        j = {{"events", write_set(h->events)},         {"reversible", write_set(h->reversible)},
             {"causation", write_rel(h->causation)},   {"weak_causality", write_rel(h->weak)},
             {"rev_causation", write_rel(h->rev_causation)}, {"prevention", write_rel(h->prevention)}};
    } else {
        const auto& k = std::get<SRaes>(m.body);
        j = {{"events", write_set(k.events)}, {"reversible", write_set(k.reversible)}};
        j["causation"] = Json::array();
        for (const auto& [e, n] : k.causation) j["causation"].push_back({e, write_node(n)});
        j["prevention"] = Json::array();
        for (const auto& [n, e] : k.prevention) j["prevention"].push_back({write_node(n), e});
    }
    j["kind"] = m.kind;
    return j;
}

[[nodiscard]] inline std::string read_text(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

[[nodiscard]] inline Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

[[nodiscard]] inline Model parse_model(const std::string& text, const std::string& source = "<input>") {
    try {
        return model_from_json(parse_json(text, source));
    } catch (const ParseError& e) {
        std::string msg = e.what();
        if (msg.rfind(source, 0) == 0) throw;
        throw ParseError(source + ": " + msg);
    }
}

[[nodiscard]] inline Model load(const std::string& path) { return parse_model(read_text(path), path); }

[[nodiscard]] inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

[[nodiscard]] inline std::string to_text(const Model& m) { return dump(model_to_json(m)); }

inline void save(const Model& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << to_text(m);
}

// Morphism files: net maps carry "places" and "transitions", event maps "events".
using AnyMorphism = std::variant<NetMorphism, EsMorphism>;

[[nodiscard]] inline AnyMorphism morphism_from_json(const Json& j) {
    using namespace io_detail;
    IdSet undefined = read_set(get(j, "undefined"), "undefined");
    auto check_undefined = [&](const std::map<Id, Id>& m) {
        for (const auto& x : undefined)
            if (m.count(x)) throw ParseError("field 'undefined': '" + x + "' is also mapped");
    };
    if (j.contains("events")) {
        expect_keys(j, "event map", {"events", "undefined"});
        EsMorphism f{read_map(j.at("events"), "events")};
        check_undefined(f.events);
        return f;
    }
    expect_keys(j, "net map", {"places", "transitions", "undefined"});
    NetMorphism f{read_rel(get(j, "places"), "places"), read_map(get(j, "transitions"), "transitions")};
    check_undefined(f.transitions);
    return f;
}

[[nodiscard]] inline Json morphism_to_json(const AnyMorphism& m, const IdSet& source_domain = {}) {
    using namespace io_detail;
    Json j;
    const std::map<Id, Id>* defined;
    if (auto* f = std::get_if<NetMorphism>(&m)) {
        j["places"] = write_rel(f->places);
        j["transitions"] = Json(f->transitions);
        defined = &f->transitions;
    } else {
        const auto& g = std::get<EsMorphism>(m);
        j["events"] = Json(g.events);
        defined = &g.events;
    }
    IdSet undefined;
    for (const auto& x : source_domain)
        if (!defined->count(x)) undefined.insert(x);
    j["undefined"] = write_set(undefined);
    return j;
}

[[nodiscard]] inline AnyMorphism load_morphism(const std::string& path) {
    try {
        return morphism_from_json(parse_json(read_text(path), path));
    } catch (const ParseError& e) {
        std::string msg = e.what();
        if (msg.rfind(path, 0) == 0) throw;
        throw ParseError(path + ": " + msg);
    }
}

[[nodiscard]] inline Json report_to_json(const Report& r) {
    Json j;
    j["pass"] = r.pass();
    j["violations"] = Json::array();
    for (const auto& v : r.violations)
        j["violations"].push_back({{"condition", v.condition}, {"witness", v.witness}, {"text", v.text}});
    j["notes"] = r.notes;
    return j;
}

[[nodiscard]] inline Json graph_to_json(const ConfigGraph& g) {
    using namespace io_detail;
    Json j;
    j["nodes"] = Json::array();
    for (const auto& x : g.nodes) j["nodes"].push_back(write_set(x));
    j["edges"] = Json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"from", write_set(e.from)},
                              {"add", write_set(e.label.add)},
                              {"undo", write_set(e.label.undo)},
                              {"to", write_set(e.to)}});
    j["diagnostics"] = g.diagnostics;
    return j;
}

namespace io_detail {

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string set_label(const IdSet& s) {
    if (s.empty()) return "∅";
    return show(s);
}

inline std::string net_dot(const Ipt& n, const IdSet& backward) {
    std::ostringstream o;
    o << "digraph net {\n  rankdir=LR;\n";
    for (const auto& s : n.places) {
        o << "  " << quote(s) << " [shape=circle, label="
          << quote(n.marking.count(s) ? "●" : "") << ", xlabel=" << quote(s) << "];\n";
    }
    for (const auto& t : n.transitions) {
        o << "  " << quote(t) << " [shape=box";
        if (backward.count(t)) o << ", style=filled, fillcolor=grey";
        o << "];\n";
    }
    for (const auto& [x, y] : n.flow) o << "  " << quote(x) << " -> " << quote(y) << ";\n";
    for (const auto& [s, t] : n.inhibitor)
        o << "  " << quote(s) << " -> " << quote(t) << " [arrowhead=odot];\n";
    o << "}\n";
    return o.str();
}

inline void rel_edges(std::ostringstream& o, const Rel& r, const std::string& attrs,
                      const std::string& prefix_to = "") {
    for (const auto& [a, b] : r) o << "  " << quote(a) << " -> " << quote(prefix_to + b) << " [" << attrs << "];\n";
}

}  // namespace io_detail

[[nodiscard]] inline std::string to_dot(const ConfigGraph& g) {
    using namespace io_detail;
    std::ostringstream o;
    o << "digraph configurations {\n";
    for (const auto& x : g.nodes) o << "  " << quote(set_label(x)) << ";\n";
    for (const auto& e : g.edges) {
        std::string label;
        for (const auto& a : e.label.add) label += (label.empty() ? "" : ",") + a;
        for (const auto& u : e.label.undo) label += (label.empty() ? "undo " : ",undo ") + u;
        o << "  " << quote(set_label(e.from)) << " -> " << quote(set_label(e.to)) << " [label=" << quote(label) << "];\n";
    }
    o << "}\n";
    return o.str();
}

// Event structures: causation solid, weak causality dashed, undo nodes grey.
[[nodiscard]] inline std::string to_dot(const Model& m) {
    using namespace io_detail;
    if (auto* n = std::get_if<Ipt>(&m.body)) return net_dot(*n, {});
    if (auto* v = std::get_if<Racn>(&m.body)) return net_dot(v->net, v->backward());
    Raes h;
    if (auto* g = std::get_if<Aes>(&m.body)) h = {g->events, {}, g->causation, g->weak, {}, {}};
    else if (auto* r = std::get_if<Raes>(&m.body)) h = *r;
    else {
        const auto& k = std::get<SRaes>(m.body);
        h = {k.events, k.reversible, {}, {}, {}, {}};
        for (const auto& [e, n] : k.causation) (n.undo ? h.rev_causation : h.causation).insert({e, n.id});
        for (const auto& [n, e] : k.prevention) (n.undo ? h.prevention : h.weak).insert({n.id, e});
    }
    std::ostringstream o;
    o << "digraph events {\n";
    for (const auto& e : h.events) o << "  " << quote(e) << " [shape=plaintext];\n";
    for (const auto& u : h.reversible)
        o << "  " << quote("undo " + u) << " [shape=plaintext, fontcolor=grey40];\n";
    rel_edges(o, h.causation, "style=solid");
    rel_edges(o, h.weak, "style=dashed");
    rel_edges(o, h.rev_causation, "style=solid, color=grey40", "undo ");
    for (const auto& [u, e] : h.prevention)
        o << "  " << quote("undo " + u) << " -> " << quote(e) << " [style=dashed, color=grey40];\n";
    o << "}\n";
    return o.str();
}

}  // namespace revnets
