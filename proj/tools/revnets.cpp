// Command-line front end. Exit codes: 0 success, 1 validation failure, 2 usage or parse error.
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revnets/acn.hpp"
#include "revnets/bridge.hpp"
#include "revnets/es.hpp"
#include "revnets/io.hpp"
#include "revnets/morphisms.hpp"
#include "revnets/racn.hpp"

using namespace revnets;

namespace {

struct Failure {
    Report report;
};

int emit_report(const Report& r) {
    std::cout << dump(report_to_json(r));
    return r.pass() ? 0 : 1;
}

// Stops with exit 1 when the model is not valid as `kind`.
void require_valid(const Report& r) {
    if (!r.pass()) throw Failure{r};
}

Json set_json(const IdSet& s) { return Json(std::vector<Id>(s.begin(), s.end())); }

Json rel_json(const Rel& r) {
    Json a = Json::array();
    for (const auto& [x, y] : r) a.push_back({x, y});
    return a;
}

Json multiset_json(const Multiset& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m)
        if (v) j[k] = v;
    return j;
}

Raes as_raes(const Model& m) {
    if (auto* h = std::get_if<Raes>(&m.body)) return *h;
    if (auto* g = std::get_if<Aes>(&m.body)) return aes_as_raes(*g);
    if (auto* k = std::get_if<SRaes>(&m.body)) {
        require_valid(validate_sraes(*k));
        return sraes_to_raes(*k);
    }
    throw ParseError("expected an event structure, got kind '" + m.kind + "'");
}

Racn as_racn(const Model& m) {
    if (auto* v = std::get_if<Racn>(&m.body)) return *v;
    if (auto* n = std::get_if<Ipt>(&m.body)) return acn_as_racn(*n);
    throw ParseError("expected a net, got kind '" + m.kind + "'");
}

const Ipt& as_net(const Model& m) {
    if (auto* n = std::get_if<Ipt>(&m.body)) return *n;
    if (auto* v = std::get_if<Racn>(&m.body)) return v->net;
    throw ParseError("expected a net, got kind '" + m.kind + "'");
}

Report validate_as(const Model& m, const std::string& kind) {
    if (kind == "ipt") {
        Report r;
        if (!is_safe(as_net(m))) r.fail("safe", {}, "some reachable marking puts two tokens in a place");
        return r;
    }
    if (kind == "pacn") return validate_pacn(as_net(m));
    if (kind == "acn") return validate_acn(as_net(m));
    if (kind == "cn") return validate_cn(as_net(m));
    if (kind == "racn") return validate_racn(as_racn(m));
    if (kind == "aes") {
        if (auto* g = std::get_if<Aes>(&m.body)) return validate_aes(*g);
        auto h = as_raes(m);
        return validate_aes({h.events, h.causation, h.weak});
    }
    if (kind == "raes") {
        if (auto* k = std::get_if<SRaes>(&m.body)) return validate_raes(sraes_to_raes(*k));
        return validate_raes(as_raes(m));
    }
    if (kind == "sraes") {
        if (auto* k = std::get_if<SRaes>(&m.body)) return validate_sraes(*k);
        return validate_sraes(raes_to_sraes(as_raes(m)));
    }
    throw ParseError("unknown kind '" + kind + "'");
}

NamingScheme parse_names(const std::string& arg) {
    NamingScheme n;
    if (arg.empty()) return n;
    std::vector<std::string> parts;
    std::stringstream ss(arg);
    for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
    if (parts.size() != 3) throw ParseError("--names expects three comma-separated prefixes");
    n.unfired = parts[0];
    n.fired = parts[1];
    n.undo = parts[2];
    if (n.unfired == n.fired) throw ParseError("--names prefixes for places must differ");
    return n;
}

Json relations_json(const Model& m) {
    Json j;
    if (std::holds_alternative<Ipt>(m.body) || std::holds_alternative<Racn>(m.body)) {
        Racn v = as_racn(m);
        auto d = derived_relations(forward_restriction(v));
        j["lessdot"] = rel_json(d.lessdot);
        j["prevention"] = rel_json(d.prevention);
        j["leadsto"] = rel_json(d.leadsto);
        j["conflict"] = rel_json(d.conflict);
        j["lessdot_trans"] = rel_json(d.lessdot_trans);
        if (m.kind == "cn") j["cn_conflict"] = rel_json(cn_conflict(v.net));
        if (!v.reverses.empty()) {
            auto br = detail::backward_relations_raw(v);
            j["rev_causation"] = rel_json(br.rev_causation);
            j["rev_prevention"] = rel_json(br.rev_prevention);
            j["sustained"] = rel_json(br.sustained);
        }
        return j;
    }
    Raes h = as_raes(m);
    j["causation"] = rel_json(h.causation);
    j["weak_causality"] = rel_json(h.weak);
    j["conflict"] = rel_json(rel::symmetric_part(h.weak));
    j["sustained_causation"] = rel_json(sustained_causation(h));
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks and translates reversible asymmetric causal nets and event structures"};
    app.require_subcommand(1);

    std::string file, file2, map_file, as_kind, to_kind, names_arg, seq, cross = "all";
    std::size_t bound = kDefaultBound;
    bool dot = false, json = false, mixed = false, saturate_flag = false;

    auto* validate = app.add_subcommand("validate", "check the conditions of a kind");
    validate->add_option("file", file, "model file or -")->required();
    validate->add_option("--as", as_kind, "ipt, pacn, acn, cn, racn, aes, raes or sraes");

    auto* relations = app.add_subcommand("relations", "print derived relations");
    relations->add_option("file", file)->required();

    auto* configs = app.add_subcommand("configs", "enumerate configurations");
    configs->add_option("file", file)->required();
    auto* dot_flag = configs->add_flag("--dot", dot, "Graphviz output");
    configs->add_flag("--json", json, "JSON output (default)")->excludes(dot_flag);
    configs->add_flag("--mixed-steps", mixed, "allow steps mixing events and undoings");
    configs->add_option("--bound", bound, "state bound");

    auto* reach = app.add_subcommand("reach", "reachable markings");
    reach->add_option("file", file)->required();
    reach->add_option("--bound", bound, "state bound");

    auto* fire_cmd = app.add_subcommand("fire", "fire a sequence of transitions");
    fire_cmd->add_option("file", file)->required();
    fire_cmd->add_option("--seq", seq, "t1,t2,...")->required();

    auto* translate = app.add_subcommand("translate", "convert between kinds");
    translate->add_option("file", file)->required();
    translate->add_option("--to", to_kind, "racn, raes, acn or sraes")
        ->required()
        ->check(CLI::IsMember({"racn", "raes", "acn", "sraes"}));
    translate->add_flag("--saturate", saturate_flag, "saturate an rAES before encoding");
    translate->add_option("--names", names_arg, "unfired,fired,undo prefixes");

    auto* morph = app.add_subcommand("check-morphism", "check a map between two models");
    morph->add_option("src", file)->required();
    morph->add_option("dst", file2)->required();
    morph->add_option("map", map_file)->required();

    auto* coproduct = app.add_subcommand("coproduct", "sum of two rAESs or rACNs");
    coproduct->add_option("f1", file)->required();
    coproduct->add_option("f2", file2)->required();
    coproduct->add_option("--cross", cross, "inhibitor arcs between rACN components")
        ->check(CLI::IsMember({"all", "postsets"}));

    auto* states_cmd = app.add_subcommand("states", "fired-multiset states of a net");
    states_cmd->add_option("file", file)->required();

    auto* draw = app.add_subcommand("dot", "Graphviz rendering of a model");
    draw->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Model m = load(file);
        if (*validate) {
            return emit_report(validate_as(m, as_kind.empty() ? m.kind : as_kind));
        }
        if (*relations) {
            std::cout << dump(relations_json(m));
            return 0;
        }
        if (*configs) {
            if (auto* n = std::get_if<Ipt>(&m.body)) {
                require_valid(validate_pacn(*n));
                auto cs = pacn_configurations(*n);
                if (dot) {
                    ConfigGraph g;
                    for (const auto& c : cs) g.nodes.insert(c.events);
                    std::cout << to_dot(g);
                    return 0;
                }
                Json a = Json::array();
                for (const auto& c : cs) a.push_back({{"events", set_json(c.events)}, {"linearization", c.linearization}});
                std::cout << dump(a);
                return 0;
            }
            ConfigGraph g;
            if (auto* v = std::get_if<Racn>(&m.body)) {
                require_valid(validate_racn(*v));
                g = racn_configurations(*v, bound);
            } else if (auto* a = std::get_if<Aes>(&m.body); a && !mixed) {
                require_valid(validate_aes(*a));
                auto cs = aes_configurations(*a);
                for (const auto& x : cs.configs) g.nodes.insert(x);
                for (const auto& [x, y] : cs.extend)
                    if (y.size() == x.size() + 1) g.edges.insert({x, {minus(y, x), {}}, y});
            } else {
                Raes h = as_raes(m);
                require_valid(validate_raes(h));
                g = raes_config_graph(h, bound, mixed);
            }
            std::cout << (dot ? to_dot(g) : dump(graph_to_json(g)));
            return 0;
        }
        if (*reach) {
            auto g = reachable_markings(as_net(m), bound);
            Json a = Json::array();
            for (const auto& mk : g.markings) a.push_back(set_json(mk));
            std::cout << dump(a);
            return 0;
        }
        if (*fire_cmd) {
            std::vector<Id> ts;
            std::stringstream ss(seq);
            for (std::string t; std::getline(ss, t, ',');)
                if (!t.empty()) ts.push_back(t);
            const Ipt& n = as_net(m);
            try {
                std::cout << dump(set_json(fire_sequence(n, n.marking, ts)));
                return 0;
            } catch (const Error& e) {
                Report r;
                r.fail("firing", ts, e.what());
                return emit_report(r);
            }
        }
        if (*translate) {
            NamingScheme names = parse_names(names_arg);
            Model out;
            if (to_kind == "racn") {
                Raes h = as_raes(m);
                if (saturate_flag) h = saturate(h);
                require_valid(validate_raes(h));
                out = {"racn", raes_to_racn(h, names)};
            } else if (to_kind == "raes") {
                if (auto* k = std::get_if<SRaes>(&m.body)) {
                    out = {"raes", sraes_to_raes(*k)};
                } else if (std::holds_alternative<Raes>(m.body) || std::holds_alternative<Aes>(m.body)) {
                    Raes h = as_raes(m);
                    out = {"raes", saturate_flag ? saturate(h) : h};
                } else {
                    Racn v = as_racn(m);
                    require_valid(validate_racn(v));
                    out = {"raes", racn_to_raes(v)};
                }
            } else if (to_kind == "acn") {
                const Ipt& n = as_net(m);
                require_valid(validate_cn(n));
                out = {"acn", cn_to_acn(n)};
            } else {
                Raes h = as_raes(m);
                if (saturate_flag) h = saturate(h);
                require_valid(validate_raes(h));
                out = {"sraes", raes_to_sraes(h)};
            }
            std::cout << to_text(out);
            return 0;
        }
        if (*morph) {
            Model dst = load(file2);
            AnyMorphism f = load_morphism(map_file);
            if (auto* fe = std::get_if<EsMorphism>(&f)) {
                if (std::holds_alternative<Aes>(m.body) && std::holds_alternative<Aes>(dst.body))
                    return emit_report(check_aes_morphism(std::get<Aes>(m.body), std::get<Aes>(dst.body), *fe));
                return emit_report(check_raes_morphism(as_raes(m), as_raes(dst), *fe));
            }
            const auto& fn = std::get<NetMorphism>(f);
            if (std::holds_alternative<Racn>(m.body) || std::holds_alternative<Racn>(dst.body))
                return emit_report(check_racn_morphism(as_racn(m), as_racn(dst), fn));
            return emit_report(check_acn_morphism(as_net(m), as_net(dst), fn));
        }
        if (*coproduct) {
            Model m2 = load(file2);
            Json j;
            bool nets = std::holds_alternative<Racn>(m.body) || std::holds_alternative<Ipt>(m.body);
            if (nets) {
                Racn v0 = as_racn(m), v1 = as_racn(m2);
                require_valid(validate_racn(v0));
                require_valid(validate_racn(v1));
                auto c = racn_coproduct(v0, v1, cross == "all" ? CrossArcs::all : CrossArcs::postsets);
                j["sum"] = model_to_json({"racn", c.sum});
                j["in0"] = morphism_to_json(c.in0, v0.net.transitions);
                j["in1"] = morphism_to_json(c.in1, v1.net.transitions);
            } else {
                Raes h0 = as_raes(m), h1 = as_raes(m2);
                require_valid(validate_raes(h0));
                require_valid(validate_raes(h1));
                auto c = raes_coproduct(h0, h1);
                j["sum"] = model_to_json({"raes", c.sum});
                j["in0"] = morphism_to_json(c.in0, h0.events);
                j["in1"] = morphism_to_json(c.in1, h1.events);
            }
            std::cout << dump(j);
            return 0;
        }
        if (*states_cmd) {
            Json a = Json::array();
            for (const auto& s : states(as_net(m), true, bound)) a.push_back(multiset_json(s));
            std::cout << dump(a);
            return 0;
        }
        if (*draw) {
            std::cout << to_dot(m);
            return 0;
        }
    } catch (const Failure& f) {
        return emit_report(f.report);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
