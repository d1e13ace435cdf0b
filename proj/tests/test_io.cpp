#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "revnets/io.hpp"
#include "support.hpp"

using namespace revnets;
using support::ids;

namespace {

std::string parse_error(const std::string& text) {
    try {
        (void)parse_model(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST(Io, FixturesRoundTripByteForByte) {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(REVNETS_FIXTURES)) {
        std::string path = entry.path().string();
        if (entry.path().extension() != ".json" || path.find(".map.") != std::string::npos) continue;
        ++seen;
        std::string text = read_text(path);
        Model m = parse_model(text, path);
        EXPECT_EQ(to_text(m), text) << path;
        EXPECT_EQ(parse_model(to_text(m)), m) << path;
    }
    EXPECT_GE(seen, 25);
}

TEST(Io, SaveWritesCanonicalText) {
    auto tmp = std::filesystem::temp_directory_path() / "revnets_io_save.json";
    Model m = support::model("n_r_prime");
    save(m, tmp.string());
    EXPECT_EQ(read_text(tmp.string()), read_text(support::path("n_r_prime.json")));
    std::filesystem::remove(tmp);
}

TEST(Io, MorphismFilesRoundTrip) {
    for (const char* name : {"c0_c1", "v0_v1"}) {
        std::string path = support::path(std::string(name) + ".map.json");
        AnyMorphism f = load_morphism(path);
        std::string src = std::string(name).substr(0, 2);
        IdSet dom;
        Model m = support::model(src);
        if (auto* n = std::get_if<Ipt>(&m.body)) dom = n->transitions;
        else dom = std::get<Racn>(m.body).net.transitions;
        EXPECT_EQ(dump(morphism_to_json(f, dom)), read_text(path)) << name;
    }
    auto ef = morphism_from_json(Json::parse(R"({"events":{"a":"x"},"undefined":["b"]})"));
    EXPECT_EQ(std::get<EsMorphism>(ef).events.at("a"), "x");
    EXPECT_THROW((void)morphism_from_json(Json::parse(R"({"events":{"a":"x"},"undefined":["a"]})")), ParseError);
}

TEST(Io, UndeclaredIdsAreNamed) {
    std::string e = parse_error(
        R"({"kind":"ipt","places":["s"],"transitions":["t"],"flow":[["s","t"],["t","zz"]],"inhibitor":[],"marking":[]})");
    EXPECT_NE(e.find("zz"), std::string::npos) << e;
    e = parse_error(R"({"kind":"aes","events":["a"],"causation":[["a","q"]],"weak_causality":[]})");
    EXPECT_NE(e.find("q"), std::string::npos) << e;
    e = parse_error(R"({"kind":"racn","places":["s"],"transitions":["t"],"flow":[["s","t"]],"inhibitor":[],)"
                    R"("marking":["s"],"backward":{"u":"t"}})");
    EXPECT_NE(e.find("'u'"), std::string::npos) << e;
}

TEST(Io, StructuralErrors) {
    EXPECT_NE(parse_error(R"({"kind":"aes","events":["a","a"],"causation":[],"weak_causality":[]})"), "");
    EXPECT_NE(parse_error(R"({"kind":"petri"})").find("petri"), std::string::npos);
    EXPECT_NE(parse_error(R"({"places":[]})").find("kind"), std::string::npos);
    EXPECT_NE(parse_error(R"({"kind":"aes","events":["a"],"causes":[]})").find("causes"), std::string::npos);
    EXPECT_NE(parse_error("{not json"), "");
    EXPECT_EQ(parse_error(R"({"kind":"aes","events":["a"],"comment":"free text"})"), "");
}

TEST(Io, EmptyNetLoads) {
    Model m = support::model("empty");
    const Ipt& n = std::get<Ipt>(m.body);
    EXPECT_TRUE(n.places.empty());
    EXPECT_TRUE(n.transitions.empty());
}

TEST(Io, SraesUndoNodes) {
    std::string text = R"({"kind":"sraes","events":["a","b"],"reversible":["a"],)"
                       R"("causation":[["a",{"undo":"a"}],["a","b"]],"prevention":[[{"undo":"a"},"b"]]})";
    Model m = parse_model(text);
    const auto& k = std::get<SRaes>(m.body);
    EXPECT_TRUE(k.causation.count({"a", Node{"a", true}}));
    EXPECT_TRUE(k.prevention.count({Node{"a", true}, "b"}));
    EXPECT_EQ(parse_model(to_text(m)), m);
}

TEST(Dot, RunningNet) {
    std::string dot = to_dot(support::model("n_r_prime"));
    EXPECT_EQ(count(dot, "arrowhead=odot"), 6u);
    EXPECT_EQ(count(dot, "fillcolor=grey"), 2u);
    EXPECT_NE(dot.find("\"undo_a\" [shape=box, style=filled, fillcolor=grey];"), std::string::npos);
    EXPECT_NE(dot.find("\"s1\" [shape=circle, label=\"●\", xlabel=\"s1\"];"), std::string::npos);
    EXPECT_NE(dot.find("\"s4\" [shape=circle, label=\"\", xlabel=\"s4\"];"), std::string::npos);
    EXPECT_EQ(dot.rfind("digraph net {\n", 0), 0u);
}

TEST(Dot, IntroConfigurationGraph) {
    std::string dot = to_dot(raes_config_graph(support::raes("h_intro")));
    std::size_t nodes = 0;
    std::istringstream in(dot);
    for (std::string line; std::getline(in, line);)
        if (line.find("->") == std::string::npos && line.back() == ';') ++nodes;
    EXPECT_EQ(nodes, 8u);
    EXPECT_NE(dot.find("\"∅\""), std::string::npos);
    EXPECT_NE(dot.find("\"{a,b}\" -> \"{b}\" [label=\"undo a\"];"), std::string::npos);
}

TEST(Dot, EventStructure) {
    std::string dot = to_dot(support::model("h_intro"));
    EXPECT_NE(dot.find("\"a\" -> \"b\" [style=solid];"), std::string::npos);
    EXPECT_NE(dot.find("\"b\" -> \"c\" [style=dashed];"), std::string::npos);
    EXPECT_NE(dot.find("\"undo a\" -> \"c\" [style=dashed, color=grey40];"), std::string::npos);
}

TEST(Json, ReportShape) {
    Report r;
    r.fail("x", {"a", "b"}, "text");
    r.note("n");
    Json j = report_to_json(r);
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_EQ(j["violations"][0]["condition"], "x");
    EXPECT_EQ(j["violations"][0]["witness"], Json::array({"a", "b"}));
    EXPECT_EQ(j["notes"][0], "n");
}
