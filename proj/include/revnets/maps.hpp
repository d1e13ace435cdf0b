#pragma once

#include <map>

#include "core.hpp"

namespace revnets {

// Place relation plus partial transition map; absent keys are undefined.
struct NetMorphism {
    Rel places;
    std::map<Id, Id> transitions;

    bool operator==(const NetMorphism&) const = default;
};

// Partial event map; absent keys are undefined.
struct EsMorphism {
    std::map<Id, Id> events;

    bool operator==(const EsMorphism&) const = default;
};

template <class Map>
[[nodiscard]] const Id* lookup(const Map& m, const Id& k) {
    auto it = m.find(k);
    return it == m.end() ? nullptr : &it->second;
}

// Steps of a configuration graph: forward part plus undone part.
struct StepLabel {
    IdSet add;
    IdSet undo;

    auto operator<=>(const StepLabel&) const = default;
};

struct GraphEdge {
    IdSet from;
    StepLabel label;
    IdSet to;

    auto operator<=>(const GraphEdge&) const = default;
};

struct ConfigGraph {
    std::set<IdSet> nodes;
    std::set<GraphEdge> edges;
    std::vector<std::string> diagnostics;

    [[nodiscard]] bool has_edge(const IdSet& from, const StepLabel& l, const IdSet& to) const {
        return edges.count({from, l, to}) > 0;
    }
};

}  // namespace revnets
