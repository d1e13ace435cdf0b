#pragma once

#include <string>

#include "revnets/io.hpp"

namespace support {

inline std::string path(const std::string& name) { return std::string(REVNETS_FIXTURES) + "/" + name; }

inline revnets::Model model(const std::string& name) { return revnets::load(path(name + ".json")); }

inline revnets::Ipt net(const std::string& name) {
    auto m = model(name);
    if (auto* v = std::get_if<revnets::Racn>(&m.body)) return v->net;
    return std::get<revnets::Ipt>(m.body);
}

inline revnets::Racn racn(const std::string& name) {
    auto m = model(name);
    if (auto* n = std::get_if<revnets::Ipt>(&m.body)) return {*n, {}};
    return std::get<revnets::Racn>(m.body);
}

inline revnets::Raes raes(const std::string& name) { return std::get<revnets::Raes>(model(name).body); }

inline revnets::Aes aes(const std::string& name) { return std::get<revnets::Aes>(model(name).body); }

inline revnets::NetMorphism net_map(const std::string& name) {
    return std::get<revnets::NetMorphism>(revnets::load_morphism(path(name + ".map.json")));
}

inline revnets::IdSet ids(std::initializer_list<const char*> xs) {
    revnets::IdSet out;
    for (const char* x : xs) out.insert(x);
    return out;
}

}  // namespace support
