#pragma once

#include <json.hpp>

#include "colimit.hpp"
#include "core.hpp"

namespace slat {

using json = nlohmann::json;

// Records: semilattice {"size","zero","join","labels"?}, morphism
// {"src","dst","map"}, poset {"size","covers"}, diagram {"index","vertices",
// "arrows","objects"?}, direct system = diagram + {"embeddings": true}.
// Vertex values may be inline records or string ids into the "objects" pool.

inline json encode(const SL& s) {
    json j;
    j["size"] = s->size();
    j["zero"] = s->zero();
    std::vector<std::vector<int>> table(s->size(), std::vector<int>(s->size()));
    for (int a = 0; a < s->size(); ++a)
        for (int b = 0; b < s->size(); ++b) table[a][b] = s->join(a, b);
    j["join"] = table;
    std::vector<std::string> labels(s->size());
    bool any = false;
    for (int i = 0; i < s->size(); ++i) {
        labels[i] = s->label(i);
        any = any || !labels[i].empty();
    }
    if (any) j["labels"] = labels;
    return j;
}

inline SL decode_semilattice(const json& j) {
    if (!j.is_object() || !j.contains("join") || !j.contains("zero"))
        fail("IllFormed", "semilattice record needs \"join\" and \"zero\"");
    std::vector<std::vector<int>> table = j.at("join").get<std::vector<std::vector<int>>>();
    if (j.contains("size") && int(table.size()) != j.at("size").get<int>())
        fail("IllFormed", "semilattice record size does not match its join table");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return Semilattice::from_join_table(table, j.at("zero").get<int>(), labels);
}

inline json encode(const Morphism& f, const std::string& src_id = "src",
                   const std::string& dst_id = "dst") {
    json j;
    j["src"] = src_id;
    j["dst"] = dst_id;
    j["map"] = f.map();
    return j;
}

inline Morphism decode_morphism(const json& j, const SL& src, const SL& dst) {
    if (!j.is_object() || !j.contains("map")) fail("IllFormed", "morphism record needs \"map\"");
    return Morphism::checked(src, dst, j.at("map").get<std::vector<int>>());
}

inline json encode(const Poset& p) {
    json j;
    j["size"] = p.size();
    std::vector<std::vector<int>> covers;
    for (const auto& [lo, hi] : p.covers()) covers.push_back({lo, hi});
    j["covers"] = covers;
    return j;
}

inline Poset decode_poset(const json& j) {
    if (!j.is_object() || !j.contains("size") || !j.contains("covers"))
        fail("IllFormed", "poset record needs \"size\" and \"covers\"");
    std::vector<std::pair<int, int>> covers;
    for (const auto& e : j.at("covers")) {
        if (!e.is_array() || e.size() != 2) fail("IllFormed", "poset cover must be a pair");
        covers.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Poset::from_covers(j.at("size").get<int>(), covers);
}

inline json encode(const Diagram& d) {
    json j;
    j["index"] = encode(d.index);
    json verts = json::object();
    for (size_t v = 0; v < d.vertices.size(); ++v) verts[std::to_string(v)] = encode(d.vertices[v]);
    j["vertices"] = verts;
    json arrows = json::object();
    for (const auto& [rel, f] : d.arrows) {
        std::string key = std::to_string(rel.first) + "->" + std::to_string(rel.second);
        arrows[key] = encode(f, std::to_string(rel.first), std::to_string(rel.second));
    }
    j["arrows"] = arrows;
    return j;
}

inline json encode(const DirectSystem& s) {
    json j = encode(s.diagram);
    j["embeddings"] = true;
    return j;
}

inline Diagram decode_diagram(const json& j) {
    if (!j.is_object() || !j.contains("index") || !j.contains("vertices"))
        fail("IllFormed", "diagram record needs \"index\" and \"vertices\"");
    Poset idx = decode_poset(j.at("index"));
    std::map<std::string, SL> pool;
    if (j.contains("objects"))
        for (const auto& [id, rec] : j.at("objects").items()) pool[id] = decode_semilattice(rec);
    std::vector<SL> verts(idx.size());
    for (const auto& [point, rec] : j.at("vertices").items()) {
        int v = std::stoi(point);
        if (v < 0 || v >= idx.size()) fail("IllFormed", "vertex point out of range");
        if (rec.is_string()) {
            auto it = pool.find(rec.get<std::string>());
            if (it == pool.end()) fail("IllFormed", "vertex id missing from the objects pool");
            verts[v] = it->second;
        } else {
            verts[v] = decode_semilattice(rec);
        }
    }
    for (int v = 0; v < idx.size(); ++v)
        if (!verts[v]) fail("IllFormed", "vertex " + std::to_string(v) + " missing");
    std::map<std::pair<int, int>, Morphism> arrows;
    if (j.contains("arrows"))
        for (const auto& [key, rec] : j.at("arrows").items()) {
            auto sep = key.find("->");
            if (sep == std::string::npos) fail("IllFormed", "arrow key must look like \"i->j\"");
            int i = std::stoi(key.substr(0, sep)), k = std::stoi(key.substr(sep + 2));
            if (i < 0 || i >= idx.size() || k < 0 || k >= idx.size())
                fail("IllFormed", "arrow endpoints out of range");
            arrows.emplace(std::make_pair(i, k), decode_morphism(rec, verts[i], verts[k]));
        }
    return Diagram::create(std::move(idx), std::move(verts), std::move(arrows));
}

inline DirectSystem decode_direct_system(const json& j) {
    return DirectSystem::from_diagram(decode_diagram(j));
}

}  // namespace slat
