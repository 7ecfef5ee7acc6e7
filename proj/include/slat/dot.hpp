#pragma once

#include <slat/colimit.hpp>
#include <slat/core.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace slat {

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

/// Cover pairs (x, y) of the derived order, y covering x, in ascending order.
inline std::vector<std::pair<int, int>> cover_pairs(const SL& s) {
    int n = s->size();
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x == y || !s->leq(x, y)) continue;
            bool covered = true;
            for (int z = 0; z < n && covered; ++z)
                if (z != x && z != y && s->leq(x, z) && s->leq(z, y)) covered = false;
            if (covered) out.emplace_back(x, y);
        }
    return out;
}

/// One node line plus one edge line per cover, join-irreducibles drawn doubled.
inline void dot_body(std::string& out, const SL& s, const std::string& prefix,
                     const std::string& indent) {
    const auto& ji = s->join_irreducibles();
    for (int x = 0; x < s->size(); ++x) {
        bool irr = std::find(ji.begin(), ji.end(), x) != ji.end();
        out += indent + prefix + std::to_string(x) + " [label=\"" + dot_escape(s->label(x)) +
               "\"" + (irr ? ", peripheries=2" : "") + "];\n";
    }
    for (auto [x, y] : cover_pairs(s))
        out += indent + prefix + std::to_string(x) + " -> " + prefix + std::to_string(y) + ";\n";
}

}  // namespace detail

/// Hasse diagram of the derived order, cover edges pointing bottom-to-top.
/// Output is byte-deterministic for equal inputs.
inline std::string export_dot(const SL& s) {
    std::string out = "digraph hasse {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    detail::dot_body(out, s, "n", "  ");
    out += "}\n";
    return out;
}

/// Source and target as two clusters, the map as dashed cross-edges.
inline std::string export_dot(const Morphism& f) {
    std::string out = "digraph morphism {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    out += "  subgraph cluster_src {\n    label=\"source\";\n";
    detail::dot_body(out, f.src(), "s", "    ");
    out += "  }\n  subgraph cluster_dst {\n    label=\"target\";\n";
    detail::dot_body(out, f.dst(), "t", "    ");
    out += "  }\n";
    for (int x = 0; x < f.src()->size(); ++x)
        out += "  s" + std::to_string(x) + " -> t" + std::to_string(f(x)) +
               " [style=dashed, constraint=false];\n";
    out += "}\n";
    return out;
}

/// One cluster per vertex; every cover arrow of the index appears as a family
/// of dashed cross-edges.
inline std::string export_dot(const Diagram& d) {
    std::string out = "digraph diagram {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    for (size_t v = 0; v < d.vertices.size(); ++v) {
        std::string pv = "v" + std::to_string(v) + "_";
        out += "  subgraph cluster_" + std::to_string(v) + " {\n    label=\"vertex " +
               std::to_string(v) + "\";\n";
        detail::dot_body(out, d.vertices[v], pv, "    ");
        out += "  }\n";
    }
    for (auto [i, j] : d.index.covers()) {
        const Morphism& f = d.arrow(i, j);
        for (int x = 0; x < f.src()->size(); ++x)
            out += "  v" + std::to_string(i) + "_" + std::to_string(x) + " -> v" +
                   std::to_string(j) + "_" + std::to_string(f(x)) +
                   " [style=dashed, constraint=false];\n";
    }
    out += "}\n";
    return out;
}

inline std::string export_dot(const DirectSystem& s) { return export_dot(s.diagram); }

}  // namespace slat
