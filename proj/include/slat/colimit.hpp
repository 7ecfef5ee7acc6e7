#pragma once

#include <deque>
#include <map>
#include <utility>

#include "canonical.hpp"
#include "core.hpp"
#include "shelter.hpp"

namespace slat {

// A finite commuting diagram of semilattices over a poset index.  Arrows are
// stored for every strict relation i < j; construction takes the cover arrows
// (plus any extras), derives the rest by composition, and verifies that all
// composites agree.
struct Diagram {
    Poset index;
    std::vector<SL> vertices;
    std::map<std::pair<int, int>, Morphism> arrows;

    const Morphism& arrow(int i, int j) const { return arrows.at({i, j}); }

    static Diagram create(Poset idx, std::vector<SL> verts,
                          std::map<std::pair<int, int>, Morphism> given) {
        int v = idx.size();
        if (int(verts.size()) != v) fail("IllFormed", "vertex count does not match index size");
        for (const auto& [rel, f] : given) {
            auto [i, j] = rel;
            if (i < 0 || i >= v || j < 0 || j >= v || i == j || !idx.leq(i, j))
                fail("IllFormed", "arrow attached to a non-relation of the index");
            if (!same_object(f.src(), verts[i]) || !same_object(f.dst(), verts[j]))
                fail("IllFormed", "arrow endpoints do not match the named vertices");
        }
        std::vector<std::pair<int, int>> covers = idx.covers();
        for (const auto& c : covers)
            if (!given.count(c)) fail("IllFormed", "missing arrow for a cover relation of the index");

        std::vector<int> height(v, 0);
        bool moved = true;
        while (moved) {
            moved = false;
            for (int x = 0; x < v; ++x)
                for (int y = 0; y < v; ++y)
                    if (y != x && idx.leq(y, x) && height[x] < height[y] + 1) {
                        height[x] = height[y] + 1;
                        moved = true;
                    }
        }

        Diagram d{std::move(idx), std::move(verts), std::move(given)};
        std::vector<std::pair<int, int>> rels;
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j)
                if (i != j && d.index.leq(i, j)) rels.push_back({i, j});
        std::stable_sort(rels.begin(), rels.end(), [&](const auto& a, const auto& b) {
            return height[a.second] - height[a.first] < height[b.second] - height[b.first];
        });
        for (const auto& rel : rels) {
            if (d.arrows.count(rel)) continue;
            auto [i, j] = rel;
            int mid = -1;
            for (const auto& [lo, hi] : covers)
                if (hi == j && lo != i && d.index.leq(i, lo)) { mid = lo; break; }
            if (mid < 0) fail("Inconsistent", "no factorisation path for a derived arrow");
            d.arrows.emplace(rel, compose(d.arrows.at({mid, j}), d.arrows.at({i, mid})));
        }
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j)
                for (int k = 0; k < v; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (!d.index.leq(i, j) || !d.index.leq(j, k)) continue;
                    if (compose(d.arrow(j, k), d.arrow(i, j)).map() != d.arrow(i, k).map())
                        fail("IllFormed", "arrows do not compose functorially");
                }
        return d;
    }
};

// Span i <- apex -> j presented over the three-point index 0 < 1, 0 < 2.
inline Diagram span_diagram(const Morphism& left, const Morphism& right) {
    if (!same_object(left.src(), right.src())) fail("IllFormed", "span arms must share a source");
    Poset idx = Poset::from_covers(3, {{0, 1}, {0, 2}});
    return Diagram::create(std::move(idx), {left.src(), left.dst(), right.dst()},
                           {{{0, 1}, left}, {{0, 2}, right}});
}

struct Cocone {
    SL target;
    std::vector<Morphism> components;  // one per diagram vertex
};

struct ColimitResult {
    SL apex;
    std::vector<Morphism> legs;
    // For each apex element, a join-decomposition into leg images: pairs
    // (vertex, element) whose leg images join to the apex element.  Empty for
    // the apex zero.
    std::vector<std::vector<std::pair<int, int>>> generator_map;
    Diagram diagram;
};

namespace detail {

// Saturation engine for the colimit congruence on the free join-semilattice
// over all (vertex, element) generators.  A closed class is represented by the
// set of generators below it; closure adds down-sets, joins within a vertex,
// and both directions of every arrow identification.
struct ColimitClosure {
    int nvert;
    std::vector<int> offset;            // generator id = offset[v] + element
    std::vector<const Semilattice*> sl;
    struct ArrowRT {
        int src, dst;
        const Morphism* f;
        std::vector<std::vector<int>> preimage;  // element of dst -> elements of src
    };
    std::vector<ArrowRT> arrows;
    std::vector<std::vector<int>> out_of, into;  // vertex -> arrow indices
    int ngen;

    explicit ColimitClosure(const Diagram& d) {
        nvert = int(d.vertices.size());
        offset.resize(nvert + 1, 0);
        for (int v = 0; v < nvert; ++v) {
            sl.push_back(d.vertices[v].get());
            offset[v + 1] = offset[v] + d.vertices[v]->size();
        }
        ngen = offset[nvert];
        out_of.resize(nvert);
        into.resize(nvert);
        for (const auto& [rel, f] : d.arrows) {
            ArrowRT a{rel.first, rel.second, &f, {}};
            a.preimage.resize(d.vertices[rel.second]->size());
            for (int x = 0; x < d.vertices[rel.first]->size(); ++x)
                a.preimage[f(x)].push_back(x);
            out_of[rel.first].push_back(int(arrows.size()));
            into[rel.second].push_back(int(arrows.size()));
            arrows.push_back(std::move(a));
        }
    }

    int vertex_of(int g) const {
        int v = int(std::upper_bound(offset.begin(), offset.end(), g) - offset.begin()) - 1;
        return v;
    }

    // Close base (copied) under the congruence together with the extra seeds.
    Bits close(const Bits& base, const std::vector<int>& seeds) const {
        Bits x = base;
        std::vector<std::vector<int>> members(nvert);
        std::vector<int> stack;
        auto add = [&](int v, int e) {
            int g = offset[v] + e;
            if (x.test(g)) return;
            x.set(g);
            members[v].push_back(e);
            stack.push_back(g);
        };
        for (int v = 0; v < nvert; ++v) {
            for (int e = 0; e < sl[v]->size(); ++e)
                if (x.test(offset[v] + e)) members[v].push_back(e);
            add(v, sl[v]->zero());
        }
        for (int v = 0; v < nvert; ++v)
            for (int e : members[v]) stack.push_back(offset[v] + e);
        for (int g : seeds) add(vertex_of(g), g - offset[vertex_of(g)]);
        while (!stack.empty()) {
            int g = stack.back();
            stack.pop_back();
            int v = vertex_of(g);
            int e = g - offset[v];
            for (int y : sl[v]->down(e).members()) add(v, y);
            for (size_t i = 0; i < members[v].size(); ++i) add(v, sl[v]->join(e, members[v][i]));
            for (int ai : out_of[v]) add(arrows[ai].dst, (*arrows[ai].f)(e));
            for (int ai : into[v])
                for (int y : arrows[ai].preimage[e]) add(arrows[ai].src, y);
        }
        return x;
    }
};

}  // namespace detail

// Colimit of a finite diagram: the join-semilattice of closed generator
// classes, reached breadth-first from the zero class by joining generators.
inline ColimitResult colimit(const Diagram& d) {
    detail::ColimitClosure cc(d);
    int nvert = cc.nvert;
    Bits zero_cl = cc.close(Bits(cc.ngen), {});

    // Distinct non-trivial generator closures, in generator order.
    std::vector<Bits> gen_cl;        // distinct closures
    std::vector<std::pair<int, int>> gen_rep;  // representative (vertex, element)
    std::vector<int> gen_class(cc.ngen, -1);   // generator -> distinct index (-1: collapses to zero)
    {
        std::map<Bits, int> seen;
        for (int g = 0; g < cc.ngen; ++g) {
            Bits c = cc.close(zero_cl, {g});
            if (c == zero_cl) continue;
            auto it = seen.find(c);
            if (it == seen.end()) {
                seen.emplace(c, int(gen_cl.size()));
                gen_class[g] = int(gen_cl.size());
                int v = cc.vertex_of(g);
                gen_rep.push_back({v, g - cc.offset[v]});
                gen_cl.push_back(std::move(c));
            } else {
                gen_class[g] = it->second;
            }
        }
    }
    int ndistinct = int(gen_cl.size());

    std::vector<Bits> elems{zero_cl};
    std::map<Bits, int> index{{zero_cl, 0}};
    std::vector<std::vector<int>> dec{{}};       // greedy generator decomposition
    std::vector<std::vector<int>> jg;            // jg[e][di] = index of e v gen(di)
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int ei = queue.front();
        queue.pop_front();
        if (int(jg.size()) <= ei) jg.resize(ei + 1);
        jg[ei].assign(ndistinct, -1);
        for (int di = 0; di < ndistinct; ++di) {
            if (gen_cl[di].subset_of(elems[ei])) {
                jg[ei][di] = ei;
                continue;
            }
            Bits e = cc.close(elems[ei], gen_cl[di].members());
            auto it = index.find(e);
            if (it != index.end()) {
                jg[ei][di] = it->second;
                continue;
            }
            int ni = int(elems.size());
            if (ni >= limits().max_semilattice_size)
                fail("SizeCapExceeded", "colimit apex exceeds the size cap");
            index.emplace(e, ni);
            elems.push_back(std::move(e));
            std::vector<int> nd = dec[ei];
            nd.push_back(di);
            dec.push_back(std::move(nd));
            queue.push_back(ni);
            jg[ei][di] = ni;
        }
    }
    int n = int(elems.size());

    auto join_of = [&](int a, int b) {
        int r = a;
        for (int di : dec[b]) r = jg[r][di];
        return r;
    };
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = join_of(a, b);

    std::vector<std::vector<std::pair<int, int>>> gmap(n);
    std::vector<std::string> labels(n);
    for (int e = 0; e < n; ++e) {
        std::string lbl;
        for (int di : dec[e]) {
            auto [v, x] = gen_rep[di];
            gmap[e].push_back({v, x});
            if (!lbl.empty()) lbl += "+";
            lbl += "v" + std::to_string(v) + "." + d.vertices[v]->label(x);
        }
        labels[e] = lbl.empty() ? "0" : lbl;
    }

    SL apex;
    try {
        apex = Semilattice::from_join_table(table, 0, labels);
    } catch (const SlatError& err) {
        fail("Inconsistent", std::string("colimit produced an invalid join table: ") + err.kind);
    }

    std::vector<std::vector<int>> leg_maps(nvert);
    for (int v = 0; v < nvert; ++v) {
        leg_maps[v].resize(d.vertices[v]->size());
        for (int x = 0; x < d.vertices[v]->size(); ++x) {
            int g = cc.offset[v] + x;
            leg_maps[v][x] = gen_class[g] < 0 ? 0 : jg[0][gen_class[g]];
        }
    }

    // Normalise element order via the canonical form when within budget.
    try {
        CanonicalResult cf = canonical_form(apex);
        const std::vector<int>& pi = cf.relabel.map();
        std::vector<std::string> plabels(n);
        std::vector<std::vector<std::pair<int, int>>> pgmap(n);
        for (int e = 0; e < n; ++e) {
            plabels[pi[e]] = labels[e];
            pgmap[pi[e]] = gmap[e];
        }
        std::vector<uint16_t> flat(size_t(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                flat[size_t(a) * n + b] = uint16_t(cf.canonical->join(a, b));
        apex = Semilattice::trusted(n, std::move(flat), cf.canonical->zero(), plabels);
        gmap = std::move(pgmap);
        for (int v = 0; v < nvert; ++v)
            for (int& y : leg_maps[v]) y = pi[y];
    } catch (const SlatError& err) {
        if (err.kind != "SizeCapExceeded") throw;
    }

    ColimitResult r{apex, {}, std::move(gmap), d};
    for (int v = 0; v < nvert; ++v) {
        try {
            r.legs.push_back(Morphism::checked(d.vertices[v], apex, leg_maps[v]));
        } catch (const SlatError& err) {
            fail("Inconsistent", std::string("colimit leg is not a morphism: ") + err.kind);
        }
    }
    for (const auto& [rel, f] : d.arrows)
        for (int x = 0; x < d.vertices[rel.first]->size(); ++x)
            if (r.legs[rel.second](f(x)) != r.legs[rel.first](x))
                fail("Inconsistent", "colimit legs do not commute with a diagram arrow");
    return r;
}

// Mediating morphism from a colimit to a cocone over the same diagram.
inline Morphism factor_through(const ColimitResult& c, const Cocone& k) {
    const Diagram& d = c.diagram;
    int nvert = int(d.vertices.size());
    if (int(k.components.size()) != nvert)
        fail("NotACocone", "component count does not match the diagram");
    for (int v = 0; v < nvert; ++v) {
        if (!same_object(k.components[v].src(), d.vertices[v]) ||
            !same_object(k.components[v].dst(), k.target))
            fail("NotACocone", "component endpoints do not match vertex " + std::to_string(v));
    }
    for (const auto& [rel, f] : d.arrows)
        for (int x = 0; x < d.vertices[rel.first]->size(); ++x)
            if (k.components[rel.second](f(x)) != k.components[rel.first](x))
                fail("NotACocone", "components do not commute with arrow " +
                                       std::to_string(rel.first) + "->" + std::to_string(rel.second));
    int n = c.apex->size();
    std::vector<int> h(n);
    for (int e = 0; e < n; ++e) {
        int r = k.target->zero();
        for (const auto& [v, x] : c.generator_map[e]) r = k.target->join(r, k.components[v](x));
        h[e] = r;
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (h[c.apex->join(a, b)] != k.target->join(h[a], h[b]))
                fail("Inconsistent", "mediating map is not join-preserving");
    for (int v = 0; v < nvert; ++v)
        for (int x = 0; x < d.vertices[v]->size(); ++x)
            if (h[c.legs[v](x)] != k.components[v](x))
                fail("Inconsistent", "mediating map does not factor a component");
    return Morphism::trusted(c.apex, k.target, std::move(h));
}

struct PushoutResult {
    SL apex;
    Morphism leg1, leg2;  // from the targets of the two arms
};

// Pushout of two embeddings with a common source; legs are again embeddings.
// The boolean variant post-composes both legs with the shelter embedding of
// the pushout apex, landing in a Boolean semilattice.
inline PushoutResult pushout_amalgamate(const Morphism& phi, const Morphism& eps0,
                                        bool boolean_variant = false) {
    if (!same_object(phi.src(), eps0.src())) fail("IllFormed", "pushout arms must share a source");
    if (!phi.is_embedding()) fail("NotEmbedding", "first pushout arm");
    if (!eps0.is_embedding()) fail("NotEmbedding", "second pushout arm");
    ColimitResult c = colimit(span_diagram(phi, eps0));
    Morphism l1 = c.legs[1], l2 = c.legs[2];
    if (!l1.is_embedding() || !l2.is_embedding())
        fail("Inconsistent", "pushout of embeddings produced a non-embedding leg");
    if (boolean_variant) {
        ShelterResult sh = shelter_object(c.apex);
        return {sh.booleanized, compose(sh.eta, l1), compose(sh.eta, l2)};
    }
    return {c.apex, l1, l2};
}

// Poset-indexed family of semilattices whose transition maps are all
// embeddings; otherwise identical to a Diagram (functoriality included).
struct DirectSystem {
    Diagram diagram;

    const Poset& index() const { return diagram.index; }
    const std::vector<SL>& vertices() const { return diagram.vertices; }
    const Morphism& transition(int i, int j) const { return diagram.arrow(i, j); }

    static DirectSystem from_diagram(Diagram d) {
        for (const auto& [rel, f] : d.arrows)
            if (!f.is_embedding())
                fail("NotEmbedding", "direct system transition " + std::to_string(rel.first) +
                                         "->" + std::to_string(rel.second) + " is not an embedding");
        return DirectSystem{std::move(d)};
    }

    static DirectSystem create(Poset idx, std::vector<SL> verts,
                               std::map<std::pair<int, int>, Morphism> given) {
        return from_diagram(Diagram::create(std::move(idx), std::move(verts), std::move(given)));
    }
};

}  // namespace slat
