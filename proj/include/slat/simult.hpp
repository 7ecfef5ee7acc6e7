#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "colimit.hpp"

namespace slat {

// Obstruction machinery for embedding a direct system of lattices, all at
// once, into a direct system of finite Boolean semilattices: boundary sets,
// the necessary condition they impose, a concrete four-vertex system that
// fails it, retraction families extracted from any simultaneous embedding,
// and a bounded exhaustive search.

// ∂-boundary: the minimal elements x of the i-th vertex whose image under the
// transition into the j-th vertex dominates q.  Requires q join-irreducible;
// the result is an antichain of join-irreducibles (asserted).
inline std::vector<int> boundary(const DirectSystem& sys, int i, int j, int q) {
    const Poset& idx = sys.index();
    if (i < 0 || i >= idx.size() || j < 0 || j >= idx.size() || !idx.leq(i, j))
        fail("IllFormed", "boundary indices are not a relation of the system");
    const SL& a = sys.vertices()[i];
    const SL& b = sys.vertices()[j];
    const auto& jirr = b->join_irreducibles();
    if (q < 0 || q >= b->size() || !std::count(jirr.begin(), jirr.end(), q))
        fail("NotJoinIrreducible",
             "boundary base " + std::to_string(q) + " is not join-irreducible in vertex " +
                 std::to_string(j));
    std::vector<int> above;
    for (int x = 0; x < a->size(); ++x) {
        int fx = i == j ? x : sys.transition(i, j)(x);
        if (b->leq(q, fx)) above.push_back(x);
    }
    std::vector<int> out;
    for (int x : above) {
        bool minimal = true;
        for (int y : above)
            if (y != x && a->leq(y, x)) { minimal = false; break; }
        if (minimal) out.push_back(x);
    }
    const auto& ji = a->join_irreducibles();
    for (int x : out)
        if (!std::count(ji.begin(), ji.end(), x))
            fail("Inconsistent", "boundary element " + a->label(x) + " is not join-irreducible");
    return out;
}

struct NecessWitness {
    int q;  // the candidate that failed
    int k;  // intermediate vertex of the violation
    int r;  // offending boundary element at k
    std::string reason;
};

struct NecessResult {
    bool pass;
    int q;  // witness when pass, -1 otherwise
    std::vector<NecessWitness> failures;  // one entry per failed candidate
};

// Necessary condition for a simultaneous lattice embedding: some
// join-irreducible q below the image of p must have boundary exactly {p} in
// the i-th vertex, and every boundary element of q at an intermediate vertex
// that lies below the image of the i-th top must lie below the image of p.
inline NecessResult necess_check(const DirectSystem& sys, int i, int j, int p) {
    const Poset& idx = sys.index();
    if (i < 0 || i >= idx.size() || j < 0 || j >= idx.size() || !idx.leq(i, j))
        fail("IllFormed", "necessity-check indices are not a relation of the system");
    const SL& a = sys.vertices()[i];
    const SL& b = sys.vertices()[j];
    const auto& ji = a->join_irreducibles();
    if (p < 0 || p >= a->size() || !std::count(ji.begin(), ji.end(), p))
        fail("NotJoinIrreducible",
             "necessity-check element " + std::to_string(p) + " is not join-irreducible");
    auto image = [&](int k, int x) { return i == k ? x : sys.transition(i, k)(x); };

    NecessResult res{false, -1, {}};
    for (int q : b->join_irreducibles()) {
        if (!b->leq(q, image(j, p))) continue;
        std::vector<int> bd = boundary(sys, i, j, q);
        if (bd != std::vector<int>{p}) {
            int r = bd.empty() ? -1 : (bd[0] == p && bd.size() > 1 ? bd[1] : bd[0]);
            res.failures.push_back(
                {q, i, r, "boundary at the source is not exactly the checked element"});
            continue;
        }
        bool bad = false;
        for (int k = 0; k < idx.size() && !bad; ++k) {
            if (!idx.leq(i, k) || !idx.leq(k, j)) continue;
            const SL& m = sys.vertices()[k];
            for (int r : boundary(sys, k, j, q))
                if (m->leq(r, image(k, a->top())) && !m->leq(r, image(k, p))) {
                    res.failures.push_back(
                        {q, k, r, "boundary element lies below the image of the top but not of p"});
                    bad = true;
                    break;
                }
        }
        if (!bad) {
            res.pass = true;
            res.q = q;
            return res;
        }
    }
    return res;
}

// The four-vertex square that admits no simultaneous lattice embedding, with
// handles on the named elements of its largest vertex.
struct CounterexampleData {
    DirectSystem system;  // vertices: 0 = S, 1 = A1, 2 = A2, 3 = A over the square index
    // element ids inside vertex 3
    int p, p1, p2, q1, q2, q1p, q2p, r1, r2;
};

inline CounterexampleData build_counterexample_data() {
    // The six-generator poset: four minimal points q1, q2, q1', q2' under two
    // maximal ones, with q1, q2 below both and each primed point below one.
    enum { Q1, Q2, Q1P, Q2P, P1, P2 };
    Poset gen = Poset::from_covers(
        6, {{Q1, P1}, {Q2, P1}, {Q1P, P1}, {Q1, P2}, {Q2, P2}, {Q2P, P2}});
    IdealLattice il = ideal_lattice_with_map(gen);
    const SL& a = il.lattice;
    auto constraint = [](bool okay, const std::string& name) {
        if (!okay) fail("Inconsistent", "counterexample constraint failed: " + name);
    };

    CounterexampleData d;
    d.p1 = il.principal[P1];
    d.p2 = il.principal[P2];
    d.q1 = il.principal[Q1];
    d.q2 = il.principal[Q2];
    d.q1p = il.principal[Q1P];
    d.q2p = il.principal[Q2P];
    d.p = a->join(d.q1, d.q2);
    d.r1 = a->join(d.q1, d.q1p);
    d.r2 = a->join(d.q2, d.q2p);

    constraint(a->join(d.p1, d.p2) == a->top(), "1 = p1 v p2");
    constraint(a->meet(d.p1, d.p2) == d.p && a->join(d.q1, d.q2) == d.p,
               "p = p1 ^ p2 = q1 v q2");
    {
        std::vector<int> gens = {d.p1, d.p2, d.q1, d.q2, d.q1p, d.q2p};
        std::sort(gens.begin(), gens.end());
        constraint(a->join_irreducibles() == gens, "the generators are the join-irreducibles");
    }

    auto [s, inc_s] = generated_subsemilattice(a, {d.p, d.p1, d.p2});
    auto [a1, inc_a1] = generated_subsemilattice(a, {d.p, d.p1, d.p2, d.r1});
    auto [a2, inc_a2] = generated_subsemilattice(a, {d.p, d.p1, d.p2, d.r2});
    {
        std::vector<int> js;
        for (int x : s->join_irreducibles()) js.push_back(inc_s(x));
        std::sort(js.begin(), js.end());
        std::vector<int> expect = {d.p, d.p1, d.p2};
        std::sort(expect.begin(), expect.end());
        constraint(is_distributive(*s) && js == expect,
                   "S is distributive with join-irreducibles p, p1, p2");
    }
    constraint(a->leq(d.r1, d.p1) && d.r1 != d.p1 && a->leq(d.r2, d.p2) && d.r2 != d.p2,
               "r1 < p1 and r2 < p2");
    constraint(!a->leq(d.p1, a->join(d.r1, d.p2)) && !a->leq(d.p2, a->join(d.r2, d.p1)),
               "p1 is not below r1 v p2, nor p2 below r2 v p1");
    for (int side = 0; side < 2; ++side) {
        int r = side == 0 ? d.r1 : d.r2;
        int pr = side == 0 ? d.p1 : d.p2;
        std::vector<int> pts = {d.p, d.p1, d.p2, r};
        std::vector<std::pair<int, int>> comp, expect = {{d.p, d.p1}, {d.p, d.p2}, {r, pr}};
        for (int x : pts)
            for (int y : pts)
                if (x != y && a->leq(x, y)) comp.push_back({x, y});
        std::sort(comp.begin(), comp.end());
        std::sort(expect.begin(), expect.end());
        constraint(comp == expect,
                   "the only comparable pairs among p, p1, p2, r are r < its maximal point "
                   "and p < p1, p2");
        // independent recount: the generated vertex must be the ideal lattice
        // of that four-point poset
        std::vector<std::pair<int, int>> edges;
        for (auto& [x, y] : expect)
            edges.push_back({int(std::find(pts.begin(), pts.end(), x) - pts.begin()),
                             int(std::find(pts.begin(), pts.end(), y) - pts.begin())});
        int ideals = ideal_lattice(Poset::from_covers(4, edges))->size();
        const SL& v = side == 0 ? a1 : a2;
        constraint(v->size() == 8 && ideals == 8,
                   "each middle vertex is the eight-ideal lattice of its four-point poset");
        constraint(is_distributive(*v), "both middle vertices are distributive");
    }

    auto restrict_into = [&](const Morphism& inc_small, const Morphism& inc_big) {
        std::vector<int> pos(a->size(), -1);
        for (int x = 0; x < inc_big.src()->size(); ++x) pos[inc_big(x)] = x;
        std::vector<int> map(inc_small.src()->size());
        for (int x = 0; x < inc_small.src()->size(); ++x) {
            map[x] = pos[inc_small(x)];
            if (map[x] < 0) fail("Inconsistent", "counterexample vertex is not nested");
        }
        return Morphism::checked(inc_small.src(), inc_big.src(), map);
    };

    Poset square = Poset::from_covers(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    d.system = DirectSystem::create(square, {s, a1, a2, a},
                                    {{{0, 1}, restrict_into(inc_s, inc_a1)},
                                     {{0, 2}, restrict_into(inc_s, inc_a2)},
                                     {{1, 3}, inc_a1},
                                     {{2, 3}, inc_a2}});
    return d;
}

inline DirectSystem build_counterexample() { return build_counterexample_data().system; }

// A family of lattice embeddings of the vertices of one system into the
// vertices of a Boolean system, commuting with all transitions.
struct SimultEmbedding {
    DirectSystem base;
    DirectSystem target;
    std::vector<Morphism> components;

    static SimultEmbedding checked(DirectSystem base, DirectSystem target,
                                   std::vector<Morphism> comps) {
        const Poset& bi = base.index();
        const Poset& ti = target.index();
        if (bi.size() != ti.size()) fail("IllFormed", "index posets differ in size");
        for (int x = 0; x < bi.size(); ++x)
            for (int y = 0; y < bi.size(); ++y)
                if (bi.leq(x, y) != ti.leq(x, y)) fail("IllFormed", "index posets differ");
        if (int(comps.size()) != bi.size())
            fail("IllFormed", "one component is required per vertex");
        for (int v = 0; v < bi.size(); ++v) {
            if (!same_object(comps[v].src(), base.vertices()[v]) ||
                !same_object(comps[v].dst(), target.vertices()[v]))
                fail("IllFormed", "component endpoints do not match the vertices");
            if (!is_boolean(*target.vertices()[v]))
                fail("IllFormed", "target vertex " + std::to_string(v) + " is not Boolean");
            if (!comps[v].is_embedding())
                fail("NotEmbedding", "component " + std::to_string(v) + " is not an embedding");
            if (!preserves_meets(comps[v]))
                fail("NotMeetPreserving",
                     "component " + std::to_string(v) + " does not preserve meets");
        }
        for (int x = 0; x < bi.size(); ++x)
            for (int y = 0; y < bi.size(); ++y) {
                if (x == y || !bi.leq(x, y)) continue;
                if (compose(comps[y], base.transition(x, y)).map() !=
                    compose(target.transition(x, y), comps[x]).map())
                    fail("Inconsistent", "component square fails at relation " +
                                             std::to_string(x) + "->" + std::to_string(y));
            }
        return SimultEmbedding{std::move(base), std::move(target), std::move(comps)};
    }
};

// Per-vertex retractions extracted from a simultaneous embedding: after
// cutting each target down to the interval below the image of the top,
// mu(x) = least a with x <= eps(a).  The report records every violation of
// the six expected laws; a correct embedding produces none.
struct MuFamily {
    std::vector<std::vector<int>> interval;  // target elements below eps(top), ascending
    std::vector<std::vector<int>> atoms;     // target atoms below eps(top)
    std::vector<std::map<int, int>> mu;      // target element -> base element
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline MuFamily mu_family(const SimultEmbedding& se) {
    int nv = se.base.index().size();
    MuFamily fam;
    fam.interval.resize(nv);
    fam.atoms.resize(nv);
    fam.mu.resize(nv);
    auto blame = [&](const std::string& what) { fam.violations.push_back(what); };

    for (int v = 0; v < nv; ++v) {
        const SL& a = se.base.vertices()[v];
        const SL& b = se.target.vertices()[v];
        const Morphism& eps = se.components[v];
        if (!preserves_meets(eps))
            fail("NotMeetPreserving", "component " + std::to_string(v) + " has no retraction");
        int hi = eps(a->top());
        for (int x = 0; x < b->size(); ++x) {
            if (!b->leq(x, hi)) continue;
            fam.interval[v].push_back(x);
            int least = a->top();
            for (int c = 0; c < a->size(); ++c)
                if (b->leq(x, eps(c))) least = a->meet(least, c);
            if (!b->leq(x, eps(least)))
                fail("Inconsistent", "no least element dominates " + b->label(x));
            fam.mu[v][x] = least;
        }
        for (int x : b->atom_list())
            if (b->leq(x, hi)) fam.atoms[v].push_back(x);

        const auto& ji = a->join_irreducibles();
        for (int c = 0; c < a->size(); ++c)
            if (fam.mu[v].at(eps(c)) != c)
                blame("mu(eps(x)) != x at vertex " + std::to_string(v) + ", element " +
                      a->label(c));
        for (int x : fam.interval[v])
            if (!b->leq(x, eps(fam.mu[v].at(x))))
                blame("x not below eps(mu(x)) at vertex " + std::to_string(v));
        for (int x : fam.atoms[v])
            if (!std::count(ji.begin(), ji.end(), fam.mu[v].at(x)))
                blame("an atom retracts to a join-reducible element at vertex " +
                      std::to_string(v));
        for (int c = 0; c < a->size(); ++c) {
            int u = b->zero();
            for (int x : fam.atoms[v])
                if (a->leq(fam.mu[v].at(x), c)) u = b->join(u, x);
            if (u != eps(c))
                blame("eps(x) is not the join of its retracting atoms at vertex " +
                      std::to_string(v) + ", element " + a->label(c));
        }
    }

    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
            if (i == j || !se.base.index().leq(i, j)) continue;
            const Morphism& g = se.target.transition(i, j);
            const SL& aj = se.base.vertices()[j];
            for (int x : fam.interval[i]) {
                auto it = fam.mu[j].find(g(x));
                if (it == fam.mu[j].end())
                    blame("transition leaves the interval at " + std::to_string(i) + "->" +
                          std::to_string(j));
                else if (!aj->leq(it->second, se.base.transition(i, j)(fam.mu[i].at(x))))
                    blame("retraction grows across the transition " + std::to_string(i) + "->" +
                          std::to_string(j));
            }
            for (int xi : fam.atoms[i])
                for (int eta : fam.atoms[j])
                    if (se.target.vertices()[j]->leq(eta, g(xi)) &&
                        !aj->leq(fam.mu[j].at(eta), se.base.transition(i, j)(fam.mu[i].at(xi))))
                        blame("atom order does not reverse retraction order at " +
                              std::to_string(i) + "->" + std::to_string(j));
        }
    return fam;
}

struct SearchOptions {
    int max_atoms = 6;
    long long work_limit = limits().max_search_work;
    bool necess_filter = true;  // allow the necessary condition to certify exhaustion
};

struct SearchOutcome {
    bool found;
    std::optional<SimultEmbedding> embedding;
    long long work = 0;
    std::string certificate;  // why exhaustion is certain, when not found
};

namespace detail {

// One vertex of the search: a chosen atom count, a sorted surjection from the
// atoms onto the join-irreducibles of the base vertex, and the induced
// embedding tables eps(a) = mask of atoms whose value lies below a.
struct SearchVertex {
    int natoms = 0;
    std::vector<int> value;   // atom -> join-irreducible element of the base vertex
    std::vector<int> eps;     // base element -> atom mask
    std::vector<int> classes; // linear extension of the distinct values, grouped processing order
};

inline bool next_nondecreasing(std::vector<int>& pick, int nvals) {
    int n = int(pick.size());
    for (int t = n - 1; t >= 0; --t)
        if (pick[t] + 1 < nvals) {
            ++pick[t];
            for (int s = t + 1; s < n; ++s) pick[s] = pick[t];
            return true;
        }
    return false;
}

// next non-decreasing sequence of value indices that covers 0..nvals-1
inline bool next_sorted_surjection(std::vector<int>& pick, int nvals) {
    while (next_nondecreasing(pick, nvals)) {
        std::vector<char> seen(nvals, 0);
        for (int x : pick) seen[x] = 1;
        if (std::find(seen.begin(), seen.end(), 0) == seen.end()) return true;
    }
    return false;
}

}  // namespace detail

// Bounded exhaustive search for a simultaneous lattice embedding into powerset
// targets with at most max_atoms atoms per vertex.  Vertex embeddings are
// enumerated through sorted surjections from atoms onto join-irreducibles
// (complete after cutting targets down to the interval under the image of the
// top, which never increases the atom count); transition images are assigned
// atom by atom with exact-cover pruning.  The first witness in this fixed
// enumeration order is returned, so the result is deterministic.
inline SearchOutcome search_simultaneous(const DirectSystem& sys, SearchOptions opt) {
    const Poset& idx = sys.index();
    int nv = idx.size();
    const std::vector<SL>& verts = sys.vertices();
    SearchOutcome out{false, std::nullopt, 0, ""};

    for (int v = 0; v < nv; ++v)
        if (!is_distributive(*verts[v])) {
            out.certificate = "vertex " + std::to_string(v) +
                              " is not distributive, and sublattices of Boolean semilattices "
                              "are distributive";
            return out;
        }
    for (int v = 0; v < nv; ++v)
        if (int(verts[v]->join_irreducibles().size()) > opt.max_atoms) {
            out.certificate = "vertex " + std::to_string(v) + " needs at least " +
                              std::to_string(verts[v]->join_irreducibles().size()) +
                              " atoms, above the bound";
            return out;
        }
    if (opt.necess_filter)
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) {
                if (i == j || !idx.leq(i, j)) continue;
                for (int p : verts[i]->join_irreducibles()) {
                    NecessResult r = necess_check(sys, i, j, p);
                    if (!r.pass) {
                        out.certificate = "necessary condition fails at relation " +
                                          std::to_string(i) + "->" + std::to_string(j) +
                                          " for " + verts[i]->label(p);
                        return out;
                    }
                }
            }

    std::vector<std::pair<int, int>> covers = idx.covers();
    auto charge = [&](long long units) {
        out.work += units;
        if (out.work > opt.work_limit)
            fail("BoundTooLarge", "search work limit exceeded after " +
                                      std::to_string(out.work) + " node expansions");
    };

    // atom-image masks per cover, plus processing order: within one cover the
    // source atoms are handled class by class along a linear extension, so the
    // union equation for each join-irreducible can be checked the moment its
    // class completes.
    std::vector<detail::SearchVertex> sv(nv);
    std::vector<std::vector<int>> u(covers.size());
    std::vector<int> natoms(nv);

    // derive atom-image masks for every strict relation from the cover
    // assignment and reject candidates whose composites disagree across paths
    auto composites_agree = [&]() -> bool {
        std::map<std::pair<int, int>, std::vector<int>> gm;
        for (size_t c = 0; c < covers.size(); ++c) gm[covers[c]] = u[c];
        auto chain = [&](const std::vector<int>& first, const std::vector<int>& then) {
            std::vector<int> outm(first.size(), 0);
            for (size_t t = 0; t < first.size(); ++t)
                for (size_t s = 0; s < then.size(); ++s)
                    if (first[t] >> s & 1) outm[t] |= then[s];
            return outm;
        };
        bool grew = true;
        while (grew) {
            grew = false;
            for (int i = 0; i < nv; ++i)
                for (int j = 0; j < nv; ++j) {
                    if (i == j || !idx.leq(i, j) || gm.count({i, j})) continue;
                    for (int k = 0; k < nv; ++k)
                        if (k != i && k != j && idx.leq(i, k) && idx.leq(k, j) &&
                            gm.count({i, k}) && gm.count({k, j})) {
                            gm[{i, j}] = chain(gm[{i, k}], gm[{k, j}]);
                            grew = true;
                            break;
                        }
                }
        }
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j)
                for (int k = 0; k < nv; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if (!idx.leq(i, j) || !idx.leq(j, k)) continue;
                    if (chain(gm.at({i, j}), gm.at({j, k})) != gm.at({i, k})) return false;
                }
        return true;
    };

    auto try_assignment = [&]() -> bool {
        if (!composites_agree()) return false;
        // full candidate: build morphisms and validate end to end
        try {
            std::vector<SL> booleans(nv);
            std::vector<Morphism> comps;
            for (int v = 0; v < nv; ++v) booleans[v] = free_join_semilattice(sv[v].natoms);
            for (int v = 0; v < nv; ++v)
                comps.push_back(Morphism::checked(verts[v], booleans[v], sv[v].eps));
            std::map<std::pair<int, int>, Morphism> arrows;
            for (size_t c = 0; c < covers.size(); ++c) {
                auto [i, j] = covers[c];
                std::vector<int> map(1 << sv[i].natoms);
                for (int x = 0; x < (1 << sv[i].natoms); ++x) {
                    int m = 0;
                    for (int t = 0; t < sv[i].natoms; ++t)
                        if (x >> t & 1) m |= u[c][t];
                    map[x] = m;
                }
                arrows.emplace(covers[c], Morphism::checked(booleans[i], booleans[j], map));
            }
            DirectSystem target = DirectSystem::create(idx, booleans, arrows);
            out.embedding = SimultEmbedding::checked(sys, target, comps);
            out.found = true;
            return true;
        } catch (const SlatError& e) {
            if (e.kind == "IllFormed") return false;  // composite disagreement
            throw;
        }
    };

    // recursive assignment over covers, then atoms within the cover
    std::function<bool(size_t)> place_cover = [&](size_t c) -> bool {
        if (c == covers.size()) return try_assignment();
        auto [i, j] = covers[c];
        const Morphism& f = sys.transition(i, j);
        const SL& ai = verts[i];
        int na = sv[i].natoms;
        u[c].assign(na, 0);

        // atoms listed class by class along the linear extension
        std::vector<int> order;
        for (int val : sv[i].classes)
            for (int t = 0; t < na; ++t)
                if (sv[i].value[t] == val) order.push_back(t);

        std::function<bool(size_t)> place_atom = [&](size_t oi) -> bool {
            charge(1);
            if (oi == order.size()) {
                for (int t = 0; t < na; ++t) {
                    int rest = 0;
                    for (int t2 = 0; t2 < na; ++t2)
                        if (t2 != t) rest |= u[c][t2];
                    if ((u[c][t] | rest) == rest) return false;  // not injective
                }
                return place_cover(c + 1);
            }
            int t = order[oi];
            int val = sv[i].value[t];
            int allowed = sv[j].eps[f(val)];
            bool last_of_class = oi + 1 == order.size() || sv[i].value[order[oi + 1]] != val;
            for (int m = 1; m <= allowed; ++m) {
                if ((m | allowed) != allowed) continue;
                u[c][t] = m;
                if (last_of_class) {
                    // the class is complete: the union over everything at or
                    // below val must hit the target exactly
                    int got = 0;
                    for (int t2 = 0; t2 < na; ++t2)
                        if (ai->leq(sv[i].value[t2], val)) got |= u[c][t2];
                    if (got != sv[j].eps[f(val)]) continue;
                }
                if (place_atom(oi + 1)) return true;
            }
            u[c][t] = 0;
            return false;
        };
        return place_atom(0);
    };

    // enumerate atom counts and sorted surjections, vertex by vertex
    std::function<bool(int)> place_vertex = [&](int v) -> bool {
        if (v == nv) return place_cover(0);
        const auto& ji = verts[v]->join_irreducibles();
        int k = int(ji.size());
        for (int n = std::max(k, 1); n <= opt.max_atoms; ++n) {
            if (k == 0) {
                if (n > 1) break;  // a one-point vertex embeds into the one-point target
                n = 0;
            }
            sv[v].natoms = n;
            // lex-least sorted surjection: repeats up front, then 1..k-1
            std::vector<int> pick(n, 0);
            for (int t = 0; t < n; ++t) pick[t] = std::max(0, t - (n - k));
            while (true) {
                charge(1);
                sv[v].value.assign(n, 0);
                for (int t = 0; t < n; ++t) sv[v].value[t] = ji[pick[t]];
                sv[v].eps.assign(verts[v]->size(), 0);
                for (int a = 0; a < verts[v]->size(); ++a)
                    for (int t = 0; t < n; ++t)
                        if (verts[v]->leq(sv[v].value[t], a)) sv[v].eps[a] |= 1 << t;
                sv[v].classes.clear();
                for (int x : ji) sv[v].classes.push_back(x);
                std::stable_sort(sv[v].classes.begin(), sv[v].classes.end(),
                                 [&](int x, int y) {
                                     int cx = 0, cy = 0;
                                     for (int z = 0; z < verts[v]->size(); ++z) {
                                         cx += verts[v]->leq(z, x);
                                         cy += verts[v]->leq(z, y);
                                     }
                                     return cx < cy;
                                 });
                if (place_vertex(v + 1)) return true;
                if (n == 0 || !detail::next_sorted_surjection(pick, k)) break;
            }
            if (k == 0) break;
        }
        return false;
    };

    if (place_vertex(0)) return out;
    out.certificate = "exhausted all sorted atom assignments within the bound";
    return out;
}

inline SearchOutcome search_simultaneous(const DirectSystem& sys, int max_atoms) {
    SearchOptions opt;
    opt.max_atoms = max_atoms;
    return search_simultaneous(sys, opt);
}

}  // namespace slat
