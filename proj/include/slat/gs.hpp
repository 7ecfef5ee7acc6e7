#pragma once

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "congruence.hpp"

namespace slat {

// ---------------------------------------------------------------------------
// Simple-atomistic extension: adjoin two fresh atoms p_a^0, p_a^1 under every
// nonzero non-atom a.  The result is atomistic, every element is a join of at
// most two atoms, and for lattice inputs it is lattice-simple; the base is
// recovered by the retraction sending both fresh atoms back to a.
// ---------------------------------------------------------------------------

struct GSResult {
    SL base;      // K
    SL extended;  // K with the fresh atoms appended (base indices preserved)
    Morphism eps; // inclusion of the base
    Morphism mu;  // retraction fixing K, p_a^i -> a
    std::map<int, std::pair<int, int>> new_atoms;  // a -> (p_a^0, p_a^1)
};

inline GSResult gs_object(const SL& k) {
    int n = k->size();
    std::vector<char> atom(n, 0);
    for (int a : k->atom_list()) atom[a] = 1;
    std::vector<int> nat;  // nonzero non-atoms, ascending
    for (int x = 0; x < n; ++x)
        if (x != k->zero() && !atom[x]) nat.push_back(x);
    int m = int(nat.size());
    int nn = n + 2 * m;

    // order: K's own order; p_a^i <= b iff a <= b; a <= p_b^j iff a = 0;
    // distinct fresh atoms are incomparable
    auto leq = [&](int x, int y) -> bool {
        if (x < n && y < n) return k->leq(x, y);
        if (x >= n && y < n) return k->leq(nat[(x - n) / 2], y);
        if (x < n) return x == k->zero();
        return x == y;
    };
    std::vector<std::vector<int>> table(nn, std::vector<int>(nn));
    for (int x = 0; x < nn; ++x)
        for (int y = x; y < nn; ++y) {
            int least = -1;
            for (int z = 0; z < nn; ++z) {
                if (!leq(x, z) || !leq(y, z)) continue;
                if (least < 0 || leq(z, least)) least = z;
            }
            if (least < 0 || !leq(x, least) || !leq(y, least))
                fail("Inconsistent", "extension pair without a least upper bound");
            for (int z = 0; z < nn; ++z)
                if (leq(x, z) && leq(y, z) && !leq(least, z))
                    fail("Inconsistent", "extension pair with incomparable upper bounds");
            table[x][y] = table[y][x] = least;
        }
    std::vector<std::string> labels(nn);
    for (int x = 0; x < n; ++x) labels[x] = k->label(x);
    for (int ai = 0; ai < m; ++ai)
        for (int i = 0; i < 2; ++i) {
            std::string base_lbl = k->label(nat[ai]);
            if (base_lbl.empty()) base_lbl = "#" + std::to_string(nat[ai]);
            labels[n + 2 * ai + i] = "p" + std::to_string(i) + "(" + base_lbl + ")";
        }
    SL gs = Semilattice::from_join_table(table, k->zero(), std::move(labels));

    GSResult r;
    r.base = k;
    r.extended = gs;
    std::vector<int> em(n);
    std::iota(em.begin(), em.end(), 0);
    r.eps = Morphism::checked(k, gs, std::move(em));
    std::vector<int> mm(nn);
    std::iota(mm.begin(), mm.end(), 0);
    for (int ai = 0; ai < m; ++ai) mm[n + 2 * ai] = mm[n + 2 * ai + 1] = nat[ai];
    r.mu = Morphism::checked(gs, k, std::move(mm));
    if (!r.eps.is_embedding() || !preserves_meets(r.eps))
        fail("Inconsistent", "extension inclusion is not a lattice embedding");
    if (compose(r.mu, r.eps).map() != identity(k).map())
        fail("Inconsistent", "extension retraction is not the identity on the base");
    for (int ai = 0; ai < m; ++ai)
        r.new_atoms.emplace(nat[ai], std::make_pair(n + 2 * ai, n + 2 * ai + 1));
    return r;
}

inline Morphism gs_morphism(const Morphism& f) {
    if (!f.is_embedding()) fail("NotEmbedding", "extension action requires an embedding");
    GSResult a = gs_object(f.src());
    GSResult b = gs_object(f.dst());
    int n = f.src()->size();
    std::vector<int> map(a.extended->size());
    for (int x = 0; x < n; ++x) map[x] = f(x);
    for (const auto& [elem, ps] : a.new_atoms) {
        auto it = b.new_atoms.find(f(elem));
        if (it == b.new_atoms.end())
            fail("IllFormed", "embedding sends a non-atom to an atom");  // impossible
        map[ps.first] = it->second.first;
        map[ps.second] = it->second.second;
    }
    Morphism gsf = Morphism::checked(a.extended, b.extended, std::move(map));
    if (!gsf.is_embedding()) fail("Inconsistent", "extension action lost injectivity");
    if (compose(gsf, a.eps).map() != compose(b.eps, f).map())
        fail("Inconsistent", "extension action breaks the embedding square");
    if (compose(f, a.mu).map() != compose(b.mu, gsf).map())
        fail("Inconsistent", "extension action breaks the retraction square");
    if (preserves_meets(f) && !preserves_meets(gsf))
        fail("Inconsistent", "extension action lost meet preservation");
    return gsf;
}

// ---------------------------------------------------------------------------
// Property report for the extension of a given base.
// ---------------------------------------------------------------------------

struct GSPerspectivity {
    int a = 0, b = 0, x = 0;  // a (+) x = b (+) x
};

struct GSCheckReport {
    GSResult result;
    int atoms = 0;
    bool simplicity_checked = false;  // principal congruences swept (|base| >= 2)
    std::vector<GSPerspectivity> witnesses;  // one per atom pair
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

inline GSCheckReport gs_checks(const SL& k) {
    GSCheckReport rep;
    rep.result = gs_object(k);
    const SL& g = rep.result.extended;
    int n = g->size();
    const std::vector<int>& atoms = g->atom_list();
    rep.atoms = int(atoms.size());
    auto complain = [&](const std::string& what) { rep.violations.push_back(what); };

    int expected = int(k->atom_list().size()) + 2 * int(rep.result.new_atoms.size());
    if (rep.atoms != expected) complain("atom count differs from |At| + 2|NAt|");
    if (!is_atomistic(*g)) complain("extension is not atomistic");

    // every element is 0, an atom, or a join of two atoms
    for (int x = 0; x < n; ++x) {
        if (x == g->zero()) continue;
        bool covered = false;
        for (size_t i = 0; i < atoms.size() && !covered; ++i)
            for (size_t j = i; j < atoms.size() && !covered; ++j)
                if (g->join(atoms[i], atoms[j]) == x) covered = true;
        if (!covered) complain("element " + g->label(x) + " is not a join of <= 2 atoms");
    }

    // relative complements: 0 < x < y admits an atom p with y = x (+) p
    for (int x = 0; x < n; ++x) {
        if (x == g->zero()) continue;
        for (int y = 0; y < n; ++y) {
            if (y == x || !g->leq(x, y)) continue;
            bool found = false;
            for (int p : atoms)
                if (g->join(x, p) == y && g->meet(x, p) == g->zero()) {
                    found = true;
                    break;
                }
            if (!found)
                complain("no atomic relative complement of " + g->label(x) + " in " +
                         g->label(y));
        }
    }

    // atoms are pairwise perspective: a (+) x = b (+) x for some x
    for (size_t i = 0; i < atoms.size(); ++i)
        for (size_t j = i + 1; j < atoms.size(); ++j) {
            int a = atoms[i], b = atoms[j];
            bool found = false;
            for (int x = 0; x < n && !found; ++x)
                if (g->join(a, x) == g->join(b, x) && g->meet(a, x) == g->zero() &&
                    g->meet(b, x) == g->zero()) {
                    rep.witnesses.push_back({a, b, x});
                    found = true;
                }
            if (!found)
                complain("atoms " + g->label(a) + ", " + g->label(b) + " are not perspective");
        }

    // lattice-simplicity: every principal lattice congruence is full, hence
    // the extension has exactly the two trivial lattice congruences
    if (k->size() >= 2) {
        rep.simplicity_checked = true;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (lattice_congruence_generated(g, {{u, v}}).size() != 1) {
                    complain("collapsing " + g->label(u) + " = " + g->label(v) +
                             " does not collapse everything");
                }
        if (!is_lattice_simple(*g)) complain("simplicity cross-check disagrees");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Image check: a surjective lattice homomorphism from an atomistic lattice
// has an atomistic image.
// ---------------------------------------------------------------------------

struct AtomisticImageReport {
    SL image;
    bool atomistic = false;
    std::string witness;  // an element that is not a join of atoms, if any
    bool ok() const { return atomistic; }
};

inline AtomisticImageReport atomistic_image_check(const SL& l, const Morphism& g) {
    if (!same_object(g.src(), l)) fail("IllFormed", "map does not start at the given object");
    if (!is_atomistic(*l)) fail("IllFormed", "source must be atomistic");
    std::vector<char> hit(g.dst()->size(), 0);
    for (int x = 0; x < l->size(); ++x) hit[g(x)] = 1;
    for (int y = 0; y < g.dst()->size(); ++y)
        if (!hit[y]) fail("NotSurjective", "element " + g.dst()->label(y) + " is not reached");
    if (!preserves_meets(g)) fail("NotLatticeHom", "map does not preserve meets");
    AtomisticImageReport rep;
    rep.image = g.dst();
    rep.atomistic = true;
    const SL& t = g.dst();
    for (int x = 0; x < t->size() && rep.atomistic; ++x) {
        int r = t->zero();
        for (int a : t->atom_list())
            if (t->leq(a, x)) r = t->join(r, a);
        if (r != x) {
            rep.atomistic = false;
            rep.witness = t->label(x);
        }
    }
    return rep;
}

}  // namespace slat
