#pragma once

#include "classify.hpp"
#include "core.hpp"

namespace slat {

// Boolean envelope of a semilattice: the powerset of its meet-irreducibles,
// with the canonical embedding a |-> {u meet-irreducible : a is not below u}.
struct ShelterResult {
    SL base;
    SL booleanized;
    Morphism eta;
    std::vector<int> mirr_labels;  // meet-irreducibles of base, indexing the atoms
};

inline ShelterResult shelter_object(const SL& s) {
    const std::vector<int>& m = s->meet_irreducibles();
    int k = int(m.size());
    std::vector<std::string> names(k);
    for (int i = 0; i < k; ++i) names[i] = s->label(m[i]);
    SL b = free_join_semilattice(k, names);
    std::vector<int> eta(s->size(), 0);
    for (int a = 0; a < s->size(); ++a) {
        int mask = 0;
        for (int i = 0; i < k; ++i)
            if (!s->leq(a, m[i])) mask |= 1 << i;
        eta[a] = mask;
    }
    ShelterResult r{s, b, Morphism::checked(s, b, std::move(eta)), m};
    if (!r.eta.is_embedding()) fail("Inconsistent", "shelter embedding failed to be injective");
    return r;
}

// Image map on subsets of meet-irreducibles induced by an isomorphism.
inline Morphism shelter_iso(const Morphism& f) {
    if (!f.is_iso()) fail("NotIso", "shelter only acts on isomorphisms");
    ShelterResult bs = shelter_object(f.src());
    ShelterResult bt = shelter_object(f.dst());
    int k = int(bs.mirr_labels.size());
    std::vector<int> atom_to(k, -1);
    for (int i = 0; i < k; ++i) {
        int img = f(bs.mirr_labels[i]);
        for (size_t j = 0; j < bt.mirr_labels.size(); ++j)
            if (bt.mirr_labels[j] == img) atom_to[i] = int(j);
        if (atom_to[i] < 0)
            fail("Inconsistent", "isomorphism does not map meet-irreducibles onto meet-irreducibles");
    }
    int n = bs.booleanized->size();
    std::vector<int> map(n, 0);
    for (int x = 0; x < n; ++x) {
        int y = 0;
        for (int i = 0; i < k; ++i)
            if (x & (1 << i)) y |= 1 << atom_to[i];
        map[x] = y;
    }
    Morphism bf = Morphism::trusted(bs.booleanized, bt.booleanized, std::move(map));
    for (int a = 0; a < f.src()->size(); ++a)
        if (bf(bs.eta(a)) != bt.eta(f(a)))
            fail("Inconsistent", "shelter naturality failed on an isomorphism");
    return bf;
}

// Largest join-zero extension of g along the embedding e: the pointwise meet
// h(t) = meet of { g(s) : t <= e(s) }, empty meet being the top.  Requires the
// target to be distributive; join preservation is re-validated as a guard.
inline Morphism largest_extension(const Morphism& g, const Morphism& e) {
    if (!same_object(g.src(), e.src())) fail("IllFormed", "extension arms must share a source");
    if (!e.is_embedding()) fail("NotEmbedding", "extension base must be an embedding");
    const SL& d = g.dst();
    const SL& t = e.dst();
    if (!is_distributive(*d)) fail("NotDistributive", "largest extension needs a distributive target");
    int nt = t->size(), ns = g.src()->size();
    std::vector<int> h(nt);
    for (int x = 0; x < nt; ++x) {
        int r = d->top();
        for (int s = 0; s < ns; ++s)
            if (t->leq(x, e(s))) r = d->meet(r, g(s));
        h[x] = r;
    }
    for (int x = 0; x < nt; ++x)
        for (int y = x + 1; y < nt; ++y)
            if (h[t->join(x, y)] != d->join(h[x], h[y]))
                fail("Inconsistent", "largest extension is not join-preserving");
    if (h[t->zero()] != d->zero()) fail("Inconsistent", "largest extension moved zero");
    for (int s = 0; s < ns; ++s)
        if (h[e(s)] != g(s)) fail("Inconsistent", "largest extension does not extend");
    return Morphism::trusted(t, d, std::move(h));
}

// g^B: the largest extension of g through the shelter embedding of its source.
inline Morphism shelter_extension(const Morphism& g) {
    ShelterResult sh = shelter_object(g.src());
    return largest_extension(g, sh.eta);
}

struct ShelterLawReport {
    long long checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Law (1): for an iso f: S->T and hom g: T->D,  g^B o B(f) = (g o f)^B.
// Law (2): for a hom h: S->D and iso u: D->E,  (u o h)^B = u o h^B.
inline ShelterLawReport verify_shelter_laws(
    const std::vector<std::pair<Morphism, Morphism>>& law1_samples,
    const std::vector<std::pair<Morphism, Morphism>>& law2_samples) {
    ShelterLawReport rep;
    for (size_t i = 0; i < law1_samples.size(); ++i) {
        const auto& [f, g] = law1_samples[i];
        Morphism lhs = compose(shelter_extension(g), shelter_iso(f));
        Morphism rhs = shelter_extension(compose(g, f));
        ++rep.checked;
        if (lhs.map() != rhs.map())
            rep.violations.push_back("law1 sample " + std::to_string(i));
    }
    for (size_t i = 0; i < law2_samples.size(); ++i) {
        const auto& [h, u] = law2_samples[i];
        Morphism lhs = shelter_extension(compose(u, h));
        Morphism rhs = compose(u, shelter_extension(h));
        ++rep.checked;
        if (lhs.map() != rhs.map())
            rep.violations.push_back("law2 sample " + std::to_string(i));
    }
    return rep;
}

}  // namespace slat
