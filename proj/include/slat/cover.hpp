#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "canonical.hpp"
#include "classify.hpp"
#include "colimit.hpp"
#include "json_io.hpp"
#include "shelter.hpp"

namespace slat {

// ---------------------------------------------------------------------------
// Subobjects.  A subobject of a distributive semilattice is represented by its
// image: a join-closed, zero-containing, distributive subset.  Inclusion of
// images realizes the factorization quasi-order on embeddings, and "length" is
// the height of the full subobject in that order.
// ---------------------------------------------------------------------------

struct SubobjectPoset {
    SL host;
    std::vector<std::vector<int>> subobjects;  // sorted element lists, by (size, lex)
    std::vector<int> heights;
    int full = -1;   // index of the improper subobject (all of the host)
    int length = 0;  // heights[full]

    bool contains(int s, int t) const {
        return std::includes(subobjects[t].begin(), subobjects[t].end(), subobjects[s].begin(),
                             subobjects[s].end());
    }
    int index_of(const std::vector<int>& elems) const {
        auto it = index_.find(elems);
        return it == index_.end() ? -1 : it->second;
    }

    std::map<std::vector<int>, int> index_;
};

inline SubobjectPoset subobject_poset(const SL& a) {
    if (!is_distributive(*a)) fail("NotDistributive", "subobjects live in a distributive host");
    int n = a->size();
    if (n > limits().max_subobject_ambient)
        fail("SizeCapExceeded", "subobject host of size " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(limits().max_subobject_ambient));
    std::vector<int> nz;
    for (int x = 0; x < n; ++x)
        if (x != a->zero()) nz.push_back(x);
    int m = int(nz.size());

    SubobjectPoset out;
    out.host = a;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> elems{a->zero()};
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) elems.push_back(nz[i]);
        std::sort(elems.begin(), elems.end());
        std::vector<char> in(n, 0);
        for (int e : elems) in[e] = 1;
        bool closed = true;
        for (size_t i = 0; i < elems.size() && closed; ++i)
            for (size_t j = i + 1; j < elems.size(); ++j)
                if (!in[a->join(elems[i], elems[j])]) {
                    closed = false;
                    break;
                }
        if (!closed) continue;
        // distributivity of the induced subsemilattice is a real restriction:
        // join-closed subsets of a distributive host need not be distributive.
        SL sub = generated_subsemilattice(a, elems).first;
        if (!is_distributive(*sub)) continue;
        out.subobjects.push_back(std::move(elems));
    }
    std::sort(out.subobjects.begin(), out.subobjects.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) {
                  return x.size() != y.size() ? x.size() < y.size() : x < y;
              });
    int k = int(out.subobjects.size());
    for (int s = 0; s < k; ++s) out.index_.emplace(out.subobjects[s], s);
    out.heights.assign(k, 0);
    for (int t = 0; t < k; ++t)
        for (int s = 0; s < t; ++s)
            if (out.subobjects[s].size() < out.subobjects[t].size() && out.contains(s, t))
                out.heights[t] = std::max(out.heights[t], out.heights[s] + 1);
    out.full = out.index_.at([&] {
        std::vector<int> all(n);
        for (int x = 0; x < n; ++x) all[x] = x;
        return all;
    }());
    out.length = out.heights[out.full];
    return out;
}

// ---------------------------------------------------------------------------
// Saturating size bounds.  cap(s) is the largest possible boolean stage over
// objects of size at most s, star_bound(s) the generating-set bound on the
// colimit stage; both saturate at UINT64_MAX instead of overflowing.
// ---------------------------------------------------------------------------

namespace detail {

inline uint64_t sat_add(uint64_t a, uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }
inline uint64_t sat_mul(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > UINT64_MAX / b ? UINT64_MAX : a * b;
}
inline uint64_t sat_pow2(uint64_t e) { return e >= 64 ? UINT64_MAX : uint64_t(1) << e; }

// largest boolean stage over objects of size <= s: cap(1) = 1 and
// cap(s+1) <= 2^(2^(s+1+2^s cap(s))).
inline uint64_t boolean_stage_cap(int s) {
    if (s <= 0) return 0;
    uint64_t cap = 1;
    for (int i = 1; i < s; ++i)
        cap = sat_pow2(sat_pow2(sat_add(uint64_t(i) + 1, sat_mul(sat_pow2(i), cap))));
    return cap;
}

}  // namespace detail

// |colimit stage of A| <= 2^(n + 2^(n-1) cap(n-1)) for |A| = n: the stage is
// generated by the host image together with the boolean images of all proper
// subobjects.
inline uint64_t star_size_bound(int n) {
    if (n <= 1) return 2;
    return detail::sat_pow2(detail::sat_add(
        uint64_t(n), detail::sat_mul(detail::sat_pow2(n - 1), detail::boolean_stage_cap(n - 1))));
}

// ---------------------------------------------------------------------------
// Store entries.
// ---------------------------------------------------------------------------

struct SubLeg {
    Morphism to_phi_star;  // boolean stage of the subobject -> colimit stage
    Morphism to_phi;       // boolean stage of the subobject -> boolean stage
};

struct CoverEntry;
using EntryPtr = std::shared_ptr<CoverEntry>;

struct PhiStarResult {
    SL object;  // canonical host
    SubobjectPoset subs;
    std::vector<SL> sub_objects;         // concrete subset semilattices
    std::vector<Morphism> sub_incl;      // inclusions into the host
    std::vector<Morphism> sub_relabel;   // isos onto the stored canonical forms
    std::vector<EntryPtr> sub_entries;   // store entries (null at the full slot)
    ColimitResult colim;                 // colimit of the two-stage diagram
    std::vector<std::pair<int, int>> vertex_of;   // diagram vertex -> (sub, stage)
    std::map<std::pair<int, int>, int> vertex_id;
    SL phi_star;
    Morphism eps_upper;  // host -> colimit stage
    Morphism mu_upper;   // colimit stage -> host (retraction)
    std::vector<Morphism> sub_legs_star;  // per proper subobject (default at full)
};

struct CoverEntry {
    SL object;  // canonical representative
    PhiStarResult star;
    Morphism eta;  // shelter embedding of the colimit stage
    SL phi;
    Morphism eps, mu;
    std::vector<SubLeg> sub_legs;  // proper subobjects only; full slot default
    bool colim_ready = false;      // false for cache-loaded entries until rebuilt

    // action of automorphisms of `object`, keyed by their maps
    std::map<std::vector<int>, std::pair<Morphism, Morphism>> iso_memo;

    const SL& phi_star() const { return star.phi_star; }
    const Morphism& eps_upper() const { return star.eps_upper; }
    const Morphism& mu_upper() const { return star.mu_upper; }
};

inline std::string canonical_key(const SL& canon) {
    std::string k = std::to_string(canon->size());
    k += ';';
    k += std::to_string(canon->zero());
    k += ';';
    for (uint16_t v : canon->table()) {
        k += std::to_string(v);
        k += ',';
    }
    return k;
}

struct SizeBoundRow {
    std::string key;
    int object_size = 0;
    int subobject_count = 0;
    long long phi_star_size = 0;
    long long generator_count = 0;
    uint64_t bound = 0;
    bool within = false;
};

struct SizeBoundReport {
    std::vector<SizeBoundRow> rows;
    bool ok() const {
        for (const auto& r : rows)
            if (!r.within) return false;
        return true;
    }
};

struct TrimmedCover {
    SL object;  // canonical host, shared with the store entry
    SL phi;     // interval above the kernel join, reindexed
    Morphism eps, mu;
    int b = 0;                   // kernel join inside the original boolean stage
    std::vector<int> phi_elems;  // original indices forming the interval
    std::vector<int> phi_pos;    // original index -> trimmed index (-1 outside)
};

struct TrimReport {
    std::map<std::string, TrimmedCover> entries;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

struct RetractedSystem {
    DirectSystem booleans;
    std::vector<Morphism> eps_family;  // vertex -> its boolean stage
    std::vector<Morphism> mu_family;   // boolean stage -> vertex
};

// ---------------------------------------------------------------------------
// The store: memoized, canonically keyed construction of the boolean cover,
// with a functorial action on isomorphisms and embeddings and an optional
// on-disk JSON cache (constructor argument or SLAT_CACHE_DIR).
// ---------------------------------------------------------------------------

class CoverStore {
public:
    CoverStore() {
        const char* e = std::getenv("SLAT_CACHE_DIR");
        if (e && *e) cache_dir_ = e;
    }
    explicit CoverStore(std::string cache_dir) : cache_dir_(std::move(cache_dir)) {}

    const std::string& cache_dir() const { return cache_dir_; }
    size_t size() const {
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        return memo_.size();
    }

    // Entry for the canonical form of `a`, computed (or cache-loaded) together
    // with entries for all proper subobjects, recursively.
    const CoverEntry& ensure(const SL& a) { return *ensure_ptr(a); }

    const CoverEntry* find(const SL& a) const {
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        auto it = memo_.find(canonical_key(canonical_form(a).canonical));
        return it == memo_.end() ? nullptr : it->second.get();
    }

    // Deterministically ordered view of the memo.
    std::vector<std::pair<std::string, const CoverEntry*>> entries() const {
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        std::vector<std::pair<std::string, const CoverEntry*>> out;
        for (const auto& [k, e] : memo_) out.emplace_back(k, e.get());
        return out;
    }

    // Iso from `a` onto its entry's canonical representative.
    Morphism to_canonical(const SL& a) {
        EntryPtr e = ensure_ptr(a);
        CanonicalResult cf = canonical_form(a);
        return Morphism::trusted(a, e->object, cf.relabel.map());
    }

    // Unit-preserving embedding of `a` into its boolean cover.
    Morphism eps_of(const SL& a) {
        EntryPtr e = ensure_ptr(a);
        return compose(e->eps, to_canonical(a));
    }

    // Retraction of the boolean cover onto `a`.
    Morphism mu_of(const SL& a) {
        EntryPtr e = ensure_ptr(a);
        return compose(to_canonical(a).inverse(), e->mu);
    }

    // Action on isomorphisms: (colimit-stage map, boolean-stage map), both
    // between the shared canonical entry of the two ends.
    std::pair<Morphism, Morphism> iso_action(const Morphism& g) {
        if (!g.is_iso()) fail("NotIso", "iso action requires an isomorphism");
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        EntryPtr es = ensure_ptr(g.src());
        EntryPtr ed = ensure_ptr(g.dst());
        if (es != ed) fail("Inconsistent", "isomorphic objects landed in different entries");
        Morphism ghat = compose(to_canonical(g.dst()), compose(g, to_canonical(g.src()).inverse()));
        return iso_action_entry(*es, Morphism::trusted(es->object, es->object, ghat.map()));
    }

    // Action on embeddings: boolean-stage map between the two entries.
    Morphism embedding_action(const Morphism& f) {
        if (!f.is_embedding()) fail("NotEmbedding", "functorial action requires an embedding");
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        EntryPtr es = ensure_ptr(f.src());
        EntryPtr ed = ensure_ptr(f.dst());
        Morphism fhat =
            compose(to_canonical(f.dst()), compose(f, to_canonical(f.src()).inverse()));
        return action_entry(*es, *ed, Morphism::trusted(es->object, ed->object, fhat.map()));
    }

    // Colimit stage of `a`; requires entries for every proper subobject.
    PhiStarResult star_of(const SL& a) {
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        CanonicalResult cf = canonical_form(a);
        auto it = memo_.find(canonical_key(cf.canonical));
        if (it != memo_.end()) {
            ensure_colim(*it->second);
            return it->second->star;
        }
        CoverEntry tmp;
        tmp.object = cf.canonical;
        prepare_subs(tmp, false);
        build_colim(tmp);
        return tmp.star;
    }

    // The two-stage diagram over the subobject poset of `a`.
    Diagram rho_of(const SL& a) {
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        CanonicalResult cf = canonical_form(a);
        auto it = memo_.find(canonical_key(cf.canonical));
        if (it != memo_.end()) {
            ensure_colim(*it->second);
            return it->second->star.colim.diagram;
        }
        CoverEntry tmp;
        tmp.object = cf.canonical;
        prepare_subs(tmp, false);
        return build_rho_diagram(tmp, nullptr, nullptr);
    }

    TrimReport trim();
    RetractedSystem retract(const DirectSystem& d);
    SizeBoundReport size_bounds() const;

private:
    std::map<std::string, EntryPtr> memo_;
    std::string cache_dir_;
    mutable std::recursive_mutex mtx_;

    EntryPtr ensure_ptr(const SL& a) {
        std::lock_guard<std::recursive_mutex> lk(mtx_);
        if (!is_distributive(*a))
            fail("NotDistributive", "the boolean cover is defined on distributive objects");
        CanonicalResult cf = canonical_form(a);
        std::string key = canonical_key(cf.canonical);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        EntryPtr e = std::make_shared<CoverEntry>();
        e->object = cf.canonical;
        prepare_subs(*e, true);
        if (!cache_dir_.empty() && load_cached(*e, key)) {
            memo_.emplace(key, e);
            return e;
        }
        build_colim(*e);
        build_boolean_stage(*e);
        memo_.emplace(key, e);
        if (!cache_dir_.empty()) save_cached(*e, key);
        return e;
    }

    // Subobject poset of the canonical host plus concrete subset objects,
    // inclusions, and relabellings onto their canonical entries.  With
    // `recurse` the proper subobject entries are ensured; otherwise a missing
    // entry is an error (the caller promised the store was prefilled).
    void prepare_subs(CoverEntry& e, bool recurse) {
        e.star.object = e.object;
        e.star.subs = subobject_poset(e.object);
        int k = int(e.star.subs.subobjects.size());
        e.star.sub_objects.resize(k);
        e.star.sub_incl.resize(k);
        e.star.sub_relabel.resize(k);
        e.star.sub_entries.assign(k, nullptr);
        for (int s = 0; s < k; ++s) {
            auto [sub, incl] = generated_subsemilattice(e.object, e.star.subs.subobjects[s]);
            e.star.sub_objects[s] = sub;
            e.star.sub_incl[s] = incl;
            if (s == e.star.subs.full) continue;
            EntryPtr se;
            if (recurse) {
                se = ensure_ptr(sub);
            } else {
                auto it = memo_.find(canonical_key(canonical_form(sub).canonical));
                if (it == memo_.end())
                    fail("MissingDependency",
                         "no store entry for a proper subobject of size " +
                             std::to_string(sub->size()));
                se = it->second;
            }
            e.star.sub_entries[s] = se;
            e.star.sub_relabel[s] =
                Morphism::trusted(sub, se->object, canonical_form(sub).relabel.map());
        }
    }

    // Inclusion between two concrete subobjects, as a map of subset positions.
    Morphism concrete_inclusion(const CoverEntry& e, int s, int t) const {
        const auto& es = e.star.subs.subobjects[s];
        const auto& et = e.star.subs.subobjects[t];
        std::vector<int> pos(e.object->size(), -1);
        for (size_t i = 0; i < et.size(); ++i) pos[et[i]] = int(i);
        std::vector<int> m(es.size());
        for (size_t i = 0; i < es.size(); ++i) m[i] = pos[es[i]];
        return Morphism::checked(e.star.sub_objects[s], e.star.sub_objects[t], std::move(m));
    }

    // The canonical-form transport of an inclusion between proper subobjects.
    Morphism entry_inclusion(const CoverEntry& e, int s, int t) const {
        Morphism incl = concrete_inclusion(e, s, t);
        return compose(e.star.sub_relabel[t], compose(incl, e.star.sub_relabel[s].inverse()));
    }

    Diagram build_rho_diagram(CoverEntry& e, std::vector<std::pair<int, int>>* vertex_of,
                              std::map<std::pair<int, int>, int>* vertex_id) {
        const SubobjectPoset& subs = e.star.subs;
        int k = int(subs.subobjects.size());
        std::vector<std::pair<int, int>> vof;
        std::map<std::pair<int, int>, int> vid;
        std::vector<SL> verts;
        for (int s = 0; s < k; ++s) {
            vid[{s, 0}] = int(verts.size());
            vof.push_back({s, 0});
            verts.push_back(e.star.sub_objects[s]);
        }
        for (int s = 0; s < k; ++s) {
            if (s == subs.full) continue;
            vid[{s, 1}] = int(verts.size());
            vof.push_back({s, 1});
            verts.push_back(e.star.sub_entries[s]->phi);
        }
        int nv = int(verts.size());
        std::vector<std::pair<int, int>> edges;
        auto rel = [&](int va, int vb) {
            auto [s, i] = vof[va];
            auto [t, j] = vof[vb];
            return i <= j && subs.contains(s, t);
        };
        for (int va = 0; va < nv; ++va)
            for (int vb = 0; vb < nv; ++vb)
                if (va != vb && rel(va, vb)) edges.push_back({va, vb});
        Poset idx = Poset::from_covers(nv, edges);

        std::map<std::pair<int, int>, Morphism> arrows;
        for (const auto& [va, vb] : edges) {
            auto [s, i] = vof[va];
            auto [t, j] = vof[vb];
            if (i == 0 && j == 0) {
                arrows.emplace(std::make_pair(va, vb), concrete_inclusion(e, s, t));
            } else if (i == 0 && j == 1) {
                // embed into the subobject's boolean cover, then push along
                // the inclusion's functorial action
                Morphism to_cover =
                    compose(e.star.sub_entries[s]->eps, e.star.sub_relabel[s]);
                Morphism step = (s == t)
                                    ? to_cover
                                    : compose(action_entry(*e.star.sub_entries[s],
                                                           *e.star.sub_entries[t],
                                                           entry_inclusion(e, s, t)),
                                              to_cover);
                arrows.emplace(std::make_pair(va, vb), std::move(step));
            } else {
                arrows.emplace(std::make_pair(va, vb),
                               action_entry(*e.star.sub_entries[s], *e.star.sub_entries[t],
                                            entry_inclusion(e, s, t)));
            }
        }
        if (vertex_of) *vertex_of = vof;
        if (vertex_id) *vertex_id = vid;
        return Diagram::create(std::move(idx), std::move(verts), std::move(arrows));
    }

    void build_colim(CoverEntry& e) {
        Diagram rho = build_rho_diagram(e, &e.star.vertex_of, &e.star.vertex_id);
        e.star.colim = colimit(rho);
        const SubobjectPoset& subs = e.star.subs;
        int k = int(subs.subobjects.size());

        e.star.phi_star = e.star.colim.apex;
        const Morphism& full_leg = e.star.colim.legs[e.star.vertex_id.at({subs.full, 0})];
        e.star.eps_upper = Morphism::trusted(e.object, e.star.phi_star, full_leg.map());
        if (!e.star.eps_upper.is_embedding())
            fail("Inconsistent", "colimit stage failed to embed the host");

        e.star.sub_legs_star.assign(k, Morphism());
        Cocone retr{e.object, std::vector<Morphism>(e.star.colim.legs.size())};
        for (int s = 0; s < k; ++s) {
            retr.components[e.star.vertex_id.at({s, 0})] = e.star.sub_incl[s];
            if (s == subs.full) continue;
            const Morphism& leg = e.star.colim.legs[e.star.vertex_id.at({s, 1})];
            e.star.sub_legs_star[s] = leg;
            if (!leg.is_embedding())
                fail("Inconsistent", "colimit stage failed to embed a subobject cover");
            retr.components[e.star.vertex_id.at({s, 1})] =
                compose(e.star.sub_incl[s], compose(e.star.sub_relabel[s].inverse(),
                                                    e.star.sub_entries[s]->mu));
        }
        try {
            e.star.mu_upper = factor_through(e.star.colim, retr);
        } catch (const SlatError& err) {
            fail("Inconsistent", std::string("retraction cocone failed: ") + err.witness);
        }
        if (compose(e.star.mu_upper, e.star.eps_upper).map() != identity(e.object).map())
            fail("Inconsistent", "colimit stage retraction is not the identity");
        e.colim_ready = true;
    }

    void build_boolean_stage(CoverEntry& e) {
        ShelterResult sh;
        try {
            sh = shelter_object(e.star.phi_star);
        } catch (const SlatError& err) {
            if (err.kind != "SizeCapExceeded") throw;
            fail("SizeCapExceeded",
                 "boolean stage of a " + std::to_string(e.object->size()) +
                     "-element object needs too many atoms (subobjects: " +
                     std::to_string(e.star.subs.subobjects.size()) +
                     ", colimit stage: " + std::to_string(e.star.phi_star->size()) +
                     ", atoms: " + std::to_string(e.star.phi_star->meet_irreducibles().size()) +
                     "): " + err.witness);
        }
        e.eta = sh.eta;
        e.phi = sh.booleanized;
        e.eps = compose(e.eta, e.star.eps_upper);
        e.mu = largest_extension(e.star.mu_upper, e.eta);
        if (!e.eps.is_embedding()) fail("Inconsistent", "cover embedding is not injective");
        if (e.eps(e.object->top()) != e.phi->top())
            fail("Inconsistent", "cover embedding does not preserve the unit");
        if (compose(e.mu, e.eps).map() != identity(e.object).map())
            fail("Inconsistent", "cover retraction is not the identity");
        if (e.phi->size() <= 1024) {
            if (!is_boolean(*e.phi)) fail("Inconsistent", "cover is not boolean");
        } else if (e.phi->size() != (1 << e.phi->atom_list().size())) {
            fail("Inconsistent", "cover is not boolean");
        }
        const SubobjectPoset& subs = e.star.subs;
        int k = int(subs.subobjects.size());
        e.sub_legs.assign(k, SubLeg());
        for (int s = 0; s < k; ++s) {
            if (s == subs.full) continue;
            SubLeg leg;
            leg.to_phi_star = e.star.sub_legs_star[s];
            leg.to_phi = compose(e.eta, leg.to_phi_star);
            if (!leg.to_phi.is_embedding())
                fail("Inconsistent", "subobject cover leg is not an embedding");
            const CoverEntry& se = *e.star.sub_entries[s];
            Morphism u = compose(e.star.sub_incl[s], e.star.sub_relabel[s].inverse());
            if (compose(leg.to_phi, se.eps).map() != compose(e.eps, u).map())
                fail("Inconsistent", "subobject leg breaks the embedding square");
            if (compose(e.mu, leg.to_phi).map() != compose(u, se.mu).map())
                fail("Inconsistent", "subobject leg breaks the retraction square");
            e.sub_legs[s] = std::move(leg);
        }
    }

    // Rebuild the colimit internals of a cache-loaded entry and check that the
    // recomputation reproduces the loaded contract exactly.
    void ensure_colim(CoverEntry& e) {
        if (e.colim_ready) return;
        CoverEntry fresh;
        fresh.object = e.object;
        fresh.star.object = e.object;
        fresh.star.subs = e.star.subs;
        fresh.star.sub_objects = e.star.sub_objects;
        fresh.star.sub_incl = e.star.sub_incl;
        fresh.star.sub_relabel = e.star.sub_relabel;
        fresh.star.sub_entries = e.star.sub_entries;
        build_colim(fresh);
        bool same = same_object(fresh.star.phi_star, e.star.phi_star) &&
                    fresh.star.eps_upper.map() == e.star.eps_upper.map() &&
                    fresh.star.mu_upper.map() == e.star.mu_upper.map();
        for (size_t s = 0; same && s < fresh.star.sub_legs_star.size(); ++s) {
            if (int(s) == e.star.subs.full) continue;
            same = fresh.star.sub_legs_star[s].map() == e.star.sub_legs_star[s].map();
        }
        if (!same) fail("Inconsistent", "cached entry disagrees with recomputation");
        e.star.colim = std::move(fresh.star.colim);
        e.star.vertex_of = std::move(fresh.star.vertex_of);
        e.star.vertex_id = std::move(fresh.star.vertex_id);
        e.star.phi_star = fresh.star.phi_star;
        e.star.eps_upper = fresh.star.eps_upper;
        e.star.mu_upper = fresh.star.mu_upper;
        e.star.sub_legs_star = fresh.star.sub_legs_star;
        e.colim_ready = true;
    }

    // Φ of an automorphism of e.object: factor the permuted cocone through the
    // colimit, then transport to the boolean stage.
    std::pair<Morphism, Morphism> iso_action_entry(CoverEntry& e, const Morphism& ghat) {
        auto memo = e.iso_memo.find(ghat.map());
        if (memo != e.iso_memo.end()) return memo->second;
        if (ghat.map() == identity(e.object).map()) {
            auto r = std::make_pair(identity(e.star.phi_star), identity(e.phi));
            e.iso_memo.emplace(ghat.map(), r);
            return r;
        }
        ensure_colim(e);
        const SubobjectPoset& subs = e.star.subs;
        int k = int(subs.subobjects.size());
        Cocone moved{e.star.phi_star, std::vector<Morphism>(e.star.colim.legs.size())};
        for (int s = 0; s < k; ++s) {
            std::vector<int> image;
            for (int x : subs.subobjects[s]) image.push_back(ghat(x));
            std::sort(image.begin(), image.end());
            int t = subs.index_of(image);
            if (t < 0) fail("Inconsistent", "automorphism image is not a stored subobject");
            std::vector<int> pos(e.object->size(), -1);
            for (size_t i = 0; i < image.size(); ++i) pos[image[i]] = int(i);
            std::vector<int> m(subs.subobjects[s].size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = pos[ghat(subs.subobjects[s][i])];
            Morphism restr =
                Morphism::trusted(e.star.sub_objects[s], e.star.sub_objects[t], std::move(m));
            moved.components[e.star.vertex_id.at({s, 0})] =
                compose(e.star.colim.legs[e.star.vertex_id.at({t, 0})], restr);
            if (s == subs.full) continue;
            CoverEntry& se = *e.star.sub_entries[s];
            if (e.star.sub_entries[t] != e.star.sub_entries[s])
                fail("Inconsistent", "automorphism moved a subobject across entries");
            Morphism aut = compose(e.star.sub_relabel[t],
                                   compose(restr, e.star.sub_relabel[s].inverse()));
            Morphism phind =
                iso_action_entry(se, Morphism::trusted(se.object, se.object, aut.map())).second;
            moved.components[e.star.vertex_id.at({s, 1})] =
                compose(e.star.colim.legs[e.star.vertex_id.at({t, 1})], phind);
        }
        Morphism gs;
        try {
            gs = factor_through(e.star.colim, moved);
        } catch (const SlatError& err) {
            fail("Inconsistent", std::string("iso transport cocone failed: ") + err.witness);
        }
        if (!gs.is_iso()) fail("Inconsistent", "iso transport is not bijective");
        Morphism gphi = shelter_iso(gs);
        Morphism gb = Morphism::trusted(e.phi, e.phi, gphi.map());
        if (compose(gb, e.eps).map() != compose(e.eps, ghat).map())
            fail("Inconsistent", "iso action breaks the embedding square");
        if (compose(ghat, e.mu).map() != compose(e.mu, gb).map())
            fail("Inconsistent", "iso action breaks the retraction square");
        auto r = std::make_pair(std::move(gs), std::move(gb));
        e.iso_memo.emplace(ghat.map(), r);
        return r;
    }

    // Φ of an embedding between entry objects: factor as an iso onto the image
    // subobject followed by the stored subobject leg.
    Morphism action_entry(CoverEntry& es, CoverEntry& ed, const Morphism& fhat) {
        Morphism out;
        if (fhat.is_iso()) {
            if (&es != &ed) fail("Inconsistent", "bijective embedding between distinct entries");
            out = iso_action_entry(es, fhat).second;
        } else {
            std::vector<int> image;
            for (int x = 0; x < es.object->size(); ++x) image.push_back(fhat(x));
            std::sort(image.begin(), image.end());
            int t = ed.star.subs.index_of(image);
            if (t < 0) fail("Inconsistent", "embedding image is not a stored subobject");
            std::vector<int> pos(ed.object->size(), -1);
            for (size_t i = 0; i < image.size(); ++i) pos[image[i]] = int(i);
            std::vector<int> m(es.object->size());
            for (int x = 0; x < es.object->size(); ++x) m[x] = pos[fhat(x)];
            Morphism fprime =
                Morphism::trusted(es.object, ed.star.sub_objects[t], std::move(m));
            if (ed.star.sub_entries[t].get() != &es)
                fail("Inconsistent", "embedding image entry differs from the source entry");
            Morphism aut = compose(ed.star.sub_relabel[t], fprime);
            Morphism phind =
                iso_action_entry(es, Morphism::trusted(es.object, es.object, aut.map())).second;
            out = compose(ed.sub_legs[t].to_phi, phind);
        }
        if (!out.is_embedding()) fail("Inconsistent", "functorial action lost injectivity");
        if (compose(out, es.eps).map() != compose(ed.eps, fhat).map())
            fail("Inconsistent", "functorial action breaks the embedding square");
        if (compose(fhat, es.mu).map() != compose(ed.mu, out).map())
            fail("Inconsistent", "functorial action breaks the retraction square");
        if (fhat(es.object->top()) == ed.object->top() && out(es.phi->top()) != ed.phi->top())
            fail("Inconsistent", "functorial action lost the unit");
        return out;
    }

    // ---- persistent cache -------------------------------------------------

    static std::string key_filename(const std::string& key) {
        uint64_t h = 1469598103934665603ull;
        for (unsigned char c : key) {
            h ^= c;
            h *= 1099511628211ull;
        }
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0') << h << ".json";
        return os.str();
    }

    bool load_cached(CoverEntry& e, const std::string& key) {
        namespace fs = std::filesystem;
        fs::path path = fs::path(cache_dir_) / key_filename(key);
        std::ifstream in(path);
        if (!in) return false;
        json j = json::parse(in, nullptr, false);
        if (j.is_discarded()) return false;
        try {
            if (j.at("key").get<std::string>() != key) return false;
            SL obj = decode_semilattice(j.at("object"));
            if (!same_object(obj, e.object)) return false;
            if (j.at("subobjects").get<std::vector<std::vector<int>>>() !=
                e.star.subs.subobjects)
                return false;
            e.star.phi_star = decode_semilattice(j.at("phi_star"));
            e.star.eps_upper = Morphism::checked(
                e.object, e.star.phi_star, j.at("eps_upper").get<std::vector<int>>());
            e.star.mu_upper = Morphism::checked(e.star.phi_star, e.object,
                                                j.at("mu_upper").get<std::vector<int>>());
            if (!e.star.eps_upper.is_embedding()) return false;
            if (compose(e.star.mu_upper, e.star.eps_upper).map() != identity(e.object).map())
                return false;
            int k = int(e.star.subs.subobjects.size());
            e.star.sub_legs_star.assign(k, Morphism());
            const json& legs = j.at("sub_legs_star");
            if (int(legs.size()) != k) return false;
            for (int s = 0; s < k; ++s) {
                if (s == e.star.subs.full) continue;
                e.star.sub_legs_star[s] =
                    Morphism::checked(e.star.sub_entries[s]->phi, e.star.phi_star,
                                      legs.at(s).get<std::vector<int>>());
            }
        } catch (const std::exception&) {
            return false;
        }
        e.colim_ready = false;
        build_boolean_stage(e);  // recomputes and re-verifies the boolean stage
        return true;
    }

    void save_cached(const CoverEntry& e, const std::string& key) const {
        namespace fs = std::filesystem;
        std::error_code ec;
        fs::create_directories(cache_dir_, ec);
        if (ec) return;
        json j;
        j["key"] = key;
        j["object"] = encode(e.object);
        j["phi_star"] = encode(e.star.phi_star);
        j["eps_upper"] = e.star.eps_upper.map();
        j["mu_upper"] = e.star.mu_upper.map();
        j["subobjects"] = e.star.subs.subobjects;
        json legs = json::array();
        for (size_t s = 0; s < e.star.sub_legs_star.size(); ++s) {
            if (int(s) == e.star.subs.full)
                legs.push_back(nullptr);
            else
                legs.push_back(e.star.sub_legs_star[s].map());
        }
        j["sub_legs_star"] = legs;
        fs::path path = fs::path(cache_dir_) / key_filename(key);
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) return;
            out << j.dump(1) << "\n";
        }
        fs::rename(tmp, path, ec);
    }
};

// ---------------------------------------------------------------------------
// Store-backed convenience entry points.
// ---------------------------------------------------------------------------

inline const CoverEntry& phi_object(const SL& a, CoverStore& store) { return store.ensure(a); }

inline PhiStarResult phi_star(const SL& a, CoverStore& store) { return store.star_of(a); }

inline Diagram build_rho(const SL& a, CoverStore& store) { return store.rho_of(a); }

inline std::pair<Morphism, Morphism> phi_iso(const Morphism& g, CoverStore& store) {
    return store.iso_action(g);
}

inline Morphism phi_morphism(const Morphism& f, CoverStore& store) {
    return store.embedding_action(f);
}

inline TrimReport trim_zero(CoverStore& store) { return store.trim(); }

inline RetractedSystem retract_system(const DirectSystem& d, CoverStore& store) {
    return store.retract(d);
}

inline SizeBoundReport size_bound_report(const CoverStore& store) { return store.size_bounds(); }

// Trimmed functorial action: the boolean-stage action followed by joining with
// the target's kernel element, restricted to the trimmed intervals.
inline Morphism trimmed_morphism(const TrimReport& tr, const Morphism& f, CoverStore& store) {
    Morphism phif = store.embedding_action(f);
    const TrimmedCover& ts = tr.entries.at(canonical_key(store.ensure(f.src()).object));
    const TrimmedCover& tt = tr.entries.at(canonical_key(store.ensure(f.dst()).object));
    std::vector<int> m(ts.phi_elems.size());
    for (size_t y = 0; y < m.size(); ++y)
        m[y] = tt.phi_pos[phif.dst()->join(phif(ts.phi_elems[y]), tt.b)];
    return Morphism::checked(ts.phi, tt.phi, std::move(m));
}

inline TrimReport CoverStore::trim() {
    std::lock_guard<std::recursive_mutex> lk(mtx_);
    TrimReport tr;
    for (const auto& [key, e] : memo_) {
        TrimmedCover t;
        t.object = e->object;
        int b = e->phi->zero();
        for (int x = 0; x < e->phi->size(); ++x)
            if (e->mu(x) == e->object->zero()) b = e->phi->join(b, x);
        t.b = b;
        t.phi_pos.assign(e->phi->size(), -1);
        for (int x = 0; x < e->phi->size(); ++x)
            if (e->phi->leq(b, x)) {
                t.phi_pos[x] = int(t.phi_elems.size());
                t.phi_elems.push_back(x);
            }
        int m = int(t.phi_elems.size());
        std::vector<uint16_t> join(size_t(m) * m);
        std::vector<std::string> labels(m);
        for (int i = 0; i < m; ++i) {
            labels[i] = e->phi->label(t.phi_elems[i]);
            for (int j2 = 0; j2 < m; ++j2)
                join[size_t(i) * m + j2] =
                    uint16_t(t.phi_pos[e->phi->join(t.phi_elems[i], t.phi_elems[j2])]);
        }
        t.phi = Semilattice::trusted(m, std::move(join), t.phi_pos[b], std::move(labels));
        std::vector<int> em(e->object->size()), mm(m);
        for (int x = 0; x < e->object->size(); ++x) em[x] = t.phi_pos[e->phi->join(e->eps(x), b)];
        for (int y = 0; y < m; ++y) mm[y] = e->mu(t.phi_elems[y]);
        auto complain = [&](const std::string& what) {
            tr.violations.push_back("entry " + std::to_string(e->object->size()) + ";" +
                                    key.substr(0, 24) + "...: " + what);
        };
        try {
            t.eps = Morphism::checked(e->object, t.phi, std::move(em));
            t.mu = Morphism::checked(t.phi, e->object, std::move(mm));
        } catch (const SlatError& err) {
            complain(std::string("trimmed maps are not morphisms: ") + err.witness);
            tr.entries.emplace(key, std::move(t));
            continue;
        }
        if (!t.eps.is_embedding()) complain("trimmed embedding lost injectivity");
        if (compose(t.mu, t.eps).map() != identity(t.object).map())
            complain("trimmed retraction is not the identity");
        for (int y = 0; y < m; ++y)
            if (t.mu(y) == t.object->zero() && y != t.phi->zero())
                complain("trimmed retraction does not separate zero");
        if (t.eps(t.object->top()) != t.phi->top()) complain("trimmed embedding lost the unit");
        bool boolean = t.phi->size() <= 1024
                           ? is_boolean(*t.phi)
                           : t.phi->size() == (1 << t.phi->atom_list().size());
        if (!boolean) complain("trimmed interval is not boolean");
        tr.entries.emplace(key, std::move(t));
    }
    // naturality of the trimmed action across every stored subobject inclusion
    for (const auto& [key, e] : memo_) {
        const TrimmedCover& ta = tr.entries.at(key);
        for (size_t s = 0; s < e->star.subs.subobjects.size(); ++s) {
            if (int(s) == e->star.subs.full) continue;
            const CoverEntry& se = *e->star.sub_entries[s];
            const TrimmedCover& ts = tr.entries.at(canonical_key(se.object));
            const Morphism& raw = e->sub_legs[s].to_phi;
            std::vector<int> m(ts.phi_elems.size());
            for (size_t y = 0; y < m.size(); ++y)
                m[y] = ta.phi_pos[e->phi->join(raw(ts.phi_elems[y]), ta.b)];
            Morphism tf;
            try {
                tf = Morphism::checked(ts.phi, ta.phi, std::move(m));
            } catch (const SlatError& err) {
                tr.violations.push_back("trimmed inclusion action is not a morphism: " +
                                        err.witness);
                continue;
            }
            Morphism u = compose(e->star.sub_incl[s], e->star.sub_relabel[s].inverse());
            if (compose(tf, ts.eps).map() != compose(ta.eps, u).map())
                tr.violations.push_back("trimmed action breaks the embedding square");
            if (compose(u, ts.mu).map() != compose(ta.mu, tf).map())
                tr.violations.push_back("trimmed action breaks the retraction square");
        }
    }
    return tr;
}

inline RetractedSystem CoverStore::retract(const DirectSystem& d) {
    std::lock_guard<std::recursive_mutex> lk(mtx_);
    const Diagram& dia = d.diagram;
    int nv = int(dia.vertices.size());
    for (const SL& v : dia.vertices)
        if (!is_distributive(*v))
            fail("NotDistributive", "system retraction needs distributive vertices");
    RetractedSystem out;
    out.eps_family.resize(nv);
    out.mu_family.resize(nv);
    std::vector<SL> booleans(nv);
    for (int v = 0; v < nv; ++v) {
        booleans[v] = ensure(dia.vertices[v]).phi;
        out.eps_family[v] = eps_of(dia.vertices[v]);
        out.mu_family[v] = mu_of(dia.vertices[v]);
        if (out.eps_family[v](dia.vertices[v]->top()) != booleans[v]->top())
            fail("Inconsistent", "system retraction lost a unit");
    }
    std::map<std::pair<int, int>, Morphism> arrows;
    for (const auto& [rel, f] : dia.arrows) arrows.emplace(rel, embedding_action(f));
    out.booleans = DirectSystem::create(dia.index, std::move(booleans), std::move(arrows));
    for (const auto& [rel, f] : dia.arrows) {
        auto [i, j] = rel;
        const Morphism& bf = out.booleans.transition(i, j);
        if (compose(bf, out.eps_family[i]).map() != compose(out.eps_family[j], f).map())
            fail("Inconsistent", "system retraction breaks an embedding square");
        if (compose(f, out.mu_family[i]).map() != compose(out.mu_family[j], bf).map())
            fail("Inconsistent", "system retraction breaks a retraction square");
    }
    return out;
}

inline SizeBoundReport CoverStore::size_bounds() const {
    std::lock_guard<std::recursive_mutex> lk(mtx_);
    SizeBoundReport rep;
    for (const auto& [key, e] : memo_) {
        SizeBoundRow row;
        row.key = key;
        row.object_size = e->object->size();
        row.subobject_count = int(e->star.subs.subobjects.size());
        row.phi_star_size = e->star.phi_star->size();
        std::vector<char> gen(e->star.phi_star->size(), 0);
        for (int x = 0; x < e->object->size(); ++x) gen[e->star.eps_upper(x)] = 1;
        for (size_t s = 0; s < e->star.sub_legs_star.size(); ++s) {
            if (int(s) == e->star.subs.full) continue;
            const Morphism& leg = e->star.sub_legs_star[s];
            for (int x = 0; x < leg.src()->size(); ++x) gen[leg(x)] = 1;
        }
        for (char g : gen) row.generator_count += g;
        row.bound = star_size_bound(row.object_size);
        row.within = uint64_t(row.phi_star_size) <= row.bound;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace slat
