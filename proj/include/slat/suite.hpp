#pragma once

#include <slat/classify.hpp>
#include <slat/colimit.hpp>
#include <slat/congruence.hpp>
#include <slat/cover.hpp>
#include <slat/enumerate.hpp>
#include <slat/gs.hpp>
#include <slat/shelter.hpp>
#include <slat/simult.hpp>

#include <algorithm>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace slat {

struct CorpusMember {
    SL object;
    Classification flags;
};

/// Every semilattice with at most max_size elements, one per isomorphism
/// class, in enumeration order, with classification flags.
struct Corpus {
    int max_size = 0;
    std::vector<CorpusMember> members;
};

inline Corpus corpus(int max_size) {
    if (max_size < 1) fail("IllFormed", "corpus needs a positive size bound");
    Corpus c;
    c.max_size = max_size;
    for (int n = 1; n <= max_size; ++n)
        for (const SL& s : enumerate_semilattices(n)) c.members.push_back({s, classify(s)});
    return c;
}

struct SuiteReport {
    std::string suite;
    long long cases = 0;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    long long wall_ms = 0;
    bool ok() const { return violations.empty(); }
};

struct SuiteConfig {
    int max_size = 4;
    std::string cache_dir;  // forwarded to the boolean-cover store
};

namespace detail {

/// Every join-and-zero-preserving map s -> t, by exhausting assignments on the
/// non-zero elements.  Small objects only.
inline std::vector<std::vector<int>> hom_maps(const SL& s, const SL& t) {
    int n = s->size(), m = t->size();
    std::vector<int> pos;
    for (int i = 0; i < n; ++i)
        if (i != s->zero()) pos.push_back(i);
    std::vector<std::vector<int>> out;
    std::vector<int> map(n, t->zero());
    std::vector<size_t> odo(pos.size(), 0);
    while (true) {
        for (size_t i = 0; i < pos.size(); ++i) map[pos[i]] = int(odo[i]);
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            for (int y = x; y < n && ok; ++y)
                if (map[s->join(x, y)] != t->join(map[x], map[y])) ok = false;
        if (ok) out.push_back(map);
        size_t i = 0;
        while (i < odo.size() && ++odo[i] == size_t(m)) odo[i++] = 0;
        if (i == odo.size()) break;
    }
    return out;
}

inline std::vector<Morphism> homs(const SL& s, const SL& t) {
    std::vector<Morphism> out;
    for (auto& m : hom_maps(s, t)) out.push_back(Morphism::trusted(s, t, m));
    return out;
}

inline std::vector<Morphism> embeddings(const SL& s, const SL& t) {
    std::vector<Morphism> out;
    for (auto& m : homs(s, t))
        if (m.is_embedding()) out.push_back(m);
    return out;
}

inline std::vector<Morphism> automorphisms(const SL& s) {
    std::vector<Morphism> out;
    for (auto& m : homs(s, s))
        if (m.is_iso()) out.push_back(m);
    return out;
}

inline std::string member_tag(int index, const SL& s) {
    return "member " + std::to_string(index) + " (size " + std::to_string(s->size()) + ")";
}

/// Every cocone from the diagram into the target: legs are chosen freely on
/// the maximal vertices and derived downward, then checked on every relation.
inline std::vector<Cocone> all_cocones(const Diagram& d, const SL& t) {
    int v = d.index.size();
    std::vector<int> maximal;
    for (int i = 0; i < v; ++i) {
        bool mx = true;
        for (int j = 0; j < v && mx; ++j)
            if (j != i && d.index.leq(i, j)) mx = false;
        if (mx) maximal.push_back(i);
    }
    std::vector<std::vector<std::vector<int>>> free(maximal.size());
    for (size_t m = 0; m < maximal.size(); ++m) {
        free[m] = hom_maps(d.vertices[maximal[m]], t);
        if (free[m].empty()) return {};
    }
    std::vector<Cocone> out;
    std::vector<size_t> odo(maximal.size(), 0);
    while (true) {
        std::vector<std::vector<int>> leg(v);
        for (size_t m = 0; m < maximal.size(); ++m) leg[maximal[m]] = free[m][odo[m]];
        for (int i = 0; i < v; ++i) {
            if (!leg[i].empty()) continue;
            for (int m : maximal)
                if (d.index.leq(i, m)) {
                    const Morphism& f = d.arrow(i, m);
                    leg[i].resize(d.vertices[i]->size());
                    for (int x = 0; x < d.vertices[i]->size(); ++x) leg[i][x] = leg[m][f(x)];
                    break;
                }
        }
        bool ok = true;
        for (int i = 0; i < v && ok; ++i)
            for (int j = 0; j < v && ok; ++j) {
                if (i == j || !d.index.leq(i, j)) continue;
                const Morphism& f = d.arrow(i, j);
                for (int x = 0; x < d.vertices[i]->size() && ok; ++x)
                    if (leg[j][f(x)] != leg[i][x]) ok = false;
            }
        if (ok) {
            Cocone c;
            c.target = t;
            for (int i = 0; i < v; ++i)
                c.components.push_back(Morphism::trusted(d.vertices[i], t, leg[i]));
            out.push_back(c);
        }
        size_t i = 0;
        while (i < odo.size() && ++odo[i] == free[i].size()) odo[i++] = 0;
        if (i == odo.size()) break;
    }
    return out;
}

/// All lattice congruences: close the principal ones under pairwise join.
inline std::vector<Partition> all_lattice_congruences(const SL& s) {
    int n = s->size();
    auto pairs_of = [](const Partition& p) {
        std::vector<std::pair<int, int>> ps;
        for (const auto& blk : p.blocks)
            for (size_t i = 1; i < blk.size(); ++i) ps.emplace_back(blk[0], blk[i]);
        return ps;
    };
    std::set<std::vector<int>> seen;
    std::vector<Partition> out, frontier;
    auto push = [&](const Partition& p) {
        if (seen.insert(p.block_of).second) {
            out.push_back(p);
            frontier.push_back(p);
        }
    };
    std::vector<int> iota(n);
    for (int i = 0; i < n; ++i) iota[i] = i;
    push(normalize_partition(n, iota));
    std::vector<std::pair<int, int>> gens;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) gens.emplace_back(a, b);
    while (!frontier.empty()) {
        Partition p = frontier.back();
        frontier.pop_back();
        for (auto [a, b] : gens) {
            if (p.related(a, b)) continue;
            std::vector<std::pair<int, int>> g = pairs_of(p);
            g.emplace_back(a, b);
            push(lattice_congruence_generated(s, g));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Partition& x, const Partition& y) { return x.block_of < y.block_of; });
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Suite bodies.  Each records one violation string per broken law, with the
// member and the law named; unexpected per-case errors are recorded, never
// rethrown, so one infeasible member cannot hide the rest of the report.
// ---------------------------------------------------------------------------

inline void suite_retraction(SuiteReport& rep, const SuiteConfig& cfg) {
    Corpus co = corpus(cfg.max_size);
    CoverStore store(cfg.cache_dir);
    for (size_t i = 0; i < co.members.size(); ++i) {
        const auto& m = co.members[i];
        if (!m.flags.distributive) continue;
        ++rep.cases;
        std::string tag = detail::member_tag(int(i), m.object);
        try {
            const CoverEntry& e = phi_object(m.object, store);
            Morphism eps = store.eps_of(m.object);
            Morphism mu = store.mu_of(m.object);
            if (compose(mu, eps).map() != identity(m.object).map())
                rep.violations.push_back(tag + ": retraction is not the identity");
            if (!is_boolean(*e.phi))
                rep.violations.push_back(tag + ": cover stage is not boolean");
            if (!eps.is_embedding())
                rep.violations.push_back(tag + ": unit is not an embedding");
            if (eps(m.object->top()) != e.phi->top())
                rep.violations.push_back(tag + ": unit does not preserve the top");
        } catch (const SlatError& e) {
            rep.violations.push_back(tag + ": " + e.kind + ": " + e.witness);
        }
    }
    rep.notes.push_back("store holds " + std::to_string(store.size()) + " entries");
}

inline void suite_naturality(SuiteReport& rep, const SuiteConfig& cfg) {
    Corpus co = corpus(cfg.max_size);
    CoverStore store(cfg.cache_dir);
    for (size_t i = 0; i < co.members.size(); ++i) {
        if (!co.members[i].flags.distributive) continue;
        for (size_t j = 0; j < co.members.size(); ++j) {
            if (i == j || !co.members[j].flags.distributive) continue;
            const SL& s = co.members[i].object;
            const SL& t = co.members[j].object;
            if (s->size() > t->size()) continue;
            for (const Morphism& f : detail::embeddings(s, t)) {
                ++rep.cases;
                std::string tag = detail::member_tag(int(i), s) + " into " +
                                  detail::member_tag(int(j), t);
                try {
                    Morphism pf = phi_morphism(f, store);
                    if (compose(pf, store.eps_of(s)).map() != compose(store.eps_of(t), f).map())
                        rep.violations.push_back(tag + ": unit square broken");
                    if (compose(f, store.mu_of(s)).map() != compose(store.mu_of(t), pf).map())
                        rep.violations.push_back(tag + ": retraction square broken");
                    if (!pf.is_embedding())
                        rep.violations.push_back(tag + ": cover action is not an embedding");
                } catch (const SlatError& e) {
                    rep.violations.push_back(tag + ": " + e.kind + ": " + e.witness);
                }
            }
        }
    }
}

inline void suite_functoriality(SuiteReport& rep, const SuiteConfig& cfg) {
    Corpus co = corpus(cfg.max_size);
    CoverStore store(cfg.cache_dir);
    std::vector<size_t> dist;
    for (size_t i = 0; i < co.members.size(); ++i)
        if (co.members[i].flags.distributive) dist.push_back(i);
    for (size_t i : dist) {
        ++rep.cases;
        const SL& s = co.members[i].object;
        std::string tag = detail::member_tag(int(i), s);
        try {
            if (phi_morphism(identity(s), store).map() != identity(store.ensure(s).phi).map())
                rep.violations.push_back(tag + ": identity is not sent to the identity");
        } catch (const SlatError& e) {
            rep.violations.push_back(tag + ": " + e.kind + ": " + e.witness);
        }
    }
    for (size_t i : dist)
        for (size_t j : dist)
            for (size_t k : dist) {
                const SL& a = co.members[i].object;
                const SL& b = co.members[j].object;
                const SL& c = co.members[k].object;
                if (a->size() > b->size() || b->size() > c->size()) continue;
                std::vector<Morphism> fs = detail::embeddings(a, b);
                if (fs.empty()) continue;
                std::vector<Morphism> gs = detail::embeddings(b, c);
                for (const Morphism& f : fs)
                    for (const Morphism& g : gs) {
                        ++rep.cases;
                        try {
                            Morphism lhs = phi_morphism(compose(g, f), store);
                            Morphism rhs =
                                compose(phi_morphism(g, store), phi_morphism(f, store));
                            if (lhs.map() != rhs.map())
                                rep.violations.push_back(
                                    detail::member_tag(int(i), a) + " -> " +
                                    detail::member_tag(int(j), b) + " -> " +
                                    detail::member_tag(int(k), c) + ": composition law broken");
                        } catch (const SlatError& e) {
                            rep.violations.push_back("composite through " +
                                                     detail::member_tag(int(j), b) + ": " +
                                                     e.kind + ": " + e.witness);
                        }
                    }
            }
}

inline void suite_shelter_laws(SuiteReport& rep, const SuiteConfig& cfg) {
    Corpus co = corpus(cfg.max_size);
    std::vector<std::pair<Morphism, Morphism>> law1, law2;
    for (const auto& ms : co.members) {
        std::vector<Morphism> autos = detail::automorphisms(ms.object);
        for (const auto& md : co.members) {
            if (!md.flags.distributive) continue;  // extensions need distributive targets
            std::vector<Morphism> hs = detail::homs(ms.object, md.object);
            for (const Morphism& f : autos)
                for (const Morphism& g : hs) law1.emplace_back(f, g);
            for (const Morphism& u : detail::automorphisms(md.object))
                for (const Morphism& h : hs) law2.emplace_back(h, u);
        }
    }
    ShelterLawReport laws = verify_shelter_laws(law1, law2);
    rep.cases += laws.checked;
    for (const std::string& v : laws.violations) rep.violations.push_back(v);

    // maximality of the canonical extension against full enumeration
    Corpus targets = corpus(cfg.max_size + 1);
    for (size_t ti = 0; ti < co.members.size(); ++ti) {
        const SL& t = co.members[ti].object;
        for (size_t si = 0; si < co.members.size(); ++si) {
            const SL& s = co.members[si].object;
            if (s->size() > t->size()) continue;
            std::vector<Morphism> embs = detail::embeddings(s, t);
            if (embs.empty()) continue;
            for (size_t di = 0; di < targets.members.size(); ++di) {
                if (!targets.members[di].flags.distributive) continue;
                const SL& d = targets.members[di].object;
                std::vector<Morphism> exts = detail::homs(t, d);
                for (const Morphism& e : embs)
                    for (const Morphism& g : detail::homs(s, d)) {
                        ++rep.cases;
                        std::string tag = detail::member_tag(int(si), s) + " under " +
                                          detail::member_tag(int(ti), t) + " into " +
                                          detail::member_tag(int(di), d);
                        try {
                            Morphism best = largest_extension(g, e);
                            if (compose(best, e).map() != g.map())
                                rep.violations.push_back(tag + ": result does not extend");
                            bool found = false;
                            for (const Morphism& h : exts) {
                                if (compose(h, e).map() != g.map()) continue;
                                found = found || h.map() == best.map();
                                for (int x = 0; x < t->size(); ++x)
                                    if (!d->leq(h(x), best(x))) {
                                        rep.violations.push_back(tag +
                                                                 ": a larger extension exists");
                                        break;
                                    }
                            }
                            if (!found)
                                rep.violations.push_back(tag + ": result missing from the "
                                                               "enumerated extensions");
                        } catch (const SlatError& err) {
                            rep.violations.push_back(tag + ": " + err.kind + ": " + err.witness);
                        }
                    }
            }
        }
    }
}

inline void suite_colimit_universality(SuiteReport& rep, const SuiteConfig& cfg) {
    std::vector<SL> pool{chain(2), chain(3), free_join_semilattice(2)};
    std::vector<Diagram> family;
    Poset edge = Poset::from_covers(2, {{0, 1}});
    Poset span = Poset::from_covers(3, {{0, 1}, {0, 2}});
    Poset path = Poset::from_covers(3, {{0, 1}, {1, 2}});
    for (const SL& a : pool)
        for (const SL& b : pool)
            for (const Morphism& f : detail::embeddings(a, b))
                family.push_back(Diagram::create(edge, {a, b}, {{{0, 1}, f}}));
    size_t span_budget = 20, path_budget = 20;
    for (const SL& a : pool)
        for (const SL& b : pool)
            for (const SL& c : pool) {
                for (const Morphism& f : detail::embeddings(a, b)) {
                    for (const Morphism& g : detail::embeddings(a, c))
                        if (span_budget) {
                            --span_budget;
                            family.push_back(
                                Diagram::create(span, {a, b, c}, {{{0, 1}, f}, {{0, 2}, g}}));
                        }
                    for (const Morphism& g : detail::embeddings(b, c))
                        if (path_budget) {
                            --path_budget;
                            family.push_back(
                                Diagram::create(path, {a, b, c}, {{{0, 1}, f}, {{1, 2}, g}}));
                        }
                }
            }
    Corpus targets = corpus(cfg.max_size);
    for (size_t di = 0; di < family.size(); ++di) {
        const Diagram& d = family[di];
        ColimitResult col = colimit(d);
        for (size_t ti = 0; ti < targets.members.size(); ++ti) {
            const SL& t = targets.members[ti].object;
            std::vector<std::vector<int>> apex_homs = detail::hom_maps(col.apex, t);
            for (const Cocone& k : detail::all_cocones(d, t)) {
                ++rep.cases;
                std::string tag = "diagram " + std::to_string(di) + " into " +
                                  detail::member_tag(int(ti), t);
                try {
                    Morphism h = factor_through(col, k);
                    for (size_t v = 0; v < col.legs.size(); ++v)
                        if (compose(h, col.legs[v]).map() != k.components[v].map()) {
                            rep.violations.push_back(tag + ": factorization misses a leg");
                            break;
                        }
                    int matching = 0;
                    for (const auto& cand : apex_homs) {
                        bool fits = true;
                        for (size_t v = 0; v < col.legs.size() && fits; ++v)
                            for (int x = 0; x < d.vertices[v]->size() && fits; ++x)
                                if (cand[col.legs[v](x)] != k.components[v](x)) fits = false;
                        if (fits) ++matching;
                    }
                    if (matching != 1)
                        rep.violations.push_back(tag + ": " + std::to_string(matching) +
                                                 " factorizations instead of one");
                } catch (const SlatError& e) {
                    rep.violations.push_back(tag + ": " + e.kind + ": " + e.witness);
                }
            }
        }
    }
    rep.notes.push_back("family holds " + std::to_string(family.size()) + " diagrams");
}

inline void suite_gs(SuiteReport& rep, const SuiteConfig& cfg) {
    Corpus co = corpus(cfg.max_size);
    for (size_t i = 0; i < co.members.size(); ++i) {
        const SL& k = co.members[i].object;
        if (k->size() < 2) continue;
        ++rep.cases;
        std::string tag = detail::member_tag(int(i), k);
        try {
            GSCheckReport r = gs_checks(k);
            for (const std::string& v : r.violations) rep.violations.push_back(tag + ": " + v);
            if (compose(r.result.mu, r.result.eps).map() != identity(k).map())
                rep.violations.push_back(tag + ": retraction is not the identity");
        } catch (const SlatError& e) {
            rep.violations.push_back(tag + ": " + e.kind + ": " + e.witness);
        }
    }
    for (size_t i = 0; i < co.members.size(); ++i)
        for (size_t j = 0; j < co.members.size(); ++j) {
            const SL& s = co.members[i].object;
            const SL& t = co.members[j].object;
            if (s->size() < 2 || t->size() < 2 || s->size() > t->size()) continue;
            for (const Morphism& f : detail::embeddings(s, t)) {
                ++rep.cases;
                std::string tag = detail::member_tag(int(i), s) + " into " +
                                  detail::member_tag(int(j), t);
                try {
                    Morphism gf = gs_morphism(f);
                    if (compose(gf, gs_object(s).eps).map() !=
                        compose(gs_object(t).eps, f).map())
                        rep.violations.push_back(tag + ": extension square broken");
                } catch (const SlatError& e) {
                    rep.violations.push_back(tag + ": " + e.kind + ": " + e.witness);
                }
            }
        }
}

inline void suite_counterexample(SuiteReport& rep, const SuiteConfig&) {
    std::optional<CounterexampleData> built;
    try {
        built = build_counterexample_data();
    } catch (const SlatError& e) {
        rep.violations.push_back("construction failed: " + e.kind + ": " + e.witness);
        return;
    }
    ++rep.cases;
    const CounterexampleData& d = *built;
    const DirectSystem& sys = d.system;
    auto preim = [](const Morphism& f, int y) {
        for (int x = 0; x < f.src()->size(); ++x)
            if (f(x) == y) return x;
        return -1;
    };
    const SL& amb = sys.vertices()[3];
    int p_s = preim(sys.transition(0, 3), d.p);
    int r1_a1 = preim(sys.transition(1, 3), d.r1);
    int r2_a2 = preim(sys.transition(2, 3), d.r2);

    ++rep.cases;
    NecessResult at_p = necess_check(sys, 0, 3, p_s);
    if (at_p.pass)
        rep.violations.push_back("necessary condition unexpectedly passes at " +
                                 amb->label(d.p));
    else if (at_p.failures.size() != 2 || at_p.failures[0].q != d.q1 ||
             at_p.failures[0].k != 1 || at_p.failures[0].r != r1_a1 ||
             at_p.failures[1].q != d.q2 || at_p.failures[1].k != 2 ||
             at_p.failures[1].r != r2_a2)
        rep.violations.push_back("failure witnesses differ from the recorded pair");
    else {
        rep.notes.push_back("fail witness: candidate " + amb->label(d.q1) + " blocked at "
                            "vertex 1 by " + sys.vertices()[1]->label(r1_a1));
        rep.notes.push_back("fail witness: candidate " + amb->label(d.q2) + " blocked at "
                            "vertex 2 by " + sys.vertices()[2]->label(r2_a2));
    }

    const std::pair<int, int> generators[] = {{d.p1, d.q1p}, {d.p2, d.q2p}};
    for (auto [gen, good] : generators) {
        ++rep.cases;
        NecessResult r = necess_check(sys, 0, 3, preim(sys.transition(0, 3), gen));
        if (!r.pass || r.q != good)
            rep.violations.push_back("condition does not pass at " + amb->label(gen) +
                                     " with witness " + amb->label(good));
    }

    ++rep.cases;
    SearchOutcome so = search_simultaneous(sys, SearchOptions{});
    if (so.found)
        rep.violations.push_back("search found an embedding that cannot exist");
    else
        rep.notes.push_back("search certificate: " + so.certificate);
}

inline void suite_size_bounds(SuiteReport& rep, const SuiteConfig& cfg) {
    Corpus co = corpus(cfg.max_size);
    CoverStore store(cfg.cache_dir);
    for (size_t i = 0; i < co.members.size(); ++i) {
        if (!co.members[i].flags.distributive) continue;
        try {
            store.ensure(co.members[i].object);
        } catch (const SlatError& e) {
            rep.notes.push_back("skipped " + detail::member_tag(int(i), co.members[i].object) +
                                ": " + e.kind);
        }
    }
    SizeBoundReport sb = size_bound_report(store);
    for (const SizeBoundRow& r : sb.rows) {
        ++rep.cases;
        rep.notes.push_back("size " + std::to_string(r.object_size) + ": stage " +
                            std::to_string(r.phi_star_size) + " <= bound " +
                            std::to_string(r.bound));
        if (!r.within)
            rep.violations.push_back("entry " + r.key + " exceeds its size bound");
    }
}

inline void suite_atomistic_image(SuiteReport& rep, const SuiteConfig& cfg) {
    Corpus co = corpus(cfg.max_size);
    for (size_t i = 0; i < co.members.size(); ++i) {
        const auto& m = co.members[i];
        if (!m.flags.atomistic) continue;
        std::string tag = detail::member_tag(int(i), m.object);
        std::vector<Partition> congs = detail::all_lattice_congruences(m.object);
        for (const Partition& p : congs) {
            ++rep.cases;
            try {
                Morphism proj = quotient(m.object, p).second;
                AtomisticImageReport r = atomistic_image_check(m.object, proj);
                if (!r.ok())
                    rep.violations.push_back(tag + ": quotient image is not atomistic at " +
                                             r.witness);
            } catch (const SlatError& e) {
                rep.violations.push_back(tag + ": " + e.kind + ": " + e.witness);
            }
        }
        // independent cross-check at small sizes: kernels of directly
        // enumerated surjective meet-preserving maps recover the congruences
        if (m.object->size() <= 5) {
            std::set<std::vector<int>> kernels;
            for (const auto& tm : co.members) {
                if (tm.object->size() > m.object->size()) continue;
                for (const Morphism& f : detail::homs(m.object, tm.object)) {
                    std::vector<char> hit(tm.object->size(), 0);
                    for (int x = 0; x < m.object->size(); ++x) hit[f(x)] = 1;
                    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) continue;
                    if (!preserves_meets(f)) continue;
                    kernels.insert(normalize_partition(m.object->size(), f.map()).block_of);
                }
            }
            ++rep.cases;
            std::set<std::vector<int>> expected;
            for (const Partition& p : congs) expected.insert(p.block_of);
            if (kernels != expected)
                rep.violations.push_back(tag + ": congruences and surjection kernels disagree");
        }
        rep.notes.push_back(tag + ": " + std::to_string(congs.size()) + " congruences");
    }
}

inline SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg = {}) {
    SuiteReport rep;
    rep.suite = name;
    auto t0 = std::chrono::steady_clock::now();
    if (name == "retraction")
        suite_retraction(rep, cfg);
    else if (name == "naturality")
        suite_naturality(rep, cfg);
    else if (name == "functoriality")
        suite_functoriality(rep, cfg);
    else if (name == "shelter-laws")
        suite_shelter_laws(rep, cfg);
    else if (name == "colimit-universality")
        suite_colimit_universality(rep, cfg);
    else if (name == "gs")
        suite_gs(rep, cfg);
    else if (name == "counterexample")
        suite_counterexample(rep, cfg);
    else if (name == "size-bounds")
        suite_size_bounds(rep, cfg);
    else if (name == "atomistic-image")
        suite_atomistic_image(rep, cfg);
    else
        fail("UnknownSuite", "no suite named " + name);
    rep.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rep;
}

}  // namespace slat
