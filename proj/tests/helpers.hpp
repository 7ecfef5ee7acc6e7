#pragma once

#include <slat/core.hpp>

#include <string>
#include <vector>

namespace testutil {

using namespace slat;

// Restores the global limits on scope exit.
struct LimitsGuard {
    Limits saved = limits();
    ~LimitsGuard() { limits() = saved; }
};

template <class F>
inline std::string error_kind(F&& f) {
    try {
        f();
    } catch (const SlatError& e) {
        return e.kind;
    }
    return "(no error)";
}

// Builds the lattice with the given cover relation; the covers must describe
// a lattice (unique bottom, all binary joins).
inline SL lattice_from_covers(int n, const std::vector<std::pair<int, int>>& covers) {
    Poset p = Poset::from_covers(n, covers);
    int zero = -1;
    for (int x = 0; x < n; ++x)
        if (p.down(x).count() == 1) {
            if (zero != -1) throw std::runtime_error("no unique bottom");
            zero = x;
        }
    if (zero < 0) throw std::runtime_error("no bottom");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Bits ub = p.up(x);
            ub.and_with(p.up(y));
            int least = -1;
            for (int z : ub.members())
                if (ub.subset_of(p.up(z))) {
                    least = z;
                    break;
                }
            if (least < 0) throw std::runtime_error("pair without a join");
            t[x][y] = least;
        }
    return Semilattice::from_join_table(t, zero);
}

// Diamond: 0 < a,b,c < 1 with the three atoms pairwise joining to the top.
inline SL m3() {
    return lattice_from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
}

// Pentagon: 0 < a < c < 1 and 0 < b < 1 with b incomparable to a and c.
inline SL n5() {
    return lattice_from_covers(5, {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}});
}

inline std::vector<std::vector<int>> table_of(const SL& s) {
    int n = s->size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x][y] = s->join(x, y);
    return t;
}

// Every join-and-zero-preserving map s -> t, found by exhausting all value
// assignments on the non-zero elements.  Intended for small objects only.
inline std::vector<std::vector<int>> all_morphism_maps(const SL& s, const SL& t) {
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

inline std::vector<Morphism> all_morphisms(const SL& s, const SL& t) {
    std::vector<Morphism> out;
    for (auto& m : all_morphism_maps(s, t)) out.push_back(Morphism::trusted(s, t, m));
    return out;
}

inline std::vector<Morphism> all_embeddings(const SL& s, const SL& t) {
    std::vector<Morphism> out;
    for (auto& m : all_morphisms(s, t))
        if (m.is_embedding()) out.push_back(m);
    return out;
}

inline std::vector<Morphism> all_isos(const SL& s, const SL& t) {
    std::vector<Morphism> out;
    for (auto& m : all_morphisms(s, t))
        if (m.is_iso()) out.push_back(m);
    return out;
}

// A relabelled copy of s under the permutation perm (element x becomes
// perm[x]), together with the isomorphism s -> copy.
inline std::pair<SL, Morphism> relabelled_copy(const SL& s, const std::vector<int>& perm) {
    int n = s->size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> lbl(n);
    for (int x = 0; x < n; ++x) {
        lbl[perm[x]] = s->label(x);
        for (int y = 0; y < n; ++y) t[perm[x]][perm[y]] = perm[s->join(x, y)];
    }
    SL c = Semilattice::from_join_table(t, perm[s->zero()], lbl);
    return {c, Morphism::checked(s, c, perm)};
}

}  // namespace testutil
