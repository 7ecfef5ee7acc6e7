#pragma once

#include "congruence.hpp"
#include "core.hpp"

namespace slat {

struct Classification {
    bool distributive = false;
    bool boolean = false;
    bool atomistic = false;
    bool lattice_simple = false;
};

// A finite lattice is distributive iff every join-irreducible is join-prime.
inline bool is_distributive(const Semilattice& s) {
    int n = s.size();
    for (int j : s.join_irreducibles())
        for (int a = 0; a < n; ++a) {
            if (s.leq(j, a)) continue;
            for (int b = 0; b < n; ++b)
                if (!s.leq(j, b) && s.leq(j, s.join(a, b))) return false;
        }
    return true;
}

inline bool is_atomistic(const Semilattice& s) {
    int n = s.size();
    const auto& atoms = s.atom_list();
    for (int x = 0; x < n; ++x) {
        int r = s.zero();
        for (int a : atoms)
            if (s.leq(a, x)) r = s.join(r, a);
        if (r != x) return false;
    }
    return true;
}

// Simple as a lattice: only the two trivial lattice congruences.  It is
// enough to check that collapsing any cover collapses everything.
inline bool is_lattice_simple(const Semilattice& s) {
    if (s.size() < 2) return false;
    for (auto& [lo, hi] : s.cover_pairs()) {
        Partition p = congruence_closure(s, {{lo, hi}}, true);
        if (p.size() != 1) return false;
    }
    return true;
}

inline bool is_boolean(const Semilattice& s) {
    int k = int(s.atom_list().size());
    if (k >= 31 || s.size() != (1 << k)) return false;
    return is_atomistic(s) && is_distributive(s);
}

// Whether a ⟨∨,0⟩-morphism also preserves all binary meets, i.e. is a
// homomorphism of the induced lattices.
inline bool preserves_meets(const Morphism& f) {
    const SL& s = f.src();
    const SL& t = f.dst();
    int n = s->size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (f(s->meet(x, y)) != t->meet(f(x), f(y))) return false;
    return true;
}

inline Classification classify(const SL& s) {
    Classification c;
    c.distributive = is_distributive(*s);
    c.atomistic = is_atomistic(*s);
    c.boolean = c.distributive && c.atomistic && int(s->size()) == (1 << int(s->atom_list().size()));
    c.lattice_simple = is_lattice_simple(*s);
    return c;
}

}  // namespace slat
