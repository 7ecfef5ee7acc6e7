#pragma once

#include <deque>
#include <numeric>

#include "core.hpp"

namespace slat {

// Partition of element indices; blocks are numbered by least member.
struct Partition {
    std::vector<int> block_of;
    std::vector<std::vector<int>> blocks;
    int size() const { return int(blocks.size()); }
    bool related(int a, int b) const { return block_of[a] == block_of[b]; }
};

inline Partition normalize_partition(int n, const std::vector<int>& raw) {
    Partition p;
    p.block_of.assign(n, -1);
    std::vector<int> id_to_block;
    for (int x = 0; x < n; ++x) {
        if (p.block_of[x] != -1) continue;
        int b = int(p.blocks.size());
        p.blocks.push_back({});
        for (int y = x; y < n; ++y)
            if (raw[y] == raw[x] && p.block_of[y] == -1) {
                p.block_of[y] = b;
                p.blocks[b].push_back(y);
            }
    }
    (void)id_to_block;
    return p;
}

namespace detail {
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep least member as root
        parent[b] = a;
        return true;
    }
};
}  // namespace detail

// Smallest congruence containing the given pairs.  With lattice_mode the
// closure respects meets as well as joins (congruence of the induced lattice);
// otherwise only joins.
inline Partition congruence_closure(const Semilattice& s,
                                    const std::vector<std::pair<int, int>>& pairs,
                                    bool lattice_mode) {
    int n = s.size();
    detail::UnionFind uf(n);
    std::deque<std::pair<int, int>> work(pairs.begin(), pairs.end());
    for (auto& [a, b] : work)
        if (a < 0 || a >= n || b < 0 || b >= n) fail("IllFormed", "pair index out of range");
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        if (!uf.unite(a, b)) continue;
        for (int c = 0; c < n; ++c) {
            int ja = s.join(a, c), jb = s.join(b, c);
            if (uf.find(ja) != uf.find(jb)) work.emplace_back(ja, jb);
            if (lattice_mode) {
                int ma = s.meet(a, c), mb = s.meet(b, c);
                if (uf.find(ma) != uf.find(mb)) work.emplace_back(ma, mb);
            }
        }
    }
    std::vector<int> raw(n);
    for (int x = 0; x < n; ++x) raw[x] = uf.find(x);
    return normalize_partition(n, raw);
}

inline Partition join_congruence_generated(const SL& s,
                                           const std::vector<std::pair<int, int>>& pairs) {
    return congruence_closure(*s, pairs, false);
}

inline Partition lattice_congruence_generated(const SL& s,
                                              const std::vector<std::pair<int, int>>& pairs) {
    return congruence_closure(*s, pairs, true);
}

// Quotient by a join-congruence, with the projection morphism.
inline std::pair<SL, Morphism> quotient(const SL& s, const Partition& p) {
    int n = s->size();
    if (int(p.block_of.size()) != n) fail("IllFormed", "partition size mismatch");
    for (int b : p.block_of)
        if (b < 0 || b >= p.size()) fail("IllFormed", "partition block out of range");
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (p.block_of[a] != p.block_of[b]) continue;
            for (int c = 0; c < n; ++c)
                if (p.block_of[s->join(a, c)] != p.block_of[s->join(b, c)]) {
                    std::ostringstream os;
                    os << "blocks of " << a << "," << b << " equal but join with " << c
                       << " separates";
                    fail("NotACongruence", os.str());
                }
        }
    int m = p.size();
    std::vector<uint16_t> join(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            join[size_t(i) * m + k] =
                uint16_t(p.block_of[s->join(p.blocks[i][0], p.blocks[k][0])]);
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = "[" + s->label(p.blocks[i][0]) + "]";
    SL q = Semilattice::trusted(m, std::move(join), p.block_of[s->zero()], std::move(labels));
    return {q, Morphism::trusted(s, q, p.block_of)};
}

}  // namespace slat
