#pragma once

#include <set>
#include <string>

#include "canonical.hpp"
#include "core.hpp"

namespace slat {
namespace detail {

// Lexicographically least relabelled order matrix over class-preserving
// bijections; same refinement scheme as the semilattice canonical form.
inline std::string poset_key(const std::vector<Bits>& down) {
    int n = int(down.size());
    std::vector<Bits> up(n, Bits(n));
    for (int x = 0; x < n; ++x)
        for (int y : down[x].members()) up[y].set(x);
    std::vector<int> height(n, 0);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return down[a].count() < down[b].count(); });
    for (int x : order)
        for (int y : down[x].members())
            if (y != x) height[x] = std::max(height[x], height[y] + 1);
    std::vector<std::vector<int>> lc(n);
    for (int x = 0; x < n; ++x)
        for (int y : down[x].members()) {
            if (y == x) continue;
            Bits between = up[y];
            between.and_with(down[x]);
            if (between.count() == 2) lc[x].push_back(y);
        }
    std::vector<std::vector<int>> uc(n);
    for (int x = 0; x < n; ++x)
        for (int y : lc[x]) uc[y].push_back(x);

    std::vector<int> col(n, 0);
    int ncol = 1;
    std::map<std::vector<long long>, int> ids;
    std::vector<std::vector<long long>> key(n);
    for (int x = 0; x < n; ++x)
        key[x] = {(long long)down[x].count(), (long long)up[x].count(), (long long)height[x]};
    auto assign = [&]() {
        ids.clear();
        for (int x = 0; x < n; ++x) ids.emplace(key[x], 0);
        int c = 0;
        for (auto& kv : ids) kv.second = c++;
        for (int x = 0; x < n; ++x) col[x] = ids.at(key[x]);
        return c;
    };
    ncol = assign();
    while (true) {
        for (int x = 0; x < n; ++x) {
            std::vector<long long> k{col[x], -1};
            std::vector<long long> a, b;
            for (int y : lc[x]) a.push_back(col[y]);
            for (int y : uc[x]) b.push_back(col[y]);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            k.insert(k.end(), a.begin(), a.end());
            k.push_back(-2);
            k.insert(k.end(), b.begin(), b.end());
            key[x] = std::move(k);
        }
        int c = assign();
        if (c == ncol) break;
        ncol = c;
    }

    std::vector<std::vector<int>> classes(ncol);
    for (int x = 0; x < n; ++x) classes[col[x]].push_back(x);
    std::vector<int> offset(ncol, 0);
    for (int c = 1; c < ncol; ++c) offset[c] = offset[c - 1] + int(classes[c - 1].size());
    std::vector<std::vector<int>> ord = classes;
    std::vector<int> pos(n);
    std::string best, cand(size_t(n) * n, '0');
    while (true) {
        for (int c = 0; c < ncol; ++c)
            for (size_t i = 0; i < ord[c].size(); ++i) pos[ord[c][i]] = offset[c] + int(i);
        std::fill(cand.begin(), cand.end(), '0');
        for (int x = 0; x < n; ++x)
            for (int y : down[x].members()) cand[size_t(pos[y]) * n + pos[x]] = '1';
        if (best.empty() || cand < best) best = cand;
        int c = ncol - 1;
        while (c >= 0 && !std::next_permutation(ord[c].begin(), ord[c].end())) --c;
        if (c < 0) break;
    }
    return best;
}

}  // namespace detail

// All lattices (equivalently, join-semilattices with zero) of the given size
// up to isomorphism, as canonical forms in a deterministic order.  Grows
// posets one maximal point at a time, dedupes, then keeps those whose order
// has a bottom and all binary joins.
inline std::vector<SL> enumerate_semilattices(int n, int cap = -1) {
    if (cap < 0) cap = limits().max_enumerate_size;
    if (n < 1) fail("IllFormed", "size must be positive");
    if (n > cap)
        fail("CapExceeded", "size " + std::to_string(n) + " exceeds enumeration cap " +
                                std::to_string(cap));

    std::vector<std::vector<Bits>> level;
    {
        std::vector<Bits> one{Bits(1)};
        one[0].set(0);
        level.push_back(one);
    }
    for (int k = 1; k < n; ++k) {
        std::set<std::string> seen;
        std::vector<std::vector<Bits>> next;
        for (const auto& down : level) {
            for (int mask = 0; mask < (1 << k); ++mask) {
                bool closed = true;
                for (int x = 0; x < k && closed; ++x)
                    if (mask & (1 << x))
                        for (int y : down[x].members())
                            if (!(mask & (1 << y))) {
                                closed = false;
                                break;
                            }
                if (!closed) continue;
                std::vector<Bits> nd(k + 1, Bits(k + 1));
                for (int x = 0; x < k; ++x)
                    for (int y : down[x].members()) nd[x].set(y);
                nd[k].set(k);
                for (int x = 0; x < k; ++x)
                    if (mask & (1 << x)) nd[k].or_with(nd[x]);
                std::string key = detail::poset_key(nd);
                if (seen.insert(key).second) next.push_back(std::move(nd));
            }
        }
        level = std::move(next);
    }

    std::vector<std::pair<std::vector<uint16_t>, SL>> out;
    for (const auto& down : level) {
        std::vector<Bits> up(n, Bits(n));
        for (int x = 0; x < n; ++x)
            for (int y : down[x].members()) up[y].set(x);
        int mins = 0, zero = -1;
        for (int x = 0; x < n; ++x)
            if (down[x].count() == 1) {
                ++mins;
                zero = x;
            }
        if (mins != 1) continue;
        std::vector<uint16_t> join(size_t(n) * n);
        bool lattice = true;
        for (int x = 0; x < n && lattice; ++x)
            for (int y = x; y < n && lattice; ++y) {
                Bits ub = up[x];
                ub.and_with(up[y]);
                int least = -1;
                for (int z : ub.members())
                    if (ub.subset_of(up[z])) {
                        least = z;
                        break;
                    }
                if (least < 0) {
                    lattice = false;
                    break;
                }
                join[size_t(x) * n + y] = uint16_t(least);
                join[size_t(y) * n + x] = uint16_t(least);
            }
        if (!lattice) continue;
        SL s = Semilattice::trusted(n, std::move(join), zero);
        CanonicalResult c = canonical_form(s);
        out.emplace_back(c.canonical->table(), c.canonical);
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
    std::vector<SL> result;
    for (auto& p : out) result.push_back(p.second);
    return result;
}

}  // namespace slat
