#pragma once

#include <map>

#include "core.hpp"

namespace slat {

struct CanonicalResult {
    SL canonical;
    Morphism relabel;  // iso from the input onto its canonical form
};

// Canonical representative of the isomorphism class: iterated signature
// refinement splits the elements into ordered classes that every isomorphism
// must respect, then the lexicographically least relabelled join table over
// class-preserving bijections is taken.
inline CanonicalResult canonical_form(const SL& s) {
    int n = s->size();
    if (n > limits().max_canonical_size)
        fail("SizeCapExceeded", "canonical form of size " + std::to_string(n) + " exceeds cap");

    std::vector<int> col(n, 0);
    int ncol = 1;
    {
        std::map<std::vector<long long>, int> ids;
        std::vector<std::vector<long long>> key(n);
        for (int x = 0; x < n; ++x)
            key[x] = {(long long)s->down(x).count(), (long long)s->up(x).count(),
                      (long long)s->height(x), (long long)s->lower_covers()[x].size(),
                      (long long)s->upper_covers()[x].size()};
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
                std::vector<long long> lc, uc;
                for (int y : s->lower_covers()[x]) lc.push_back(col[y]);
                for (int y : s->upper_covers()[x]) uc.push_back(col[y]);
                std::sort(lc.begin(), lc.end());
                std::sort(uc.begin(), uc.end());
                k.insert(k.end(), lc.begin(), lc.end());
                k.push_back(-2);
                k.insert(k.end(), uc.begin(), uc.end());
                key[x] = std::move(k);
            }
            int c = assign();
            if (c == ncol) break;
            ncol = c;
        }
    }

    std::vector<std::vector<int>> classes(ncol);
    for (int x = 0; x < n; ++x) classes[col[x]].push_back(x);
    long long work = 1;
    for (auto& cl : classes)
        for (size_t i = 2; i <= cl.size(); ++i) {
            work *= (long long)i;
            if (work > limits().max_canonical_work)
                fail("SizeCapExceeded", "canonical form permutation budget exceeded");
        }

    std::vector<int> offset(ncol, 0);
    for (int c = 1; c < ncol; ++c) offset[c] = offset[c - 1] + int(classes[c - 1].size());

    std::vector<std::vector<int>> ord = classes;
    std::vector<uint16_t> best;
    std::vector<int> best_pos;
    std::vector<int> pos(n);
    std::vector<uint16_t> cand(size_t(n) * n);
    while (true) {
        for (int c = 0; c < ncol; ++c)
            for (size_t i = 0; i < ord[c].size(); ++i) pos[ord[c][i]] = offset[c] + int(i);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                cand[size_t(pos[x]) * n + pos[y]] = uint16_t(pos[s->join(x, y)]);
        if (best.empty() || cand < best) {
            best = cand;
            best_pos = pos;
        }
        int c = ncol - 1;
        while (c >= 0 && !std::next_permutation(ord[c].begin(), ord[c].end())) --c;
        if (c < 0) break;
    }

    SL canon = Semilattice::trusted(n, std::move(best), best_pos[s->zero()]);
    return {canon, Morphism::trusted(s, canon, std::move(best_pos))};
}

}  // namespace slat
