#include <catch2/catch_amalgamated.hpp>

#include <slat/canonical.hpp>
#include <slat/enumerate.hpp>

#include <set>

#include "helpers.hpp"

using namespace slat;
using namespace testutil;

namespace {

// Independent oracle: every finite poset has a linear extension, so every
// lattice of size n appears among the reflexive transitive antisymmetric
// relations on {0..n-1} that only relate i<j upward.  Enumerate those
// directly and collect canonical join tables of the ones that are lattices.
std::set<std::vector<uint16_t>> brute_lattice_tables(int n) {
    std::set<std::vector<uint16_t>> out;
    int bits = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> slot;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slot.emplace_back(i, j);
    std::vector<std::vector<char>> leq(n, std::vector<char>(n));
    for (long long mask = 0; mask < (1LL << bits); ++mask) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) leq[i][j] = (i == j);
        for (int b = 0; b < bits; ++b)
            if (mask & (1LL << b)) leq[slot[b].first][slot[b].second] = 1;
        bool trans = true;
        for (int i = 0; i < n && trans; ++i)
            for (int j = i + 1; j < n && trans; ++j) {
                if (!leq[i][j]) continue;
                for (int k = j + 1; k < n; ++k)
                    if (leq[j][k] && !leq[i][k]) {
                        trans = false;
                        break;
                    }
            }
        if (!trans) continue;
        int mins = 0, zero = -1;
        for (int x = 0; x < n; ++x) {
            bool isMin = true;
            for (int y = 0; y < n; ++y)
                if (y != x && leq[y][x]) isMin = false;
            if (isMin) {
                ++mins;
                zero = x;
            }
        }
        if (mins != 1) continue;
        std::vector<std::vector<int>> join(n, std::vector<int>(n, -1));
        bool lattice = true;
        for (int x = 0; x < n && lattice; ++x)
            for (int y = x; y < n && lattice; ++y) {
                int least = -1;
                for (int z = 0; z < n; ++z) {
                    if (!leq[x][z] || !leq[y][z]) continue;
                    bool isLeast = true;
                    for (int w = 0; w < n; ++w)
                        if (leq[x][w] && leq[y][w] && !leq[z][w]) {
                            isLeast = false;
                            break;
                        }
                    if (isLeast) {
                        least = z;
                        break;
                    }
                }
                if (least < 0) {
                    lattice = false;
                    break;
                }
                join[x][y] = join[y][x] = least;
            }
        if (!lattice) continue;
        SL s = Semilattice::from_join_table(join, zero);
        out.insert(canonical_form(s).canonical->table());
    }
    return out;
}

}  // namespace

TEST_CASE("lattice counts for sizes 1..7") {
    const int expected[] = {0, 1, 1, 1, 2, 5, 15, 53};
    for (int n = 1; n <= 7; ++n) {
        std::vector<SL> corpus = enumerate_semilattices(n);
        REQUIRE(int(corpus.size()) == expected[n]);
        for (const SL& s : corpus) {
            REQUIRE(s->size() == n);
            // members are canonical forms already
            REQUIRE(canonical_form(s).canonical->table() == s->table());
        }
    }
}

TEST_CASE("enumeration agrees with the brute-force relation oracle") {
    for (int n = 1; n <= 6; ++n) {
        std::set<std::vector<uint16_t>> brute = brute_lattice_tables(n);
        std::vector<SL> corpus = enumerate_semilattices(n);
        REQUIRE(corpus.size() == brute.size());
        for (const SL& s : corpus) REQUIRE(brute.count(s->table()) == 1);
    }
}

TEST_CASE("enumeration agrees with the brute-force relation oracle at size 7",
          "[slow]") {
    std::set<std::vector<uint16_t>> brute = brute_lattice_tables(7);
    std::vector<SL> corpus = enumerate_semilattices(7);
    REQUIRE(corpus.size() == brute.size());
    for (const SL& s : corpus) REQUIRE(brute.count(s->table()) == 1);
}

TEST_CASE("enumeration respects its cap") {
    REQUIRE(error_kind([] { enumerate_semilattices(8); }) == "CapExceeded");
    REQUIRE(error_kind([] { enumerate_semilattices(0); }) == "IllFormed");
    REQUIRE_NOTHROW(enumerate_semilattices(3, 3));
}

TEST_CASE("enumeration is deterministic") {
    std::vector<SL> a = enumerate_semilattices(5);
    std::vector<SL> b = enumerate_semilattices(5);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i]->table() == b[i]->table());
}
