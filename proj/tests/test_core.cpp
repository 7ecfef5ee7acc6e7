#include <catch2/catch_amalgamated.hpp>

#include <slat/core.hpp>

#include "helpers.hpp"

using namespace slat;
using namespace testutil;

namespace {

bool oracle_associative(const std::vector<std::vector<int>>& t) {
    int n = int(t.size());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
    return true;
}

}  // namespace

TEST_CASE("join table validation pinpoints each axiom") {
    REQUIRE(error_kind([] { Semilattice::from_join_table({{1, 1}, {1, 1}}, 0); }) ==
            "NotIdempotent");
    REQUIRE(error_kind([] { Semilattice::from_join_table({{0, 1}, {0, 1}}, 0); }) ==
            "NotCommutative");
    REQUIRE(error_kind([] {
                Semilattice::from_join_table({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}, 0);
            }) == "NotAssociative");
    REQUIRE(error_kind([] { Semilattice::from_join_table({{0, 1}, {1, 1}}, 1); }) ==
            "ZeroNotNeutral");
    REQUIRE(error_kind([] { Semilattice::from_join_table({{0, 1}}, 0); }) == "IllFormed");
    REQUIRE(error_kind([] { Semilattice::from_join_table({{0, 3}, {3, 1}}, 0); }) == "IllFormed");
    REQUIRE(error_kind([] { Semilattice::from_join_table({{0}}, 2); }) == "IllFormed");
    REQUIRE_NOTHROW(Semilattice::from_join_table({{0}}, 0));
}

TEST_CASE("validation agrees with the brute-force axioms on every size-4 table") {
    // All idempotent commutative tables on {0..3}: 6 free entries, 4 values each.
    int mismatches = 0;
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int code = 0; code < 4096; ++code) {
        int c = code;
        for (int i = 0; i < 4; ++i) t[i][i] = i;
        for (int x = 0; x < 4; ++x)
            for (int y = x + 1; y < 4; ++y) {
                t[x][y] = t[y][x] = c & 3;
                c >>= 2;
            }
        bool assoc = oracle_associative(t);
        bool neutral = t[0][1] == 1 && t[0][2] == 2 && t[0][3] == 3;
        std::string kind = error_kind([&] { Semilattice::from_join_table(t, 0); });
        std::string expect = !assoc ? "NotAssociative" : (!neutral ? "ZeroNotNeutral" : "(no error)");
        if (kind != expect) ++mismatches;
    }
    REQUIRE(mismatches == 0);
}

TEST_CASE("chain and powerset basics") {
    SL c = chain(4);
    REQUIRE(c->size() == 4);
    REQUIRE(c->zero() == 0);
    REQUIRE(c->top() == 3);
    REQUIRE(c->leq(1, 3));
    REQUIRE(!c->leq(3, 1));
    REQUIRE(c->cover_pairs() ==
            std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
    for (int i = 0; i < 4; ++i) REQUIRE(c->height(i) == i);
    REQUIRE(c->length() == 3);
    REQUIRE(c->join_irreducibles() == std::vector<int>{1, 2, 3});
    REQUIRE(c->meet_irreducibles() == std::vector<int>{0, 1, 2});
    REQUIRE(c->atom_list() == std::vector<int>{1});

    SL b = powerset(3);
    REQUIRE(b->size() == 8);
    REQUIRE(b->top() == 7);
    REQUIRE(b->join(3, 5) == 7);
    REQUIRE(b->meet(3, 5) == 1);
    REQUIRE(b->atom_list() == std::vector<int>{1, 2, 4});
    REQUIRE(b->join_irreducibles() == std::vector<int>{1, 2, 4});
    REQUIRE(b->meet_irreducibles() == std::vector<int>{3, 5, 6});
    REQUIRE(b->label(5) == "{g0,g2}");
    REQUIRE(b->height(7) == 3);
}

TEST_CASE("meets are greatest lower bounds") {
    for (const SL& s : {m3(), n5(), powerset(3), chain(5)}) {
        int n = s->size();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                int m = s->meet(a, b);
                REQUIRE(s->leq(m, a));
                REQUIRE(s->leq(m, b));
                for (int c = 0; c < n; ++c)
                    if (s->leq(c, a) && s->leq(c, b)) REQUIRE(s->leq(c, m));
            }
    }
}

TEST_CASE("irreducibles match their defining property") {
    for (const SL& s : {m3(), n5(), powerset(3), chain(4)}) {
        int n = s->size();
        std::vector<char> inJ(n, 0), inM(n, 0);
        for (int j : s->join_irreducibles()) inJ[j] = 1;
        for (int m : s->meet_irreducibles()) inM[m] = 1;
        for (int u = 0; u < n; ++u) {
            bool jp = u != s->zero();
            if (jp)
                for (int x = 0; x < n && jp; ++x)
                    for (int y = 0; y < n; ++y)
                        if (s->join(x, y) == u && x != u && y != u) {
                            jp = false;
                            break;
                        }
            REQUIRE(bool(inJ[u]) == jp);
            // meet-irreducible within the lattice with its top removed
            bool mp = u != s->top();
            if (mp)
                for (int x = 0; x < n && mp; ++x)
                    for (int y = 0; y < n; ++y) {
                        if (x == s->top() || y == s->top()) continue;
                        if (s->meet(x, y) == u && x != u && y != u) {
                            mp = false;
                            break;
                        }
                    }
            REQUIRE(bool(inM[u]) == mp);
        }
    }
}

TEST_CASE("ideal lattices of small posets") {
    Poset anti2 = Poset::from_covers(2, {});
    IdealLattice il = ideal_lattice_with_map(anti2);
    REQUIRE(il.lattice->size() == 4);
    REQUIRE(il.lattice->zero() == 0);
    REQUIRE(il.lattice->atom_list().size() == 2);
    REQUIRE(il.lattice->join(il.principal[0], il.principal[1]) == il.lattice->top());
    REQUIRE(il.lattice->meet(il.principal[0], il.principal[1]) == il.lattice->zero());

    Poset chain2 = Poset::from_covers(2, {{0, 1}});
    SL c3 = ideal_lattice(chain2);
    REQUIRE(c3->size() == 3);
    REQUIRE(c3->cover_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

    // N-shaped poset: p0 < p2, p1 < p2, p1 < p3.
    Poset np = Poset::from_covers(4, {{0, 2}, {1, 2}, {1, 3}});
    IdealLattice nil = ideal_lattice_with_map(np);
    int expected = 0;
    std::vector<Bits> expected_sets;
    for (int mask = 0; mask < 16; ++mask) {
        bool closed = true;
        for (int x = 0; x < 4 && closed; ++x)
            if (mask & (1 << x))
                for (int y : np.down(x).members())
                    if (!(mask & (1 << y))) {
                        closed = false;
                        break;
                    }
        if (closed) {
            ++expected;
            Bits b(4);
            for (int x = 0; x < 4; ++x)
                if (mask & (1 << x)) b.set(x);
            expected_sets.push_back(b);
        }
    }
    REQUIRE(nil.lattice->size() == expected);
    for (const Bits& b : expected_sets)
        REQUIRE(std::count(nil.ideals.begin(), nil.ideals.end(), b) == 1);
    for (int x = 0; x < 4; ++x) REQUIRE(nil.ideals[nil.principal[x]] == np.down(x));
    // join = union of ideals
    for (int i = 0; i < nil.lattice->size(); ++i)
        for (int k = 0; k < nil.lattice->size(); ++k) {
            Bits u = nil.ideals[i];
            u.or_with(nil.ideals[k]);
            REQUIRE(nil.ideals[nil.lattice->join(i, k)] == u);
        }
}

TEST_CASE("generated subsemilattice") {
    SL b = powerset(3);
    auto [sub, incl] = generated_subsemilattice(b, {1, 2});
    REQUIRE(sub->size() == 4);
    REQUIRE(incl.is_embedding());
    REQUIRE_NOTHROW(check_morphism(sub, b, incl.map()));
    std::vector<int> img = incl.map();
    REQUIRE(img == std::vector<int>{0, 1, 2, 3});
    auto [sub2, incl2] = generated_subsemilattice(b, {3, 5});
    REQUIRE(sub2->size() == 4);  // {0, 3, 5, 7}
    REQUIRE(incl2.map() == std::vector<int>{0, 3, 5, 7});
    auto [sub3, incl3] = generated_subsemilattice(b, {});
    REQUIRE(sub3->size() == 1);
    REQUIRE(incl3.map() == std::vector<int>{0});
}

TEST_CASE("morphism validation, composition, inversion") {
    SL c3 = chain(3);
    SL b2 = powerset(2);
    REQUIRE(error_kind([&] { check_morphism(c3, b2, {1, 1, 3}); }) == "NotZeroPreserving");
    REQUIRE(error_kind([&] { check_morphism(c3, b2, {0, 1, 2}); }) == "NotJoinPreserving");
    REQUIRE(error_kind([&] { check_morphism(c3, b2, {0, 1}); }) == "IllFormed");
    REQUIRE(error_kind([&] { check_morphism(c3, b2, {0, 1, 9}); }) == "IllFormed");
    Morphism f = check_morphism(c3, b2, {0, 1, 3});
    REQUIRE(f.is_embedding());
    REQUIRE(!f.is_iso());
    REQUIRE(error_kind([&] { f.inverse(); }) == "NotIso");
    Morphism g = check_morphism(b2, powerset(2), {0, 2, 1, 3});
    REQUIRE(g.is_iso());
    Morphism gf = compose(g, f);
    REQUIRE(gf.map() == std::vector<int>{0, 2, 3});
    Morphism ginv = g.inverse();
    REQUIRE(compose(ginv, g).same_as(identity(b2)));
    REQUIRE(error_kind([&] { compose(f, g); }) == "IllFormed");
    REQUIRE(compose(identity(b2), g).same_as(g));
}

TEST_CASE("poset construction rejects bad input") {
    REQUIRE(error_kind([] { Poset::from_covers(3, {{0, 1}, {1, 2}, {2, 0}}); }) == "IllFormed");
    REQUIRE(error_kind([] { Poset::from_covers(2, {{0, 5}}); }) == "IllFormed");
    REQUIRE(error_kind([] { Poset::from_covers(2, {{1, 1}}); }) == "IllFormed");
    Poset p = Poset::from_covers(3, {{0, 1}, {1, 2}, {0, 2}});
    REQUIRE(p.leq(0, 2));
    REQUIRE(p.covers() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("free join-semilattice and size caps") {
    SL f = free_join_semilattice(2, {"a", "b"});
    REQUIRE(f->size() == 4);
    REQUIRE(f->label(0) == "{}");
    REQUIRE(f->label(3) == "{a,b}");
    REQUIRE(f->join(1, 2) == 3);
    {
        LimitsGuard g;
        limits().max_boolean_atoms = 3;
        REQUIRE(error_kind([] { free_join_semilattice(4); }) == "SizeCapExceeded");
        limits().max_semilattice_size = 6;
        REQUIRE(error_kind([] { chain(7); }) == "SizeCapExceeded");
        REQUIRE_NOTHROW(chain(6));
    }
    REQUIRE_NOTHROW(free_join_semilattice(4));
}
