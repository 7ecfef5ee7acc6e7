#include <catch2/catch_amalgamated.hpp>

#include <slat/classify.hpp>
#include <slat/enumerate.hpp>

#include "helpers.hpp"

using namespace slat;
using namespace testutil;

namespace {

// c <= a v b implies c = x v y for some x <= a, y <= b.
bool oracle_distributive_def(const SL& s) {
    int n = s->size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int ab = s->join(a, b);
            for (int c = 0; c < n; ++c) {
                if (!s->leq(c, ab)) continue;
                bool found = false;
                for (int x = 0; x < n && !found; ++x) {
                    if (!s->leq(x, a)) continue;
                    for (int y = 0; y < n; ++y)
                        if (s->leq(y, b) && s->join(x, y) == c) {
                            found = true;
                            break;
                        }
                }
                if (!found) return false;
            }
        }
    return true;
}

bool oracle_distributive_meetlaw(const SL& s) {
    int n = s->size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (s->meet(a, s->join(b, c)) != s->join(s->meet(a, b), s->meet(a, c)))
                    return false;
    return true;
}

bool oracle_atomistic_subsets(const SL& s) {
    const auto& atoms = s->atom_list();
    int k = int(atoms.size());
    std::vector<char> reachable(s->size(), 0);
    for (int mask = 0; mask < (1 << k); ++mask) {
        int r = s->zero();
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) r = s->join(r, atoms[i]);
        reachable[r] = 1;
    }
    for (int x = 0; x < s->size(); ++x)
        if (!reachable[x]) return false;
    return true;
}

bool oracle_simple_allpairs(const SL& s) {
    if (s->size() < 2) return false;
    for (int a = 0; a < s->size(); ++a)
        for (int b = a + 1; b < s->size(); ++b)
            if (congruence_closure(*s, {{a, b}}, true).size() != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("classification of the standard examples") {
    Classification cm3 = classify(m3());
    REQUIRE(!cm3.distributive);
    REQUIRE(cm3.atomistic);
    REQUIRE(!cm3.boolean);
    REQUIRE(cm3.lattice_simple);

    Classification cn5 = classify(n5());
    REQUIRE(!cn5.distributive);
    REQUIRE(!cn5.atomistic);
    REQUIRE(!cn5.boolean);
    REQUIRE(!cn5.lattice_simple);

    for (int k = 0; k <= 3; ++k) {
        Classification cb = classify(powerset(k));
        REQUIRE(cb.distributive);
        REQUIRE(cb.atomistic);
        REQUIRE(cb.boolean);
        REQUIRE(cb.lattice_simple == (k == 1));
    }

    Classification cc = classify(chain(4));
    REQUIRE(cc.distributive);
    REQUIRE(!cc.atomistic);
    REQUIRE(!cc.boolean);
    REQUIRE(!cc.lattice_simple);
    REQUIRE(classify(chain(2)).lattice_simple);
    REQUIRE(!classify(chain(1)).lattice_simple);
    REQUIRE(classify(chain(1)).boolean);
}

TEST_CASE("classification agrees with definitional oracles over the corpus") {
    std::vector<SL> all{m3(), n5()};
    for (int n = 1; n <= 6; ++n)
        for (const SL& s : enumerate_semilattices(n)) all.push_back(s);
    for (const SL& s : all) {
        bool dist = is_distributive(*s);
        REQUIRE(dist == oracle_distributive_def(s));
        REQUIRE(dist == oracle_distributive_meetlaw(s));
        REQUIRE(is_atomistic(*s) == oracle_atomistic_subsets(s));
        REQUIRE(is_lattice_simple(*s) == oracle_simple_allpairs(s));
        Classification c = classify(s);
        REQUIRE(c.boolean ==
                (c.distributive && c.atomistic && s->size() == (1 << s->atom_list().size())));
        if (c.boolean) {
            // a boolean member of the corpus must be a powerset
            int k = int(s->atom_list().size());
            SL b = powerset(k);
            REQUIRE(s->size() == b->size());
        }
    }
}

TEST_CASE("join congruences are weaker than lattice congruences") {
    SL d = m3();
    Partition pj = join_congruence_generated(d, {{0, 1}});
    REQUIRE(pj.size() == 2);
    REQUIRE(pj.blocks[0] == std::vector<int>{0, 1});
    REQUIRE(pj.blocks[1] == std::vector<int>{2, 3, 4});
    Partition pl = lattice_congruence_generated(d, {{0, 1}});
    REQUIRE(pl.size() == 1);
}

TEST_CASE("quotients") {
    SL c3 = chain(3);
    Partition p = join_congruence_generated(c3, {{1, 2}});
    auto [q, proj] = quotient(c3, p);
    REQUIRE(q->size() == 2);
    REQUIRE(proj.map() == std::vector<int>{0, 1, 1});
    REQUIRE_NOTHROW(check_morphism(c3, q, proj.map()));

    Partition bad;
    bad.block_of = {0, 1, 0};
    bad.blocks = {{0, 2}, {1}};
    REQUIRE(error_kind([&] { quotient(c3, bad); }) == "NotACongruence");

    SL d = m3();
    auto [q2, proj2] = quotient(d, join_congruence_generated(d, {{0, 1}}));
    REQUIRE(q2->size() == 2);
    REQUIRE_NOTHROW(check_morphism(d, q2, proj2.map()));
    // the join quotient of m3 by collapsing an atom is the two-chain
    REQUIRE(q2->leq(0, 1));
}

TEST_CASE("congruence closure propagates joins stepwise") {
    SL c4 = chain(4);
    Partition p = join_congruence_generated(c4, {{0, 1}});
    REQUIRE(p.size() == 3);  // {0,1},{2},{3}
    Partition p2 = join_congruence_generated(c4, {{0, 3}});
    REQUIRE(p2.size() == 1);  // join with anything collapses the whole chain
    Partition p3 = lattice_congruence_generated(c4, {{1, 2}});
    REQUIRE(p3.blocks[1] == std::vector<int>{1, 2});
    REQUIRE(p3.size() == 3);
}
