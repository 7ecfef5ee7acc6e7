#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"

namespace slat {

// Global size/work caps.  Mutable so the CLI can widen or narrow them.
struct Limits {
    int max_semilattice_size = 4096;
    int max_canonical_size = 32;
    long long max_canonical_work = 500000;
    int max_boolean_atoms = 12;
    int max_subobject_ambient = 20;
    long long max_search_work = 100000000;
    int max_enumerate_size = 7;
};

inline Limits& limits() {
    static Limits l;
    return l;
}

struct SlatError : std::runtime_error {
    std::string kind, witness;
    SlatError(std::string k, std::string w)
        : std::runtime_error(k + ": " + w), kind(std::move(k)), witness(std::move(w)) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& witness) {
    throw SlatError(kind, witness);
}

class Semilattice;
using SL = std::shared_ptr<const Semilattice>;

// Finite join-semilattice with least element.  Such a structure is always a
// lattice: meets exist and are computed from the order.  Elements are dense
// indices 0..n-1; the order is derived from the join table (x <= y iff
// join(x,y) == y).
class Semilattice {
public:
    // Validates the table: idempotent, commutative, associative, zero neutral.
    static SL from_join_table(const std::vector<std::vector<int>>& table, int zero,
                              std::vector<std::string> labels = {});
    // Internal fast path: caller guarantees the table is a semilattice.
    static SL trusted(int n, std::vector<uint16_t> join, int zero,
                      std::vector<std::string> labels = {});

    int size() const { return n_; }
    int zero() const { return zero_; }
    int top() const { return top_; }
    int join(int a, int b) const { return join_[size_t(a) * n_ + b]; }
    bool leq(int a, int b) const { return join(a, b) == b; }
    bool lt(int a, int b) const { return a != b && leq(a, b); }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<uint16_t>& table() const { return join_; }

    const Bits& down(int x) const { return down_[x]; }  // {y : y <= x}
    const Bits& up(int x) const { return up_[x]; }      // {y : x <= y}

    int meet(int a, int b) const;  // greatest lower bound (always exists)
    int join_all(const std::vector<int>& xs) const;
    int join_of(const Bits& xs) const;
    int meet_all(const std::vector<int>& xs) const;  // empty meet = top

    const std::vector<std::pair<int, int>>& cover_pairs() const;  // (lower, upper)
    const std::vector<std::vector<int>>& lower_covers() const;
    const std::vector<std::vector<int>>& upper_covers() const;
    const std::vector<int>& heights() const;  // longest chain from zero
    int height(int x) const { return heights()[x]; }
    int length() const { return heights()[top_]; }
    // Elements != 0 with exactly one lower cover.
    const std::vector<int>& join_irreducibles() const;
    // Elements with exactly one upper cover (the top is never one).
    const std::vector<int>& meet_irreducibles() const;
    const std::vector<int>& atom_list() const;  // covers of zero

    uint64_t content_hash() const;
    bool same_table(const Semilattice& o) const {
        return n_ == o.n_ && zero_ == o.zero_ && join_ == o.join_;
    }

    Semilattice(const Semilattice&) = delete;
    Semilattice& operator=(const Semilattice&) = delete;

private:
    Semilattice() = default;
    static SL build(int n, std::vector<uint16_t> join, int zero, std::vector<std::string> labels);
    void ensure_derived() const;

    int n_ = 0, zero_ = 0, top_ = 0;
    std::vector<uint16_t> join_;
    std::vector<std::string> labels_;
    std::vector<Bits> down_, up_;

    mutable std::once_flag derived_once_;
    mutable std::vector<std::pair<int, int>> cover_pairs_;
    mutable std::vector<std::vector<int>> lower_covers_, upper_covers_;
    mutable std::vector<int> heights_, jirr_, mirr_, atoms_;
};

inline SL Semilattice::build(int n, std::vector<uint16_t> join, int zero,
                             std::vector<std::string> labels) {
    if (n < 1) fail("IllFormed", "semilattice must have at least one element");
    if (n > limits().max_semilattice_size) {
        std::ostringstream os;
        os << "size " << n << " exceeds cap " << limits().max_semilattice_size;
        fail("SizeCapExceeded", os.str());
    }
    auto s = std::shared_ptr<Semilattice>(new Semilattice());
    s->n_ = n;
    s->zero_ = zero;
    s->join_ = std::move(join);
    if (labels.empty()) {
        labels.reserve(n);
        for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    }
    s->labels_ = std::move(labels);
    s->down_.assign(n, Bits(n));
    s->up_.assign(n, Bits(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (s->join(x, y) == y) {
                s->down_[y].set(x);
                s->up_[x].set(y);
            }
    int t = zero;
    for (int x = 0; x < n; ++x) t = s->join(t, x);
    s->top_ = t;
    return s;
}

inline SL Semilattice::trusted(int n, std::vector<uint16_t> join, int zero,
                               std::vector<std::string> labels) {
    return build(n, std::move(join), zero, std::move(labels));
}

inline SL Semilattice::from_join_table(const std::vector<std::vector<int>>& table, int zero,
                                       std::vector<std::string> labels) {
    int n = int(table.size());
    if (n < 1) fail("IllFormed", "empty join table");
    if (n > limits().max_semilattice_size)
        fail("SizeCapExceeded", "size " + std::to_string(n) + " exceeds cap");
    if (zero < 0 || zero >= n) fail("IllFormed", "zero index out of range");
    if (!labels.empty() && int(labels.size()) != n) fail("IllFormed", "label count mismatch");
    std::vector<uint16_t> j(size_t(n) * n);
    for (int x = 0; x < n; ++x) {
        if (int(table[x].size()) != n) fail("IllFormed", "join table is not square");
        for (int y = 0; y < n; ++y) {
            int v = table[x][y];
            if (v < 0 || v >= n) fail("IllFormed", "join table entry out of range");
            j[size_t(x) * n + y] = uint16_t(v);
        }
    }
    auto jj = [&](int a, int b) { return int(j[size_t(a) * n + b]); };
    auto assoc_witness = [&](int a, int b, int c) -> std::string {
        std::ostringstream os;
        os << "join(join(" << a << "," << b << ")," << c << ")=" << jj(jj(a, b), c)
           << " but join(" << a << ",join(" << b << "," << c << "))=" << jj(a, jj(b, c));
        return os.str();
    };
    for (int x = 0; x < n; ++x)
        if (jj(x, x) != x) {
            std::ostringstream os;
            os << "join(" << x << "," << x << ")=" << jj(x, x);
            fail("NotIdempotent", os.str());
        }
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (jj(x, y) != jj(y, x)) {
                std::ostringstream os;
                os << "join(" << x << "," << y << ")=" << jj(x, y) << " but join(" << y << ","
                   << x << ")=" << jj(y, x);
                fail("NotCommutative", os.str());
            }
    // Associativity of an idempotent commutative table is equivalent to the
    // derived relation x <= y iff join(x,y)==y being a partial order in which
    // join(x,y) is the least upper bound of {x,y}.  Each structural failure
    // below pins down an explicit violating triple.
    std::vector<Bits> upr(n, Bits(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (jj(x, y) == y) upr[x].set(y);
    for (int x = 0; x < n; ++x)
        for (int y : upr[x].members()) {
            if (y == x) continue;
            if (!upr[y].subset_of(upr[x]))
                for (int z : upr[y].members())
                    if (!upr[x].test(z)) fail("NotAssociative", assoc_witness(x, y, z));
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int u = jj(x, y);
            if (!upr[x].test(u)) fail("NotAssociative", assoc_witness(x, x, y));
            if (!upr[y].test(u)) fail("NotAssociative", assoc_witness(y, y, x));
            Bits ub = upr[x];
            ub.and_with(upr[y]);
            if (!ub.subset_of(upr[u]))
                for (int z : ub.members())
                    if (!upr[u].test(z)) fail("NotAssociative", assoc_witness(x, y, z));
        }
    for (int x = 0; x < n; ++x)
        if (jj(zero, x) != x) {
            std::ostringstream os;
            os << "join(" << zero << "," << x << ")=" << jj(zero, x) << " != " << x;
            fail("ZeroNotNeutral", os.str());
        }
    return build(n, std::move(j), zero, std::move(labels));
}

inline int Semilattice::meet(int a, int b) const {
    Bits m = down_[a];
    m.and_with(down_[b]);
    return join_of(m);  // intersection of two ideals is an ideal; its join is its max
}

inline int Semilattice::join_all(const std::vector<int>& xs) const {
    int r = zero_;
    for (int x : xs) r = join(r, x);
    return r;
}

inline int Semilattice::join_of(const Bits& xs) const {
    int r = zero_;
    for (int x : xs.members()) r = join(r, x);
    return r;
}

inline int Semilattice::meet_all(const std::vector<int>& xs) const {
    if (xs.empty()) return top_;
    int r = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) r = meet(r, xs[i]);
    return r;
}

inline void Semilattice::ensure_derived() const {
    std::call_once(derived_once_, [this] {
        lower_covers_.assign(n_, {});
        upper_covers_.assign(n_, {});
        for (int x = 0; x < n_; ++x) {
            Bits sd = down_[x];
            sd.reset(x);
            for (int y : sd.members()) {
                Bits between = up_[y];
                between.and_with(sd);
                if (between.count() == 1) {  // only y itself lies in [y, x)
                    lower_covers_[x].push_back(y);
                    upper_covers_[y].push_back(x);
                    cover_pairs_.emplace_back(y, x);
                }
            }
        }
        std::sort(cover_pairs_.begin(), cover_pairs_.end());
        heights_.assign(n_, 0);
        std::vector<int> order(n_);
        for (int i = 0; i < n_; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [this](int a, int b) { return down_[a].count() < down_[b].count(); });
        for (int x : order) {
            int h = 0;
            Bits sd = down_[x];
            sd.reset(x);
            for (int y : sd.members()) h = std::max(h, heights_[y] + 1);
            heights_[x] = h;
        }
        for (int x = 0; x < n_; ++x) {
            if (x != zero_ && lower_covers_[x].size() == 1) jirr_.push_back(x);
            if (upper_covers_[x].size() == 1) mirr_.push_back(x);
            if (down_[x].count() == 2) atoms_.push_back(x);
        }
    });
}

inline const std::vector<std::pair<int, int>>& Semilattice::cover_pairs() const {
    ensure_derived();
    return cover_pairs_;
}
inline const std::vector<std::vector<int>>& Semilattice::lower_covers() const {
    ensure_derived();
    return lower_covers_;
}
inline const std::vector<std::vector<int>>& Semilattice::upper_covers() const {
    ensure_derived();
    return upper_covers_;
}
inline const std::vector<int>& Semilattice::heights() const {
    ensure_derived();
    return heights_;
}
inline const std::vector<int>& Semilattice::join_irreducibles() const {
    ensure_derived();
    return jirr_;
}
inline const std::vector<int>& Semilattice::meet_irreducibles() const {
    ensure_derived();
    return mirr_;
}
inline const std::vector<int>& Semilattice::atom_list() const {
    ensure_derived();
    return atoms_;
}

inline uint64_t Semilattice::content_hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(uint64_t(n_));
    mix(uint64_t(zero_));
    for (uint16_t v : join_) mix(v);
    return h;
}

// J(S) and M(S) as one call.
inline std::pair<std::vector<int>, std::vector<int>> irreducibles(const SL& s) {
    return {s->join_irreducibles(), s->meet_irreducibles()};
}

inline bool same_object(const SL& a, const SL& b) {
    return a == b || (a && b && a->same_table(*b));
}

// Join- and zero-preserving map between semilattices.  Injectivity already
// makes such a map an order embedding.
class Morphism {
public:
    Morphism() = default;
    static Morphism checked(SL src, SL dst, std::vector<int> map);
    static Morphism trusted(SL src, SL dst, std::vector<int> map);

    bool defined() const { return bool(src_); }
    int operator()(int x) const { return map_[x]; }
    const std::vector<int>& map() const { return map_; }
    const SL& src() const { return src_; }
    const SL& dst() const { return dst_; }
    bool injective() const { return injective_; }
    bool surjective() const { return surjective_; }
    bool is_embedding() const { return injective_; }
    bool is_iso() const { return injective_ && surjective_; }
    Morphism inverse() const;

    bool same_as(const Morphism& o) const {
        return same_object(src_, o.src_) && same_object(dst_, o.dst_) && map_ == o.map_;
    }

private:
    Morphism(SL s, SL d, std::vector<int> m)
        : src_(std::move(s)), dst_(std::move(d)), map_(std::move(m)) {
        std::vector<char> seen(dst_->size(), 0);
        injective_ = true;
        int img = 0;
        for (int v : map_) {
            if (seen[v]) injective_ = false;
            else {
                seen[v] = 1;
                ++img;
            }
        }
        surjective_ = (img == dst_->size());
    }

    SL src_, dst_;
    std::vector<int> map_;
    bool injective_ = false, surjective_ = false;
};

inline Morphism Morphism::trusted(SL src, SL dst, std::vector<int> map) {
    return Morphism(std::move(src), std::move(dst), std::move(map));
}

inline Morphism Morphism::checked(SL src, SL dst, std::vector<int> map) {
    int n = src->size(), m = dst->size();
    if (int(map.size()) != n) fail("IllFormed", "map length != source size");
    for (int v : map)
        if (v < 0 || v >= m) fail("IllFormed", "map value out of range");
    if (map[src->zero()] != dst->zero()) {
        std::ostringstream os;
        os << "map(" << src->zero() << ")=" << map[src->zero()] << " != zero " << dst->zero();
        fail("NotZeroPreserving", os.str());
    }
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            int lhs = map[src->join(x, y)];
            int rhs = dst->join(map[x], map[y]);
            if (lhs != rhs) {
                std::ostringstream os;
                os << "map(join(" << x << "," << y << "))=" << lhs << " but join(map(" << x
                   << "),map(" << y << "))=" << rhs;
                fail("NotJoinPreserving", os.str());
            }
        }
    return Morphism(std::move(src), std::move(dst), std::move(map));
}

inline Morphism check_morphism(SL src, SL dst, std::vector<int> map) {
    return Morphism::checked(std::move(src), std::move(dst), std::move(map));
}

inline Morphism Morphism::inverse() const {
    if (!is_iso()) fail("NotIso", "morphism is not bijective");
    std::vector<int> inv(dst_->size());
    for (int x = 0; x < src_->size(); ++x) inv[map_[x]] = x;
    return Morphism(dst_, src_, std::move(inv));
}

inline Morphism identity(SL s) {
    std::vector<int> m(s->size());
    for (int i = 0; i < s->size(); ++i) m[i] = i;
    return Morphism::trusted(s, s, std::move(m));
}

// g after f.
inline Morphism compose(const Morphism& g, const Morphism& f) {
    if (!same_object(f.dst(), g.src()))
        fail("IllFormed", "compose: codomain of inner != domain of outer");
    std::vector<int> m(f.src()->size());
    for (int x = 0; x < f.src()->size(); ++x) m[x] = g(f(x));
    return Morphism::trusted(f.src(), g.dst(), std::move(m));
}

// Finite poset given by strict cover-ish edges; order is the reflexive
// transitive closure.
class Poset {
public:
    static Poset from_covers(int n, const std::vector<std::pair<int, int>>& edges) {
        if (n < 0) fail("IllFormed", "negative poset size");
        Poset p;
        p.n_ = n;
        std::vector<std::vector<int>> pred(n);
        std::vector<int> outdeg(n, 0);
        for (auto& [a, b] : edges) {
            if (a < 0 || a >= n || b < 0 || b >= n) fail("IllFormed", "edge index out of range");
            if (a == b) fail("IllFormed", "self-loop in poset edges");
            pred[b].push_back(a);
            ++outdeg[a];
        }
        // Kahn toposort on reversed edges to detect cycles.
        std::vector<int> indeg(n, 0);
        for (int b = 0; b < n; ++b) indeg[b] = int(pred[b].size());
        std::vector<int> queue, topo;
        for (int i = 0; i < n; ++i)
            if (indeg[i] == 0) queue.push_back(i);
        std::vector<std::vector<int>> succ(n);
        for (int b = 0; b < n; ++b)
            for (int a : pred[b]) succ[a].push_back(b);
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            int v = queue[qi];
            topo.push_back(v);
            for (int w : succ[v])
                if (--indeg[w] == 0) queue.push_back(w);
        }
        if (int(topo.size()) != n) fail("IllFormed", "poset edges contain a cycle");
        p.down_.assign(n, Bits(n));
        for (int v : topo) {
            p.down_[v].set(v);
            for (int a : pred[v]) p.down_[v].or_with(p.down_[a]);
        }
        p.up_.assign(n, Bits(n));
        for (int x = 0; x < n; ++x)
            for (int y : p.down_[x].members()) p.up_[y].set(x);
        for (int x = 0; x < n; ++x)
            for (int y : p.down_[x].members()) {
                if (y == x) continue;
                Bits between = p.up_[y];
                between.and_with(p.down_[x]);
                if (between.count() == 2) p.covers_.emplace_back(y, x);
            }
        std::sort(p.covers_.begin(), p.covers_.end());
        return p;
    }

    int size() const { return n_; }
    bool leq(int a, int b) const { return down_[b].test(a); }
    const Bits& down(int x) const { return down_[x]; }
    const Bits& up(int x) const { return up_[x]; }
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }

private:
    int n_ = 0;
    std::vector<Bits> down_, up_;
    std::vector<std::pair<int, int>> covers_;
};

struct IdealLattice {
    SL lattice;
    std::vector<Bits> ideals;    // element index -> down-set of the poset
    std::vector<int> principal;  // poset element -> index of its principal ideal
};

// Lattice of down-sets of a finite poset, ordered by inclusion (join = union).
inline IdealLattice ideal_lattice_with_map(const Poset& p) {
    int n = p.size();
    std::vector<int> topo(n);
    for (int i = 0; i < n; ++i) topo[i] = i;
    std::sort(topo.begin(), topo.end(),
              [&](int a, int b) { return p.down(a).count() < p.down(b).count(); });
    std::vector<Bits> ideals{Bits(n)};
    for (int x : topo) {
        Bits need = p.down(x);
        need.reset(x);
        size_t cur = ideals.size();
        for (size_t i = 0; i < cur; ++i)
            if (need.subset_of(ideals[i])) {
                Bits d = ideals[i];
                d.set(x);
                ideals.push_back(d);
                if (int(ideals.size()) > limits().max_semilattice_size)
                    fail("SizeCapExceeded", "ideal lattice exceeds size cap");
            }
    }
    std::sort(ideals.begin(), ideals.end(), [](const Bits& a, const Bits& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return a < b;
    });
    int m = int(ideals.size());
    std::map<Bits, int> index;
    for (int i = 0; i < m; ++i) index[ideals[i]] = i;
    std::vector<uint16_t> join(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int k = i; k < m; ++k) {
            Bits u = ideals[i];
            u.or_with(ideals[k]);
            uint16_t v = uint16_t(index.at(u));
            join[size_t(i) * m + k] = v;
            join[size_t(k) * m + i] = v;
        }
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) {
        std::string s = "{";
        bool first = true;
        for (int e : ideals[i].members()) {
            if (!first) s += ",";
            s += "p" + std::to_string(e);
            first = false;
        }
        s += "}";
        labels[i] = s;
    }
    IdealLattice out;
    out.lattice = Semilattice::trusted(m, std::move(join), 0, std::move(labels));
    out.principal.assign(n, -1);
    for (int x = 0; x < n; ++x) out.principal[x] = index.at(p.down(x));
    out.ideals = std::move(ideals);
    return out;
}

inline SL ideal_lattice(const Poset& p) { return ideal_lattice_with_map(p).lattice; }

// Smallest subsemilattice containing zero and the generators, plus its
// inclusion into the ambient semilattice.
inline std::pair<SL, Morphism> generated_subsemilattice(const SL& s, std::vector<int> gens) {
    int n = s->size();
    Bits in(n);
    in.set(s->zero());
    for (int g : gens) {
        if (g < 0 || g >= n) fail("IllFormed", "generator index out of range");
        in.set(g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        auto mem = in.members();
        for (size_t i = 0; i < mem.size(); ++i)
            for (size_t k = i; k < mem.size(); ++k) {
                int u = s->join(mem[i], mem[k]);
                if (!in.test(u)) {
                    in.set(u);
                    grew = true;
                }
            }
    }
    std::vector<int> elems = in.members();  // ascending
    int m = int(elems.size());
    std::vector<int> pos(n, -1);
    for (int i = 0; i < m; ++i) pos[elems[i]] = i;
    std::vector<uint16_t> join(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) join[size_t(i) * m + k] = uint16_t(pos[s->join(elems[i], elems[k])]);
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = s->label(elems[i]);
    SL sub = Semilattice::trusted(m, std::move(join), pos[s->zero()], std::move(labels));
    return {sub, Morphism::trusted(sub, s, elems)};
}

// Free join-semilattice with zero on k generators: all subsets of the
// generator set under union.  Element index is the subset bitmask, so
// generator i sits at index 1<<i.
inline SL free_join_semilattice(int k, const std::vector<std::string>& atom_names = {}) {
    if (k < 0) fail("IllFormed", "negative generator count");
    if (k > limits().max_boolean_atoms)
        fail("SizeCapExceeded",
             "free semilattice on " + std::to_string(k) + " generators exceeds atom cap");
    int n = 1 << k;
    if (n > limits().max_semilattice_size)
        fail("SizeCapExceeded", "free semilattice size exceeds cap");
    std::vector<uint16_t> join(size_t(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) join[size_t(x) * n + y] = uint16_t(x | y);
    std::vector<std::string> labels(n);
    for (int x = 0; x < n; ++x) {
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < k; ++i)
            if (x & (1 << i)) {
                if (!first) s += ",";
                s += atom_names.empty() ? "g" + std::to_string(i) : atom_names[i];
                first = false;
            }
        s += "}";
        labels[x] = s;
    }
    return Semilattice::trusted(n, std::move(join), 0, std::move(labels));
}

inline SL powerset(int k) { return free_join_semilattice(k); }

inline SL chain(int n) {
    if (n < 1) fail("IllFormed", "chain needs at least one element");
    std::vector<uint16_t> join(size_t(n) * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) join[size_t(x) * n + y] = uint16_t(std::max(x, y));
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "c" + std::to_string(i);
    return Semilattice::trusted(n, std::move(join), 0, std::move(labels));
}

}  // namespace slat
