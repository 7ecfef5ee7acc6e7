#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace slat {

// Fixed-width dynamic bitset sized at construction.
class Bits {
public:
    Bits() : nbits_(0) {}
    explicit Bits(int nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    int size_bits() const { return nbits_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

    void or_with(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    }
    void and_with(const Bits& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    }

    bool subset_of(const Bits& o) const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (uint64_t x : w_) c += __builtin_popcountll(x);
        return c;
    }

    bool any() const {
        for (uint64_t x : w_) if (x) return true;
        return false;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for (size_t k = 0; k < w_.size(); ++k) {
            uint64_t x = w_[k];
            while (x) {
                out.push_back(int(k) * 64 + __builtin_ctzll(x));
                x &= x - 1;
            }
        }
        return out;
    }

    bool operator==(const Bits& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const Bits& o) const { return !(*this == o); }
    bool operator<(const Bits& o) const { return w_ < o.w_; }

    size_t hash() const {
        size_t h = 1469598103934665603ull;
        for (uint64_t x : w_) {
            h ^= size_t(x);
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    int nbits_;
    std::vector<uint64_t> w_;
};

struct BitsHash {
    size_t operator()(const Bits& b) const { return b.hash(); }
};

} // namespace slat
