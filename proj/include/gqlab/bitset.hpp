#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace gqlab {

// Fixed-capacity bit set used for membership tests over element or point
// indices. Kept minimal on purpose; capacity is set once at construction.
class bitset {
  public:
    bitset() = default;
    explicit bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int capacity() const { return n_; }

    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void clear() { std::fill(w_.begin(), w_.end(), uint64_t(0)); }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    int count_and(const bitset& o) const {
        int c = 0;
        for (size_t k = 0; k < w_.size(); ++k) c += __builtin_popcountll(w_[k] & o.w_[k]);
        return c;
    }

    bitset& operator&=(const bitset& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    bitset& operator|=(const bitset& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }

    bool operator==(const bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

    // Lowest set index in this & other, or -1.
    int first_and(const bitset& o) const {
        for (size_t k = 0; k < w_.size(); ++k) {
            uint64_t w = w_[k] & o.w_[k];
            if (w) return int(k * 64 + __builtin_ctzll(w));
        }
        return -1;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (size_t k = 0; k < w_.size(); ++k) {
            uint64_t w = w_[k];
            while (w) {
                out.push_back(int(k * 64 + __builtin_ctzll(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    static bitset of(int n, const std::vector<int>& members) {
        bitset b(n);
        for (int m : members) b.set(m);
        return b;
    }

  private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace gqlab
