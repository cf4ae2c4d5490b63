#ifndef IDNC_TYPES_HPP_
#define IDNC_TYPES_HPP_

#include <algorithm>
#include <cstdint>
#include <vector>

namespace idnc {

using DeviceId = int;
using FileId = int;

/// Fixed-capacity bitset over device or file ids (capacity set at runtime).
/// Kept deliberately small: the hot paths are intersection tests between
/// coverage zones, so everything is word-parallel.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    bool any() const {
        for (uint64_t w : w_)
            if (w) return true;
        return false;
    }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += __builtin_popcountll(w);
        return c;
    }

    Bitset& operator|=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    friend bool intersects(const Bitset& a, const Bitset& b) {
        for (size_t i = 0; i < a.w_.size(); ++i)
            if (a.w_[i] & b.w_[i]) return true;
        return false;
    }

    /// True iff a & b & c is nonempty.
    friend bool intersects3(const Bitset& a, const Bitset& b, const Bitset& c) {
        for (size_t i = 0; i < a.w_.size(); ++i)
            if (a.w_[i] & b.w_[i] & c.w_[i]) return true;
        return false;
    }

    friend bool is_subset(const Bitset& sub, const Bitset& super) {
        for (size_t i = 0; i < sub.w_.size(); ++i)
            if (sub.w_[i] & ~super.w_[i]) return false;
        return true;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int i = 0; i < n_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

  private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

/// Sorted-unique insertion helper for small id vectors.
inline void insert_sorted(std::vector<int>& v, int x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
}

inline bool contains(const std::vector<int>& sorted, int x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace idnc

#endif  // IDNC_TYPES_HPP_
