#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rlab {

// Fixed-length packed bit vector. Backs feature columns, label vectors,
// classification patterns, and enumeration supports, where XOR/AND popcounts
// dominate runtime.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n, bool value = false);

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1ULL;
    }

    void set(std::size_t i, bool value) {
        const std::uint64_t mask = 1ULL << (i & 63);
        if (value)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

    std::size_t count() const;
    bool any() const;

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    std::uint64_t hash() const;

    static std::size_t hamming(const BitVec& a, const BitVec& b);
    static BitVec and_of(const BitVec& a, const BitVec& b);
    static BitVec and_not(const BitVec& a, const BitVec& b);  // a & ~b
    static std::size_t count_and(const BitVec& a, const BitVec& b);

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace rlab
