#include "rlab/bitvec.hpp"

#include <bit>

#include "rlab/errors.hpp"
#include "rlab/rng.hpp"

namespace rlab {

BitVec::BitVec(std::size_t n, bool value) : n_(n), w_((n + 63) / 64, 0) {
    if (value) {
        for (auto& w : w_) w = ~0ULL;
        if (n_ & 63) w_.back() &= (1ULL << (n_ & 63)) - 1;
    }
}

std::size_t BitVec::count() const {
    std::size_t s = 0;
    for (std::uint64_t w : w_) s += static_cast<std::size_t>(std::popcount(w));
    return s;
}

bool BitVec::any() const {
    for (std::uint64_t w : w_)
        if (w) return true;
    return false;
}

std::uint64_t BitVec::hash() const {
    std::uint64_t h = fnv1a64(&n_, sizeof(n_));
    if (!w_.empty()) h = fnv1a64(w_.data(), w_.size() * sizeof(std::uint64_t), h);
    return h;
}

std::size_t BitVec::hamming(const BitVec& a, const BitVec& b) {
    if (a.n_ != b.n_) throw UsageError("BitVec::hamming: length mismatch");
    std::size_t s = 0;
    for (std::size_t i = 0; i < a.w_.size(); ++i)
        s += static_cast<std::size_t>(std::popcount(a.w_[i] ^ b.w_[i]));
    return s;
}

BitVec BitVec::and_of(const BitVec& a, const BitVec& b) {
    if (a.n_ != b.n_) throw UsageError("BitVec::and_of: length mismatch");
    BitVec r(a.n_);
    for (std::size_t i = 0; i < a.w_.size(); ++i) r.w_[i] = a.w_[i] & b.w_[i];
    return r;
}

BitVec BitVec::and_not(const BitVec& a, const BitVec& b) {
    if (a.n_ != b.n_) throw UsageError("BitVec::and_not: length mismatch");
    BitVec r(a.n_);
    for (std::size_t i = 0; i < a.w_.size(); ++i) r.w_[i] = a.w_[i] & ~b.w_[i];
    return r;
}

std::size_t BitVec::count_and(const BitVec& a, const BitVec& b) {
    if (a.n_ != b.n_) throw UsageError("BitVec::count_and: length mismatch");
    std::size_t s = 0;
    for (std::size_t i = 0; i < a.w_.size(); ++i)
        s += static_cast<std::size_t>(std::popcount(a.w_[i] & b.w_[i]));
    return s;
}

}  // namespace rlab
