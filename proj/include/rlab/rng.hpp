#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rlab {

// FNV-1a over raw bytes. Doubles as the dataset fingerprint hash.
std::uint64_t fnv1a64(const void* data, std::size_t len,
                      std::uint64_t basis = 0xcbf29ce484222325ULL);

// Splittable seeding: every stochastic component receives a child seed
// derived from (base, purpose tag, index) so streams never collide and
// results stay independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::uint64_t index = 0);

// mt19937_64 with explicit draw mappings. std::uniform_int_distribution is
// not pinned by the standard, so the integer/real mappings are hand-rolled.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, bound), bound > 0; rejection sampling, unbiased
    std::uint64_t uniform_u64(std::uint64_t bound);

    std::size_t uniform_index(std::size_t bound) {
        return static_cast<std::size_t>(uniform_u64(bound));
    }

    // [0, 1) with 53 random bits
    double uniform_real();

    bool bernoulli(double p) { return uniform_real() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), order of selection preserved
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::mt19937_64 eng_;
};

}  // namespace rlab
