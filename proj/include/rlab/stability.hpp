#pragma once

#include <cstdint>
#include <vector>

#include "rlab/dataset.hpp"
#include "rlab/rashomon.hpp"

namespace rlab {

// |keys(a) ∩ keys(b)| / |a| by canonical_key identity.
double containment_fraction(const RashomonSet& a, const RashomonSet& b);

struct NeighborReport {
    std::size_t k = 0;
    double epsilon = 0;
    double epsilon_relaxed = 0;  // epsilon + 2k/n
    double frac_forward = 0;     // R_S(eps) retained in R_S'(eps + 2k/n)
    double frac_backward = 0;    // R_S'(eps) retained in R_S(eps + 2k/n)
    double frac_unrelaxed = 0;   // R_S(eps) retained in R_S'(eps)
    std::size_t size_s = 0;
    std::size_t size_s_relaxed = 0;
    std::size_t size_sp = 0;
    std::size_t size_sp_relaxed = 0;
};

// Perturbs k samples, re-enumerates, and measures containment at the relaxed
// tolerance epsilon + 2k/n (provably 1.0 both ways) and at the original
// epsilon for comparison.
NeighborReport neighbor_containment_check(const BitDataset& data, std::size_t k,
                                          const ObjectiveConfig& config,
                                          std::uint64_t seed);

// Misclassification probability under the discrete law.
double true_risk(const Tree& f, const DiscreteDistribution& dist);

struct ShiftReport {
    double kl = 0;
    double kl_threshold = 0;  // epsilon^2 / 8
    bool condition_holds = false;
    std::size_t size_d1 = 0;  // |R_D(eps/2)|
    std::size_t size_d2 = 0;  // |R_D'(eps)|
    double containment = 0;   // fraction of R_D(eps/2) inside R_D'(eps)
};

// Exact true-Rashomon containment under a small covariate shift: if
// KL(d1 || d2) <= eps^2/8 and the conditionals agree, every model of
// R_{d1}(eps/2) must lie in R_{d2}(eps). Model space: all depth-bounded
// skeletons with all leaf labelings, lambda forced to 0. Capped at d <= 4,
// depth <= 3 so the space is exactly enumerable.
ShiftReport distribution_shift_check(const DiscreteDistribution& d1,
                                     const DiscreteDistribution& d2, double epsilon,
                                     const ObjectiveConfig& config);

}  // namespace rlab
