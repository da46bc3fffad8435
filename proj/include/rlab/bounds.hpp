#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlab/tree.hpp"

namespace rlab {

struct TreeCountBound {
    std::string count;  // exact big-integer value, decimal
    double log2 = 0;
};

// Catalan(leaves-1) * (2d)^(leaves-1) * 2^leaves, exactly.
TreeCountBound tree_count_bound(int leaves, int d);

struct MiEstimate {
    double entropy_bits = 0;  // plug-in entropy of the canonical_key law
    double log2_bound = 0;    // log2 of the counting bound at the max leaf count
    int max_leaves = 0;
};

// Entropy plug-in upper-bound demonstration over trees trained on resampled
// datasets; not a consistent MI estimator.
MiEstimate mi_upper_estimate(const std::vector<Tree>& trained, int d);

// exp(-k KL(1/2 || p)) for independent ensemble members, k odd.
double chernoff_ensemble_bound(double p, int k);

// p(1-p)[1+(k-1)rho] / (p(1-p)[1+(k-1)rho] + k(1/2-p)^2).
double cantelli_ensemble_bound(double p, int k, double rho);

struct McEstimate {
    double estimate = 0;
    double stderr_ = 0;
    std::size_t trials = 0;
};

// Monte Carlo majority-failure probability for correlated Bernoulli errors.
// With probability rho all members copy one Bernoulli(p) draw, otherwise they
// are i.i.d.; the mixture realizes pairwise correlation exactly rho.
McEstimate majority_failure_mc(double p, int k, double rho, std::size_t trials,
                               std::uint64_t seed);
McEstimate majority_failure_mc_serial(double p, int k, double rho, std::size_t trials,
                                      std::uint64_t seed);

}  // namespace rlab
