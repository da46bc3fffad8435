#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlab/dataset.hpp"
#include "rlab/tree.hpp"

namespace rlab {

struct ObjectiveConfig {
    double lambda = 0.01;      // per-leaf penalty
    double epsilon = 0.03;     // absolute adder over the optimal objective
    int depth_budget = 3;
    std::vector<int> feature_subset;  // empty = all columns

    void validate() const;
};

// Ordered collection of near-optimal trees. Sorted by (objective,
// canonical_key); optimal_index always lands on a minimum objective.
struct RashomonSet {
    std::vector<Tree> trees;
    std::vector<double> objectives;
    std::size_t optimal_index = 0;
    ObjectiveConfig config;
    std::string dataset_fingerprint;

    std::size_t size() const { return trees.size(); }
    const Tree& optimal() const { return trees[optimal_index]; }
    double optimal_objective() const { return objectives[optimal_index]; }
};

// misclassification rate + lambda * leaf count
double objective(const Tree& t, const BitDataset& data, double lambda);

// Exact enumeration of every structurally distinct depth-bounded tree whose
// objective is within epsilon of the optimum. Tolerance 1e-12 on membership.
RashomonSet enumerate_rashomon(const BitDataset& data, const ObjectiveConfig& config);

// Optimal objective only (no model extraction); used by --epsilon-relative.
double optimal_objective(const BitDataset& data, const ObjectiveConfig& config);

// Test oracle: every structurally distinct skeleton respecting the depth
// budget and no-repeat-feature-per-path invariant. Guarded to d <= 4,
// depth <= 3.
std::vector<Tree> brute_force_trees(int d, int depth_budget);

}  // namespace rlab
