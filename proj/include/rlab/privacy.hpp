#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rlab/dataset.hpp"
#include "rlab/rashomon.hpp"
#include "rlab/selection.hpp"

namespace rlab {

// KL(Bernoulli(p) || Bernoulli(q)) in nats; 0 log 0 = 0, q must be in (0,1).
double kl_bernoulli(double p, double q);

// Upper bound on E[KL(p || q_Pi)] for an m-of-N ensemble sampled without
// replacement: ((p-mu)^2 + (N-m) sigma^2 / ((N-1) m)) / (delta (1-delta)).
double kl_bound(double p, double mu, double sigma2, std::size_t n_total, std::size_t m,
                double delta);

struct KlSimResult {
    std::size_t m = 0;
    double mean_kl = 0;   // trial average of the mass-weighted pointwise KL
    double bound = 0;     // theorem bound, mass-weighted over atoms
    double stderr_ = 0;   // standard error of mean_kl across trials
    std::size_t trials = 0;
};

// Per-atom statistics for one ensemble size; test-facing granularity.
struct KlPointwise {
    std::vector<double> mean_kl;  // per atom, averaged over trials
    std::vector<double> stderr_;
    std::vector<double> bound;
};

KlPointwise ensemble_kl_pointwise(const RashomonSet& set, const DiscreteDistribution& dist,
                                  std::size_t m, std::size_t trials, std::uint64_t seed,
                                  double delta = 0.05);

std::vector<KlSimResult> ensemble_kl_sim(const RashomonSet& set,
                                         const DiscreteDistribution& dist,
                                         const std::vector<std::size_t>& sizes,
                                         std::size_t trials, std::uint64_t seed,
                                         double delta = 0.05);
std::vector<KlSimResult> ensemble_kl_sim_serial(const RashomonSet& set,
                                                const DiscreteDistribution& dist,
                                                const std::vector<std::size_t>& sizes,
                                                std::size_t trials, std::uint64_t seed,
                                                double delta = 0.05);

// What the reconstruction adversary sees: per released tree, its skeleton and
// the ordered per-leaf class counts (preorder leaf order).
struct LeafCountSummary {
    struct PerTree {
        Tree tree;
        std::vector<std::array<std::uint32_t, 2>> leaf_counts;
    };
    std::vector<PerTree> trees;
    std::size_t n = 0;
};

LeafCountSummary release_leaf_counts(const EnsembleSelection& selection,
                                     const RashomonSet& set, const BitDataset& data);

// Routes `candidate` through every released tree and checks each leaf count.
bool verify_leaf_counts(const LeafCountSummary& summary, const BitDataset& candidate);

struct ReconstructionResult {
    BitDataset candidate;
    double error = -1;  // matched error vs truth when supplied
    std::size_t solver_nodes = 0;
    bool exhausted = false;
};

// Exact-count backtracking reconstruction. Slots are filled in index order
// with candidate (row, label) values tried in a seeded shuffled order;
// row-exchange symmetry is broken by keeping slots in non-decreasing value
// order. Throws DataError on an infeasible summary; budget exhaustion instead
// returns the best partial with exhausted = true.
ReconstructionResult reconstruct(const LeafCountSummary& summary, std::size_t n,
                                 std::size_t d, std::size_t budget_nodes,
                                 std::uint64_t seed, const BitDataset* truth = nullptr);

// Minimum over row bijections of the mean per-bit disagreement between
// matched feature rows (labels excluded). Exact assignment, n <= 30.
double matched_error(const BitDataset& candidate, const BitDataset& truth);
double matched_error_serial(const BitDataset& candidate, const BitDataset& truth);

// The conservative baseline: i.i.d. uniform feature guesses.
BitDataset random_rows(std::size_t n, std::size_t d, std::uint64_t seed);

}  // namespace rlab
