#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlab/rashomon.hpp"

namespace rlab {

enum class Strategy { Closest, Farthest, Increment, Random, Sparsest, Densest };

enum class FarthestAgg { Min, Mean };

Strategy strategy_from_string(const std::string& s);
std::string strategy_to_string(Strategy s);

// Normalized bit disagreement between two classification patterns.
double hamming(const ClassificationPattern& a, const ClassificationPattern& b);

struct EnsembleSelection {
    std::vector<std::size_t> indices;  // into the RashomonSet, selection order
    Strategy strategy = Strategy::Increment;
    std::uint64_t seed = 0;
    std::vector<double> distances_to_optimal;  // aligned with indices
};

// The six ensemble-selection strategies. closest/farthest/increment/random
// place the optimal tree first; sparsest/densest order purely by leaf count.
// All ties break by canonical_key.
EnsembleSelection select(const RashomonSet& set, const BitDataset& data, Strategy strategy,
                         std::size_t m, std::uint64_t seed,
                         FarthestAgg agg = FarthestAgg::Min);

// Pearson correlation of mid-ranks (average ranks on ties).
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace rlab
