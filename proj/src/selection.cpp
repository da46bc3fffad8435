#include "rlab/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rlab/errors.hpp"
#include "rlab/rng.hpp"

namespace rlab {

Strategy strategy_from_string(const std::string& s) {
    if (s == "closest") return Strategy::Closest;
    if (s == "farthest") return Strategy::Farthest;
    if (s == "increment") return Strategy::Increment;
    if (s == "random") return Strategy::Random;
    if (s == "sparsest") return Strategy::Sparsest;
    if (s == "densest") return Strategy::Densest;
    throw UsageError("unknown strategy '" + s + "'");
}

std::string strategy_to_string(Strategy s) {
    switch (s) {
        case Strategy::Closest: return "closest";
        case Strategy::Farthest: return "farthest";
        case Strategy::Increment: return "increment";
        case Strategy::Random: return "random";
        case Strategy::Sparsest: return "sparsest";
        case Strategy::Densest: return "densest";
    }
    return "?";
}

double hamming(const ClassificationPattern& a, const ClassificationPattern& b) {
    if (a.bits.size() != b.bits.size()) throw UsageError("hamming: length mismatch");
    return static_cast<double>(BitVec::hamming(a.bits, b.bits)) /
           static_cast<double>(a.bits.size());
}

EnsembleSelection select(const RashomonSet& set, const BitDataset& data, Strategy strategy,
                         std::size_t m, std::uint64_t seed, FarthestAgg agg) {
    const std::size_t N = set.size();
    if (m < 1 || m > N) throw UsageError("select: m out of range");

    const std::vector<ClassificationPattern> patterns =
        classification_patterns(set.trees, data);
    std::vector<std::string> keys(N);
    std::vector<double> dist_opt(N);
    for (std::size_t i = 0; i < N; ++i) {
        keys[i] = canonical_key(set.trees[i]);
        dist_opt[i] = hamming(patterns[i], patterns[set.optimal_index]);
    }

    // non-optimal indices sorted by (distance to optimal, key)
    auto by_distance = [&]() {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < N; ++i)
            if (i != set.optimal_index) order.push_back(i);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (dist_opt[a] != dist_opt[b]) return dist_opt[a] < dist_opt[b];
            return keys[a] < keys[b];
        });
        return order;
    };

    EnsembleSelection sel;
    sel.strategy = strategy;
    sel.seed = seed;

    switch (strategy) {
        case Strategy::Closest: {
            sel.indices.push_back(set.optimal_index);
            const std::vector<std::size_t> order = by_distance();
            for (std::size_t i = 0; i + 1 < m; ++i) sel.indices.push_back(order[i]);
            break;
        }
        case Strategy::Farthest: {
            sel.indices.push_back(set.optimal_index);
            std::vector<bool> taken(N, false);
            taken[set.optimal_index] = true;
            // running min (or sum) of distances to the selected prefix
            std::vector<double> score(N, std::numeric_limits<double>::infinity());
            if (agg == FarthestAgg::Mean) std::fill(score.begin(), score.end(), 0.0);
            std::size_t last = set.optimal_index;
            while (sel.indices.size() < m) {
                std::size_t best = N;
                double best_score = -1;
                for (std::size_t i = 0; i < N; ++i) {
                    if (taken[i]) continue;
                    const double dist = hamming(patterns[i], patterns[last]);
                    if (agg == FarthestAgg::Min)
                        score[i] = std::min(score[i], dist);
                    else
                        score[i] += dist;
                    // pattern distances are exact multiples of 1/n, so ties are exact
                    if (best == N || score[i] > best_score ||
                        (score[i] == best_score && keys[i] < keys[best])) {
                        best = i;
                        best_score = score[i];
                    }
                }
                taken[best] = true;
                sel.indices.push_back(best);
                last = best;
            }
            break;
        }
        case Strategy::Increment: {
            std::vector<std::size_t> ranked;  // rank 1 = optimal
            ranked.push_back(set.optimal_index);
            for (std::size_t i : by_distance()) ranked.push_back(i);
            if (m == 1) {
                sel.indices.push_back(ranked[0]);
            } else {
                for (std::size_t k = 1; k <= m; ++k) {
                    const std::size_t rank = 1 + (k - 1) * (N - 1) / (m - 1);
                    sel.indices.push_back(ranked[rank - 1]);
                }
            }
            break;
        }
        case Strategy::Random: {
            sel.indices.push_back(set.optimal_index);
            std::vector<std::size_t> others;
            for (std::size_t i = 0; i < N; ++i)
                if (i != set.optimal_index) others.push_back(i);
            Rng rng(derive_seed(seed, "select-random"));
            const std::vector<std::size_t> picks =
                rng.sample_without_replacement(others.size(), m - 1);
            for (std::size_t p : picks) sel.indices.push_back(others[p]);
            break;
        }
        case Strategy::Sparsest:
        case Strategy::Densest: {
            std::vector<std::size_t> order(N);
            std::iota(order.begin(), order.end(), std::size_t{0});
            const bool asc = strategy == Strategy::Sparsest;
            std::vector<int> leaves(N);
            for (std::size_t i = 0; i < N; ++i) leaves[i] = leaf_count(set.trees[i]);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (leaves[a] != leaves[b]) return asc ? leaves[a] < leaves[b]
                                                       : leaves[a] > leaves[b];
                return keys[a] < keys[b];
            });
            for (std::size_t i = 0; i < m; ++i) sel.indices.push_back(order[i]);
            break;
        }
    }

    for (std::size_t i : sel.indices) sel.distances_to_optimal.push_back(dist_opt[i]);
    return sel;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n != ys.size()) throw UsageError("spearman: length mismatch");
    if (n < 2) throw UsageError("spearman: need at least 2 points");

    auto midranks = [&](const std::vector<double>& v) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> rank(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
            const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
            i = j + 1;
        }
        return rank;
    };

    const std::vector<double> rx = midranks(xs);
    const std::vector<double> ry = midranks(ys);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0)
        throw UsageError("spearman: undefined for constant input");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace rlab
