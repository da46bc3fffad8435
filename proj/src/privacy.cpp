#include "rlab/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rlab/errors.hpp"
#include "rlab/matching.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

double kl_bernoulli(double p, double q) {
    if (q <= 0 || q >= 1) throw UsageError("kl_bernoulli: q must be in (0,1)");
    if (p < 0 || p > 1) throw UsageError("kl_bernoulli: p must be in [0,1]");
    double s = 0;
    if (p > 0) s += p * std::log(p / q);
    if (p < 1) s += (1 - p) * std::log((1 - p) / (1 - q));
    return s;
}

double kl_bound(double p, double mu, double sigma2, std::size_t n_total, std::size_t m,
                double delta) {
    if (n_total < 2) throw UsageError("kl_bound: n_total must be >= 2");
    if (m < 1 || m > n_total) throw UsageError("kl_bound: m out of range");
    if (delta <= 0 || delta > 0.5) throw UsageError("kl_bound: delta must be in (0, 0.5]");
    const double var_term =
        m == n_total ? 0.0
                     : static_cast<double>(n_total - m) * sigma2 /
                           (static_cast<double>(n_total - 1) * static_cast<double>(m));
    return ((p - mu) * (p - mu) + var_term) / (delta * (1 - delta));
}

namespace {

BitVec atom_bits(std::size_t atom, int dims) {
    BitVec x(static_cast<std::size_t>(dims));
    for (int j = 0; j < dims; ++j)
        if ((atom >> j) & 1) x.set(static_cast<std::size_t>(j), true);
    return x;
}

struct KlCore {
    std::vector<std::vector<double>> kl;  // [trial][atom]
    std::vector<double> bound;            // [atom]
};

// model-by-atom soft predictions plus the full-set mean/variance, shared by
// every ensemble size
struct KlSetup {
    std::vector<std::vector<double>> soft;  // [model][atom]
    std::vector<double> mu, sigma2;         // [atom]
};

KlSetup kl_setup(const RashomonSet& set, const DiscreteDistribution& dist, bool parallel) {
    dist.validate();
    const std::size_t N = set.size();
    if (N == 0) throw UsageError("ensemble_kl_sim: empty Rashomon set");
    const std::size_t atoms = dist.atoms();

    KlSetup setup;
    setup.soft.assign(N, std::vector<double>(atoms));
    for (std::size_t i = 0; i < N; ++i)
        if (max_feature_index(set.trees[i]) >= dist.dims)
            throw UsageError("ensemble_kl_sim: tree width exceeds distribution dims");
    auto fill = [&](std::size_t i) {
        for (std::size_t a = 0; a < atoms; ++a)
            setup.soft[i][a] = predict_soft(set.trees[i], atom_bits(a, dist.dims));
    };
    if (parallel)
        parallel_for(N, fill);
    else
        for (std::size_t i = 0; i < N; ++i) fill(i);

    setup.mu.assign(atoms, 0.0);
    setup.sigma2.assign(atoms, 0.0);
    for (std::size_t a = 0; a < atoms; ++a) {
        double mu = 0;
        for (std::size_t i = 0; i < N; ++i) mu += setup.soft[i][a];
        mu /= static_cast<double>(N);
        double sigma2 = 0;
        for (std::size_t i = 0; i < N; ++i)
            sigma2 += (setup.soft[i][a] - mu) * (setup.soft[i][a] - mu);
        setup.mu[a] = mu;
        setup.sigma2[a] = sigma2 / static_cast<double>(N);
    }
    return setup;
}

KlCore kl_core(const KlSetup& setup, const DiscreteDistribution& dist, std::size_t N,
               std::size_t m, std::size_t trials, std::uint64_t seed, double delta,
               bool parallel) {
    if (m < 1 || m > N) throw UsageError("ensemble_kl_sim: m out of range");
    if (trials < 1) throw UsageError("ensemble_kl_sim: trials must be >= 1");
    if (delta <= 0 || delta > 0.5) throw UsageError("ensemble_kl_sim: bad delta");
    if (m == N) trials = 1;  // only one possible ensemble, no sampling randomness

    const std::size_t atoms = dist.atoms();
    KlCore core;
    core.bound.resize(atoms);
    for (std::size_t a = 0; a < atoms; ++a) {
        const double p = dist.cond[a];
        if (N == 1)  // singleton set: no sampling variance by construction
            core.bound[a] = (p - setup.mu[a]) * (p - setup.mu[a]) / (delta * (1 - delta));
        else
            core.bound[a] = kl_bound(p, setup.mu[a], setup.sigma2[a], N, m, delta);
    }

    core.kl.assign(trials, std::vector<double>(atoms));
    auto run_trial = [&](std::size_t t) {
        Rng rng(derive_seed(seed, "klsim-trial", m * 1000003ULL + t));
        const std::vector<std::size_t> picks = rng.sample_without_replacement(N, m);
        for (std::size_t a = 0; a < atoms; ++a) {
            double q = 0;
            for (std::size_t i : picks) q += setup.soft[i][a];
            q /= static_cast<double>(m);
            q = std::clamp(q, delta, 1 - delta);
            core.kl[t][a] = kl_bernoulli(dist.cond[a], q);
        }
    };
    if (parallel)
        parallel_for(trials, run_trial);
    else
        for (std::size_t t = 0; t < trials; ++t) run_trial(t);
    return core;
}

std::vector<KlSimResult> kl_sim_impl(const RashomonSet& set, const DiscreteDistribution& dist,
                                     const std::vector<std::size_t>& sizes, std::size_t trials,
                                     std::uint64_t seed, double delta, bool parallel) {
    const KlSetup setup = kl_setup(set, dist, parallel);
    std::vector<KlSimResult> out;
    out.reserve(sizes.size());
    for (std::size_t m : sizes) {
        const KlCore core =
            kl_core(setup, dist, set.size(), m, trials, seed, delta, parallel);
        const std::size_t atoms = dist.atoms();
        const std::size_t ran = core.kl.size();  // collapses to 1 when m == N
        std::vector<double> per_trial(ran, 0.0);
        for (std::size_t t = 0; t < ran; ++t)
            for (std::size_t a = 0; a < atoms; ++a)
                per_trial[t] += dist.mass[a] * core.kl[t][a];
        double mean = 0;
        for (double v : per_trial) mean += v;
        mean /= static_cast<double>(ran);
        double var = 0;
        for (double v : per_trial) var += (v - mean) * (v - mean);
        const double se = ran > 1 ? std::sqrt(var / static_cast<double>(ran - 1)) /
                                        std::sqrt(static_cast<double>(ran))
                                  : 0.0;
        double bound = 0;
        for (std::size_t a = 0; a < atoms; ++a) bound += dist.mass[a] * core.bound[a];
        out.push_back({m, mean, bound, se, ran});
    }
    return out;
}

}  // namespace

KlPointwise ensemble_kl_pointwise(const RashomonSet& set, const DiscreteDistribution& dist,
                                  std::size_t m, std::size_t trials, std::uint64_t seed,
                                  double delta) {
    const KlSetup setup = kl_setup(set, dist, true);
    const KlCore core = kl_core(setup, dist, set.size(), m, trials, seed, delta, true);
    const std::size_t atoms = dist.atoms();
    const std::size_t ran = core.kl.size();
    KlPointwise pw;
    pw.mean_kl.assign(atoms, 0.0);
    pw.stderr_.assign(atoms, 0.0);
    pw.bound = core.bound;
    for (std::size_t a = 0; a < atoms; ++a) {
        double mean = 0;
        for (std::size_t t = 0; t < ran; ++t) mean += core.kl[t][a];
        mean /= static_cast<double>(ran);
        double var = 0;
        for (std::size_t t = 0; t < ran; ++t)
            var += (core.kl[t][a] - mean) * (core.kl[t][a] - mean);
        pw.mean_kl[a] = mean;
        pw.stderr_[a] = ran > 1 ? std::sqrt(var / static_cast<double>(ran - 1)) /
                                      std::sqrt(static_cast<double>(ran))
                                : 0.0;
    }
    return pw;
}

std::vector<KlSimResult> ensemble_kl_sim(const RashomonSet& set,
                                         const DiscreteDistribution& dist,
                                         const std::vector<std::size_t>& sizes,
                                         std::size_t trials, std::uint64_t seed,
                                         double delta) {
    return kl_sim_impl(set, dist, sizes, trials, seed, delta, true);
}

std::vector<KlSimResult> ensemble_kl_sim_serial(const RashomonSet& set,
                                                const DiscreteDistribution& dist,
                                                const std::vector<std::size_t>& sizes,
                                                std::size_t trials, std::uint64_t seed,
                                                double delta) {
    return kl_sim_impl(set, dist, sizes, trials, seed, delta, false);
}

LeafCountSummary release_leaf_counts(const EnsembleSelection& selection,
                                     const RashomonSet& set, const BitDataset& data) {
    LeafCountSummary summary;
    summary.n = data.rows();
    for (std::size_t idx : selection.indices) {
        if (idx >= set.size()) throw UsageError("release_leaf_counts: selection out of range");
        const Tree& t = set.trees[idx];
        LeafCountSummary::PerTree entry;
        entry.tree = t;
        // counts recomputed by routing, preorder leaf order
        std::vector<std::array<std::uint32_t, 2>> counts(t.nodes.size(), {0, 0});
        for (std::size_t i = 0; i < data.rows(); ++i) {
            int node = 0;
            while (!t.nodes[node].is_leaf())
                node = data.feature(i, static_cast<std::size_t>(t.nodes[node].feature))
                           ? t.nodes[node].right
                           : t.nodes[node].left;
            ++counts[static_cast<std::size_t>(node)][data.label(i) ? 1 : 0];
        }
        std::function<void(int)> emit = [&](int node) {
            if (t.nodes[node].is_leaf()) {
                entry.leaf_counts.push_back(counts[static_cast<std::size_t>(node)]);
                return;
            }
            emit(t.nodes[node].left);
            emit(t.nodes[node].right);
        };
        emit(0);
        summary.trees.push_back(std::move(entry));
    }
    return summary;
}

namespace {

// leaf ordinal (preorder) for each atom of the feature grid
std::vector<int> route_table(const Tree& t, std::size_t d) {
    std::vector<int> leaf_ordinal(t.nodes.size(), -1);
    int next = 0;
    std::function<void(int)> number = [&](int node) {
        if (t.nodes[node].is_leaf()) {
            leaf_ordinal[static_cast<std::size_t>(node)] = next++;
            return;
        }
        number(t.nodes[node].left);
        number(t.nodes[node].right);
    };
    number(0);

    std::vector<int> table(std::size_t{1} << d);
    for (std::size_t x = 0; x < table.size(); ++x) {
        int node = 0;
        while (!t.nodes[node].is_leaf())
            node = ((x >> t.nodes[node].feature) & 1) ? t.nodes[node].right
                                                      : t.nodes[node].left;
        table[x] = leaf_ordinal[static_cast<std::size_t>(node)];
    }
    return table;
}

}  // namespace

bool verify_leaf_counts(const LeafCountSummary& summary, const BitDataset& candidate) {
    for (const auto& entry : summary.trees) {
        std::vector<std::array<std::uint32_t, 2>> got(entry.leaf_counts.size(), {0, 0});
        const std::vector<int> table = route_table(entry.tree, candidate.cols());
        for (std::size_t i = 0; i < candidate.rows(); ++i) {
            std::size_t x = 0;
            for (std::size_t j = 0; j < candidate.cols(); ++j)
                if (candidate.feature(i, j)) x |= std::size_t{1} << j;
            ++got[static_cast<std::size_t>(table[x])][candidate.label(i) ? 1 : 0];
        }
        if (got != entry.leaf_counts) return false;
    }
    return true;
}

ReconstructionResult reconstruct(const LeafCountSummary& summary, std::size_t n,
                                 std::size_t d, std::size_t budget_nodes,
                                 std::uint64_t seed, const BitDataset* truth) {
    if (n < 1 || n > 30) throw LimitError("reconstruct: n must be in [1, 30]");
    if (d < 1 || d > 12) throw LimitError("reconstruct: d must be in [1, 12]");
    if (budget_nodes < 1) throw UsageError("reconstruct: budget_nodes must be >= 1");
    if (summary.n != 0 && summary.n != n)
        throw DataError("reconstruct: summary row count disagrees with n");

    const std::size_t m = summary.trees.size();
    // conservation check: counts of every tree must sum to n
    for (const auto& entry : summary.trees) {
        std::size_t total = 0;
        for (const auto& c : entry.leaf_counts) total += c[0] + c[1];
        if (total != n)
            throw DataError("reconstruct: infeasible summary (leaf counts sum to " +
                            std::to_string(total) + ", expected " + std::to_string(n) + ")");
    }

    std::vector<std::vector<int>> route(m);
    std::vector<std::vector<std::array<std::int64_t, 2>>> rem(m);
    for (std::size_t t = 0; t < m; ++t) {
        if (max_feature_index(summary.trees[t].tree) >= static_cast<int>(d))
            throw DataError("reconstruct: released tree wider than d");
        route[t] = route_table(summary.trees[t].tree, d);
        rem[t].resize(summary.trees[t].leaf_counts.size());
        for (std::size_t l = 0; l < rem[t].size(); ++l) {
            rem[t][l][0] = summary.trees[t].leaf_counts[l][0];
            rem[t][l][1] = summary.trees[t].leaf_counts[l][1];
        }
    }

    const std::size_t n_values = (std::size_t{1} << d) * 2;  // (x, y) pairs

    auto reset_rem = [&]() {
        for (std::size_t t = 0; t < m; ++t)
            for (std::size_t l = 0; l < rem[t].size(); ++l) {
                rem[t][l][0] = summary.trees[t].leaf_counts[l][0];
                rem[t][l][1] = summary.trees[t].leaf_counts[l][1];
            }
    };
    auto feasible = [&](std::uint32_t value) {
        const std::size_t x = value >> 1;
        const std::size_t y = value & 1;
        for (std::size_t t = 0; t < m; ++t)
            if (rem[t][static_cast<std::size_t>(route[t][x])][y] <= 0) return false;
        return true;
    };
    auto apply = [&](std::uint32_t value, std::int64_t delta) {
        const std::size_t x = value >> 1;
        const std::size_t y = value & 1;
        for (std::size_t t = 0; t < m; ++t)
            rem[t][static_cast<std::size_t>(route[t][x])][y] += delta;
    };

    // Slots are exchangeable, so chronological backtracking revisits
    // permutations of the same dead multiset. Randomized restarts with
    // geometrically growing node slices and fresh per-slot value orders break
    // out of such thrashing; everything stays a pure function of the seed.
    std::vector<std::uint32_t> assigned(n, 0);
    std::vector<std::uint32_t> best_prefix;
    std::uint64_t best_prefix_restart = 0;
    std::size_t nodes = 0;
    bool exhausted = false;
    bool solved = false;
    bool space_exhausted_once = false;

    std::vector<std::vector<std::uint32_t>> slot_order(n);
    auto shuffle_orders = [&](std::uint64_t restart) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint32_t> order(n_values);
            for (std::size_t v = 0; v < n_values; ++v)
                order[v] = static_cast<std::uint32_t>(v);
            Rng rng(derive_seed(seed, "recon-slot", restart * 1009 + i));
            rng.shuffle(order);
            slot_order[i] = std::move(order);
        }
    };

    std::size_t slice_left = 0;
    bool slice_done = false;
    std::uint64_t restart = 0;
    std::function<bool(std::size_t)> search = [&](std::size_t slot) -> bool {
        if (slot == n) {
            solved = true;
            return true;
        }
        if (slot > best_prefix.size()) {
            best_prefix.assign(assigned.begin(), assigned.begin() + slot);
            best_prefix_restart = restart;
        }
        for (std::uint32_t value : slot_order[slot]) {
            if (!feasible(value)) continue;
            if (nodes >= budget_nodes || slice_left == 0) {
                slice_done = true;
                return true;  // unwind to the restart loop
            }
            ++nodes;
            --slice_left;
            assigned[slot] = value;
            apply(value, -1);
            if (search(slot + 1)) return true;
            apply(value, +1);
        }
        return false;
    };

    std::size_t slice = std::max<std::size_t>(4000, n * n_values);
    while (nodes < budget_nodes && !solved) {
        shuffle_orders(restart);
        reset_rem();
        slice_left = std::min(slice, budget_nodes - nodes);
        slice_done = false;
        const bool found = search(0);
        if (found && solved) break;
        if (!slice_done) {
            // a full tree walk proved there is no satisfying assignment
            space_exhausted_once = true;
            break;
        }
        ++restart;
        slice = slice + slice / 2;
    }
    exhausted = !solved && !space_exhausted_once;

    if (space_exhausted_once)
        throw DataError("reconstruct: infeasible summary (search space exhausted)");

    ReconstructionResult result;
    result.solver_nodes = nodes;
    result.exhausted = exhausted;

    if (exhausted) {
        // deterministic greedy completion of the deepest prefix found
        shuffle_orders(best_prefix_restart);
        reset_rem();
        assigned.assign(n, 0);
        for (std::size_t i = 0; i < best_prefix.size(); ++i) {
            assigned[i] = best_prefix[i];
            apply(best_prefix[i], -1);
        }
        for (std::size_t i = best_prefix.size(); i < n; ++i) {
            std::uint32_t pick = slot_order[i][0];
            std::size_t best_fit = 0;
            for (std::uint32_t value : slot_order[i]) {
                const std::size_t x = value >> 1;
                const std::size_t y = value & 1;
                std::size_t fit = 0;
                for (std::size_t t = 0; t < m; ++t)
                    if (rem[t][static_cast<std::size_t>(route[t][x])][y] > 0) ++fit;
                if (fit > best_fit) {
                    best_fit = fit;
                    pick = value;
                    if (fit == m) break;
                }
            }
            assigned[i] = pick;
            apply(pick, -1);
        }
    }

    BitDataset candidate(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t x = assigned[i] >> 1;
        for (std::size_t j = 0; j < d; ++j)
            candidate.set_feature(i, j, (x >> j) & 1);
        candidate.set_label(i, assigned[i] & 1);
    }
    result.candidate = std::move(candidate);
    if (truth) result.error = matched_error(result.candidate, *truth);
    return result;
}

namespace {

double matched_error_impl(const BitDataset& candidate, const BitDataset& truth,
                          bool parallel) {
    const std::size_t n = candidate.rows();
    const std::size_t d = candidate.cols();
    if (n != truth.rows() || d != truth.cols())
        throw UsageError("matched_error: shape mismatch");

    std::vector<std::vector<long long>> cost(n, std::vector<long long>(n));
    auto fill_row = [&](std::size_t i) {
        const BitVec ci = candidate.row_bits(i);
        for (std::size_t j = 0; j < n; ++j)
            cost[i][j] = static_cast<long long>(BitVec::hamming(ci, truth.row_bits(j)));
    };
    if (parallel)
        parallel_for(n, fill_row);
    else
        for (std::size_t i = 0; i < n; ++i) fill_row(i);

    const AssignmentResult match = min_cost_assignment(cost);
    return static_cast<double>(match.total_cost) / static_cast<double>(n * d);
}

}  // namespace

double matched_error(const BitDataset& candidate, const BitDataset& truth) {
    return matched_error_impl(candidate, truth, true);
}

double matched_error_serial(const BitDataset& candidate, const BitDataset& truth) {
    return matched_error_impl(candidate, truth, false);
}

BitDataset random_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
    BitDataset data(n, d);
    Rng rng(derive_seed(seed, "random-baseline"));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) data.set_feature(i, j, rng.bernoulli(0.5));
        data.set_label(i, rng.bernoulli(0.5));
    }
    return data;
}

}  // namespace rlab
