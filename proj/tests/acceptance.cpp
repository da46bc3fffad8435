// End-to-end acceptance suite. Each criterion prints one pass/fail line; the
// process exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rlab/attack.hpp"
#include "rlab/bounds.hpp"
#include "rlab/cli.hpp"
#include "rlab/dataset.hpp"
#include "rlab/errors.hpp"
#include "rlab/linear.hpp"
#include "rlab/privacy.hpp"
#include "rlab/rashomon.hpp"
#include "rlab/rng.hpp"
#include "rlab/selection.hpp"
#include "rlab/serialize.hpp"
#include "rlab/stability.hpp"

using namespace rlab;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kData = std::string(RLAB_DATA_DIR);
constexpr std::uint64_t kSeed = 7;

// Rashomon sets produced along the way, re-checked by the triangle criterion.
std::vector<std::pair<BitDataset, RashomonSet>> g_enumerated;

struct Check {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
    void note(const std::string& what) {
        if (ok && detail.empty()) detail = what;
    }
};

BitDataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
    Rng rng(seed);
    BitDataset data(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) data.set_feature(i, j, rng.bernoulli(0.5));
        data.set_label(i, rng.bernoulli(0.5));
    }
    return data;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2]
                        : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

// --------------------------------------------------------------------------
// 1. Enumerator vs brute-force oracle, exact key-set equality.
Check criterion_oracle() {
    Check check;
    Rng meta(derive_seed(kSeed, "c1-meta"));
    const double lambdas[] = {0.0, 0.05};
    const double epsilons[] = {0.0, 0.05, 0.2};
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t n = 4 + meta.uniform_index(13);  // <= 16
        const std::size_t d = 1 + meta.uniform_index(3);
        const BitDataset data = random_dataset(n, d, derive_seed(kSeed, "c1-data", rep));
        ObjectiveConfig config;
        config.lambda = lambdas[rep % 2];
        config.epsilon = epsilons[rep % 3];
        config.depth_budget = static_cast<int>(meta.uniform_index(3));

        const RashomonSet set = enumerate_rashomon(data, config);
        std::set<std::string> got;
        for (const Tree& t : set.trees) got.insert(canonical_key(t));

        double best = 1e300;
        std::vector<std::pair<std::string, double>> scored;
        for (const Tree& skeleton :
             brute_force_trees(static_cast<int>(d), config.depth_budget)) {
            const Tree t = fit_leaves(skeleton, data);
            const double obj = objective(t, data, config.lambda);
            best = std::min(best, obj);
            scored.emplace_back(canonical_key(t), obj);
        }
        std::set<std::string> want;
        for (const auto& [key, obj] : scored)
            if (obj <= best + config.epsilon + 1e-12) want.insert(key);

        if (got != want) {
            check.fail("set mismatch on dataset " + std::to_string(rep) + " (got " +
                       std::to_string(got.size()) + ", oracle " +
                       std::to_string(want.size()) + ")");
            return check;
        }
        g_enumerated.emplace_back(data, set);
    }
    check.note("50 datasets, exact equality");
    return check;
}

// --------------------------------------------------------------------------
// 2. Neighboring-dataset containment at the relaxed tolerance, both ways.
Check criterion_stability() {
    Check check;
    ObjectiveConfig config;
    config.lambda = 0.01;
    config.epsilon = 0.03;
    config.depth_budget = 3;
    for (const std::string name : {"synth1_n100.csv", "synth3_n100.csv"}) {
        const BitDataset data = load_csv(kData + "/" + name);
        g_enumerated.emplace_back(data, enumerate_rashomon(data, config));
        const std::size_t ks[] = {1, 2, data.rows() / 20, (data.rows() * 6) / 100};
        for (std::size_t k : ks) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const NeighborReport report = neighbor_containment_check(
                    data, k, config, derive_seed(kSeed, "c2", k * 100 + seed));
                if (report.frac_forward != 1.0 || report.frac_backward != 1.0) {
                    check.fail(name + " k=" + std::to_string(k) + " seed=" +
                               std::to_string(seed) + ": forward " +
                               std::to_string(report.frac_forward) + ", backward " +
                               std::to_string(report.frac_backward));
                    return check;
                }
            }
        }
    }
    check.note("2 datasets x 4 ks x 5 seeds, containment 1.0 both ways");
    return check;
}

// --------------------------------------------------------------------------
// 3. Distribution-shift containment via exact true-risk enumeration.
Check criterion_shift() {
    Check check;
    const double epsilon = 0.15;
    int built = 0;
    for (int rep = 0; built < 20 && rep < 200; ++rep) {
        Rng rng(derive_seed(kSeed, "c3", rep));
        DiscreteDistribution d1;
        d1.dims = 3;
        d1.mass.resize(8);
        d1.cond.resize(8);
        double total = 0;
        for (std::size_t a = 0; a < 8; ++a) {
            d1.mass[a] = 0.05 + rng.uniform_real();
            total += d1.mass[a];
            d1.cond[a] = rng.uniform_real();
        }
        for (double& m : d1.mass) m /= total;

        // random mass-preserving tweak, shrunk until KL fits the budget
        std::vector<double> dir(8);
        double mean = 0;
        for (double& v : dir) {
            v = rng.uniform_real() - 0.5;
            mean += v;
        }
        mean /= 8;
        for (double& v : dir) v -= mean;
        DiscreteDistribution d2 = d1;
        double scale = 0.3;
        bool found = false;
        for (int iter = 0; iter < 60 && !found; ++iter, scale /= 2) {
            DiscreteDistribution candidate = d1;
            bool valid = true;
            for (std::size_t a = 0; a < 8; ++a) {
                candidate.mass[a] += scale * dir[a];
                if (candidate.mass[a] <= 1e-6) valid = false;
            }
            if (!valid) continue;
            double kl = 0;
            for (std::size_t a = 0; a < 8; ++a)
                kl += d1.mass[a] * std::log(d1.mass[a] / candidate.mass[a]);
            if (kl > 0 && kl <= epsilon * epsilon / 8.0) {
                d2 = candidate;
                found = true;
            }
        }
        if (!found) continue;

        ObjectiveConfig config;
        config.lambda = 0;
        config.depth_budget = 2;
        const ShiftReport report = distribution_shift_check(d1, d2, epsilon, config);
        if (!report.condition_holds) continue;
        ++built;
        if (report.containment != 1.0) {
            check.fail("pair " + std::to_string(built) + ": containment " +
                       std::to_string(report.containment));
            return check;
        }
    }
    if (built < 20) {
        check.fail("only built " + std::to_string(built) + " qualifying pairs");
        return check;
    }
    check.note("20 pairs, exact containment");
    return check;
}

// --------------------------------------------------------------------------
// 4. Rule-list vulnerability: achieved single-flip gap >= (n+ - nbar+)/n.
Check criterion_rule_list() {
    Check check;
    int built = 0;
    for (int rep = 0; built < 20 && rep < 400; ++rep) {
        Rng rng(derive_seed(kSeed, "c4", rep));
        const std::size_t K = 2 + rng.uniform_index(4);
        const std::size_t d = K + rng.uniform_index(4);
        const std::size_t n = 10 + rng.uniform_index(21);

        RuleList rl;
        {
            std::vector<std::size_t> features(d);
            for (std::size_t f = 0; f < d; ++f) features[f] = f;
            rng.shuffle(features);
            for (std::size_t k = 0; k < K; ++k)
                rl.antecedents.push_back({static_cast<int>(features[k]),
                                          rng.bernoulli(0.5) ? 1 : 0});
        }
        rl.predictions.assign(K, 0);
        for (std::size_t k = 1; k < K; ++k) rl.predictions[k] = rng.bernoulli(0.5);
        // index I must exist
        bool has_positive = false;
        for (int q : rl.predictions) has_positive |= q == 1;
        if (!has_positive) rl.predictions[1 + rng.uniform_index(K - 1)] = 1;
        rl.default_prediction = rng.bernoulli(0.5);

        BitDataset data(n, d);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) data.set_feature(i, j, rng.bernoulli(0.5));
            // force capture by some rule (flip the last antecedent if missed)
            bool captured = false;
            for (const auto& a : rl.antecedents)
                if (data.feature(i, static_cast<std::size_t>(a.feature)) ==
                    (a.required_bit != 0))
                    captured = true;
            if (!captured)
                data.set_feature(i, static_cast<std::size_t>(rl.antecedents.back().feature),
                                 rl.antecedents.back().required_bit != 0);
        }
        // labels biased toward each rule's prediction, then forced to majority
        std::vector<std::vector<std::size_t>> captured(K);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < K; ++k) {
                const auto& a = rl.antecedents[k];
                if (data.feature(i, static_cast<std::size_t>(a.feature)) ==
                    (a.required_bit != 0)) {
                    captured[k].push_back(i);
                    break;
                }
            }
        }
        for (std::size_t k = 0; k < K; ++k) {
            std::size_t agree = 0;
            for (std::size_t i : captured[k]) {
                const bool label = rng.bernoulli(rl.predictions[k] ? 0.7 : 0.3);
                data.set_label(i, label);
                if (static_cast<int>(label) == rl.predictions[k]) ++agree;
            }
            // flip until the rule's prediction is a (weak) majority
            for (std::size_t i : captured[k]) {
                if (2 * agree >= captured[k].size()) break;
                if (static_cast<int>(data.label(i)) != rl.predictions[k]) {
                    data.set_label(i, rl.predictions[k]);
                    ++agree;
                }
            }
        }

        GapBoundReport report;
        try {
            report = rule_list_gap_bound(rl, data);
        } catch (const UsageError&) {
            continue;  // degenerate draw (e.g. empty positive rule), try again
        }
        ++built;
        if (report.achieved_gap < report.bound - 1e-12) {
            check.fail("instance " + std::to_string(built) + ": gap " +
                       std::to_string(report.achieved_gap) + " < bound " +
                       std::to_string(report.bound));
            return check;
        }
    }
    if (built < 20) {
        check.fail("only built " + std::to_string(built) + " rule lists");
        return check;
    }
    check.note("20 rule lists, gap >= bound");
    return check;
}

// --------------------------------------------------------------------------
// 5. Linear closed form, ratio law, and crossover search.
Check criterion_linear() {
    Check check;
    Rng rng(derive_seed(kSeed, "c5"));
    auto random_unit = [&](std::size_t p) {
        std::vector<double> w(p);
        double norm = 0;
        while (norm < 1e-3) {
            for (double& x : w) x = 2 * rng.uniform_real() - 1;
            norm = norm2(w);
        }
        for (double& x : w) x /= norm;
        return w;
    };

    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t p = 2 + rng.uniform_index(4);
        const std::size_t n = 5 + rng.uniform_index(30);
        NumericDataset data;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row(p);
            for (double& x : row) x = 2 * rng.uniform_real() - 1;
            data.rows.push_back(std::move(row));
            data.labels.push_back(rng.bernoulli(0.5) ? 1 : -1);
        }
        const LinearModel target{random_unit(p)};
        const LinearModel w{random_unit(p)};
        const double eta = 4 * rng.uniform_real();

        const double closed = adversarial_exp_loss(w, data, target, eta);
        const double direct = exp_loss(w, l2_attack(data, target, eta));
        if (std::abs(closed - direct) / direct > 1e-9) {
            check.fail("closed-form mismatch at rep " + std::to_string(rep));
            return check;
        }

        // the ratio law for this unit w
        const double ratio = closed / exp_loss(w, data);
        const double expected = std::exp(eta * cosine(w.w, target.w));
        if (std::abs(ratio - expected) / expected > 1e-9) {
            check.fail("ratio law violated at rep " + std::to_string(rep));
            return check;
        }
    }

    // crossover eta* for 20 pairs with a definite cosine gap
    int pairs = 0;
    while (pairs < 20) {
        const std::size_t p = 3;
        NumericDataset data;
        for (std::size_t i = 0; i < 25; ++i) {
            std::vector<double> row(p);
            for (double& x : row) x = 2 * rng.uniform_real() - 1;
            data.rows.push_back(std::move(row));
            data.labels.push_back(rng.bernoulli(0.5) ? 1 : -1);
        }
        const LinearModel target{random_unit(p)};
        LinearModel w1{random_unit(p)}, w2{random_unit(p)};
        if (cosine(w1.w, target.w) < cosine(w2.w, target.w)) std::swap(w1.w, w2.w);
        if (cosine(w1.w, target.w) - cosine(w2.w, target.w) <= 0.1) continue;
        ++pairs;
        const RatioReport report = corollary_ratio_check(w1, w2, data, target, 1.0);
        const double after = report.eta_star * 1.0001 + 1e-6;
        if (!(adversarial_exp_loss(w1, data, target, after) >
              adversarial_exp_loss(w2, data, target, after))) {
            check.fail("crossover not separating at pair " + std::to_string(pairs));
            return check;
        }
    }
    check.note("100 triples at 1e-9, 20 crossovers");
    return check;
}

// --------------------------------------------------------------------------
// 6. KL bound and the released-models trend on all five distributions.
Check criterion_kl() {
    Check check;
    ObjectiveConfig config;
    config.lambda = 0.02;
    config.epsilon = 0.02;
    config.depth_budget = 3;

    for (int id = 1; id <= 5; ++id) {
        const DiscreteDistribution dist =
            builtin_distribution(id, 4, derive_seed(kSeed, "accept-dist", id));
        std::vector<double> first_kl, last_kl;
        for (std::uint64_t s = 0; s < 5; ++s) {
            const BitDataset data = sample_from_distribution(
                dist, 100, derive_seed(kSeed, "accept-data", id * 100 + s));
            const RashomonSet set = enumerate_rashomon(data, config);
            g_enumerated.emplace_back(data, set);

            std::vector<std::size_t> sizes;
            for (std::size_t m = 1; m <= set.size(); ++m) sizes.push_back(m);
            const auto results = ensemble_kl_sim(set, dist, sizes, 20,
                                                 derive_seed(kSeed, "c6", id * 100 + s));
            for (const KlSimResult& r : results) {
                if (r.mean_kl > r.bound + 3 * r.stderr_ + 1e-12) {
                    check.fail("dist " + std::to_string(id) + " seed " +
                               std::to_string(s) + " m=" + std::to_string(r.m) +
                               ": mean " + std::to_string(r.mean_kl) + " > bound " +
                               std::to_string(r.bound));
                    return check;
                }
            }
            first_kl.push_back(results.front().mean_kl);
            last_kl.push_back(results.back().mean_kl);

            if (s == 0) {  // cross-check one seed per distribution at 500 trials
                const auto dense = ensemble_kl_sim(
                    set, dist, sizes, 500, derive_seed(kSeed, "c6x", id));
                for (const KlSimResult& r : dense)
                    if (r.mean_kl > r.bound + 3 * r.stderr_ + 1e-12) {
                        check.fail("500-trial cross-check failed at dist " +
                                   std::to_string(id) + " m=" + std::to_string(r.m));
                        return check;
                    }
            }
        }
        if (median(last_kl) > median(first_kl) + 1e-12) {
            check.fail("dist " + std::to_string(id) + ": median mean_kl(m=N) " +
                       std::to_string(median(last_kl)) + " > mean_kl(m=1) " +
                       std::to_string(median(first_kl)));
            return check;
        }
    }
    check.note("5 distributions x 5 seeds, every m within bound; trend holds");
    return check;
}

// --------------------------------------------------------------------------
// 7. Triangle inequality across every Rashomon set enumerated above.
Check criterion_triangle() {
    Check check;
    std::size_t sets_checked = 0, slack_sets = 0, degenerate = 0;
    for (const auto& [data, set] : g_enumerated) {
        ++sets_checked;
        // cap the target count on large sets, deterministically thinned
        const std::size_t stride = set.size() > 40 ? set.size() / 40 : 1;
        bool slack = false;
        bool diverse = false;
        for (std::size_t j = 0; j < set.size(); j += stride) {
            const AdversarialDataset adv = attack_tree_l0(data, set.trees[j]);
            const auto patterns = classification_patterns(set.trees, adv.data);
            for (std::size_t i = 0; i < set.size(); ++i) {
                if (patterns[i].bits != patterns[j].bits) diverse = true;
                const TriangleReport tr = triangle_check(set.trees[i], set.trees[j], adv);
                if (tr.lhs > tr.rhs + 1e-12) {
                    check.fail("triangle violated in set " + std::to_string(sets_checked));
                    return check;
                }
                if (tr.lhs < tr.rhs - 1e-12) slack = true;
            }
        }
        if (slack)
            ++slack_sets;
        else if (!diverse)
            ++degenerate;  // all sampled patterns identical: slack impossible
        else {
            check.fail("no strict slack in a diverse set (index " +
                       std::to_string(sets_checked) + ")");
            return check;
        }
    }
    check.note(std::to_string(sets_checked) + " sets, " + std::to_string(slack_sets) +
               " with strict slack, " + std::to_string(degenerate) +
               " degenerate (identical patterns)");
    return check;
}

// --------------------------------------------------------------------------
// 8. Monte Carlo majority failure vs Chernoff and Cantelli bounds.
Check criterion_ensemble_bounds() {
    Check check;
    const std::size_t trials = 100000;
    for (double p : {0.05, 0.1, 0.2, 0.3}) {
        for (int k : {3, 11, 51}) {
            const McEstimate independent = majority_failure_mc(
                p, k, 0.0, trials, derive_seed(kSeed, "c8", static_cast<int>(p * 100) * 100 + k));
            const double chernoff = chernoff_ensemble_bound(p, k);
            if (independent.estimate > chernoff + 3 * independent.stderr_ + 1e-12) {
                check.fail("chernoff violated at p=" + std::to_string(p) +
                           " k=" + std::to_string(k));
                return check;
            }
            for (double rho : {0.1, 0.3}) {
                const McEstimate mc = majority_failure_mc(
                    p, k, rho, trials,
                    derive_seed(kSeed, "c8r",
                                static_cast<int>(p * 100) * 10000 + k * 10 +
                                    static_cast<int>(rho * 10)));
                const double cantelli = cantelli_ensemble_bound(p, k, rho);
                if (mc.estimate > cantelli + 3 * mc.stderr_ + 1e-12) {
                    check.fail("cantelli violated at p=" + std::to_string(p) +
                               " k=" + std::to_string(k) + " rho=" + std::to_string(rho));
                    return check;
                }
            }
        }
    }
    check.note("p x k grid, chernoff (rho=0) and cantelli (rho=0.1, 0.3)");
    return check;
}

// --------------------------------------------------------------------------
// 9. Counting bound dominates exhaustive counts; entropy plug-in below log2.
Check criterion_counting() {
    Check check;
    for (int leaves = 1; leaves <= 3; ++leaves) {
        for (int d = 1; d <= 3; ++d) {
            std::set<std::string> keys;
            for (const Tree& skeleton : brute_force_trees(d, std::max(0, leaves - 1))) {
                if (leaf_count(skeleton) != leaves) continue;
                std::vector<int> leaf_nodes;
                for (std::size_t i = 0; i < skeleton.nodes.size(); ++i)
                    if (skeleton.nodes[i].is_leaf())
                        leaf_nodes.push_back(static_cast<int>(i));
                for (std::size_t mask = 0; mask < (std::size_t{1} << leaf_nodes.size());
                     ++mask) {
                    Tree t = skeleton;
                    for (std::size_t b = 0; b < leaf_nodes.size(); ++b)
                        t.nodes[leaf_nodes[b]].hard = static_cast<int>((mask >> b) & 1);
                    keys.insert(canonical_key(t));
                }
            }
            const TreeCountBound bound = tree_count_bound(leaves, d);
            if (std::log2(static_cast<double>(keys.size())) > bound.log2 + 1e-9) {
                check.fail("count " + std::to_string(keys.size()) + " exceeds bound at leaves=" +
                           std::to_string(leaves) + " d=" + std::to_string(d));
                return check;
            }
        }
    }

    // entropy of a fixed trainer across 100 bootstrap resamples
    const BitDataset base = load_csv(kData + "/synth1_n100.csv");
    ObjectiveConfig config;
    config.lambda = 0.01;
    config.epsilon = 0.0;
    config.depth_budget = 2;
    std::vector<Tree> trained;
    Rng rng(derive_seed(kSeed, "c9"));
    for (int rep = 0; rep < 100; ++rep) {
        BitDataset resampled(base.rows(), base.cols());
        for (std::size_t i = 0; i < base.rows(); ++i)
            resampled.copy_row_from(base, rng.uniform_index(base.rows()), i);
        const RashomonSet set = enumerate_rashomon(resampled, config);
        trained.push_back(set.optimal());
    }
    const MiEstimate est = mi_upper_estimate(trained, static_cast<int>(base.cols()));
    if (est.entropy_bits > est.log2_bound + 1e-9) {
        check.fail("entropy " + std::to_string(est.entropy_bits) + " exceeds log2 bound " +
                   std::to_string(est.log2_bound));
        return check;
    }
    check.note("counts dominated; entropy " + std::to_string(est.entropy_bits) +
               " bits <= " + std::to_string(est.log2_bound));
    return check;
}

// --------------------------------------------------------------------------
// 10. Reconstruction error trend across released-model counts and strategies.
Check criterion_reconstruction_trend() {
    Check check;
    const std::pair<std::string, double> datasets[] = {{"synth5_n20.csv", 0.05},
                                                       {"synth3_n20.csv", 0.04}};
    std::string summary;
    for (const auto& [name, epsilon] : datasets) {
        const BitDataset data = load_csv(kData + "/" + name);
        ObjectiveConfig config;
        config.lambda = 0.02;
        config.epsilon = epsilon;
        config.depth_budget = 3;
        const RashomonSet set = enumerate_rashomon(data, config);
        const std::size_t N = set.size();

        std::vector<std::size_t> grid = {1, 2, 4, 8, 16};
        grid.push_back(N);
        grid.erase(std::remove_if(grid.begin(), grid.end(),
                                  [&](std::size_t m) { return m > N; }),
                   grid.end());
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

        auto median_error = [&](Strategy strategy, std::size_t m) {
            std::vector<double> errors;
            for (std::uint64_t s = 0; s < 5; ++s) {
                const std::uint64_t child = derive_seed(kSeed, "c10", m * 100 + s);
                const EnsembleSelection sel = select(set, data, strategy, m, child);
                const LeafCountSummary summary = release_leaf_counts(sel, set, data);
                const ReconstructionResult rec =
                    reconstruct(summary, data.rows(), data.cols(), 2000000, child, &data);
                errors.push_back(rec.error);
            }
            return median(errors);
        };

        std::vector<double> medians;
        for (std::size_t m : grid) medians.push_back(median_error(Strategy::Increment, m));
        int inversions = 0;
        for (std::size_t i = 1; i < medians.size(); ++i) {
            const double rise = medians[i] - medians[i - 1];
            if (rise > 1e-12) {
                ++inversions;
                if (rise > 0.02) {
                    check.fail(name + ": inversion of " + std::to_string(rise) +
                               " at m=" + std::to_string(grid[i]));
                    return check;
                }
            }
        }
        if (inversions > 1) {
            check.fail(name + ": " + std::to_string(inversions) +
                       " inversions in the median trend");
            return check;
        }

        const double farthest10 = median_error(Strategy::Farthest, 10);
        const double closest10 = median_error(Strategy::Closest, 10);
        if (farthest10 > closest10 + 1e-12) {
            check.fail(name + ": farthest median " + std::to_string(farthest10) +
                       " > closest median " + std::to_string(closest10) + " at m=10");
            return check;
        }
        std::ostringstream trend;
        trend.precision(3);
        for (double m : medians) trend << m << " ";
        summary += name + " [" + trend.str() + "] ";
    }
    check.note(summary);
    return check;
}

// --------------------------------------------------------------------------
// 11. Trade-off frontier endpoints from the actual CLI output.
Check criterion_tradeoff() {
    Check check;
    const std::string set_path = "/tmp/rlab_accept_set.json";
    const std::string csv_path = "/tmp/rlab_accept_tradeoff.csv";
    const std::string data_path = kData + "/synth3_n20.csv";

    {
        const BitDataset data = load_csv(data_path);
        ObjectiveConfig config;
        config.lambda = 0.02;
        config.epsilon = 0.05;
        config.depth_budget = 3;
        save_rashomon(enumerate_rashomon(data, config), set_path);
    }
    const RashomonSet set = load_rashomon(set_path);
    const std::string sizes = "1,2,5,10,20,50," + std::to_string(set.size());

    std::vector<std::string> args = {"rlab", "--seed", "7", "tradeoff",
                                     "--set", set_path, "--data", data_path,
                                     "--sizes", sizes, "--out", csv_path};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    // route the command's own chatter away from the one-line-per-criterion report
    std::ostringstream sink;
    std::streambuf* saved = std::cout.rdbuf(sink.rdbuf());
    const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(saved);
    if (rc != 0) {
        check.fail("cmd_tradeoff returned nonzero");
        return check;
    }

    std::istringstream lines(read_text_file(csv_path));
    std::string line;
    std::getline(lines, line);
    std::vector<std::size_t> ms;
    std::vector<double> recon, adv;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream cells(line);
        std::string m, r, a;
        std::getline(cells, m, ',');
        std::getline(cells, r, ',');
        std::getline(cells, a, ',');
        ms.push_back(std::stoull(m));
        recon.push_back(std::stod(r));
        adv.push_back(std::stod(a));
    }
    if (ms.empty()) {
        check.fail("no rows in the tradeoff CSV");
        return check;
    }
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (recon[i] > recon.front() + 1e-12) {
            check.fail("reconstruction error at m=" + std::to_string(ms[i]) +
                       " exceeds the m=1 value");
            return check;
        }
        if (adv[i] > adv.back() + 1e-12) {
            check.fail("adversarial accuracy at m=" + std::to_string(ms[i]) +
                       " exceeds the m=N value");
            return check;
        }
    }
    std::remove(set_path.c_str());
    std::remove(csv_path.c_str());
    check.note("max recon at m=1 (" + std::to_string(recon.front()) +
               "), max adv at m=N (" + std::to_string(adv.back()) + ")");
    return check;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {"enumerator oracle equivalence", criterion_oracle},
        {"neighboring-dataset containment (hard)", criterion_stability},
        {"distribution-shift containment (hard)", criterion_shift},
        {"rule-list adversarial gap", criterion_rule_list},
        {"linear closed form + corollaries", criterion_linear},
        {"ensemble KL bound + trend", criterion_kl},
        {"triangle inequality across all sets", criterion_triangle},
        {"majority-vote ensemble bounds", criterion_ensemble_bounds},
        {"counting bound + entropy plug-in", criterion_counting},
        {"reconstruction error trend", criterion_reconstruction_trend},
        {"robustness-privacy trade-off frontier", criterion_tradeoff},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Check check;
        try {
            check = criteria[i].run();
        } catch (const std::exception& e) {
            check.ok = false;
            check.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("criterion %02zu [%s] %-42s (%6.2f s) %s\n", i + 1,
                    check.ok ? "PASS" : "FAIL", criteria[i].name, secs,
                    check.detail.c_str());
        if (!check.ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
