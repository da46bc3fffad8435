// Times the OpenMP kernels against their serial reference twins and checks
// that both produce identical results.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "rlab/attack.hpp"
#include "rlab/bounds.hpp"
#include "rlab/dataset.hpp"
#include "rlab/parallel.hpp"
#include "rlab/privacy.hpp"
#include "rlab/rashomon.hpp"
#include "rlab/rng.hpp"

using namespace rlab;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
                name.c_str(), serial_ms, parallel_ms, serial_ms / parallel_ms,
                equal ? "results equal" : "RESULTS DIFFER");
}

BitDataset synthetic(std::size_t n, std::size_t d, std::uint64_t seed) {
    BitDataset data(n, d);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) data.set_feature(i, j, rng.bernoulli(0.5));
        data.set_label(i, rng.bernoulli(0.4));
    }
    return data;
}

}  // namespace

int main() {
    std::printf("threads: %d (OpenMP %s)\n\n", thread_count(),
                parallelism_enabled() ? "on" : "off");

    // Rashomon set reused by several kernels
    const DiscreteDistribution dist = builtin_distribution(1, 4, 7);
    const BitDataset train = sample_from_distribution(dist, 100, 11);
    ObjectiveConfig config;
    config.lambda = 0.01;
    config.epsilon = 0.08;
    config.depth_budget = 3;
    const RashomonSet set = enumerate_rashomon(train, config);
    std::printf("benchmark Rashomon set: %zu trees\n\n", set.size());

    {
        const BitDataset big = synthetic(20000, 16, 3);
        std::vector<ClassificationPattern> a, b;
        const double ts = time_ms([&] { a = classification_patterns_serial(set.trees, big); });
        const double tp = time_ms([&] { b = classification_patterns(set.trees, big); });
        bool equal = a.size() == b.size();
        for (std::size_t i = 0; equal && i < a.size(); ++i) equal = a[i].bits == b[i].bits;
        report("classification_patterns", ts, tp, equal);
    }

    {
        const BitDataset big = synthetic(50000, 16, 5);
        const Tree target = fit_leaves(set.optimal(), train);
        AdversarialDataset a, b;
        const double ts = time_ms([&] { a = attack_tree_l0_serial(big, target); });
        const double tp = time_ms([&] { b = attack_tree_l0(big, target); });
        report("attack_tree_l0", ts, tp, a.data == b.data && a.flips == b.flips);
    }

    {
        std::vector<std::size_t> sizes;
        for (std::size_t m = 1; m <= set.size(); m += 4) sizes.push_back(m);
        std::vector<KlSimResult> a, b;
        const double ts = time_ms([&] { a = ensemble_kl_sim_serial(set, dist, sizes, 100, 9); });
        const double tp = time_ms([&] { b = ensemble_kl_sim(set, dist, sizes, 100, 9); });
        bool equal = a.size() == b.size();
        for (std::size_t i = 0; equal && i < a.size(); ++i)
            equal = a[i].mean_kl == b[i].mean_kl && a[i].bound == b[i].bound &&
                    a[i].stderr_ == b[i].stderr_;
        report("ensemble_kl_sim", ts, tp, equal);
    }

    {
        McEstimate a, b;
        const double ts =
            time_ms([&] { a = majority_failure_mc_serial(0.2, 51, 0.1, 2000000, 13); });
        const double tp = time_ms([&] { b = majority_failure_mc(0.2, 51, 0.1, 2000000, 13); });
        report("majority_failure_mc", ts, tp, a.estimate == b.estimate);
    }

    {
        const BitDataset cand = synthetic(30, 12, 17);
        const BitDataset truth = synthetic(30, 12, 19);
        double a = 0, b = 0;
        const double ts = time_ms([&] { a = matched_error_serial(cand, truth); }, 20);
        const double tp = time_ms([&] { b = matched_error(cand, truth); }, 20);
        report("matched_error", ts, tp, a == b);
    }

    return 0;
}
