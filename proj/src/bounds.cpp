#include "rlab/bounds.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

using boost::multiprecision::cpp_int;

TreeCountBound tree_count_bound(int leaves, int d) {
    if (leaves < 1 || d < 1) throw UsageError("tree_count_bound: leaves and d must be >= 1");

    // Catalan(leaves-1) = C(2m, m) / (m+1), m = leaves-1
    const int m = leaves - 1;
    cpp_int catalan = 1;
    for (int i = 0; i < m; ++i) {
        catalan *= 2 * m - i;
    }
    for (int i = 2; i <= m; ++i) catalan /= i;
    catalan /= m + 1;

    cpp_int total = catalan;
    for (int i = 0; i < m; ++i) total *= 2 * d;
    for (int i = 0; i < leaves; ++i) total *= 2;

    TreeCountBound bound;
    bound.count = total.str();
    const double log2_catalan =
        (std::lgamma(2.0 * m + 1) - std::lgamma(m + 1.0) - std::lgamma(m + 2.0)) /
        std::log(2.0);
    bound.log2 = log2_catalan + m * std::log2(2.0 * d) + leaves;
    return bound;
}

MiEstimate mi_upper_estimate(const std::vector<Tree>& trained, int d) {
    if (trained.size() < 2)
        throw UsageError("mi_upper_estimate: need at least 2 resampled trainings");

    std::map<std::string, std::size_t> freq;
    int max_leaves = 1;
    for (const Tree& t : trained) {
        ++freq[canonical_key(t)];
        max_leaves = std::max(max_leaves, leaf_count(t));
    }
    double entropy = 0;
    const double total = static_cast<double>(trained.size());
    for (const auto& [key, count] : freq) {
        const double p = static_cast<double>(count) / total;
        entropy -= p * std::log2(p);
    }

    MiEstimate est;
    est.entropy_bits = entropy;
    est.max_leaves = max_leaves;
    est.log2_bound = tree_count_bound(max_leaves, d).log2;
    return est;
}

double chernoff_ensemble_bound(double p, int k) {
    if (p <= 0 || p >= 0.5) throw UsageError("chernoff_ensemble_bound: p must be in (0, 0.5)");
    if (k < 1 || k % 2 == 0) throw UsageError("chernoff_ensemble_bound: k must be odd, >= 1");
    const double kl_half = -std::log(2 * std::sqrt(p * (1 - p)));  // KL(1/2 || p), nats
    return std::exp(-k * kl_half);
}

double cantelli_ensemble_bound(double p, int k, double rho) {
    if (p <= 0 || p >= 0.5) throw UsageError("cantelli_ensemble_bound: p must be in (0, 0.5)");
    if (k <= 2) throw UsageError("cantelli_ensemble_bound: k must be > 2");
    if (rho < 0 || rho >= 1) throw UsageError("cantelli_ensemble_bound: rho must be in [0, 1)");
    const double var = p * (1 - p) * (1 + (k - 1) * rho);
    return var / (var + k * (0.5 - p) * (0.5 - p));
}

namespace {

McEstimate mc_impl(double p, int k, double rho, std::size_t trials, std::uint64_t seed,
                   bool parallel) {
    if (p < 0 || p > 1) throw UsageError("majority_failure_mc: p must be in [0, 1]");
    if (k < 1 || k % 2 == 0) throw UsageError("majority_failure_mc: k must be odd, >= 1");
    if (rho < 0 || rho >= 1) throw UsageError("majority_failure_mc: rho must be in [0, 1)");
    if (trials < 1000) throw UsageError("majority_failure_mc: trials must be >= 1000");

    std::vector<std::uint8_t> fail(trials, 0);
    auto run = [&](std::size_t t) {
        Rng rng(derive_seed(seed, "mc-trial", t));
        int wrong;
        if (rng.bernoulli(rho)) {
            wrong = rng.bernoulli(p) ? k : 0;  // all members copy one draw
        } else {
            wrong = 0;
            for (int i = 0; i < k; ++i)
                if (rng.bernoulli(p)) ++wrong;
        }
        fail[t] = 2 * wrong >= k ? 1 : 0;
    };
    if (parallel)
        parallel_for(trials, run);
    else
        for (std::size_t t = 0; t < trials; ++t) run(t);

    std::size_t failures = 0;
    for (std::uint8_t f : fail) failures += f;
    McEstimate est;
    est.trials = trials;
    est.estimate = static_cast<double>(failures) / static_cast<double>(trials);
    est.stderr_ = std::sqrt(est.estimate * (1 - est.estimate) /
                            static_cast<double>(trials));
    return est;
}

}  // namespace

McEstimate majority_failure_mc(double p, int k, double rho, std::size_t trials,
                               std::uint64_t seed) {
    return mc_impl(p, k, rho, trials, seed, true);
}

McEstimate majority_failure_mc_serial(double p, int k, double rho, std::size_t trials,
                                      std::uint64_t seed) {
    return mc_impl(p, k, rho, trials, seed, false);
}

}  // namespace rlab
