#include "rlab/stability.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

namespace {

// Identity across datasets is the structure: refitting leaves on the
// neighboring dataset keeps the skeleton but may flip a majority label, and
// the containment theorem concerns the model's structure-optimal completion.
std::unordered_set<std::string> key_set(const RashomonSet& set) {
    std::unordered_set<std::string> keys;
    for (const Tree& t : set.trees) keys.insert(skeleton_key(t));
    return keys;
}

// filter a relaxed enumeration down to a tighter adder
std::unordered_set<std::string> keys_within(const RashomonSet& set, double epsilon) {
    std::unordered_set<std::string> keys;
    const double cutoff = set.optimal_objective() + epsilon + 1e-12;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set.objectives[i] <= cutoff) keys.insert(skeleton_key(set.trees[i]));
    return keys;
}

double fraction_contained(const std::unordered_set<std::string>& a,
                          const std::unordered_set<std::string>& b) {
    if (a.empty()) return 0;
    std::size_t hit = 0;
    for (const auto& k : a)
        if (b.count(k)) ++hit;
    return static_cast<double>(hit) / static_cast<double>(a.size());
}

}  // namespace

double containment_fraction(const RashomonSet& a, const RashomonSet& b) {
    if (a.size() == 0 || b.size() == 0)
        throw UsageError("containment_fraction: sets must be nonempty");
    return fraction_contained(key_set(a), key_set(b));
}

NeighborReport neighbor_containment_check(const BitDataset& data, std::size_t k,
                                          const ObjectiveConfig& config,
                                          std::uint64_t seed) {
    config.validate();
    if (k > data.rows()) throw UsageError("neighbor_containment_check: k > n");

    NeighborReport report;
    report.k = k;
    report.epsilon = config.epsilon;
    report.epsilon_relaxed =
        config.epsilon + 2.0 * static_cast<double>(k) / static_cast<double>(data.rows());

    auto [perturbed, pr] = perturb_targeted(data, k, seed);
    (void)pr;

    ObjectiveConfig relaxed = config;
    relaxed.epsilon = report.epsilon_relaxed;

    const RashomonSet rs_relaxed = enumerate_rashomon(data, relaxed);
    const RashomonSet rsp_relaxed = enumerate_rashomon(perturbed, relaxed);

    const auto keys_s = keys_within(rs_relaxed, config.epsilon);
    const auto keys_s_relaxed = key_set(rs_relaxed);
    const auto keys_sp = keys_within(rsp_relaxed, config.epsilon);
    const auto keys_sp_relaxed = key_set(rsp_relaxed);

    report.size_s = keys_s.size();
    report.size_s_relaxed = keys_s_relaxed.size();
    report.size_sp = keys_sp.size();
    report.size_sp_relaxed = keys_sp_relaxed.size();

    report.frac_forward = fraction_contained(keys_s, keys_sp_relaxed);
    report.frac_backward = fraction_contained(keys_sp, keys_s_relaxed);
    report.frac_unrelaxed = fraction_contained(keys_s, keys_sp);
    return report;
}

double true_risk(const Tree& f, const DiscreteDistribution& dist) {
    dist.validate();
    if (max_feature_index(f) >= dist.dims) throw UsageError("true_risk: width mismatch");
    double risk = 0;
    for (std::size_t a = 0; a < dist.atoms(); ++a) {
        if (dist.mass[a] == 0) continue;
        BitVec x(static_cast<std::size_t>(dist.dims));
        for (int j = 0; j < dist.dims; ++j)
            if ((a >> j) & 1) x.set(static_cast<std::size_t>(j), true);
        const int pred = predict(f, x);
        risk += dist.mass[a] * (pred == 0 ? dist.cond[a] : 1.0 - dist.cond[a]);
    }
    return risk;
}

namespace {

// all depth-bounded skeletons with every leaf labeling
std::vector<Tree> labeled_model_space(int d, int depth_budget) {
    std::vector<Tree> out;
    for (const Tree& skeleton : brute_force_trees(d, depth_budget)) {
        std::vector<int> leaf_nodes;
        for (std::size_t i = 0; i < skeleton.nodes.size(); ++i)
            if (skeleton.nodes[i].is_leaf()) leaf_nodes.push_back(static_cast<int>(i));
        const std::size_t labelings = std::size_t{1} << leaf_nodes.size();
        for (std::size_t mask = 0; mask < labelings; ++mask) {
            Tree t = skeleton;
            for (std::size_t b = 0; b < leaf_nodes.size(); ++b)
                t.nodes[static_cast<std::size_t>(leaf_nodes[b])].hard =
                    static_cast<int>((mask >> b) & 1);
            out.push_back(std::move(t));
        }
    }
    return out;
}

}  // namespace

ShiftReport distribution_shift_check(const DiscreteDistribution& d1,
                                     const DiscreteDistribution& d2, double epsilon,
                                     const ObjectiveConfig& config) {
    d1.validate();
    d2.validate();
    if (epsilon <= 0) throw UsageError("distribution_shift_check: epsilon must be > 0");
    if (d1.dims != d2.dims) throw UsageError("distribution_shift_check: dims differ");
    if (d1.dims > 4 || config.depth_budget > 3)
        throw LimitError("distribution_shift_check: exact space capped at d <= 4, depth <= 3");

    for (std::size_t a = 0; a < d1.atoms(); ++a) {
        if (d1.mass[a] > 0 && d2.mass[a] <= 0)
            throw DataError("distribution_shift_check: d2 lacks support where d1 has mass");
        if ((d1.mass[a] > 0 || d2.mass[a] > 0) &&
            std::abs(d1.cond[a] - d2.cond[a]) > 1e-12)
            throw DataError("distribution_shift_check: conditional laws differ");
    }

    ShiftReport report;
    report.kl_threshold = epsilon * epsilon / 8.0;
    double kl = 0;
    for (std::size_t a = 0; a < d1.atoms(); ++a)
        if (d1.mass[a] > 0) kl += d1.mass[a] * std::log(d1.mass[a] / d2.mass[a]);
    report.kl = kl;
    report.condition_holds = kl <= report.kl_threshold;
    if (!report.condition_holds) return report;  // theorem gives sufficiency only

    const std::vector<Tree> space = labeled_model_space(d1.dims, config.depth_budget);
    std::vector<double> risk1(space.size()), risk2(space.size());
    parallel_for(space.size(), [&](std::size_t i) {
        risk1[i] = true_risk(space[i], d1);
        risk2[i] = true_risk(space[i], d2);
    });

    double best1 = std::numeric_limits<double>::infinity();
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < space.size(); ++i) {
        best1 = std::min(best1, risk1[i]);
        best2 = std::min(best2, risk2[i]);
    }

    std::unordered_set<std::string> set1, set2;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const std::string key = canonical_key(space[i]);
        if (risk1[i] <= best1 + epsilon / 2 + 1e-12) set1.insert(key);
        if (risk2[i] <= best2 + epsilon + 1e-12) set2.insert(key);
    }
    report.size_d1 = set1.size();
    report.size_d2 = set2.size();
    report.containment = fraction_contained(set1, set2);
    return report;
}

}  // namespace rlab
