#include "rlab/rashomon.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"
#include "rlab/rng.hpp"

namespace rlab {

void ObjectiveConfig::validate() const {
    if (lambda < 0) throw UsageError("config: lambda must be >= 0");
    if (epsilon < 0) throw UsageError("config: epsilon must be >= 0");
    if (depth_budget < 0) throw UsageError("config: depth_budget must be >= 0");
}

double objective(const Tree& t, const BitDataset& data, double lambda) {
    if (max_feature_index(t) >= static_cast<int>(data.cols()))
        throw UsageError("objective: width mismatch");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < data.rows(); ++i)
        if (predict_row(t, data, i) != static_cast<int>(data.label(i))) ++errors;
    return static_cast<double>(errors) / static_cast<double>(data.rows()) +
           lambda * leaf_count(t);
}

namespace {

constexpr double kObjTol = 1e-12;

// ---------------------------------------------------------------------------
// Enumerator internals. Subproblems are (support, remaining depth, usable
// feature mask); the memo stores the exact optimal objective contribution of
// a subproblem. Root-level children are evaluated concurrently, so the memo
// is sharded behind mutexes and behaves as one logical map.
// ---------------------------------------------------------------------------

struct MemoKey {
    std::vector<std::uint64_t> support;
    int depth;
    std::uint32_t feats;

    bool operator==(const MemoKey& o) const {
        return depth == o.depth && feats == o.feats && support == o.support;
    }
};

struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
        std::uint64_t h = fnv1a64(k.support.data(), k.support.size() * 8);
        h = fnv1a64(&k.depth, sizeof(k.depth), h);
        h = fnv1a64(&k.feats, sizeof(k.feats), h);
        return static_cast<std::size_t>(h);
    }
};

// skeleton fragment shared across the trees that contain it
struct SkNode {
    int feature = -1;
    std::shared_ptr<const SkNode> left, right;
};

struct Candidate {
    std::shared_ptr<const SkNode> node;
    int errors = 0;
    int leaves = 0;
};

class Enumerator {
public:
    Enumerator(const BitDataset& data, const ObjectiveConfig& config)
        : data_(data), config_(config), n_(data.rows()) {
        cols_ = data.feature_columns();
        labels_ = data.labels();
        if (config_.feature_subset.empty()) {
            for (std::size_t f = 0; f < data.cols(); ++f)
                root_feats_ |= (1u << f);
        } else {
            for (int f : config_.feature_subset) {
                if (f < 0 || f >= static_cast<int>(data.cols()))
                    throw UsageError("config: feature_subset index out of range");
                root_feats_ |= (1u << f);
            }
        }
        if (data.cols() > 30)
            throw LimitError("enumerate_rashomon: d > 30 unsupported");
        if (data.cols() > 20 || config_.depth_budget > 5)
            std::cerr << "warning: enumeration beyond d=20 / depth 5 may be slow\n";
    }

    double optimal() {
        BitVec all(n_, true);
        // fan out the root's child subproblems across threads
        std::vector<int> feats;
        for (std::size_t f = 0; f < data_.cols(); ++f)
            if (root_feats_ & (1u << f)) feats.push_back(static_cast<int>(f));
        if (config_.depth_budget >= 1) {
            parallel_for(feats.size() * 2, [&](std::size_t idx) {
                const int f = feats[idx / 2];
                const bool side = idx % 2;
                const BitVec sub = side ? BitVec::and_of(all, cols_[f])
                                        : BitVec::and_not(all, cols_[f]);
                opt(sub, config_.depth_budget - 1, root_feats_ & ~(1u << f));
            });
        }
        return opt(all, config_.depth_budget, root_feats_);
    }

    std::vector<Candidate> extract(double budget) {
        BitVec all(n_, true);
        return collect(all, config_.depth_budget, root_feats_, budget);
    }

    double leaf_cost_of(const BitVec& support) const {
        const std::size_t pos = BitVec::count_and(support, labels_);
        const std::size_t tot = support.count();
        const std::size_t err = std::min(pos, tot - pos);
        return static_cast<double>(err) / static_cast<double>(n_) + config_.lambda;
    }

    int leaf_errors_of(const BitVec& support) const {
        const std::size_t pos = BitVec::count_and(support, labels_);
        const std::size_t tot = support.count();
        return static_cast<int>(std::min(pos, tot - pos));
    }

    double cost(const Candidate& c) const {
        return static_cast<double>(c.errors) / static_cast<double>(n_) +
               config_.lambda * c.leaves;
    }

private:
    const BitDataset& data_;
    const ObjectiveConfig& config_;
    std::size_t n_;
    std::vector<BitVec> cols_;
    BitVec labels_;
    std::uint32_t root_feats_ = 0;

    static constexpr int kShards = 64;
    std::array<std::unordered_map<MemoKey, double, MemoKeyHash>, kShards> memo_;
    std::array<std::mutex, kShards> memo_mutex_;

    bool memo_get(const MemoKey& key, double& out) {
        const std::size_t shard = MemoKeyHash{}(key) % kShards;
        std::lock_guard<std::mutex> lock(memo_mutex_[shard]);
        auto it = memo_[shard].find(key);
        if (it == memo_[shard].end()) return false;
        out = it->second;
        return true;
    }

    void memo_put(const MemoKey& key, double value) {
        const std::size_t shard = MemoKeyHash{}(key) % kShards;
        std::lock_guard<std::mutex> lock(memo_mutex_[shard]);
        memo_[shard].emplace(key, value);
    }

    // exact optimal objective contribution of the subproblem
    double opt(const BitVec& support, int depth, std::uint32_t feats) {
        const double leaf = leaf_cost_of(support);
        if (depth == 0 || feats == 0) return leaf;
        // a pure (or empty) support cannot be improved by splitting
        if (leaf_errors_of(support) == 0) return leaf;

        MemoKey key{support.words(), depth, feats};
        double cached;
        if (memo_get(key, cached)) return cached;

        double best = leaf;
        for (std::uint32_t rest = feats; rest;) {
            const int f = std::countr_zero(rest);
            rest &= rest - 1;
            const std::uint32_t child_feats = feats & ~(1u << f);
            const BitVec s0 = BitVec::and_not(support, cols_[f]);
            const BitVec s1 = BitVec::and_of(support, cols_[f]);
            const double v = opt(s0, depth - 1, child_feats) + opt(s1, depth - 1, child_feats);
            if (v < best) best = v;
        }
        memo_put(key, best);
        return best;
    }

    // every subtree on `support` whose objective contribution is <= budget
    std::vector<Candidate> collect(const BitVec& support, int depth, std::uint32_t feats,
                                   double budget) {
        std::vector<Candidate> out;
        const int leaf_err = leaf_errors_of(support);
        const double leaf = leaf_cost_of(support);
        if (leaf <= budget + kObjTol) {
            Candidate c;
            c.node = std::make_shared<SkNode>();
            c.errors = leaf_err;
            c.leaves = 1;
            out.push_back(std::move(c));
        }
        if (depth == 0 || feats == 0) return out;

        for (std::uint32_t rest = feats; rest;) {
            const int f = std::countr_zero(rest);
            rest &= rest - 1;
            const std::uint32_t child_feats = feats & ~(1u << f);
            const BitVec s0 = BitVec::and_not(support, cols_[f]);
            const BitVec s1 = BitVec::and_of(support, cols_[f]);
            const double opt0 = opt(s0, depth - 1, child_feats);
            const double opt1 = opt(s1, depth - 1, child_feats);
            if (opt0 + opt1 > budget + kObjTol) continue;

            const std::vector<Candidate> lefts =
                collect(s0, depth - 1, child_feats, budget - opt1);
            const std::vector<Candidate> rights =
                collect(s1, depth - 1, child_feats, budget - opt0);
            for (const Candidate& l : lefts) {
                const double cl = cost(l);
                for (const Candidate& r : rights) {
                    if (cl + cost(r) > budget + kObjTol) continue;
                    Candidate c;
                    auto node = std::make_shared<SkNode>();
                    node->feature = f;
                    node->left = l.node;
                    node->right = r.node;
                    c.node = std::move(node);
                    c.errors = l.errors + r.errors;
                    c.leaves = l.leaves + r.leaves;
                    out.push_back(std::move(c));
                }
            }
        }
        return out;
    }
};

Tree materialize(const std::shared_ptr<const SkNode>& root) {
    Tree t;
    // preorder flatten
    std::function<int(const SkNode&)> rec = [&](const SkNode& sk) -> int {
        const int idx = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        if (sk.feature >= 0) {
            t.nodes[idx].feature = sk.feature;
            const int l = rec(*sk.left);
            const int r = rec(*sk.right);
            t.nodes[idx].left = l;
            t.nodes[idx].right = r;
        }
        return idx;
    };
    rec(*root);
    return t;
}

}  // namespace

double optimal_objective(const BitDataset& data, const ObjectiveConfig& config) {
    config.validate();
    if (data.rows() == 0) throw DataError("optimal_objective: empty dataset");
    Enumerator en(data, config);
    return en.optimal();
}

RashomonSet enumerate_rashomon(const BitDataset& data, const ObjectiveConfig& config) {
    config.validate();
    if (data.rows() == 0) throw DataError("enumerate_rashomon: empty dataset");

    Enumerator en(data, config);
    const double best = en.optimal();
    const double budget = best + config.epsilon;
    std::vector<Candidate> found = en.extract(budget);

    RashomonSet set;
    set.config = config;
    set.dataset_fingerprint = data.fingerprint_hex();
    set.trees.reserve(found.size());
    set.objectives.reserve(found.size());

    struct Scored {
        Tree tree;
        double obj;
        std::string key;
    };
    std::vector<Scored> scored(found.size());
    parallel_for(found.size(), [&](std::size_t i) {
        Tree t = fit_leaves(materialize(found[i].node), data);
        scored[i].obj = static_cast<double>(found[i].errors) /
                            static_cast<double>(data.rows()) +
                        config.lambda * found[i].leaves;
        scored[i].key = canonical_key(t);
        scored[i].tree = std::move(t);
    });
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.obj != b.obj) return a.obj < b.obj;
        return a.key < b.key;
    });
    for (auto& s : scored) {
        set.trees.push_back(std::move(s.tree));
        set.objectives.push_back(s.obj);
    }
    set.optimal_index = 0;
    return set;
}

std::vector<Tree> brute_force_trees(int d, int depth_budget) {
    if (d < 1 || d > 4 || depth_budget < 0 || depth_budget > 3)
        throw LimitError("brute_force_trees: guarded to d <= 4, depth <= 3");

    // skeletons over (remaining depth, usable feature set), recursively
    std::function<std::vector<Tree>(int, std::uint32_t)> gen =
        [&](int depth, std::uint32_t feats) -> std::vector<Tree> {
        std::vector<Tree> out;
        out.push_back(make_leaf(0));
        if (depth == 0) return out;
        for (int f = 0; f < d; ++f) {
            if (!(feats & (1u << f))) continue;
            const std::uint32_t child = feats & ~(1u << f);
            const std::vector<Tree> lefts = gen(depth - 1, child);
            const std::vector<Tree> rights = gen(depth - 1, child);
            for (const Tree& l : lefts) {
                for (const Tree& r : rights) {
                    Tree t;
                    TreeNode root;
                    root.feature = f;
                    t.nodes.push_back(root);
                    const int off_l = static_cast<int>(t.nodes.size());
                    for (const auto& n : l.nodes) {
                        TreeNode m = n;
                        if (!m.is_leaf()) {
                            m.left += off_l;
                            m.right += off_l;
                        }
                        t.nodes.push_back(m);
                    }
                    const int off_r = static_cast<int>(t.nodes.size());
                    for (const auto& n : r.nodes) {
                        TreeNode m = n;
                        if (!m.is_leaf()) {
                            m.left += off_r;
                            m.right += off_r;
                        }
                        t.nodes.push_back(m);
                    }
                    t.nodes[0].left = off_l;
                    t.nodes[0].right = off_r;
                    out.push_back(std::move(t));
                }
            }
        }
        return out;
    };

    std::uint32_t all = 0;
    for (int f = 0; f < d; ++f) all |= (1u << f);
    return gen(depth_budget, all);
}

}  // namespace rlab
