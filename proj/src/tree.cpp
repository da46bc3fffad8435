#include "rlab/tree.hpp"

#include <algorithm>
#include <functional>

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

Tree make_leaf(int hard) {
    Tree t;
    TreeNode leaf;
    leaf.hard = hard;
    t.nodes.push_back(leaf);
    return t;
}

Tree make_stump(int feature, int hard_left, int hard_right) {
    Tree t;
    TreeNode root;
    root.feature = feature;
    root.left = 1;
    root.right = 2;
    t.nodes.push_back(root);
    TreeNode l;
    l.hard = hard_left;
    TreeNode r;
    r.hard = hard_right;
    t.nodes.push_back(l);
    t.nodes.push_back(r);
    return t;
}

int leaf_count(const Tree& t) {
    int c = 0;
    for (const auto& n : t.nodes)
        if (n.is_leaf()) ++c;
    return c;
}

int tree_depth(const Tree& t) {
    std::function<int(int)> rec = [&](int idx) -> int {
        const TreeNode& n = t.nodes[idx];
        if (n.is_leaf()) return 0;
        return 1 + std::max(rec(n.left), rec(n.right));
    };
    return t.empty() ? 0 : rec(0);
}

int max_feature_index(const Tree& t) {
    int m = -1;
    for (const auto& n : t.nodes)
        if (!n.is_leaf()) m = std::max(m, n.feature);
    return m;
}

std::string canonical_key(const Tree& t) {
    std::string out;
    std::function<void(int)> rec = [&](int idx) {
        const TreeNode& n = t.nodes[idx];
        if (n.is_leaf()) {
            out += 'L';
            out += n.hard ? '1' : '0';
            return;
        }
        out += 'I';
        out += std::to_string(n.feature);
        out += '(';
        rec(n.left);
        out += ',';
        rec(n.right);
        out += ')';
    };
    if (!t.empty()) rec(0);
    return out;
}

std::string skeleton_key(const Tree& t) {
    std::string out;
    std::function<void(int)> rec = [&](int idx) {
        const TreeNode& n = t.nodes[idx];
        if (n.is_leaf()) {
            out += 'L';
            return;
        }
        out += 'I';
        out += std::to_string(n.feature);
        out += '(';
        rec(n.left);
        out += ',';
        rec(n.right);
        out += ')';
    };
    if (!t.empty()) rec(0);
    return out;
}

namespace {

template <class BitGetter>
int route(const Tree& t, BitGetter&& bit) {
    int idx = 0;
    while (true) {
        const TreeNode& n = t.nodes[idx];
        if (n.is_leaf()) return idx;
        idx = bit(n.feature) ? n.right : n.left;
    }
}

}  // namespace

int predict(const Tree& t, const BitVec& x) {
    if (max_feature_index(t) >= static_cast<int>(x.size()))
        throw UsageError("predict: feature index out of range");
    return t.nodes[route(t, [&](int f) { return x.get(static_cast<std::size_t>(f)); })].hard;
}

int predict_row(const Tree& t, const BitDataset& data, std::size_t row) {
    return t.nodes[route(t, [&](int f) { return data.feature(row, static_cast<std::size_t>(f)); })]
        .hard;
}

double predict_soft_row(const Tree& t, const BitDataset& data, std::size_t row) {
    return t.nodes[route(t, [&](int f) { return data.feature(row, static_cast<std::size_t>(f)); })]
        .soft;
}

double predict_soft(const Tree& t, const BitVec& x) {
    return t.nodes[route(t, [&](int f) { return x.get(static_cast<std::size_t>(f)); })].soft;
}

Tree fit_leaves(const Tree& skeleton, const BitDataset& data, double delta) {
    if (skeleton.empty()) throw UsageError("fit_leaves: empty skeleton");
    if (data.rows() == 0) throw DataError("fit_leaves: empty dataset");
    if (max_feature_index(skeleton) >= static_cast<int>(data.cols()))
        throw UsageError("fit_leaves: skeleton uses features beyond data width");
    if (delta <= 0 || delta > 0.5) throw UsageError("fit_leaves: delta must be in (0, 0.5]");

    Tree t = skeleton;
    for (auto& n : t.nodes) {
        n.count0 = 0;
        n.count1 = 0;
    }
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const int leaf =
            route(t, [&](int f) { return data.feature(i, static_cast<std::size_t>(f)); });
        if (data.label(i))
            ++t.nodes[leaf].count1;
        else
            ++t.nodes[leaf].count0;
    }
    for (auto& n : t.nodes) {
        if (!n.is_leaf()) continue;
        n.hard = n.count1 > n.count0 ? 1 : 0;
        const double raw = (n.count1 + 1.0) / (n.count0 + n.count1 + 2.0);
        n.soft = std::clamp(raw, delta, 1.0 - delta);
    }
    return t;
}

ClassificationPattern classification_pattern(const Tree& t, const BitDataset& data) {
    if (max_feature_index(t) >= static_cast<int>(data.cols()))
        throw UsageError("classification_pattern: width mismatch");
    ClassificationPattern p;
    p.bits = BitVec(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i)
        if (predict_row(t, data, i)) p.bits.set(i, true);
    return p;
}

std::vector<ClassificationPattern> classification_patterns_serial(
    const std::vector<Tree>& trees, const BitDataset& data) {
    std::vector<ClassificationPattern> out(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i)
        out[i] = classification_pattern(trees[i], data);
    return out;
}

std::vector<ClassificationPattern> classification_patterns(const std::vector<Tree>& trees,
                                                           const BitDataset& data) {
    std::vector<ClassificationPattern> out(trees.size());
    parallel_for(trees.size(), [&](std::size_t i) {
        out[i] = classification_pattern(trees[i], data);
    });
    return out;
}

}  // namespace rlab
