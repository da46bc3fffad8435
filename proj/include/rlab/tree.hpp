#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlab/bitvec.hpp"
#include "rlab/dataset.hpp"

namespace rlab {

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    int left = -1;     // child for feature == 0
    int right = -1;    // child for feature == 1
    // leaf payload, filled by fit_leaves
    int hard = 0;
    double soft = 0.5;
    std::uint32_t count0 = 0;
    std::uint32_t count1 = 0;

    bool is_leaf() const { return feature < 0; }
};

// Sparse binary decision tree. Nodes live in a flat vector, root first.
// A skeleton is a Tree whose leaf payloads are still at defaults.
struct Tree {
    std::vector<TreeNode> nodes;

    bool empty() const { return nodes.empty(); }
};

Tree make_leaf(int hard = 0);
Tree make_stump(int feature, int hard_left, int hard_right);

int leaf_count(const Tree& t);
int tree_depth(const Tree& t);
int max_feature_index(const Tree& t);  // -1 for a bare leaf

// Pre-order serialization "I<f>(left,right)" / "L<hard>". Equal keys iff
// identical structure and hard predictions.
std::string canonical_key(const Tree& t);

// Structure only ("L" leaves, no hard bit). This is the identity that
// survives refitting leaves on a modified dataset; cross-dataset containment
// checks compare skeletons.
std::string skeleton_key(const Tree& t);

int predict(const Tree& t, const BitVec& x);
int predict_row(const Tree& t, const BitDataset& data, std::size_t row);
double predict_soft_row(const Tree& t, const BitDataset& data, std::size_t row);
double predict_soft(const Tree& t, const BitVec& x);

// Per-leaf class counts from routing `data`; hard = majority with ties
// predicting 0, soft = Laplace-smoothed frequency clipped to [delta, 1-delta].
Tree fit_leaves(const Tree& skeleton, const BitDataset& data, double delta = 0.05);

struct ClassificationPattern {
    BitVec bits;

    std::size_t size() const { return bits.size(); }
};

ClassificationPattern classification_pattern(const Tree& t, const BitDataset& data);

// Pattern precomputation for a whole model collection; OpenMP over trees with
// a serial twin kept as the reference.
std::vector<ClassificationPattern> classification_patterns(const std::vector<Tree>& trees,
                                                           const BitDataset& data);
std::vector<ClassificationPattern> classification_patterns_serial(
    const std::vector<Tree>& trees, const BitDataset& data);

// Rule list quadruple: ordered single-literal antecedents with per-rule
// predictions and a default for uncaptured points.
struct RuleList {
    struct Antecedent {
        int feature = 0;
        int required_bit = 0;
    };
    std::vector<Antecedent> antecedents;
    std::vector<int> predictions;  // q_1..q_K
    int default_prediction = 0;    // q_0

    std::size_t size() const { return antecedents.size(); }
};

}  // namespace rlab
