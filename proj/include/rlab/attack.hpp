#pragma once

#include <string>
#include <vector>

#include "rlab/dataset.hpp"
#include "rlab/tree.hpp"

namespace rlab {

// L0 eta=1 perturbation of a dataset against a target model. Each row differs
// from its source in at most one bit; labels are untouched.
struct AdversarialDataset {
    BitDataset data;
    std::vector<int> flips;  // per-row flipped column, -1 = unchanged
    std::string target_key;
};

// For each row the target classifies correctly, apply the first single-bit
// flip (ascending feature index) that makes the target misclassify. Rows
// already misclassified, or with no effective flip, stay unchanged.
AdversarialDataset attack_tree_l0(const BitDataset& data, const Tree& target);
AdversarialDataset attack_tree_l0_serial(const BitDataset& data, const Tree& target);

// Accuracy of a model on the adversarial rows.
double adversarial_score(const Tree& model, const AdversarialDataset& adv);
double adversarial_score(const RuleList& model, const AdversarialDataset& adv);

int rule_list_predict(const RuleList& rl, const BitVec& x);
int rule_list_predict_row(const RuleList& rl, const BitDataset& data, std::size_t row);

struct GapBoundReport {
    double bound = 0;         // (n_+ - nbar_+) / n
    double achieved_gap = 0;  // adversarial loss - clean loss under the attack
    std::size_t attack_index = 0;  // first rule predicting 1 (0-based)
    double clean_loss = 0;
    double adversarial_loss = 0;
};

// Guaranteed loss gap for a majority rule list with q_1 = 0 under the
// single-flip attack; the attack perturbs every correctly classified point
// captured at rule index >= I when some flip breaks it.
GapBoundReport rule_list_gap_bound(const RuleList& rl, const BitDataset& data);

struct TriangleReport {
    double lhs = 0;  // loss of f on the adversarial rows
    double rhs = 0;  // pattern distance to target on those rows + target's loss
};

TriangleReport triangle_check(const Tree& f, const Tree& target,
                              const AdversarialDataset& adv);

}  // namespace rlab
