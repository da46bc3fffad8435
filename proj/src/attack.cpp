#include "rlab/attack.hpp"

#include "rlab/errors.hpp"
#include "rlab/parallel.hpp"

namespace rlab {

namespace {

// -1 when no single flip changes the target's answer away from the label
int find_breaking_flip(const Tree& target, BitVec& row, int label) {
    const int d = static_cast<int>(row.size());
    for (int f = 0; f < d; ++f) {
        row.flip(static_cast<std::size_t>(f));
        const int pred = predict(target, row);
        row.flip(static_cast<std::size_t>(f));
        if (pred != label) return f;
    }
    return -1;
}

template <class AttackRow>
AdversarialDataset attack_common(const BitDataset& data, const Tree& target,
                                 AttackRow&& per_row) {
    if (max_feature_index(target) >= static_cast<int>(data.cols()))
        throw UsageError("attack_tree_l0: width mismatch");
    AdversarialDataset adv;
    adv.data = data;
    adv.flips.assign(data.rows(), -1);
    adv.target_key = canonical_key(target);
    per_row(adv);
    return adv;
}

void attack_row(const BitDataset& data, const Tree& target, AdversarialDataset& adv,
                std::size_t i) {
    const int label = data.label(i) ? 1 : 0;
    if (predict_row(target, data, i) != label) return;  // already misclassified
    BitVec row = data.row_bits(i);
    const int f = find_breaking_flip(target, row, label);
    if (f < 0) return;
    row.flip(static_cast<std::size_t>(f));
    adv.data.assign_row(i, row);
    adv.flips[i] = f;
}

}  // namespace

AdversarialDataset attack_tree_l0(const BitDataset& data, const Tree& target) {
    return attack_common(data, target, [&](AdversarialDataset& adv) {
        parallel_for(data.rows(), [&](std::size_t i) { attack_row(data, target, adv, i); });
    });
}

AdversarialDataset attack_tree_l0_serial(const BitDataset& data, const Tree& target) {
    return attack_common(data, target, [&](AdversarialDataset& adv) {
        for (std::size_t i = 0; i < data.rows(); ++i) attack_row(data, target, adv, i);
    });
}

double adversarial_score(const Tree& model, const AdversarialDataset& adv) {
    if (max_feature_index(model) >= static_cast<int>(adv.data.cols()))
        throw UsageError("adversarial_score: width mismatch");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < adv.data.rows(); ++i)
        if (predict_row(model, adv.data, i) == static_cast<int>(adv.data.label(i))) ++correct;
    return static_cast<double>(correct) / static_cast<double>(adv.data.rows());
}

double adversarial_score(const RuleList& model, const AdversarialDataset& adv) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < adv.data.rows(); ++i)
        if (rule_list_predict_row(model, adv.data, i) ==
            static_cast<int>(adv.data.label(i)))
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(adv.data.rows());
}

int rule_list_predict(const RuleList& rl, const BitVec& x) {
    for (std::size_t k = 0; k < rl.size(); ++k) {
        const auto& a = rl.antecedents[k];
        if (a.feature < 0 || a.feature >= static_cast<int>(x.size()))
            throw UsageError("rule_list_predict: feature index out of range");
        if (x.get(static_cast<std::size_t>(a.feature)) == (a.required_bit != 0))
            return rl.predictions[k];
    }
    return rl.default_prediction;
}

int rule_list_predict_row(const RuleList& rl, const BitDataset& data, std::size_t row) {
    for (std::size_t k = 0; k < rl.size(); ++k) {
        const auto& a = rl.antecedents[k];
        if (a.feature < 0 || a.feature >= static_cast<int>(data.cols()))
            throw UsageError("rule_list_predict: feature index out of range");
        if (data.feature(row, static_cast<std::size_t>(a.feature)) == (a.required_bit != 0))
            return rl.predictions[k];
    }
    return rl.default_prediction;
}

GapBoundReport rule_list_gap_bound(const RuleList& rl, const BitDataset& data) {
    const std::size_t n = data.rows();
    const std::size_t K = rl.size();
    if (K == 0) throw UsageError("rule_list_gap_bound: empty rule list");
    if (rl.predictions.size() != K)
        throw UsageError("rule_list_gap_bound: predictions/antecedents size mismatch");
    if (rl.predictions[0] != 0)
        throw UsageError("rule_list_gap_bound: hypothesis q_1 = 0 violated");

    // capture index per row, -1 for the default rule
    std::vector<int> captured(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < K; ++k) {
            const auto& a = rl.antecedents[k];
            if (data.feature(i, static_cast<std::size_t>(a.feature)) == (a.required_bit != 0)) {
                captured[i] = static_cast<int>(k);
                break;
            }
        }
    }

    std::vector<std::size_t> neg(K, 0), pos(K, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (captured[i] < 0) continue;
        if (data.label(i))
            ++pos[static_cast<std::size_t>(captured[i])];
        else
            ++neg[static_cast<std::size_t>(captured[i])];
    }
    for (std::size_t k = 0; k < K; ++k) {
        // majority hypothesis; ties may break either way
        if (rl.predictions[k] == 1 && pos[k] < neg[k])
            throw UsageError("rule_list_gap_bound: rule " + std::to_string(k + 1) +
                             " predicts 1 but captures a negative majority");
        if (rl.predictions[k] == 0 && neg[k] < pos[k])
            throw UsageError("rule_list_gap_bound: rule " + std::to_string(k + 1) +
                             " predicts 0 but captures a positive majority");
    }

    std::size_t attack_index = K;
    for (std::size_t k = 0; k < K; ++k)
        if (rl.predictions[k] == 1) {
            attack_index = k;
            break;
        }
    if (attack_index == K)
        throw UsageError("rule_list_gap_bound: no rule predicts 1 (index I undefined)");

    std::size_t n_plus = 0, nbar_plus = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (data.label(i)) {
            ++n_plus;
            if (captured[i] >= 0 && captured[i] < static_cast<int>(attack_index)) ++nbar_plus;
        }
    }

    GapBoundReport report;
    report.attack_index = attack_index;
    report.bound = (static_cast<double>(n_plus) - static_cast<double>(nbar_plus)) /
                   static_cast<double>(n);

    // the proof's flip set: break every correct point captured at index >= I
    std::size_t clean_errors = 0, adv_errors = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int label = data.label(i) ? 1 : 0;
        BitVec row = data.row_bits(i);
        const int clean_pred = rule_list_predict(rl, row);
        if (clean_pred != label) ++clean_errors;

        int adv_pred = clean_pred;
        if (captured[i] >= static_cast<int>(attack_index) && clean_pred == label) {
            for (std::size_t f = 0; f < data.cols(); ++f) {
                row.flip(f);
                const int pred = rule_list_predict(rl, row);
                row.flip(f);
                if (pred != label) {
                    adv_pred = pred;
                    break;
                }
            }
        }
        if (adv_pred != label) ++adv_errors;
    }
    report.clean_loss = static_cast<double>(clean_errors) / static_cast<double>(n);
    report.adversarial_loss = static_cast<double>(adv_errors) / static_cast<double>(n);
    report.achieved_gap = report.adversarial_loss - report.clean_loss;
    return report;
}

TriangleReport triangle_check(const Tree& f, const Tree& target,
                              const AdversarialDataset& adv) {
    const std::size_t n = adv.data.rows();
    if (max_feature_index(f) >= static_cast<int>(adv.data.cols()) ||
        max_feature_index(target) >= static_cast<int>(adv.data.cols()))
        throw UsageError("triangle_check: width mismatch");
    std::size_t f_errors = 0, disagree = 0, target_errors = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int pf = predict_row(f, adv.data, i);
        const int pt = predict_row(target, adv.data, i);
        const int y = adv.data.label(i) ? 1 : 0;
        if (pf != y) ++f_errors;
        if (pf != pt) ++disagree;
        if (pt != y) ++target_errors;
    }
    TriangleReport report;
    report.lhs = static_cast<double>(f_errors) / static_cast<double>(n);
    report.rhs = static_cast<double>(disagree) / static_cast<double>(n) +
                 static_cast<double>(target_errors) / static_cast<double>(n);
    return report;
}

}  // namespace rlab
