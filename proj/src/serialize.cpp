#include "rlab/serialize.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw DataError("format_double: conversion failed");
    return std::string(buf, ptr);
}

json tree_to_json(const Tree& t) {
    std::function<json(int)> rec = [&](int idx) -> json {
        const TreeNode& n = t.nodes[static_cast<std::size_t>(idx)];
        if (n.is_leaf())
            return json{{"type", "leaf"},
                        {"hard", n.hard},
                        {"soft", n.soft},
                        {"count0", n.count0},
                        {"count1", n.count1}};
        return json{{"type", "internal"},
                    {"feature", n.feature},
                    {"left", rec(n.left)},
                    {"right", rec(n.right)}};
    };
    if (t.empty()) throw UsageError("tree_to_json: empty tree");
    return rec(0);
}

Tree tree_from_json(const json& j) {
    Tree t;
    std::function<int(const json&)> rec = [&](const json& node) -> int {
        const int idx = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        const std::string type = node.at("type").get<std::string>();
        if (type == "leaf") {
            t.nodes[idx].hard = node.at("hard").get<int>();
            t.nodes[idx].soft = node.at("soft").get<double>();
            t.nodes[idx].count0 = node.at("count0").get<std::uint32_t>();
            t.nodes[idx].count1 = node.at("count1").get<std::uint32_t>();
        } else if (type == "internal") {
            t.nodes[idx].feature = node.at("feature").get<int>();
            const int l = rec(node.at("left"));
            const int r = rec(node.at("right"));
            t.nodes[idx].left = l;
            t.nodes[idx].right = r;
        } else {
            throw DataError("tree_from_json: unknown node type '" + type + "'");
        }
        return idx;
    };
    rec(j);
    return t;
}

json rashomon_to_json(const RashomonSet& set) {
    json config = {{"lambda", set.config.lambda},
                   {"epsilon", set.config.epsilon},
                   {"depth_budget", set.config.depth_budget}};
    if (!set.config.feature_subset.empty()) config["feature_subset"] = set.config.feature_subset;
    json models = json::array();
    for (std::size_t i = 0; i < set.size(); ++i)
        models.push_back({{"tree", tree_to_json(set.trees[i])},
                          {"objective", set.objectives[i]}});
    return json{{"config", config},
                {"dataset_fingerprint", set.dataset_fingerprint},
                {"optimal_index", set.optimal_index},
                {"models", models}};
}

RashomonSet rashomon_from_json(const json& j) {
    RashomonSet set;
    const json& config = j.at("config");
    set.config.lambda = config.at("lambda").get<double>();
    set.config.epsilon = config.at("epsilon").get<double>();
    set.config.depth_budget = config.at("depth_budget").get<int>();
    if (config.contains("feature_subset"))
        set.config.feature_subset = config.at("feature_subset").get<std::vector<int>>();
    set.dataset_fingerprint = j.at("dataset_fingerprint").get<std::string>();
    set.optimal_index = j.at("optimal_index").get<std::size_t>();
    for (const json& entry : j.at("models")) {
        set.trees.push_back(tree_from_json(entry.at("tree")));
        set.objectives.push_back(entry.at("objective").get<double>());
    }
    if (set.trees.empty()) throw DataError("rashomon_from_json: empty model list");
    if (set.optimal_index >= set.size())
        throw DataError("rashomon_from_json: optimal_index out of range");
    return set;
}

void save_rashomon(const RashomonSet& set, const std::string& path) {
    write_text_file(path, rashomon_to_json(set).dump(2) + "\n");
}

RashomonSet load_rashomon(const std::string& path) {
    return rashomon_from_json(json::parse(read_text_file(path)));
}

json selection_to_json(const EnsembleSelection& sel) {
    return json{{"strategy", strategy_to_string(sel.strategy)},
                {"seed", sel.seed},
                {"indices", sel.indices},
                {"distances_to_optimal", sel.distances_to_optimal}};
}

json leaf_count_summary_to_json(const LeafCountSummary& summary) {
    json trees = json::array();
    for (const auto& entry : summary.trees) {
        json leaves = json::array();
        for (const auto& c : entry.leaf_counts) leaves.push_back({c[0], c[1]});
        trees.push_back({{"tree", tree_to_json(entry.tree)}, {"leaves", leaves}});
    }
    return json{{"n", summary.n}, {"trees", trees}};
}

LeafCountSummary leaf_count_summary_from_json(const json& j) {
    LeafCountSummary summary;
    summary.n = j.at("n").get<std::size_t>();
    for (const json& entry : j.at("trees")) {
        LeafCountSummary::PerTree per;
        per.tree = tree_from_json(entry.at("tree"));
        for (const json& c : entry.at("leaves"))
            per.leaf_counts.push_back({c.at(0).get<std::uint32_t>(),
                                       c.at(1).get<std::uint32_t>()});
        summary.trees.push_back(std::move(per));
    }
    return summary;
}

void save_adversarial(const AdversarialDataset& adv, const std::string& csv_path,
                      const std::string& sidecar_path) {
    write_csv(adv.data, csv_path);
    json flips = json::array();
    for (int f : adv.flips) {
        if (f < 0)
            flips.push_back(nullptr);
        else
            flips.push_back(f);
    }
    write_text_file(sidecar_path,
                    json{{"target_key", adv.target_key}, {"flips", flips}}.dump(2) + "\n");
}

json neighbor_report_to_json(const NeighborReport& report) {
    return json{{"k", report.k},
                {"epsilon", report.epsilon},
                {"epsilon_relaxed", report.epsilon_relaxed},
                {"frac_forward", report.frac_forward},
                {"frac_backward", report.frac_backward},
                {"frac_unrelaxed", report.frac_unrelaxed},
                {"sizes",
                 {{"original", report.size_s},
                  {"original_relaxed", report.size_s_relaxed},
                  {"perturbed", report.size_sp},
                  {"perturbed_relaxed", report.size_sp_relaxed}}}};
}

json reconstruction_report_to_json(const ReconstructionResult& result,
                                   double baseline_error) {
    return json{{"error", result.error},
                {"baseline_error", baseline_error},
                {"nodes", result.solver_nodes},
                {"exhausted", result.exhausted}};
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << text;
    if (!out) throw DataError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace rlab
