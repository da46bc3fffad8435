#include "rlab/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <sstream>

#include "rlab/attack.hpp"
#include "rlab/bounds.hpp"
#include "rlab/dataset.hpp"
#include "rlab/errors.hpp"
#include "rlab/linear.hpp"
#include "rlab/parallel.hpp"
#include "rlab/privacy.hpp"
#include "rlab/rashomon.hpp"
#include "rlab/rng.hpp"
#include "rlab/selection.hpp"
#include "rlab/serialize.hpp"
#include "rlab/stability.hpp"
#include "rlab/svg.hpp"

namespace rlab {

namespace {

// CSV writer: header, rows, then a trailing "# config: <JSON>" comment.
struct CsvOut {
    std::string text;

    explicit CsvOut(const std::string& header) { text = header + "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) text += ',';
            text += cells[i];
        }
        text += '\n';
    }
    void finish(const json& config, const std::string& path) {
        text += "# config: " + config.dump() + "\n";
        write_text_file(path, text);
    }
};

std::string fmt(double v) { return format_double(v); }

std::vector<std::size_t> parse_sizes(const std::string& list) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            sizes.push_back(static_cast<std::size_t>(std::stoull(tok)));
        } catch (...) {
            throw UsageError("bad --sizes entry '" + tok + "'");
        }
    }
    if (sizes.empty()) throw UsageError("--sizes is empty");
    return sizes;
}

void check_fingerprint(const RashomonSet& set, const BitDataset& data) {
    if (set.dataset_fingerprint != data.fingerprint_hex())
        throw DataError("dataset fingerprint mismatch: set was built on different data");
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
    std::string data_path, out_path, label_column = "y";
    double lambda = 0.01, epsilon = 0.03;
    int depth = 3;
    bool epsilon_relative = false;
};

int cmd_enumerate(const EnumerateArgs& args) {
    const BitDataset data = load_csv(args.data_path, args.label_column);
    ObjectiveConfig config;
    config.lambda = args.lambda;
    config.epsilon = args.epsilon;
    config.depth_budget = args.depth;
    if (args.epsilon_relative) {
        config.epsilon = 0;
        const double best = optimal_objective(data, config);
        config.epsilon = args.epsilon * best;
    }
    const RashomonSet set = enumerate_rashomon(data, config);
    save_rashomon(set, args.out_path);
    std::cout << "rashomon set: size=" << set.size()
              << " optimal_objective=" << fmt(set.optimal_objective())
              << " epsilon=" << fmt(config.epsilon) << "\n";
    return 0;
}

// ---------------------------------------------------------------- robustness

struct RobustnessArgs {
    std::string set_path, data_path, out_path, eval_path, adv_out;
    bool svg = false;
    std::uint64_t seed = 42;
};

int cmd_robustness(const RobustnessArgs& args) {
    const RashomonSet set = load_rashomon(args.set_path);
    const BitDataset data = load_csv(args.data_path);
    check_fingerprint(set, data);

    const AdversarialDataset adv = attack_tree_l0(data, set.optimal());
    if (!args.adv_out.empty())
        save_adversarial(adv, args.adv_out, args.adv_out + ".json");
    // distances on the adversarial rows by default so the triangle bound can
    // be re-checked row by row from the emitted CSV
    std::vector<ClassificationPattern> patterns;
    if (args.eval_path.empty()) {
        patterns = classification_patterns(set.trees, adv.data);
    } else {
        const BitDataset eval_data = load_csv(args.eval_path);
        patterns = classification_patterns(set.trees, eval_data);
    }

    std::vector<double> dists(set.size()), scores(set.size());
    parallel_for(set.size(), [&](std::size_t i) {
        dists[i] = hamming(patterns[i], patterns[set.optimal_index]);
        scores[i] = adversarial_score(set.trees[i], adv);
    });

    CsvOut csv("tree_key,hamming_to_optimal,adversarial_score");
    for (std::size_t i = 0; i < set.size(); ++i)
        csv.row({canonical_key(set.trees[i]), fmt(dists[i]), fmt(scores[i])});
    const json config = {{"command", "robustness"},
                         {"set", args.set_path},
                         {"data", args.data_path},
                         {"seed", args.seed}};
    csv.finish(config, args.out_path);
    if (args.svg) {
        SvgSeries scatter{"trees", dists, scores, false};
        write_text_file(args.out_path + ".svg",
                        render_svg_chart({scatter}, "hamming to optimal",
                                         "adversarial score"));
    }

    json sidecar = {{"target_key", adv.target_key},
                    {"target_adversarial_score", adversarial_score(set.optimal(), adv)}};
    try {
        sidecar["spearman"] = spearman(dists, scores);
    } catch (const UsageError&) {
        sidecar["spearman"] = nullptr;  // degenerate (constant) columns
    }
    write_text_file(args.out_path + ".json", sidecar.dump(2) + "\n");
    std::cout << "robustness: trees=" << set.size() << " spearman="
              << (sidecar["spearman"].is_null() ? std::string("n/a")
                                                : fmt(sidecar["spearman"].get<double>()))
              << "\n";
    return 0;
}

// ---------------------------------------------------------------- privacy

struct PrivacyArgs {
    std::string set_path, data_path, out_path, strategy = "increment";
    std::string sizes = "1,2,5,10";
    std::size_t seeds = 5;
    std::size_t budget = 2000000;
    std::uint64_t seed = 42;
    std::string farthest_agg = "min";
    bool svg = false;
};

int cmd_privacy(const PrivacyArgs& args) {
    const RashomonSet set = load_rashomon(args.set_path);
    const BitDataset data = load_csv(args.data_path);
    check_fingerprint(set, data);
    if (data.rows() > 30)
        throw LimitError("privacy: reconstruction path requires n <= 30");

    const Strategy strategy = strategy_from_string(args.strategy);
    const FarthestAgg agg =
        args.farthest_agg == "mean" ? FarthestAgg::Mean : FarthestAgg::Min;
    const std::vector<std::size_t> sizes = parse_sizes(args.sizes);

    CsvOut csv("strategy,m,seed,recon_error,baseline_error,solver_nodes,exhausted");
    SvgSeries err_line{"reconstruction error", {}, {}, true};
    SvgSeries base_line{"random baseline", {}, {}, true};
    for (std::size_t m : sizes) {
        if (m > set.size()) throw UsageError("privacy: m exceeds set size");
        std::vector<double> m_errors, m_baselines;
        for (std::size_t s = 0; s < args.seeds; ++s) {
            const std::uint64_t child = derive_seed(args.seed, "privacy", m * 1000 + s);
            LeafCountSummary summary;
            summary.n = data.rows();
            if (m > 0) {
                const EnsembleSelection sel = select(set, data, strategy, m, child, agg);
                summary = release_leaf_counts(sel, set, data);
            }
            const ReconstructionResult rec = reconstruct(
                summary, data.rows(), data.cols(), args.budget, child, &data);
            const double baseline =
                matched_error(random_rows(data.rows(), data.cols(), child), data);
            csv.row({strategy_to_string(strategy), std::to_string(m), std::to_string(s),
                     fmt(rec.error), fmt(baseline), std::to_string(rec.solver_nodes),
                     rec.exhausted ? "1" : "0"});
            m_errors.push_back(rec.error);
            m_baselines.push_back(baseline);
        }
        std::sort(m_errors.begin(), m_errors.end());
        std::sort(m_baselines.begin(), m_baselines.end());
        err_line.xs.push_back(static_cast<double>(m));
        err_line.ys.push_back(m_errors[m_errors.size() / 2]);
        base_line.xs.push_back(static_cast<double>(m));
        base_line.ys.push_back(m_baselines[m_baselines.size() / 2]);
    }
    const json config = {{"command", "privacy"}, {"set", args.set_path},
                         {"data", args.data_path}, {"strategy", args.strategy},
                         {"sizes", args.sizes},   {"seeds", args.seeds},
                         {"budget", args.budget}, {"seed", args.seed}};
    csv.finish(config, args.out_path);
    if (args.svg)
        write_text_file(args.out_path + ".svg",
                        render_svg_chart({err_line, base_line}, "released trees m",
                                         "median matched error"));
    std::cout << "privacy: wrote " << args.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- tradeoff

struct TradeoffArgs {
    std::string set_path, data_path, out_path;
    std::string sizes = "1,2,5,10";
    std::size_t seeds = 5;
    std::size_t budget = 2000000;
    std::uint64_t seed = 42;
    bool svg = false;
};

int cmd_tradeoff(const TradeoffArgs& args) {
    const RashomonSet set = load_rashomon(args.set_path);
    const BitDataset data = load_csv(args.data_path);
    check_fingerprint(set, data);
    if (data.rows() > 30)
        throw LimitError("tradeoff: reconstruction path requires n <= 30");
    if (args.seeds < 1) throw UsageError("tradeoff: --seeds must be >= 1");

    const AdversarialDataset adv = attack_tree_l0(data, set.optimal());
    const std::vector<std::size_t> sizes = parse_sizes(args.sizes);

    CsvOut csv("m,recon_error,best_adversarial_accuracy");
    SvgSeries frontier{"ensembles (growing m)", {}, {}, false};
    for (std::size_t m : sizes) {
        if (m < 1 || m > set.size()) throw UsageError("tradeoff: m out of range");
        const EnsembleSelection sel = select(set, data, Strategy::Increment, m, args.seed);
        const LeafCountSummary summary = release_leaf_counts(sel, set, data);
        std::vector<double> errors;
        for (std::size_t s = 0; s < args.seeds; ++s) {
            const ReconstructionResult rec =
                reconstruct(summary, data.rows(), data.cols(), args.budget,
                            derive_seed(args.seed, "tradeoff", m * 1000 + s), &data);
            errors.push_back(rec.error);
        }
        std::sort(errors.begin(), errors.end());
        const double median = errors.size() % 2
                                  ? errors[errors.size() / 2]
                                  : 0.5 * (errors[errors.size() / 2 - 1] +
                                           errors[errors.size() / 2]);
        double best_score = 0;
        for (std::size_t idx : sel.indices)
            best_score = std::max(best_score, adversarial_score(set.trees[idx], adv));
        csv.row({std::to_string(m), fmt(median), fmt(best_score)});
        frontier.xs.push_back(median);
        frontier.ys.push_back(best_score);
    }
    const json config = {{"command", "tradeoff"}, {"set", args.set_path},
                         {"data", args.data_path}, {"sizes", args.sizes},
                         {"seeds", args.seeds},   {"budget", args.budget},
                         {"seed", args.seed}};
    csv.finish(config, args.out_path);
    if (args.svg)
        write_text_file(args.out_path + ".svg",
                        render_svg_chart({frontier}, "reconstruction error",
                                         "best adversarial accuracy"));
    std::cout << "tradeoff: wrote " << args.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- stability

struct StabilityArgs {
    std::string data_path, out_path;
    std::size_t kmax = 5;
    double lambda = 0.01, epsilon = 0.05;
    int depth = 2;
    std::size_t seeds = 5;
    std::uint64_t seed = 42;
    bool svg = false;
};

int cmd_stability(const StabilityArgs& args) {
    const BitDataset data = load_csv(args.data_path);
    ObjectiveConfig config;
    config.lambda = args.lambda;
    config.epsilon = args.epsilon;
    config.depth_budget = args.depth;

    CsvOut csv("k,frac_relaxed,frac_unrelaxed");
    json reports = json::array();
    SvgSeries relaxed_line{"relaxed epsilon + 2k/n", {}, {}, true};
    SvgSeries unrelaxed_line{"unrelaxed epsilon", {}, {}, true};
    for (std::size_t k = 0; k <= args.kmax; ++k) {
        double sum_relaxed = 0, sum_unrelaxed = 0;
        for (std::size_t s = 0; s < args.seeds; ++s) {
            const NeighborReport report = neighbor_containment_check(
                data, k, config, derive_seed(args.seed, "stability", k * 1000 + s));
            sum_relaxed += report.frac_forward;
            sum_unrelaxed += report.frac_unrelaxed;
            reports.push_back(neighbor_report_to_json(report));
        }
        csv.row({std::to_string(k),
                 fmt(sum_relaxed / static_cast<double>(args.seeds)),
                 fmt(sum_unrelaxed / static_cast<double>(args.seeds))});
        relaxed_line.xs.push_back(static_cast<double>(k));
        relaxed_line.ys.push_back(sum_relaxed / static_cast<double>(args.seeds));
        unrelaxed_line.xs.push_back(static_cast<double>(k));
        unrelaxed_line.ys.push_back(sum_unrelaxed / static_cast<double>(args.seeds));
    }
    write_text_file(args.out_path + ".json", reports.dump(2) + "\n");
    if (args.svg)
        write_text_file(args.out_path + ".svg",
                        render_svg_chart({relaxed_line, unrelaxed_line},
                                         "modified samples k", "retained fraction"));
    const json config_json = {{"command", "stability"}, {"data", args.data_path},
                              {"kmax", args.kmax},      {"lambda", args.lambda},
                              {"epsilon", args.epsilon}, {"depth", args.depth},
                              {"seeds", args.seeds},    {"seed", args.seed}};
    csv.finish(config_json, args.out_path);
    std::cout << "stability: wrote " << args.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- klsim

struct KlsimArgs {
    std::string out_path;
    int dist_id = 1;
    std::size_t n = 100;
    double lambda = 0.01, epsilon = 0.03, delta = 0.05;
    int depth = 3;
    std::size_t trials = 20;
    std::uint64_t seed = 42;
    bool svg = false;
};

std::vector<std::size_t> klsim_size_grid(std::size_t N) {
    std::vector<std::size_t> sizes;
    for (std::size_t m = 1; m <= std::min<std::size_t>(N, 50); ++m) sizes.push_back(m);
    // geometric thinning above 50
    double v = 50;
    while (static_cast<std::size_t>(v) < N) {
        v *= 1.2;
        const std::size_t m = std::min(static_cast<std::size_t>(v), N);
        if (m > sizes.back()) sizes.push_back(m);
    }
    if (sizes.back() != N) sizes.push_back(N);
    return sizes;
}

int cmd_klsim(const KlsimArgs& args) {
    const DiscreteDistribution dist =
        builtin_distribution(args.dist_id, 4, derive_seed(args.seed, "klsim-dist"));
    const BitDataset data =
        sample_from_distribution(dist, args.n, derive_seed(args.seed, "klsim-data"));
    ObjectiveConfig config;
    config.lambda = args.lambda;
    config.epsilon = args.epsilon;
    config.depth_budget = args.depth;
    const RashomonSet set = enumerate_rashomon(data, config);

    const std::vector<std::size_t> sizes = klsim_size_grid(set.size());
    const std::vector<KlSimResult> results = ensemble_kl_sim(
        set, dist, sizes, args.trials, derive_seed(args.seed, "klsim"), args.delta);

    CsvOut csv("m,mean_kl,bound,stderr");
    SvgSeries kl_line{"mean KL", {}, {}, true};
    SvgSeries bound_line{"theorem bound", {}, {}, true};
    for (const KlSimResult& r : results) {
        csv.row({std::to_string(r.m), fmt(r.mean_kl), fmt(r.bound), fmt(r.stderr_)});
        kl_line.xs.push_back(static_cast<double>(r.m));
        kl_line.ys.push_back(r.mean_kl);
        bound_line.xs.push_back(static_cast<double>(r.m));
        bound_line.ys.push_back(r.bound);
    }
    const json config_json = {{"command", "klsim"},   {"dist", args.dist_id},
                              {"n", args.n},          {"lambda", args.lambda},
                              {"epsilon", args.epsilon}, {"depth", args.depth},
                              {"trials", args.trials}, {"delta", args.delta},
                              {"seed", args.seed},    {"set_size", set.size()}};
    csv.finish(config_json, args.out_path);
    if (args.svg)
        write_text_file(args.out_path + ".svg",
                        render_svg_chart({kl_line, bound_line}, "ensemble size m",
                                         "KL divergence"));
    std::cout << "klsim: set_size=" << set.size() << " wrote " << args.out_path << "\n";
    return 0;
}

// ---------------------------------------------------------------- linear-demo

struct LinearDemoArgs {
    std::string out_path, data_path;
    std::size_t n = 40;
    std::size_t p = 4;
    double eta = 1.0;
    std::uint64_t seed = 42;
};

int cmd_linear_demo(const LinearDemoArgs& args) {
    NumericDataset data;
    if (!args.data_path.empty()) {
        data = load_numeric_csv(args.data_path);
    } else {
        Rng rng(derive_seed(args.seed, "linear-data"));
        for (std::size_t i = 0; i < args.n; ++i) {
            std::vector<double> row(args.p);
            for (double& x : row) x = 2 * rng.uniform_real() - 1;
            data.rows.push_back(std::move(row));
            data.labels.push_back(rng.bernoulli(0.5) ? 1 : -1);
        }
    }
    const std::size_t p = data.dim();

    Rng rng(derive_seed(args.seed, "linear-models"));
    auto random_unit = [&]() {
        std::vector<double> w(p);
        double norm = 0;
        while (norm < 1e-6) {
            for (double& x : w) x = 2 * rng.uniform_real() - 1;
            norm = norm2(w);
        }
        for (double& x : w) x /= norm;
        return w;
    };
    LinearModel target{random_unit()};

    // closed-form identity over a handful of random unit models
    double worst_rel = 0;
    for (int rep = 0; rep < 16; ++rep) {
        LinearModel w{random_unit()};
        const double closed = adversarial_exp_loss(w, data, target, args.eta);
        const double direct = exp_loss(w, l2_attack(data, target, args.eta));
        worst_rel = std::max(worst_rel, std::abs(closed - direct) / direct);
    }

    // a pair with a definite cosine gap for the corollaries
    LinearModel w1, w2;
    do {
        w1.w = random_unit();
        w2.w = random_unit();
        if (cosine(w1.w, target.w) < cosine(w2.w, target.w)) std::swap(w1, w2);
    } while (cosine(w1.w, target.w) - cosine(w2.w, target.w) < 0.1);
    const RatioReport ratio = corollary_ratio_check(w1, w2, data, target, args.eta);

    // and a small label-shift midpoint check on a two-atom support
    FiniteJoint d1, d2;
    {
        const std::vector<std::vector<double>> xs = {{1.0, 0.2}, {-0.3, 1.0}};
        for (int i = 0; i < 2; ++i) {
            d1.atoms.push_back({xs[i], i == 0 ? 0.8 : -0.5, 0.5});
            d2.atoms.push_back({xs[i], (i == 0 ? 0.8 : -0.5) + 0.01, 0.45});
            d2.atoms.push_back({xs[i], i == 0 ? 0.8 : -0.5, 0.05});
        }
    }
    const MidpointReport midpoint = midpoint_theorem_check(d1, d2, 0.5, -1.0, 1.0, 1.5);

    json report = {
        {"closed_form_max_rel_error", worst_rel},
        {"ratio_check",
         {{"cos1", ratio.cos1},
          {"cos2", ratio.cos2},
          {"ratio1", ratio.ratio1},
          {"ratio2", ratio.ratio2},
          {"eta_star", ratio.eta_star}}},
        {"midpoint",
         {{"tv", midpoint.tv},
          {"tv_threshold", midpoint.tv_threshold},
          {"sigma_min", midpoint.sigma_min},
          {"condition_holds", midpoint.condition_holds},
          {"member1", midpoint.member1},
          {"member2", midpoint.member2}}},
        {"seed", args.seed},
        {"eta", args.eta}};
    write_text_file(args.out_path, report.dump(2) + "\n");
    std::cout << "linear-demo: closed_form_max_rel_error=" << fmt(worst_rel)
              << " eta_star=" << fmt(ratio.eta_star) << "\n";
    return 0;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
    std::string out_path;
    int leaves = 0, features = 0;
    double p = -1, rho = 0;
    int k = 0;
    std::size_t trials = 100000;
    std::uint64_t seed = 42;
};

int cmd_bounds(const BoundsArgs& args) {
    json report;
    bool any = false;
    if (args.leaves > 0) {
        if (args.features <= 0)
            throw UsageError("bounds: --features is required with --leaves");
        const TreeCountBound bound = tree_count_bound(args.leaves, args.features);
        report["tree_count"] = {{"leaves", args.leaves},
                                {"features", args.features},
                                {"bound", bound.count},
                                {"log2_bound", bound.log2}};
        any = true;
    }
    if (args.p >= 0) {
        if (args.k <= 0) throw UsageError("bounds: --k is required with --p");
        const McEstimate mc =
            majority_failure_mc(args.p, args.k, args.rho, args.trials, args.seed);
        json ensemble = {{"p", args.p},
                         {"k", args.k},
                         {"rho", args.rho},
                         {"trials", args.trials},
                         {"estimate", mc.estimate},
                         {"stderr", mc.stderr_}};
        if (args.rho == 0) ensemble["chernoff_bound"] = chernoff_ensemble_bound(args.p, args.k);
        if (args.k > 2)
            ensemble["cantelli_bound"] = cantelli_ensemble_bound(args.p, args.k, args.rho);
        report["ensemble"] = ensemble;
        any = true;
    }
    if (!any)
        throw UsageError("bounds: nothing to compute (pass --leaves/--features or --p/--k)");
    const std::string text = report.dump(2) + "\n";
    if (args.out_path.empty())
        std::cout << text;
    else
        write_text_file(args.out_path, text);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Rashomon-set robustness/privacy laboratory"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    int threads = 0;
    app.add_option("--seed", seed, "global random seed")->capture_default_str();
    app.add_option("--threads", threads,
                   "worker threads (RASHOMON_LAB_THREADS overrides)");

    EnumerateArgs en;
    auto* c_en = app.add_subcommand("enumerate", "enumerate a Rashomon set");
    c_en->add_option("--data", en.data_path, "binary CSV")->required();
    c_en->add_option("--lambda", en.lambda, "per-leaf penalty")->capture_default_str();
    c_en->add_option("--epsilon", en.epsilon, "Rashomon adder")->capture_default_str();
    c_en->add_flag("--epsilon-relative", en.epsilon_relative,
                   "treat --epsilon as a multiplier of the optimal objective");
    c_en->add_option("--depth", en.depth, "depth budget")->capture_default_str();
    c_en->add_option("--label-column", en.label_column)->capture_default_str();
    c_en->add_option("--out", en.out_path, "output set JSON")->required();

    RobustnessArgs rob;
    auto* c_rob = app.add_subcommand("robustness", "attack the optimal tree, score the set");
    c_rob->add_option("--set", rob.set_path)->required();
    c_rob->add_option("--data", rob.data_path)->required();
    c_rob->add_option("--eval-data", rob.eval_path, "pattern-distance split (default: adversarial rows)");
    c_rob->add_option("--adv-out", rob.adv_out,
                      "also write the adversarial dataset CSV + flip sidecar");
    c_rob->add_flag("--svg", rob.svg, "also render <out>.svg");
    c_rob->add_option("--out", rob.out_path)->required();

    PrivacyArgs priv;
    auto* c_priv = app.add_subcommand("privacy", "reconstruction error per strategy/size");
    c_priv->add_option("--set", priv.set_path)->required();
    c_priv->add_option("--data", priv.data_path)->required();
    c_priv->add_option("--strategy", priv.strategy,
                       "closest|farthest|increment|random|sparsest|densest")
        ->capture_default_str();
    c_priv->add_option("--sizes", priv.sizes, "comma-separated ensemble sizes")
        ->capture_default_str();
    c_priv->add_option("--seeds", priv.seeds, "seed count")->capture_default_str();
    c_priv->add_option("--budget", priv.budget, "solver node budget")->capture_default_str();
    c_priv->add_option("--farthest-agg", priv.farthest_agg, "min|mean")->capture_default_str();
    c_priv->add_flag("--svg", priv.svg, "also render <out>.svg");
    c_priv->add_option("--out", priv.out_path)->required();

    TradeoffArgs trade;
    auto* c_trade = app.add_subcommand("tradeoff", "robustness-privacy frontier");
    c_trade->add_option("--set", trade.set_path)->required();
    c_trade->add_option("--data", trade.data_path)->required();
    c_trade->add_option("--sizes", trade.sizes)->capture_default_str();
    c_trade->add_option("--seeds", trade.seeds, "reconstruction repeats per size")
        ->capture_default_str();
    c_trade->add_option("--budget", trade.budget)->capture_default_str();
    c_trade->add_flag("--svg", trade.svg, "also render <out>.svg");
    c_trade->add_option("--out", trade.out_path)->required();

    StabilityArgs stab;
    auto* c_stab = app.add_subcommand("stability", "neighboring-dataset containment sweep");
    c_stab->add_option("--data", stab.data_path)->required();
    c_stab->add_option("--kmax", stab.kmax)->capture_default_str();
    c_stab->add_option("--lambda", stab.lambda)->capture_default_str();
    c_stab->add_option("--epsilon", stab.epsilon)->capture_default_str();
    c_stab->add_option("--depth", stab.depth)->capture_default_str();
    c_stab->add_option("--seeds", stab.seeds)->capture_default_str();
    c_stab->add_flag("--svg", stab.svg, "also render <out>.svg");
    c_stab->add_option("--out", stab.out_path)->required();

    KlsimArgs kl;
    auto* c_kl = app.add_subcommand("klsim", "ensemble KL-divergence simulation");
    c_kl->add_option("--dist", kl.dist_id, "built-in distribution id 1..5")
        ->capture_default_str();
    c_kl->add_option("--n", kl.n)->capture_default_str();
    c_kl->add_option("--lambda", kl.lambda)->capture_default_str();
    c_kl->add_option("--epsilon", kl.epsilon)->capture_default_str();
    c_kl->add_option("--depth", kl.depth)->capture_default_str();
    c_kl->add_option("--trials", kl.trials)->capture_default_str();
    c_kl->add_option("--delta", kl.delta)->capture_default_str();
    c_kl->add_flag("--svg", kl.svg, "also render <out>.svg");
    c_kl->add_option("--out", kl.out_path)->required();

    LinearDemoArgs lin;
    auto* c_lin = app.add_subcommand("linear-demo", "linear-model margin attack checks");
    c_lin->add_option("--data", lin.data_path, "numeric CSV with -1/+1 labels");
    c_lin->add_option("--n", lin.n)->capture_default_str();
    c_lin->add_option("--p", lin.p)->capture_default_str();
    c_lin->add_option("--eta", lin.eta)->capture_default_str();
    c_lin->add_option("--out", lin.out_path)->required();

    BoundsArgs bnd;
    auto* c_bnd = app.add_subcommand("bounds", "closed-form bound calculators");
    c_bnd->add_option("--leaves", bnd.leaves);
    c_bnd->add_option("--features", bnd.features);
    c_bnd->add_option("--p", bnd.p);
    c_bnd->add_option("--k", bnd.k);
    c_bnd->add_option("--rho", bnd.rho)->capture_default_str();
    c_bnd->add_option("--trials", bnd.trials)->capture_default_str();
    c_bnd->add_option("--out", bnd.out_path, "JSON output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    set_threads(threads);
    rob.seed = priv.seed = trade.seed = stab.seed = kl.seed = lin.seed = bnd.seed = seed;

    try {
        if (c_en->parsed()) return cmd_enumerate(en);
        if (c_rob->parsed()) return cmd_robustness(rob);
        if (c_priv->parsed()) return cmd_privacy(priv);
        if (c_trade->parsed()) return cmd_tradeoff(trade);
        if (c_stab->parsed()) return cmd_stability(stab);
        if (c_kl->parsed()) return cmd_klsim(kl);
        if (c_lin->parsed()) return cmd_linear_demo(lin);
        if (c_bnd->parsed()) return cmd_bounds(bnd);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace rlab
