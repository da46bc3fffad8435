#include "rlab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "rlab/errors.hpp"
#include "rlab/rng.hpp"

namespace rlab {

BitDataset::BitDataset(std::size_t n, std::size_t d, std::vector<std::string> feature_names)
    : n_(n), d_(d), wpr_((d + 63) / 64), labels_(n), names_(std::move(feature_names)) {
    if (n == 0 || d == 0) throw DataError("empty dataset");
    bits_.assign(n_ * wpr_, 0);
    if (names_.empty()) {
        names_.reserve(d_);
        for (std::size_t j = 0; j < d_; ++j) names_.push_back("f" + std::to_string(j));
    }
    if (names_.size() != d_) throw DataError("feature name count does not match width");
}

void BitDataset::set_feature(std::size_t row, std::size_t col, bool v) {
    std::uint64_t& w = bits_[row * wpr_ + (col >> 6)];
    const std::uint64_t mask = 1ULL << (col & 63);
    if (v)
        w |= mask;
    else
        w &= ~mask;
}

BitVec BitDataset::row_bits(std::size_t row) const {
    BitVec r(d_);
    for (std::size_t j = 0; j < d_; ++j)
        if (feature(row, j)) r.set(j, true);
    return r;
}

void BitDataset::assign_row(std::size_t row, const BitVec& bits) {
    if (bits.size() != d_) throw UsageError("assign_row: width mismatch");
    for (std::size_t j = 0; j < d_; ++j) set_feature(row, j, bits.get(j));
}

void BitDataset::copy_row_from(const BitDataset& src, std::size_t src_row, std::size_t dst_row) {
    if (src.d_ != d_) throw UsageError("copy_row_from: width mismatch");
    for (std::size_t w = 0; w < wpr_; ++w)
        bits_[dst_row * wpr_ + w] = src.bits_[src_row * wpr_ + w];
    set_label(dst_row, src.label(src_row));
}

std::vector<BitVec> BitDataset::feature_columns() const {
    std::vector<BitVec> cols(d_, BitVec(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < d_; ++j)
            if (feature(i, j)) cols[j].set(i, true);
    return cols;
}

std::string BitDataset::to_csv(const std::string& label_column) const {
    std::string out;
    out.reserve((d_ + 2) * 2 * (n_ + 1));
    for (std::size_t j = 0; j < d_; ++j) {
        out += names_[j];
        out += ',';
    }
    out += label_column;
    out += '\n';
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < d_; ++j) {
            out += feature(i, j) ? '1' : '0';
            out += ',';
        }
        out += label(i) ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::uint64_t BitDataset::fingerprint() const {
    const std::string csv = to_csv();
    return fnv1a64(csv.data(), csv.size());
}

std::string BitDataset::fingerprint_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fingerprint()));
    return std::string(buf);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

BitDataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path);
    const std::vector<std::string> header = split_line(line);

    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == label_column) label_idx = j;
    if (label_idx == header.size())
        throw DataError("missing label column '" + label_column + "' in " + path);

    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != label_idx) names.push_back(header[j]);
    if (names.empty()) throw DataError("no feature columns in " + path);

    std::vector<std::vector<bool>> rows;
    std::vector<bool> labels;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw DataError(path + ": row " + std::to_string(lineno) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        std::vector<bool> row;
        row.reserve(names.size());
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const std::string& c = cells[j];
            if (c != "0" && c != "1")
                throw DataError(path + ": non-binary cell '" + c + "' at row " +
                                std::to_string(lineno) + ", column '" + header[j] + "'");
            if (j == label_idx)
                labels.push_back(c == "1");
            else
                row.push_back(c == "1");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("empty dataset: " + path);

    BitDataset data(rows.size(), names.size(), names);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < names.size(); ++j) data.set_feature(i, j, rows[i][j]);
        data.set_label(i, labels[i]);
    }
    return data;
}

void write_csv(const BitDataset& data, const std::string& path,
               const std::string& label_column) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << data.to_csv(label_column);
}

BitDataset binarize_quantile(const NumericTable& raw, int thresholds_per_feature,
                             const std::vector<bool>& labels,
                             std::vector<std::string>* warnings) {
    if (thresholds_per_feature < 1)
        throw UsageError("binarize_quantile: thresholds_per_feature must be >= 1");
    if (raw.cols() == 0) throw DataError("binarize_quantile: table has no columns");
    const std::size_t n = raw.rows();
    if (n == 0) throw DataError("binarize_quantile: table has no rows");
    if (labels.size() != n) throw DataError("binarize_quantile: label count mismatch");

    const int t = thresholds_per_feature;
    std::vector<std::string> names;
    std::vector<std::vector<bool>> cols;
    for (std::size_t c = 0; c < raw.cols(); ++c) {
        std::vector<double> sorted = raw.columns[c];
        std::sort(sorted.begin(), sorted.end());
        if (sorted.front() == sorted.back() && warnings)
            warnings->push_back("constant column '" + raw.column_names[c] +
                                "': indicators are all-equal");
        for (int q = 1; q <= t; ++q) {
            // linear-interpolation quantile at level q/(t+1)
            const double level = static_cast<double>(q) / (t + 1);
            const double h = level * static_cast<double>(n - 1);
            const std::size_t lo = static_cast<std::size_t>(std::floor(h));
            const std::size_t hi = std::min(lo + 1, n - 1);
            const double thresh = sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
            std::vector<bool> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = raw.columns[c][i] <= thresh;
            std::ostringstream name;
            name << raw.column_names[c] << "<=" << thresh;
            names.push_back(name.str());
            cols.push_back(std::move(col));
        }
    }

    BitDataset data(n, cols.size(), names);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) data.set_feature(i, j, cols[j][i]);
    for (std::size_t i = 0; i < n; ++i) data.set_label(i, labels[i]);
    return data;
}

namespace {

struct KmeansRun {
    std::vector<std::size_t> assign;
    std::vector<double> costs;  // one entry per Lloyd iteration
    double final_cost = 0;
};

KmeansRun kmeans_once(const BitDataset& data, std::size_t clusters, std::uint64_t seed,
                      std::size_t max_iters) {
    const std::size_t n = data.rows();
    const std::size_t d = data.cols();
    Rng rng(seed);

    // seed centroids from distinct row contents when possible
    std::vector<std::size_t> uniq;
    {
        std::vector<BitVec> seen;
        for (std::size_t i = 0; i < n; ++i) {
            BitVec r = data.row_bits(i);
            bool dup = false;
            for (const auto& s : seen)
                if (s == r) {
                    dup = true;
                    break;
                }
            if (!dup) {
                seen.push_back(std::move(r));
                uniq.push_back(i);
            }
        }
    }
    std::vector<std::size_t> pick;
    if (uniq.size() >= clusters) {
        std::vector<std::size_t> order = rng.sample_without_replacement(uniq.size(), clusters);
        for (std::size_t o : order) pick.push_back(uniq[o]);
    } else {
        pick = rng.sample_without_replacement(n, clusters);
    }

    std::vector<std::vector<double>> centroid(clusters, std::vector<double>(d));
    for (std::size_t c = 0; c < clusters; ++c)
        for (std::size_t j = 0; j < d; ++j)
            centroid[c][j] = data.feature(pick[c], j) ? 1.0 : 0.0;

    auto sq_dist = [&](std::size_t row, const std::vector<double>& cen) {
        double s = 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = (data.feature(row, j) ? 1.0 : 0.0) - cen[j];
            s += diff * diff;
        }
        return s;
    };

    KmeansRun run;
    run.assign.assign(n, 0);
    double prev_cost = std::numeric_limits<double>::infinity();
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        double cost = 0;
        std::vector<double> row_dist(n);
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_c = 0;
            for (std::size_t c = 0; c < clusters; ++c) {
                const double dist = sq_dist(i, centroid[c]);
                if (dist < best) {  // ties keep the lowest index
                    best = dist;
                    best_c = c;
                }
            }
            run.assign[i] = best_c;
            row_dist[i] = best;
            cost += best;
        }
        run.costs.push_back(cost);
        run.final_cost = cost;

        // recompute means; re-seed empty clusters from the farthest point
        std::vector<std::size_t> size(clusters, 0);
        for (std::size_t c = 0; c < clusters; ++c)
            std::fill(centroid[c].begin(), centroid[c].end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            ++size[run.assign[i]];
            for (std::size_t j = 0; j < d; ++j)
                if (data.feature(i, j)) centroid[run.assign[i]][j] += 1.0;
        }
        for (std::size_t c = 0; c < clusters; ++c) {
            if (size[c] == 0) {
                std::size_t far = 0;
                for (std::size_t i = 1; i < n; ++i)
                    if (row_dist[i] > row_dist[far]) far = i;
                for (std::size_t j = 0; j < d; ++j)
                    centroid[c][j] = data.feature(far, j) ? 1.0 : 0.0;
                row_dist[far] = 0;
            } else {
                for (std::size_t j = 0; j < d; ++j) centroid[c][j] /= static_cast<double>(size[c]);
            }
        }

        if (cost >= prev_cost - 1e-12) break;
        prev_cost = cost;
    }
    return run;
}

}  // namespace

std::vector<std::size_t> kmeans_binary(const BitDataset& data, std::size_t clusters,
                                       std::uint64_t seed, std::size_t max_iters,
                                       std::vector<double>* iteration_costs) {
    const std::size_t n = data.rows();
    if (clusters < 1 || clusters > n)
        throw UsageError("kmeans_binary: clusters must be in [1, n]");
    if (max_iters < 1) throw UsageError("kmeans_binary: max_iters must be >= 1");

    // Lloyd's gets stuck in local optima, so take the best of a few seeded
    // restarts; the whole procedure stays a pure function of (data, seed).
    constexpr std::size_t kRestarts = 5;
    KmeansRun best;
    for (std::size_t r = 0; r < kRestarts; ++r) {
        KmeansRun run =
            kmeans_once(data, clusters, derive_seed(seed, "kmeans-restart", r), max_iters);
        if (r == 0 || run.final_cost < best.final_cost) best = std::move(run);
    }
    if (iteration_costs) *iteration_costs = best.costs;
    return best.assign;
}

std::pair<BitDataset, PerturbationReport> perturb_targeted(const BitDataset& data,
                                                           std::size_t k,
                                                           std::uint64_t seed) {
    const std::size_t n = data.rows();
    if (k > n) throw UsageError("perturb_targeted: k > n");

    PerturbationReport report;
    report.k = k;
    if (k == 0) return {data, report};

    const std::size_t n_clusters = std::min<std::size_t>(5, n);

    // find a clustering with some cluster strictly larger than k
    std::vector<std::size_t> assign;
    std::vector<std::vector<std::size_t>> members;
    bool found = false;
    for (std::uint64_t attempt = 0; attempt < 10 && !found; ++attempt) {
        assign = kmeans_binary(data, n_clusters, derive_seed(seed, "perturb-kmeans", attempt));
        members.assign(n_clusters, {});
        for (std::size_t i = 0; i < n; ++i) members[assign[i]].push_back(i);
        for (const auto& m : members)
            if (m.size() > k) found = true;
    }
    if (!found)
        throw DataError("perturb_targeted: no cluster has more than k=" + std::to_string(k) +
                        " samples after 10 clustering retries");

    Rng rng(derive_seed(seed, "perturb-draws"));

    std::vector<std::size_t> big;
    for (std::size_t c = 0; c < n_clusters; ++c)
        if (members[c].size() > k) big.push_back(c);
    const std::size_t removal_cluster = big[rng.uniform_index(big.size())];

    std::vector<std::size_t> donors;
    for (std::size_t c = 0; c < n_clusters; ++c)
        if (c != removal_cluster && !members[c].empty()) donors.push_back(c);
    if (donors.empty())
        throw DataError("perturb_targeted: no non-empty donor cluster available");
    const std::size_t donor_cluster = donors[rng.uniform_index(donors.size())];

    const auto& removal_rows = members[removal_cluster];
    std::vector<std::size_t> removed_pos = rng.sample_without_replacement(removal_rows.size(), k);
    for (std::size_t p : removed_pos) report.removed_indices.push_back(removal_rows[p]);
    std::sort(report.removed_indices.begin(), report.removed_indices.end());

    BitDataset out = data;
    const auto& donor_rows = members[donor_cluster];
    for (std::size_t slot : report.removed_indices) {
        const std::size_t src = donor_rows[rng.uniform_index(donor_rows.size())];
        report.duplicated_indices.push_back(src);
        out.copy_row_from(data, src, slot);
        if (rng.bernoulli(0.5)) {
            out.set_label(slot, !out.label(slot));
            report.flipped_indices.push_back(slot);
        }
    }
    return {std::move(out), std::move(report)};
}

void DiscreteDistribution::validate() const {
    if (dims < 1) throw DataError("distribution: dims must be >= 1");
    const std::size_t want = std::size_t{1} << dims;
    if (mass.size() != want || cond.size() != want)
        throw DataError("distribution: mass/cond must cover all 2^d atoms");
    double total = 0;
    for (double m : mass) {
        if (m < 0) throw DataError("distribution: negative mass");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DataError("distribution: mass does not sum to 1");
    for (double c : cond)
        if (c < 0 || c > 1) throw DataError("distribution: conditional outside [0,1]");
}

BitDataset sample_from_distribution(const DiscreteDistribution& dist, std::size_t n,
                                    std::uint64_t seed) {
    dist.validate();
    if (n < 1) throw UsageError("sample_from_distribution: n must be >= 1");
    Rng rng(seed);

    // inverse-CDF over the atom grid
    std::vector<double> cdf(dist.mass.size());
    double acc = 0;
    for (std::size_t a = 0; a < dist.mass.size(); ++a) {
        acc += dist.mass[a];
        cdf[a] = acc;
    }
    cdf.back() = 1.0;

    BitDataset data(n, static_cast<std::size_t>(dist.dims));
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform_real();
        const std::size_t atom = static_cast<std::size_t>(
            std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        for (int j = 0; j < dist.dims; ++j)
            data.set_feature(i, static_cast<std::size_t>(j), (atom >> j) & 1);
        data.set_label(i, rng.bernoulli(dist.cond[atom]));
    }
    return data;
}

DiscreteDistribution builtin_distribution(int id, int d, std::uint64_t seed) {
    if (id < 1 || id > 5) throw UsageError("builtin_distribution: id must be in 1..5");
    if (id != 4 && d != 4)
        throw UsageError("builtin_distribution: ids 1,2,3,5 are defined for d=4");
    if (d < 1 || d > 20) throw UsageError("builtin_distribution: d out of range");

    DiscreteDistribution dist;
    dist.dims = d;
    const std::size_t atoms = std::size_t{1} << d;
    dist.mass.assign(atoms, 1.0 / static_cast<double>(atoms));
    dist.cond.assign(atoms, 0.0);

    Rng rng(derive_seed(seed, "builtin-dist", static_cast<std::uint64_t>(id)));
    for (std::size_t a = 0; a < atoms; ++a) {
        int bit[4] = {0, 0, 0, 0};
        for (int j = 0; j < std::min(d, 4); ++j) bit[j] = (a >> j) & 1;
        int s = 0;
        for (int j = 0; j < d; ++j) s += (a >> j) & 1;
        double p = 0;
        switch (id) {
            case 1:  // parity-style bump at the all-zero row
                p = 0.1 + 0.8 * (s == 0 ? 1.0 : 0.0);
                break;
            case 2:
                p = 0.15 + 0.7 * ((bit[0] == 1 && bit[1] == 1) ? 1.0 : 0.0);
                break;
            case 3:  // XOR pair structure
                p = 0.2 + 0.6 * (((bit[0] ^ bit[1]) == 1 && (bit[2] ^ bit[3]) == 0) ? 1.0 : 0.0);
                break;
            case 4:  // random conditional, one draw per atom
                p = 0.3 + 0.4 * rng.uniform_real();
                break;
            case 5:
                if (s <= 1)
                    p = 0.05;
                else if (s >= 3)
                    p = 0.95;
                else
                    p = 0.5 + 0.4 * (bit[0] - 0.5);
                break;
        }
        dist.cond[a] = p;
    }
    return dist;
}

}  // namespace rlab
