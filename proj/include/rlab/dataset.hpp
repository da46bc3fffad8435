#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rlab/bitvec.hpp"

namespace rlab {

// Plain numeric table, the input side of quantile binarization. Column-major.
struct NumericTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
    std::size_t cols() const { return columns.size(); }
};

// Bit-packed n x d binary feature matrix with binary labels. Immutable in
// spirit: construct, fill, then share freely across threads.
class BitDataset {
public:
    BitDataset() = default;
    BitDataset(std::size_t n, std::size_t d, std::vector<std::string> feature_names = {});

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return d_; }
    std::size_t words_per_row() const { return wpr_; }

    bool feature(std::size_t row, std::size_t col) const {
        return (bits_[row * wpr_ + (col >> 6)] >> (col & 63)) & 1ULL;
    }
    void set_feature(std::size_t row, std::size_t col, bool v);

    bool label(std::size_t row) const { return labels_.get(row); }
    void set_label(std::size_t row, bool v) { labels_.set(row, v); }

    const BitVec& labels() const { return labels_; }
    const std::vector<std::string>& feature_names() const { return names_; }

    const std::uint64_t* row_ptr(std::size_t row) const { return bits_.data() + row * wpr_; }

    // Row copied into a standalone d-bit vector.
    BitVec row_bits(std::size_t row) const;
    void assign_row(std::size_t row, const BitVec& bits);
    void copy_row_from(const BitDataset& src, std::size_t src_row, std::size_t dst_row);

    // Transposed view: one n-bit column per feature. Built on demand by the
    // enumerator and k-means.
    std::vector<BitVec> feature_columns() const;

    std::string to_csv(const std::string& label_column = "y") const;
    std::uint64_t fingerprint() const;  // FNV-1a over to_csv() bytes
    std::string fingerprint_hex() const;

    bool operator==(const BitDataset& o) const {
        return n_ == o.n_ && d_ == o.d_ && bits_ == o.bits_ && labels_ == o.labels_;
    }

private:
    std::size_t n_ = 0, d_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> bits_;
    BitVec labels_;
    std::vector<std::string> names_;
};

BitDataset load_csv(const std::string& path, const std::string& label_column = "y");
void write_csv(const BitDataset& data, const std::string& path,
               const std::string& label_column = "y");

// Each numeric column expands to `thresholds_per_feature` indicator columns
// "col<=q" at equally spaced quantile levels. Constant columns produce
// degenerate indicators plus a warning record, never an error.
BitDataset binarize_quantile(const NumericTable& raw, int thresholds_per_feature,
                             const std::vector<bool>& labels,
                             std::vector<std::string>* warnings = nullptr);

// Lloyd's algorithm on rows cast to 0/1 reals, squared-Euclidean distance.
// Centroids seeded by uniform sampling of distinct rows; ties go to the lowest
// cluster index; empty clusters are re-seeded from the farthest point.
std::vector<std::size_t> kmeans_binary(const BitDataset& data, std::size_t clusters,
                                       std::uint64_t seed, std::size_t max_iters = 100,
                                       std::vector<double>* iteration_costs = nullptr);

struct PerturbationReport {
    std::vector<std::size_t> removed_indices;     // row slots vacated
    std::vector<std::size_t> duplicated_indices;  // source rows (with replacement)
    std::vector<std::size_t> flipped_indices;     // slots whose label was flipped
    std::size_t k = 0;
};

// Targeted K-sample modification: drop k rows from one cluster, refill the
// slots with duplicates from a different cluster, flip each duplicate's label
// with probability 1/2. Output size stays n.
std::pair<BitDataset, PerturbationReport> perturb_targeted(const BitDataset& data,
                                                           std::size_t k,
                                                           std::uint64_t seed);

// Discrete law over {0,1}^dims plus a conditional P(y=1|x) per atom. Dense by
// atom index (bit j of the index = feature j).
struct DiscreteDistribution {
    int dims = 0;
    std::vector<double> mass;  // size 2^dims, sums to 1
    std::vector<double> cond;  // size 2^dims, values in [0,1]

    std::size_t atoms() const { return mass.size(); }
    void validate() const;
};

BitDataset sample_from_distribution(const DiscreteDistribution& dist, std::size_t n,
                                    std::uint64_t seed);

// The five built-in synthetic conditional laws over a uniform {0,1}^4 grid.
// Only id 4 (random conditional) consumes the seed and accepts other widths.
DiscreteDistribution builtin_distribution(int id, int d = 4, std::uint64_t seed = 0);

}  // namespace rlab
