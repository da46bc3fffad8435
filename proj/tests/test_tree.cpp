#include <doctest.h>

#include "rlab/errors.hpp"
#include "rlab/rng.hpp"
#include "rlab/serialize.hpp"
#include "rlab/tree.hpp"

using namespace rlab;

namespace {

BitVec bits_of(std::initializer_list<int> vals) {
    BitVec v(vals.size());
    std::size_t i = 0;
    for (int b : vals) v.set(i++, b != 0);
    return v;
}

BitDataset tiny_dataset() {
    // d=1 rows {0,1,1,0}, labels mirror the feature
    BitDataset data(4, 1);
    data.set_feature(1, 0, true);
    data.set_feature(2, 0, true);
    data.set_label(1, true);
    data.set_label(2, true);
    return data;
}

}  // namespace

TEST_CASE("single-leaf tree predicts its constant") {
    const Tree t = make_leaf(1);
    CHECK(predict(t, bits_of({0, 0})) == 1);
    CHECK(predict(t, bits_of({1, 1})) == 1);
    CHECK(leaf_count(t) == 1);
}

TEST_CASE("stump routes on its feature") {
    const Tree t = make_stump(0, 0, 1);
    CHECK(predict(t, bits_of({1, 0})) == 1);
    CHECK(predict(t, bits_of({0, 0})) == 0);
    CHECK(leaf_count(t) == 2);
}

TEST_CASE("depth-2 tree agrees with its truth table") {
    // split f0; left -> split f1 (0,1); right -> leaf 1
    Tree t;
    t.nodes.resize(5);
    t.nodes[0].feature = 0;
    t.nodes[0].left = 1;
    t.nodes[0].right = 4;
    t.nodes[1].feature = 1;
    t.nodes[1].left = 2;
    t.nodes[1].right = 3;
    t.nodes[2].hard = 0;
    t.nodes[3].hard = 1;
    t.nodes[4].hard = 1;
    CHECK(predict(t, bits_of({0, 0})) == 0);
    CHECK(predict(t, bits_of({0, 1})) == 1);
    CHECK(predict(t, bits_of({1, 0})) == 1);
    CHECK(predict(t, bits_of({1, 1})) == 1);
    CHECK(leaf_count(t) == 3);
    CHECK(tree_depth(t) == 2);
    CHECK(canonical_key(t) == "I0(I1(L0,L1),L1)");
}

TEST_CASE("predict rejects narrow inputs") {
    const Tree t = make_stump(3, 0, 1);
    CHECK_THROWS_AS(predict(t, bits_of({0, 1})), UsageError);
}

TEST_CASE("classification pattern of a constant tree") {
    const BitDataset data = tiny_dataset();
    const ClassificationPattern p = classification_pattern(make_leaf(1), data);
    CHECK(p.bits.count() == 4);
}

TEST_CASE("classification pattern of a stump") {
    const BitDataset data = tiny_dataset();
    const ClassificationPattern p = classification_pattern(make_stump(0, 0, 1), data);
    CHECK(p.bits.get(0) == false);
    CHECK(p.bits.get(1) == true);
    CHECK(p.bits.get(2) == true);
    CHECK(p.bits.get(3) == false);
}

TEST_CASE("fit_leaves computes counts, majority and smoothed soft") {
    // leaf capturing (3, 1): hard 0, soft (1+1)/(4+2) = 1/3
    BitDataset data(4, 1);
    data.set_label(0, true);
    const Tree t = fit_leaves(make_leaf(0), data);
    CHECK(t.nodes[0].count0 == 3);
    CHECK(t.nodes[0].count1 == 1);
    CHECK(t.nodes[0].hard == 0);
    CHECK(t.nodes[0].soft == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("fit_leaves tie predicts 0 and empty leaf gets the prior") {
    BitDataset data(4, 1);
    data.set_label(0, true);
    data.set_label(1, true);
    const Tree tie = fit_leaves(make_leaf(1), data);
    CHECK(tie.nodes[0].count0 == 2);
    CHECK(tie.nodes[0].count1 == 2);
    CHECK(tie.nodes[0].hard == 0);

    // all rows have f0 = 0, so the right leaf is empty
    const Tree stump = fit_leaves(make_stump(0, 0, 1), data);
    CHECK(stump.nodes[2].count0 == 0);
    CHECK(stump.nodes[2].count1 == 0);
    CHECK(stump.nodes[2].hard == 0);
    CHECK(stump.nodes[2].soft == doctest::Approx(0.5));
}

TEST_CASE("soft predictions are clipped to [delta, 1-delta]") {
    BitDataset data(64, 1);
    for (std::size_t i = 0; i < 64; ++i) data.set_label(i, true);
    const Tree t = fit_leaves(make_leaf(0), data, 0.05);
    CHECK(t.nodes[0].soft == doctest::Approx(0.95));
    const Tree loose = fit_leaves(make_leaf(0), data, 0.1);
    CHECK(loose.nodes[0].soft == doctest::Approx(0.9));
}

TEST_CASE("leaf counts sum to n after fit_leaves") {
    Rng rng(5);
    BitDataset data(37, 4);
    for (std::size_t i = 0; i < 37; ++i) {
        for (std::size_t j = 0; j < 4; ++j) data.set_feature(i, j, rng.bernoulli(0.5));
        data.set_label(i, rng.bernoulli(0.3));
    }
    Tree skeleton;
    skeleton.nodes.resize(5);
    skeleton.nodes[0].feature = 2;
    skeleton.nodes[0].left = 1;
    skeleton.nodes[0].right = 2;
    skeleton.nodes[1].feature = 0;
    skeleton.nodes[1].left = 3;
    skeleton.nodes[1].right = 4;
    const Tree t = fit_leaves(skeleton, data);
    std::size_t total = 0;
    for (const auto& n : t.nodes)
        if (n.is_leaf()) total += n.count0 + n.count1;
    CHECK(total == 37);
}

TEST_CASE("pattern loss equals hamming distance to labels") {
    Rng rng(8);
    BitDataset data(50, 3);
    for (std::size_t i = 0; i < 50; ++i) {
        for (std::size_t j = 0; j < 3; ++j) data.set_feature(i, j, rng.bernoulli(0.5));
        data.set_label(i, rng.bernoulli(0.5));
    }
    const Tree t = fit_leaves(make_stump(1, 0, 1), data);
    const ClassificationPattern p = classification_pattern(t, data);
    std::size_t errors = 0;
    for (std::size_t i = 0; i < 50; ++i)
        if (predict_row(t, data, i) != static_cast<int>(data.label(i))) ++errors;
    CHECK(BitVec::hamming(p.bits, data.labels()) == errors);
}

TEST_CASE("canonical keys") {
    CHECK(canonical_key(make_leaf(0)) == "L0");
    CHECK(canonical_key(make_stump(2, 0, 1)) == "I2(L0,L1)");
    // structure is encoded, so equal-pattern trees with different splits differ
    CHECK(canonical_key(make_stump(0, 0, 1)) != canonical_key(make_stump(1, 0, 1)));
}

TEST_CASE("parallel pattern kernel matches the serial reference") {
    Rng rng(15);
    BitDataset data(200, 5);
    for (std::size_t i = 0; i < 200; ++i) {
        for (std::size_t j = 0; j < 5; ++j) data.set_feature(i, j, rng.bernoulli(0.5));
        data.set_label(i, rng.bernoulli(0.5));
    }
    std::vector<Tree> trees;
    for (int f = 0; f < 5; ++f) {
        trees.push_back(fit_leaves(make_stump(f, 0, 1), data));
        trees.push_back(fit_leaves(make_stump(f, 1, 0), data));
    }
    const auto serial = classification_patterns_serial(trees, data);
    const auto parallel = classification_patterns(trees, data);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(serial[i].bits == parallel[i].bits);
}

TEST_CASE("tree json round trip") {
    BitDataset data(8, 2);
    for (std::size_t i = 0; i < 8; ++i) {
        data.set_feature(i, 0, i % 2);
        data.set_feature(i, 1, i / 4);
        data.set_label(i, (i % 3) == 0);
    }
    const Tree t = fit_leaves(make_stump(1, 0, 1), data);
    const Tree back = tree_from_json(tree_to_json(t));
    CHECK(canonical_key(back) == canonical_key(t));
    CHECK(back.nodes[1].count0 == t.nodes[1].count0);
    CHECK(back.nodes[2].soft == t.nodes[2].soft);
}
