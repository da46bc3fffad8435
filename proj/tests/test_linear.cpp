#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "rlab/errors.hpp"
#include "rlab/linear.hpp"
#include "rlab/rng.hpp"

using namespace rlab;

namespace {

NumericDataset make_numeric(std::size_t n, std::size_t p, std::uint64_t seed) {
    Rng rng(seed);
    NumericDataset data;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row(p);
        for (double& x : row) x = 2 * rng.uniform_real() - 1;
        data.rows.push_back(std::move(row));
        data.labels.push_back(rng.bernoulli(0.5) ? 1 : -1);
    }
    return data;
}

std::vector<double> random_unit(std::size_t p, Rng& rng) {
    std::vector<double> w(p);
    double norm = 0;
    while (norm < 1e-3) {
        for (double& x : w) x = 2 * rng.uniform_real() - 1;
        norm = norm2(w);
    }
    for (double& x : w) x /= norm;
    return w;
}

SymMat diag2(double a, double b) {
    SymMat m(2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    return m;
}

}  // namespace

TEST_CASE("numeric csv loader") {
    const std::string path = "/tmp/rlab_test_numeric.csv";
    {
        std::ofstream out(path);
        out << "a,b,y\n0.5,-1.25,1\n-2,0.75,-1\n";
    }
    const NumericDataset data = load_numeric_csv(path);
    REQUIRE(data.size() == 2);
    CHECK(data.rows[0][0] == 0.5);
    CHECK(data.rows[0][1] == -1.25);
    CHECK(data.labels[0] == 1);
    CHECK(data.labels[1] == -1);

    {
        std::ofstream out(path);
        out << "a,y\n0.5,2\n";  // label must be -1/+1
    }
    CHECK_THROWS_AS(load_numeric_csv(path), DataError);
    {
        std::ofstream out(path);
        out << "a,y\nfoo,1\n";
    }
    CHECK_THROWS_AS(load_numeric_csv(path), DataError);
    std::remove(path.c_str());
}

TEST_CASE("l2 attack geometry") {
    NumericDataset data;
    data.rows = {{2.0, 1.0}};
    data.labels = {1};
    const LinearModel e1{{1.0, 0.0}};

    SUBCASE("eta 0 leaves the data untouched") {
        const NumericDataset out = l2_attack(data, e1, 0.0);
        CHECK(out.rows[0][0] == 2.0);
        CHECK(out.rows[0][1] == 1.0);
    }
    SUBCASE("axis-aligned unit attack") {
        const NumericDataset out = l2_attack(data, e1, 1.0);
        CHECK(out.rows[0][0] == doctest::Approx(1.0));
        CHECK(out.rows[0][1] == doctest::Approx(1.0));
    }
    SUBCASE("margins shift by exactly eta ||w|| under the target") {
        Rng rng(3);
        const LinearModel target{random_unit(2, rng)};
        const double eta = 0.7;
        const NumericDataset out = l2_attack(data, target, eta);
        const double before = data.labels[0] * dot(target.w, data.rows[0]);
        const double after = data.labels[0] * dot(target.w, out.rows[0]);
        CHECK(after == doctest::Approx(before - eta * norm2(target.w)));
    }
    SUBCASE("zero target is rejected") {
        CHECK_THROWS_AS(l2_attack(data, LinearModel{{0.0, 0.0}}, 1.0), UsageError);
    }
}

TEST_CASE("closed-form adversarial loss equals direct evaluation") {
    Rng rng(11);
    for (int rep = 0; rep < 30; ++rep) {
        const NumericDataset data = make_numeric(5 + rep % 7, 3, 100 + rep);
        const LinearModel target{random_unit(3, rng)};
        const LinearModel w{random_unit(3, rng)};
        const double eta = 3 * rng.uniform_real();
        const double closed = adversarial_exp_loss(w, data, target, eta);
        const double direct = exp_loss(w, l2_attack(data, target, eta));
        CHECK(std::abs(closed - direct) / direct < 1e-9);
    }
}

TEST_CASE("cos extremes of the adversarial loss") {
    const NumericDataset data = make_numeric(12, 2, 5);
    const LinearModel target{{1.0, 0.0}};
    const double clean = exp_loss(LinearModel{{1.0, 0.0}}, data);
    // w = target, unit norm: loss scales by e^eta
    CHECK(adversarial_exp_loss(LinearModel{{1.0, 0.0}}, data, target, 2.0) ==
          doctest::Approx(std::exp(2.0) * clean));
    // w orthogonal to target: attack has no effect
    const LinearModel perp{{0.0, 1.0}};
    CHECK(adversarial_exp_loss(perp, data, target, 2.0) ==
          doctest::Approx(exp_loss(perp, data)));
}

TEST_CASE("ratio corollary: e^(eta cos) ordering and crossover") {
    Rng rng(21);
    const NumericDataset data = make_numeric(20, 3, 9);
    const LinearModel target{random_unit(3, rng)};
    LinearModel w1, w2;
    do {
        w1.w = random_unit(3, rng);
        w2.w = random_unit(3, rng);
        if (cosine(w1.w, target.w) < cosine(w2.w, target.w)) std::swap(w1.w, w2.w);
    } while (cosine(w1.w, target.w) - cosine(w2.w, target.w) < 0.15);

    const double eta = 1.3;
    const RatioReport report = corollary_ratio_check(w1, w2, data, target, eta);
    CHECK(report.ratio1 == doctest::Approx(std::exp(eta * report.cos1)).epsilon(1e-9));
    CHECK(report.ratio2 == doctest::Approx(std::exp(eta * report.cos2)).epsilon(1e-9));
    CHECK(report.ratio1 > report.ratio2);

    // strictly past the crossover w1 must lose to w2; strictly before, not
    const double after = report.eta_star * 1.01 + 0.01;
    CHECK(adversarial_exp_loss(w1, data, target, after) >
          adversarial_exp_loss(w2, data, target, after));
    if (report.eta_star > 1e-6) {
        const double before = report.eta_star * 0.99;
        CHECK(adversarial_exp_loss(w1, data, target, before) <=
              adversarial_exp_loss(w2, data, target, before) + 1e-12);
    }
}

TEST_CASE("ratio corollary rejects bad inputs") {
    const NumericDataset data = make_numeric(10, 2, 3);
    const LinearModel target{{1.0, 0.0}};
    CHECK_THROWS_AS(
        corollary_ratio_check(LinearModel{{2.0, 0.0}}, LinearModel{{0.0, 1.0}}, data,
                              target, 1.0),
        UsageError);
    // equal cosines violate the strict ordering
    CHECK_THROWS_AS(
        corollary_ratio_check(LinearModel{{0.0, 1.0}}, LinearModel{{0.0, 1.0}}, data,
                              target, 1.0),
        UsageError);
}

TEST_CASE("jacobi eigensolver reconstructs its input") {
    Rng rng(33);
    for (int p : {1, 2, 5, 9}) {
        SymMat m(p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j <= i; ++j) {
                const double v = 2 * rng.uniform_real() - 1;
                m.at(i, j) = v;
                m.at(j, i) = v;
            }
        const EigenDecomp decomp = jacobi_eigen(m);
        for (std::size_t k = 1; k < decomp.values.size(); ++k)
            CHECK(decomp.values[k] >= decomp.values[k - 1]);
        // rebuild sum_k lambda_k v_k v_k^T
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) {
                double rebuilt = 0;
                for (int k = 0; k < p; ++k)
                    rebuilt += decomp.values[k] * decomp.vectors[k][i] * decomp.vectors[k][j];
                CHECK(rebuilt == doctest::Approx(m.at(i, j)).epsilon(1e-8));
            }
    }
}

TEST_CASE("ellipsoid membership") {
    RegressionEllipsoid e;
    e.center = {1.0, -1.0};
    e.second_moment = diag2(2.0, 0.5);
    e.epsilon = 1.0;
    e.validate();

    SUBCASE("center is always a member") { CHECK(ellipsoid_member(e, e.center)); }
    SUBCASE("escape along the min-eigenvalue direction") {
        CHECK_FALSE(ellipsoid_member(e, {1.0, 100.0}));
    }
    SUBCASE("boundary point along an eigenvector") {
        // center + sqrt(eps/sigma) * v, sigma = 0.5 on axis 1
        const double t = std::sqrt(e.epsilon / 0.5);
        CHECK(ellipsoid_member(e, {1.0, -1.0 + t}));
        CHECK_FALSE(ellipsoid_member(e, {1.0, -1.0 + t + 1e-4}));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(ellipsoid_member(e, {0.0}), UsageError);
    }
}

TEST_CASE("least squares optimum on a finite support") {
    // y = 2 x0 - x1 exactly, so the fit must recover (2, -1)
    FiniteJoint dist;
    dist.atoms = {{{1.0, 0.0}, 2.0, 0.25},
                  {{0.0, 1.0}, -1.0, 0.25},
                  {{1.0, 1.0}, 1.0, 0.25},
                  {{-1.0, 1.0}, -3.0, 0.25}};
    const LinearModel fit = least_squares_fit(dist);
    CHECK(fit.w[0] == doctest::Approx(2.0));
    CHECK(fit.w[1] == doctest::Approx(-1.0));

    // stationarity: nudges along random directions never improve the loss
    Rng rng(41);
    const double base = squared_loss(fit, dist);
    for (int rep = 0; rep < 20; ++rep) {
        LinearModel nudged = fit;
        const std::vector<double> dir = random_unit(2, rng);
        for (std::size_t i = 0; i < 2; ++i) nudged.w[i] += 1e-3 * dir[i];
        CHECK(squared_loss(nudged, dist) >= base - 1e-12);
    }
}

TEST_CASE("midpoint theorem: identical distributions") {
    FiniteJoint d;
    d.atoms = {{{1.0, 0.0}, 0.5, 0.5}, {{0.0, 1.0}, -0.5, 0.5}};
    const MidpointReport report = midpoint_theorem_check(d, d, 0.3, -1, 1, 1.2);
    CHECK(report.tv == doctest::Approx(0.0));
    CHECK(report.condition_holds);
    CHECK(report.member1);
    CHECK(report.member2);
}

TEST_CASE("midpoint theorem: small conditional-y tweak keeps membership") {
    // two x atoms; d2 moves a little probability to shifted y values
    FiniteJoint d1, d2;
    d1.atoms = {{{1.0, 0.0}, 0.6, 0.5}, {{0.0, 1.0}, -0.4, 0.5}};
    d2.atoms = {{{1.0, 0.0}, 0.6, 0.45},
                {{1.0, 0.0}, 0.7, 0.05},
                {{0.0, 1.0}, -0.4, 0.45},
                {{0.0, 1.0}, -0.3, 0.05}};
    const MidpointReport report = midpoint_theorem_check(d1, d2, 0.4, -1, 1, 1.0);
    REQUIRE(report.condition_holds);  // tv = 0.1, threshold = 2 sqrt(.4)/2 = 0.632
    CHECK(report.member1);
    CHECK(report.member2);
}

TEST_CASE("midpoint theorem: oversized shift is skipped, mismatch rejected") {
    FiniteJoint d1, d2;
    d1.atoms = {{{1.0, 0.0}, 0.9, 0.5}, {{0.0, 1.0}, -0.9, 0.5}};
    d2.atoms = {{{1.0, 0.0}, -0.9, 0.5}, {{0.0, 1.0}, 0.9, 0.5}};
    const MidpointReport report = midpoint_theorem_check(d1, d2, 0.01, -1, 1, 1.0);
    CHECK_FALSE(report.condition_holds);

    FiniteJoint d3 = d1;
    d3.atoms[0].x = {0.5, 0.5};
    CHECK_THROWS_AS(midpoint_theorem_check(d1, d3, 0.1, -1, 1, 1.0), DataError);
}
