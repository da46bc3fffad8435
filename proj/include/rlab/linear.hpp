#pragma once

#include <string>
#include <vector>

#include "rlab/smallmat.hpp"

namespace rlab {

struct LinearModel {
    std::vector<double> w;

    std::size_t dim() const { return w.size(); }
};

// Real-valued dataset with labels in {-1, +1}; a separate world from the
// binary BitDataset.
struct NumericDataset {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;

    std::size_t size() const { return rows.size(); }
    std::size_t dim() const { return rows.empty() ? 0 : rows[0].size(); }
};

NumericDataset load_numeric_csv(const std::string& path,
                                const std::string& label_column = "y");

double norm2(const std::vector<double>& v);
double dot(const std::vector<double>& a, const std::vector<double>& b);
double cosine(const std::vector<double>& a, const std::vector<double>& b);

// x' = x - eta * y * w_hat / ||w_hat||, the canonical margin attack.
NumericDataset l2_attack(const NumericDataset& data, const LinearModel& target, double eta);

double exp_loss(const LinearModel& w, const NumericDataset& data);

// Closed form (1/n) sum exp(-y w'x + eta ||w|| cos(w, w_hat)); equals the
// empirical exponential loss on the attacked dataset.
double adversarial_exp_loss(const LinearModel& w, const NumericDataset& data,
                            const LinearModel& target, double eta);

struct RatioReport {
    double ratio1 = 0;  // L_adv(w1) / L_clean(w1) = e^(eta cos1)
    double ratio2 = 0;
    double cos1 = 0;
    double cos2 = 0;
    double eta_star = 0;  // attack strength beyond which w1 loses to w2
};

// Checks both exponential-loss corollaries: the ratio ordering at the given
// eta, and the crossover eta* found by doubling search + bisection.
RatioReport corollary_ratio_check(const LinearModel& w1, const LinearModel& w2,
                                  const NumericDataset& data, const LinearModel& target,
                                  double eta);

struct RegressionEllipsoid {
    std::vector<double> center;  // w_hat
    SymMat second_moment;        // E[x x^T]
    double epsilon = 0;

    void validate() const;
};

// (w - c)^T E[xx^T] (w - c) <= epsilon, tolerance 1e-10.
bool ellipsoid_member(const RegressionEllipsoid& e, const std::vector<double>& w);

// Finite joint distribution over (x, y) atoms.
struct JointAtom {
    std::vector<double> x;
    double y = 0;
    double prob = 0;
};

struct FiniteJoint {
    std::vector<JointAtom> atoms;

    void validate() const;
};

// Least-squares optimum via the normal equations on the finite support.
LinearModel least_squares_fit(const FiniteJoint& dist);
double squared_loss(const LinearModel& w, const FiniteJoint& dist);

struct MidpointReport {
    double tv = 0;
    double tv_threshold = 0;  // 2 sqrt(eps) sqrt(sigma_min) / ((b-a) C)
    double sigma_min = 0;
    bool condition_holds = false;
    std::vector<double> w1, w2, midpoint;
    bool member1 = false;  // midpoint in the d1 ellipsoid
    bool member2 = false;
};

// Label-shift midpoint theorem: if TV(d1, d2) is below the threshold, the
// average of the two least-squares optima lies in both epsilon-ellipsoids.
MidpointReport midpoint_theorem_check(const FiniteJoint& d1, const FiniteJoint& d2,
                                      double epsilon, double y_min, double y_max,
                                      double x_norm_bound);

}  // namespace rlab
