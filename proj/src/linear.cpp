#include "rlab/linear.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw UsageError("dot: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    const double na = norm2(a);
    const double nb = norm2(b);
    if (na == 0 || nb == 0) throw UsageError("cosine: zero vector");
    return dot(a, b) / (na * nb);
}

NumericDataset load_numeric_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path);

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            header.push_back(cell);
        }
    }
    std::size_t label_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (header[j] == label_column) label_idx = j;
    if (label_idx == header.size())
        throw DataError("missing label column '" + label_column + "' in " + path);

    NumericDataset data;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        int label = 0;
        std::size_t j = 0;
        while (std::getline(ss, cell, ',')) {
            double value;
            try {
                value = std::stod(cell);
            } catch (...) {
                throw DataError(path + ": non-numeric cell at row " + std::to_string(lineno));
            }
            if (j == label_idx) {
                if (value != 1.0 && value != -1.0)
                    throw DataError(path + ": label must be -1 or +1 at row " +
                                    std::to_string(lineno));
                label = static_cast<int>(value);
            } else {
                row.push_back(value);
            }
            ++j;
        }
        if (j != header.size())
            throw DataError(path + ": short row at line " + std::to_string(lineno));
        data.rows.push_back(std::move(row));
        data.labels.push_back(label);
    }
    if (data.rows.empty()) throw DataError("empty dataset: " + path);
    return data;
}

NumericDataset l2_attack(const NumericDataset& data, const LinearModel& target, double eta) {
    const double nt = norm2(target.w);
    if (nt == 0) throw UsageError("l2_attack: zero weight vector");
    NumericDataset out = data;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (data.rows[i].size() != target.dim())
            throw UsageError("l2_attack: dimension mismatch");
        const double scale = eta * data.labels[i] / nt;
        for (std::size_t j = 0; j < target.dim(); ++j)
            out.rows[i][j] = data.rows[i][j] - scale * target.w[j];
    }
    return out;
}

double exp_loss(const LinearModel& w, const NumericDataset& data) {
    if (w.dim() != data.dim()) throw UsageError("exp_loss: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        s += std::exp(-data.labels[i] * dot(w.w, data.rows[i]));
    return s / static_cast<double>(data.size());
}

double adversarial_exp_loss(const LinearModel& w, const NumericDataset& data,
                            const LinearModel& target, double eta) {
    if (norm2(w.w) == 0 || norm2(target.w) == 0)
        throw UsageError("adversarial_exp_loss: zero weight vector");
    if (w.dim() != data.dim() || target.dim() != data.dim())
        throw UsageError("adversarial_exp_loss: dimension mismatch");
    const double shift = eta * norm2(w.w) * cosine(w.w, target.w);
    double s = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        s += std::exp(-data.labels[i] * dot(w.w, data.rows[i]) + shift);
    return s / static_cast<double>(data.size());
}

RatioReport corollary_ratio_check(const LinearModel& w1, const LinearModel& w2,
                                  const NumericDataset& data, const LinearModel& target,
                                  double eta) {
    if (std::abs(norm2(w1.w) - 1.0) > 1e-9 || std::abs(norm2(w2.w) - 1.0) > 1e-9)
        throw UsageError("corollary_ratio_check: w1 and w2 must be unit vectors");
    RatioReport report;
    report.cos1 = cosine(w1.w, target.w);
    report.cos2 = cosine(w2.w, target.w);
    if (!(report.cos1 > report.cos2))
        throw UsageError("corollary_ratio_check: requires cos(w1, target) > cos(w2, target)");

    report.ratio1 = adversarial_exp_loss(w1, data, target, eta) / exp_loss(w1, data);
    report.ratio2 = adversarial_exp_loss(w2, data, target, eta) / exp_loss(w2, data);

    // crossover search: beyond eta*, the more-aligned model loses
    auto diff = [&](double e) {
        return adversarial_exp_loss(w1, data, target, e) -
               adversarial_exp_loss(w2, data, target, e);
    };
    double hi = 1.0;
    int guard = 0;
    while (diff(hi) <= 0 && guard++ < 200) hi *= 2;
    if (diff(hi) <= 0)
        throw DataError("corollary_ratio_check: no crossover found by doubling search");
    double lo = 0;
    if (diff(lo) > 0) {
        report.eta_star = 0;
        return report;
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-9 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (diff(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    report.eta_star = hi;
    return report;
}

void RegressionEllipsoid::validate() const {
    if (epsilon <= 0) throw UsageError("ellipsoid: epsilon must be > 0");
    if (static_cast<int>(center.size()) != second_moment.p)
        throw UsageError("ellipsoid: center/moment dimension mismatch");
    for (int i = 0; i < second_moment.p; ++i)
        for (int j = i + 1; j < second_moment.p; ++j)
            if (std::abs(second_moment.at(i, j) - second_moment.at(j, i)) > 1e-10)
                throw DataError("ellipsoid: second moment not symmetric");
    const EigenDecomp decomp = jacobi_eigen(second_moment);
    if (decomp.values.front() < -1e-10)
        throw DataError("ellipsoid: second moment not positive semidefinite");
}

bool ellipsoid_member(const RegressionEllipsoid& e, const std::vector<double>& w) {
    if (w.size() != e.center.size()) throw UsageError("ellipsoid_member: dimension mismatch");
    std::vector<double> diff(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) diff[i] = w[i] - e.center[i];
    return quadratic_form(e.second_moment, diff) <= e.epsilon + 1e-10;
}

void FiniteJoint::validate() const {
    if (atoms.empty()) throw DataError("joint distribution: no atoms");
    const std::size_t p = atoms[0].x.size();
    double total = 0;
    for (const auto& atom : atoms) {
        if (atom.x.size() != p) throw DataError("joint distribution: inconsistent x dims");
        if (atom.prob < 0) throw DataError("joint distribution: negative probability");
        total += atom.prob;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw DataError("joint distribution: probabilities do not sum to 1");
}

namespace {

SymMat second_moment_of(const FiniteJoint& dist) {
    const int p = static_cast<int>(dist.atoms[0].x.size());
    SymMat m(p);
    for (const auto& atom : dist.atoms)
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                m.at(i, j) += atom.prob * atom.x[static_cast<std::size_t>(i)] *
                              atom.x[static_cast<std::size_t>(j)];
    return m;
}

}  // namespace

LinearModel least_squares_fit(const FiniteJoint& dist) {
    dist.validate();
    const int p = static_cast<int>(dist.atoms[0].x.size());
    const SymMat m = second_moment_of(dist);
    std::vector<double> xy(static_cast<std::size_t>(p), 0.0);
    for (const auto& atom : dist.atoms)
        for (int i = 0; i < p; ++i)
            xy[static_cast<std::size_t>(i)] += atom.prob * atom.x[static_cast<std::size_t>(i)] * atom.y;
    LinearModel model;
    model.w = solve_spd(m, xy);
    return model;
}

double squared_loss(const LinearModel& w, const FiniteJoint& dist) {
    double s = 0;
    for (const auto& atom : dist.atoms) {
        const double r = dot(w.w, atom.x) - atom.y;
        s += atom.prob * r * r;
    }
    return s;
}

MidpointReport midpoint_theorem_check(const FiniteJoint& d1, const FiniteJoint& d2,
                                      double epsilon, double y_min, double y_max,
                                      double x_norm_bound) {
    d1.validate();
    d2.validate();
    if (epsilon <= 0) throw UsageError("midpoint_theorem_check: epsilon must be > 0");
    if (y_max <= y_min) throw UsageError("midpoint_theorem_check: empty y range");
    if (x_norm_bound <= 0) throw UsageError("midpoint_theorem_check: x bound must be > 0");

    // verify bounds and the shared x-marginal
    auto x_marginal = [](const FiniteJoint& dist) {
        std::vector<std::pair<std::vector<double>, double>> marginal;
        for (const auto& atom : dist.atoms) {
            bool found = false;
            for (auto& [x, prob] : marginal)
                if (x == atom.x) {
                    prob += atom.prob;
                    found = true;
                    break;
                }
            if (!found) marginal.emplace_back(atom.x, atom.prob);
        }
        return marginal;
    };
    for (const auto& dist : {d1, d2})
        for (const auto& atom : dist.atoms) {
            if (atom.y < y_min - 1e-12 || atom.y > y_max + 1e-12)
                throw DataError("midpoint_theorem_check: y outside [a, b]");
            if (norm2(atom.x) > x_norm_bound + 1e-12)
                throw DataError("midpoint_theorem_check: ||x|| exceeds C");
        }
    {
        const auto m1 = x_marginal(d1);
        const auto m2 = x_marginal(d2);
        for (const auto& [x, prob] : m1) {
            double other = 0;
            for (const auto& [x2, prob2] : m2)
                if (x2 == x) other = prob2;
            if (std::abs(prob - other) > 1e-9)
                throw DataError("midpoint_theorem_check: x-marginals differ");
        }
        if (m1.size() != m2.size())
            throw DataError("midpoint_theorem_check: x-marginals differ");
    }

    MidpointReport report;
    const SymMat moment = second_moment_of(d1);
    const EigenDecomp decomp = jacobi_eigen(moment);
    report.sigma_min = decomp.values.front();

    // exact TV on the union of atoms
    double tv = 0;
    for (const auto& atom : d1.atoms) {
        double p2 = 0;
        for (const auto& other : d2.atoms)
            if (other.x == atom.x && other.y == atom.y) p2 += other.prob;
        tv += std::abs(atom.prob - p2);
    }
    for (const auto& other : d2.atoms) {
        bool in_d1 = false;
        for (const auto& atom : d1.atoms)
            if (other.x == atom.x && other.y == atom.y) in_d1 = true;
        if (!in_d1) tv += other.prob;
    }
    report.tv = tv / 2;

    report.tv_threshold = 2 * std::sqrt(epsilon) * std::sqrt(std::max(0.0, report.sigma_min)) /
                          ((y_max - y_min) * x_norm_bound);
    report.condition_holds = report.tv <= report.tv_threshold;

    const LinearModel w1 = least_squares_fit(d1);
    const LinearModel w2 = least_squares_fit(d2);
    report.w1 = w1.w;
    report.w2 = w2.w;
    report.midpoint.resize(w1.w.size());
    for (std::size_t i = 0; i < w1.w.size(); ++i)
        report.midpoint[i] = 0.5 * (w1.w[i] + w2.w[i]);

    RegressionEllipsoid e1{w1.w, moment, epsilon};
    RegressionEllipsoid e2{w2.w, moment, epsilon};
    report.member1 = ellipsoid_member(e1, report.midpoint);
    report.member2 = ellipsoid_member(e2, report.midpoint);
    return report;
}

}  // namespace rlab
