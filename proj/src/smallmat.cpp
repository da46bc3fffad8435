#include "rlab/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rlab/errors.hpp"

namespace rlab {

EigenDecomp jacobi_eigen(const SymMat& m) {
    const int p = m.p;
    if (p < 1 || p > 16) throw UsageError("jacobi_eigen: dimension must be in [1, 16]");
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-10)
                throw UsageError("jacobi_eigen: matrix is not symmetric");

    SymMat a = m;
    std::vector<std::vector<double>> v(p, std::vector<double>(p, 0.0));
    for (int i = 0; i < p; ++i) v[i][i] = 1.0;

    auto off_frobenius = [&]() {
        double s = 0;
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                if (i != j) s += a.at(i, j) * a.at(i, j);
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_frobenius() >= 1e-12; ++sweep) {
        for (int i = 0; i < p - 1; ++i) {
            for (int j = i + 1; j < p; ++j) {
                const double apq = a.at(i, j);
                if (std::abs(apq) < 1e-300) continue;
                const double app = a.at(i, i);
                const double aqq = a.at(j, j);
                const double theta = (aqq - app) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1.0 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (int k = 0; k < p; ++k) {
                    const double aki = a.at(k, i);
                    const double akj = a.at(k, j);
                    a.at(k, i) = c * aki - s * akj;
                    a.at(k, j) = s * aki + c * akj;
                }
                for (int k = 0; k < p; ++k) {
                    const double aik = a.at(i, k);
                    const double ajk = a.at(j, k);
                    a.at(i, k) = c * aik - s * ajk;
                    a.at(j, k) = s * aik + c * ajk;
                }
                for (int k = 0; k < p; ++k) {
                    const double vki = v[k][i];
                    const double vkj = v[k][j];
                    v[k][i] = c * vki - s * vkj;
                    v[k][j] = s * vki + c * vkj;
                }
            }
        }
    }

    std::vector<int> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a.at(x, x) < a.at(y, y); });

    EigenDecomp decomp;
    for (int k : order) {
        decomp.values.push_back(a.at(k, k));
        std::vector<double> col(p);
        for (int i = 0; i < p; ++i) col[i] = v[i][k];
        decomp.vectors.push_back(std::move(col));
    }
    return decomp;
}

std::vector<double> solve_spd(const SymMat& m, const std::vector<double>& b) {
    if (static_cast<int>(b.size()) != m.p) throw UsageError("solve_spd: size mismatch");
    const EigenDecomp decomp = jacobi_eigen(m);
    const double scale = std::max(std::abs(decomp.values.front()),
                                  std::abs(decomp.values.back()));
    std::vector<double> x(b.size(), 0.0);
    for (std::size_t k = 0; k < decomp.values.size(); ++k) {
        if (decomp.values[k] <= scale * 1e-12 || decomp.values[k] <= 0)
            throw DataError("solve_spd: singular or indefinite matrix");
        double proj = 0;
        for (std::size_t i = 0; i < b.size(); ++i) proj += decomp.vectors[k][i] * b[i];
        proj /= decomp.values[k];
        for (std::size_t i = 0; i < b.size(); ++i) x[i] += proj * decomp.vectors[k][i];
    }
    return x;
}

double quadratic_form(const SymMat& m, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != m.p)
        throw UsageError("quadratic_form: size mismatch");
    double s = 0;
    for (int i = 0; i < m.p; ++i)
        for (int j = 0; j < m.p; ++j) s += x[static_cast<std::size_t>(i)] * m.at(i, j) *
                                           x[static_cast<std::size_t>(j)];
    return s;
}

}  // namespace rlab
