#pragma once

#include <vector>

namespace rlab {

// Dense symmetric p x p matrix, p <= 16. Enough linear algebra for the
// regression-ellipsoid analytics without an external dependency.
struct SymMat {
    int p = 0;
    std::vector<double> a;  // row-major

    SymMat() = default;
    explicit SymMat(int dim) : p(dim), a(static_cast<std::size_t>(dim) * dim, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * p + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * p + j]; }
};

struct EigenDecomp {
    std::vector<double> values;          // ascending
    std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

// Cyclic Jacobi rotations; converges when the off-diagonal Frobenius norm
// drops below 1e-12.
EigenDecomp jacobi_eigen(const SymMat& m);

// Solve M w = b for symmetric positive definite M via the eigendecomposition.
// Throws on (numerically) singular input.
std::vector<double> solve_spd(const SymMat& m, const std::vector<double>& b);

double quadratic_form(const SymMat& m, const std::vector<double>& x);

}  // namespace rlab
