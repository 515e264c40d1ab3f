// Minimal dense linear algebra for the small systems this toolkit solves
// (Newton steps and Levenberg-Marquardt normal equations, dimension <= 6).

#pragma once

#include <cstddef>
#include <vector>

namespace turinv {

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

// Solve A x = b by Gaussian elimination with partial pivoting.
// Returns false if the pivot collapses (singular to working precision).
bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& x);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, descending order.
std::vector<double> symmetric_eigenvalues(Matrix a);

// Singular values of a general matrix (sqrt of eigenvalues of A^T A),
// descending, clamped at zero.
std::vector<double> singular_values(const Matrix& a);

}  // namespace turinv
