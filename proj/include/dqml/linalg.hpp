#pragma once

#include <vector>

#include "dqml/complex_matrix.hpp"

// Thin facade over the dense eigen/Schur/solve routines plus a
// scaling-and-squaring matrix exponential. Everything works on
// row-major ComplexMatrix values.

namespace dqml::linalg {

struct EighResult {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // eigenvectors as columns
};

/// Hermitian eigendecomposition.
EighResult eigh(const ComplexMatrix& a);

struct EigResult {
    std::vector<cplx> values;
    ComplexMatrix vectors;  // right eigenvectors as columns
};

/// General complex eigendecomposition (right eigenvectors).
EigResult eig(const ComplexMatrix& a);

struct SchurResult {
    ComplexMatrix t;           // upper triangular
    ComplexMatrix q;           // unitary, a = q t q^dagger
    std::vector<cplx> values;  // diagonal of t
    std::size_t n_kernel;      // leading eigenvalues with |lambda| <= tol
};

/// Schur decomposition reordered so eigenvalues with |lambda| <= tol
/// occupy the leading block.
SchurResult schur_kernel_first(const ComplexMatrix& a, double tol);

/// Solve A X = B for square A.
ComplexMatrix solve(ComplexMatrix a, ComplexMatrix b);

/// Solve T11 X - X T22 = C with T11 (k x k) and T22 (m x m) upper
/// triangular and disjoint spectra; C is k x m.
ComplexMatrix sylvester_triangular(const ComplexMatrix& t11,
                                   const ComplexMatrix& t22,
                                   const ComplexMatrix& c);

/// Minimum-norm real least squares ||A x - b||_2 (row-major A).
std::vector<double> lstsq(const std::vector<double>& a, std::size_t rows,
                          std::size_t cols, std::vector<double> b);

/// Solve the real symmetric positive definite system A x = b by Cholesky.
/// Throws when A is not positive definite.
std::vector<double> solve_spd(std::vector<double> a, std::size_t n,
                              std::vector<double> b);

/// exp(A) by scaling and squaring with a degree-13 Pade approximant.
ComplexMatrix expm(const ComplexMatrix& a);

}  // namespace dqml::linalg
