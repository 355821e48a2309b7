#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "dqml/error.hpp"

namespace dqml {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

/// Dense row-major complex matrix. Value type; all algebra returns new
/// matrices. Square products go through the runtime-selected kernels.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cplx trace() const;

    double frobenius_norm() const;
    double max_abs() const;
    double one_norm() const;  // max column absolute sum

    bool is_hermitian(double tol) const;   // max elementwise |A - A^dagger|
    bool is_unitary(double tol) const;     // max elementwise |A^dagger A - I|

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

/// Kronecker product; index convention (i_a, i_b) -> i_a * b.rows() + i_b,
/// i.e. the left factor owns the most significant block.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// y = A x for a square A and vector x of matching length.
std::vector<cplx> matvec(const ComplexMatrix& a, const std::vector<cplx>& x);

/// commutator [A,B] and anticommutator {A,B}
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacked vectorization and its inverse (n x n <-> length n^2).
std::vector<cplx> vec_column(const ComplexMatrix& m);
ComplexMatrix unvec_column(const std::vector<cplx>& v, std::size_t n);

}  // namespace dqml
