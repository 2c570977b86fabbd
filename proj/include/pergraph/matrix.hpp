#pragma once

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pergraph {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for fiber operators (a few dozen rows at most).
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }
    const cplx& operator()(std::size_t r, std::size_t c) const {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<const cplx> data() const { return data_; }

    CMatrix adjoint() const;
    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator+(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;
    std::vector<cplx> apply(std::span<const cplx> x) const;

    /// Largest entrywise modulus.
    double max_abs() const;
    double frobenius() const;
    /// Largest |A(i,j) - conj(A(j,i))|.
    double hermitian_defect() const;

    /// Top-left n x n block.
    CMatrix leading_block(std::size_t n) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Fiber operators Δ(θ), H(θ) and the offset h(θ) are square Hermitian matrices.
using FiberMatrix = CMatrix;

/// <x, y> = Σ x_i conj(y_i)
cplx inner(std::span<const cplx> x, std::span<const cplx> y);

}  // namespace pergraph
