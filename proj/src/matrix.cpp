#include "pergraph/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pergraph {

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    CMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const cplx a = (*this)(r, k);
            if (a == cplx{}) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += a * rhs(k, c);
        }
    return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    CMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    CMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<cplx> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        cplx acc{};
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double CMatrix::hermitian_defect() const {
    if (!square()) return INFINITY;
    double m = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return m;
}

CMatrix CMatrix::leading_block(std::size_t n) const {
    if (n > rows_ || n > cols_) throw std::invalid_argument("leading block larger than matrix");
    CMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = (*this)(r, c);
    return out;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner product length mismatch");
    cplx acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
    return acc;
}

}  // namespace pergraph
