#include "pergraph/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pergraph {

namespace {

double max_off_diagonal(const CMatrix& a) {
    double m = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) m = std::max(m, std::abs(a(p, q)));
    return m;
}

/// Annihilates a(p, q) with J = diag-phase * real rotation, applying A <- J* A J and V <- V J.
void rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
    const cplx z = a(p, q);
    const double r = std::abs(z);
    const cplx phase = z / r;  // e^{iα}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * r);
    const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // J_pp = c, J_pq = s, J_qp = -s e^{-iα}, J_qq = c e^{-iα}
    const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
    const std::size_t n = a.rows();

    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = akp * jpp + akq * jqp;
        a(k, q) = akp * jpq + akq * jqq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
        a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = app - t * r;
    a(q, q) = aqq + t * r;

    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = vkp * jpp + vkq * jqp;
        v(k, q) = vkp * jpq + vkq * jqq;
    }
}

}  // namespace

EigenDecomposition hermitian_eigen(const CMatrix& matrix, const JacobiOptions& options) {
    if (!matrix.square()) throw EigenError("eigen decomposition of a non-square matrix");
    const std::size_t n = matrix.rows();
    const double scale = std::max(1.0, matrix.max_abs());
    if (matrix.hermitian_defect() > options.hermitian_tol * scale) {
        std::ostringstream os;
        os << "matrix is not Hermitian (defect " << matrix.hermitian_defect() << ")";
        throw EigenError(os.str());
    }

    // Work on the exactly Hermitian part.
    CMatrix a(n, n);
    for (std::size_t p = 0; p < n; ++p) {
        a(p, p) = matrix(p, p).real();
        for (std::size_t q = p + 1; q < n; ++q) {
            a(p, q) = 0.5 * (matrix(p, q) + std::conj(matrix(q, p)));
            a(q, p) = std::conj(a(p, q));
        }
    }
    CMatrix v = CMatrix::identity(n);

    const double norm = a.frobenius();
    const double stop = options.off_tol * norm;
    int sweep = 0;
    while (max_off_diagonal(a) >= stop && norm > 0.0) {
        if (sweep++ >= options.max_sweeps) {
            std::ostringstream os;
            os << "Jacobi did not converge in " << options.max_sweeps << " sweeps (off-diagonal "
               << max_off_diagonal(a) << ")";
            throw EigenError(os.str());
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 1e-3 * stop) rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }

    const double tol = options.residual_tol * std::max(1.0, norm);
    std::vector<cplx> column(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t r = 0; r < n; ++r) column[r] = out.vectors(r, k);
        const auto av = matrix.apply(column);
        double res = 0.0;
        for (std::size_t r = 0; r < n; ++r) res += std::norm(av[r] - out.values[k] * column[r]);
        res = std::sqrt(res);
        if (res > tol) {
            std::ostringstream os;
            os << "eigenpair " << k << " residual " << res << " exceeds " << tol;
            throw EigenError(os.str());
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& matrix, const JacobiOptions& options) {
    return hermitian_eigen(matrix, options).values;
}

}  // namespace pergraph
