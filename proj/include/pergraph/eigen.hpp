#pragma once

#include <stdexcept>
#include <vector>

#include "pergraph/matrix.hpp"

namespace pergraph {

struct EigenDecomposition {
    std::vector<double> values;  ///< ascending
    CMatrix vectors;             ///< column k belongs to values[k]
};

class EigenError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct JacobiOptions {
    /// Stop once max |a_pq| < off_tol * ||A||_F.
    double off_tol = 1e-13;
    int max_sweeps = 100;
    /// Accepted residual ||Av - λv|| per pair, relative to max(1, ||A||_F).
    double residual_tol = 1e-10;
    /// Accepted |A - A*| entrywise, relative to max(1, max |a_ij|).
    double hermitian_tol = 1e-12;
};

/// Cyclic Jacobi with complex Givens rotations.
///
/// Throws EigenError when the input is not Hermitian, when the sweep limit is reached,
/// or when an eigenpair fails the residual test.
EigenDecomposition hermitian_eigen(const CMatrix& matrix, const JacobiOptions& options = {});

/// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const CMatrix& matrix, const JacobiOptions& options = {});

}  // namespace pergraph
