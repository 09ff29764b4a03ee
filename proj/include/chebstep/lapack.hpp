#pragma once

#include <vector>

#include "chebstep/util.hpp"

// Thin wrappers over LAPACKE used by the dense analysis paths. All matrices
// are column-major.

namespace chebstep::lapack {

/// Symmetric eigendecomposition; a (n x n) is overwritten with eigenvectors,
/// returns eigenvalues ascending.
std::vector<double> sym_eig(index_t n, std::vector<double>& a);

/// Eigenvalues only, ascending.
std::vector<double> sym_eigvals(index_t n, std::vector<double> a);

/// Singular values of an m x n matrix, descending.
std::vector<double> singular_values(index_t m, index_t n, std::vector<double> a);

/// Moduli of eigenvalues of a general square matrix.
std::vector<double> general_eigvals_mod(index_t n, std::vector<double> a);

/// Eigenvalues of a symmetric tridiagonal matrix, ascending.
std::vector<double> tridiag_eigvals(std::vector<double> diag,
                                    std::vector<double> offdiag);

/// SPD solve A X = B in place of b (n x nrhs).
void spd_solve(index_t n, std::vector<double> a, index_t nrhs,
               std::vector<double>& b);

}  // namespace chebstep::lapack
