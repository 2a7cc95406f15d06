#pragma once

#include <vector>

#include "fcs/matrix.hpp"

namespace fcs {

struct HermEigResult {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // columns, orthonormal, same order
};

// Cyclic Jacobi on the Hermitized input.  Input must be Hermitian within
// rel_tol (Frobenius), otherwise NotHermitian.
HermEigResult herm_eig(const Matrix& m, double rel_tol = 1e-10);

double min_eig(const Matrix& a);       // smallest eigenvalue of a Hermitian a
double operator_norm(const Matrix& a); // largest singular value, via herm_eig(a†a)

// Orthonormal basis (columns) of {v : ‖m·v‖ ≲ tol·‖m‖}, computed by
// column-pivoted Householder QR on m (rank = number of pivot column norms
// above tol relative to the first).  Zero columns when the kernel is trivial.
Matrix null_space(const Matrix& m, double tol = 1e-10);

// Eigenvalues of a general square complex matrix: Householder reduction to
// Hessenberg form, then shifted QR with deflation.  Unsorted.
std::vector<complexd> eig_values(const Matrix& a, std::size_t max_iter_per_eig = 80);

}  // namespace fcs
