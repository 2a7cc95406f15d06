#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fcs/errors.hpp"

namespace fcs {

using complexd = std::complex<double>;

// Dense complex matrix, row-major.  The one carrier type for algebra
// elements, operators, superoperators and (as n x 1) vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return a_.size(); }
  bool empty() const { return a_.empty(); }

  complexd& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const complexd& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  complexd* data() { return a_.data(); }
  const complexd* data() const { return a_.data(); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(complexd s);

  // Rectangular block starting at (i0, j0), h x w.
  Matrix block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const;
  void set_block(std::size_t i0, std::size_t j0, const Matrix& b);
  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<complexd> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(complexd s, Matrix a);
Matrix operator*(Matrix a, complexd s);
Matrix operator*(const Matrix& a, const Matrix& b);  // matmul

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix dagger(const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix conjugate(const Matrix& a);
complexd trace(const Matrix& a);
complexd hs_inner(const Matrix& a, const Matrix& b);  // Tr(a† b)
double fro_norm(const Matrix& a);
double max_abs(const Matrix& a);
bool is_hermitian(const Matrix& a, double rel_tol = 1e-10);

// Kronecker product: (a⊗b)[(i·rb+k),(j·cb+l)] = a[i,j]·b[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

// Column-stacking vectorization, fixed convention for every superoperator in
// this library: vec(X)[i + j·rows] = X(i,j).
Matrix vec(const Matrix& x);
Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols);

// Matrix unit e_{ij} in M_n.
Matrix matrix_unit(std::size_t n, std::size_t i, std::size_t j);

// σ⁰=I₂, σ¹, σ², σ³.
std::vector<Matrix> pauli_basis();

// Hermitian Hilbert-Schmidt-orthonormal basis of M_d, identity/√d first,
// then for each pair j<k the symmetric and antisymmetric combinations of
// e_{jk}, then the diagonal (generalized Gell-Mann) elements.  The fixed
// ordering is what makes functional-matrix indexing reproducible.
std::vector<Matrix> hs_basis(std::size_t d);

}  // namespace fcs
