#include "fcs/matrix.hpp"

#include <cmath>
#include <string>

namespace fcs {

namespace {
[[noreturn]] void shape_fail(const char* op, const Matrix& a, const Matrix& b) {
  throw ShapeMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
}
}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) shape_fail("add", *this, o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) shape_fail("sub", *this, o);
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(complexd s) {
  for (auto& z : a_) z *= s;
  return *this;
}

Matrix Matrix::block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const {
  if (i0 + h > rows_ || j0 + w > cols_)
    throw ShapeMismatch("block out of range: (" + std::to_string(i0) + "," + std::to_string(j0) +
                        ")+" + std::to_string(h) + "x" + std::to_string(w) + " in " +
                        std::to_string(rows_) + "x" + std::to_string(cols_));
  Matrix b(h, w);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  return b;
}

void Matrix::set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
  if (i0 + b.rows() > rows_ || j0 + b.cols() > cols_)
    throw ShapeMismatch("set_block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

Matrix operator-(const Matrix& a) {
  Matrix m = a;
  return m *= -1.0;
}

Matrix operator*(complexd s, Matrix a) { return a *= s; }
Matrix operator*(Matrix a, complexd s) { return a *= s; }

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) shape_fail("matmul", a, b);
  Matrix c(a.rows(), b.cols());
  // i-k-j loop order keeps the inner accesses contiguous in row-major storage.
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const complexd aik = a(i, k);
      if (aik == complexd(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix dagger(const Matrix& a) {
  Matrix m(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(j, i) = std::conj(a(i, j));
  return m;
}

Matrix transpose(const Matrix& a) {
  Matrix m(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(j, i) = a(i, j);
  return m;
}

Matrix conjugate(const Matrix& a) {
  Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = std::conj(a(i, j));
  return m;
}

complexd trace(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("trace of non-square matrix");
  complexd t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

complexd hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) shape_fail("hs_inner", a, b);
  complexd s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a.data()[k]) * b.data()[k];
  return s;
}

double fro_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a.data()[k]);
  return std::sqrt(s);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k]));
  return m;
}

bool is_hermitian(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return fro_norm(a - dagger(a)) <= rel_tol * std::max(fro_norm(a), 1e-300);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complexd aij = a(i, j);
      if (aij == complexd(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

Matrix vec(const Matrix& x) {
  Matrix v(x.rows() * x.cols(), 1);
  for (std::size_t j = 0; j < x.cols(); ++j)
    for (std::size_t i = 0; i < x.rows(); ++i) v(i + j * x.rows(), 0) = x(i, j);
  return v;
}

Matrix unvec(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) throw ShapeMismatch("unvec: bad vector shape");
  Matrix x(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) x(i, j) = v(i + j * rows, 0);
  return x;
}

Matrix matrix_unit(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw IndexOutOfRange("matrix_unit index out of range");
  Matrix e(n, n);
  e(i, j) = 1.0;
  return e;
}

std::vector<Matrix> pauli_basis() {
  const complexd I(0.0, 1.0);
  std::vector<Matrix> s(4, Matrix(2, 2));
  s[0] = Matrix::identity(2);
  s[1](0, 1) = 1.0;
  s[1](1, 0) = 1.0;
  s[2](0, 1) = -I;
  s[2](1, 0) = I;
  s[3](0, 0) = 1.0;
  s[3](1, 1) = -1.0;
  return s;
}

std::vector<Matrix> hs_basis(std::size_t d) {
  std::vector<Matrix> basis;
  basis.reserve(d * d);
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  basis.push_back(inv_sqrt_d * Matrix::identity(d));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      Matrix sym(d, d), asym(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      asym(j, k) = complexd(0.0, -inv_sqrt2);
      asym(k, j) = complexd(0.0, inv_sqrt2);
      basis.push_back(sym);
      basis.push_back(asym);
    }
  // Diagonal traceless elements, orthogonal to the identity and each other.
  for (std::size_t l = 1; l < d; ++l) {
    Matrix g(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) g(j, j) = norm;
    g(l, l) = -static_cast<double>(l) * norm;
    basis.push_back(g);
  }
  return basis;
}

}  // namespace fcs
