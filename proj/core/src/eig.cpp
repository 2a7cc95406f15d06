#include "fcs/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fcs {

namespace {

double off_diag_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermEigResult herm_eig(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) throw ShapeMismatch("herm_eig: matrix not square");
  const std::size_t n = m.rows();
  const double scale = fro_norm(m);
  if (fro_norm(m - dagger(m)) > rel_tol * std::max(scale, 1e-300))
    throw NotHermitian("herm_eig: input deviates from its adjoint beyond tolerance");

  // Work on the exact Hermitian part; rounding in the caller's arithmetic is
  // below rel_tol anyway and this keeps the rotations exactly unitary.
  Matrix a = 0.5 * (m + dagger(m));
  Matrix q = Matrix::identity(n);

  if (n > 1) {
    const double stop = 1e-14 * std::max(scale, 1e-300);
    const int max_sweeps = 100;
    int sweep = 0;
    while (off_diag_norm(a) > stop) {
      if (++sweep > max_sweeps)
        throw NoConvergence("herm_eig: Jacobi sweeps exceeded " + std::to_string(max_sweeps));
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t qq = p + 1; qq < n; ++qq) {
          const complexd apq = a(p, qq);
          const double mag = std::abs(apq);
          if (mag <= 1e-300) continue;
          const double app = a(p, p).real();
          const double aqq = a(qq, qq).real();
          const double tau = (aqq - app) / (2.0 * mag);
          const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const complexd phase = apq / mag;
          const complexd sp = s * phase;          // G(p,q)
          const complexd spc = s * std::conj(phase);
          // A <- G† A G, Q <- Q G with G = I except G(p,p)=G(q,q)=c,
          // G(p,q)=s·phase, G(q,p)=-s·conj(phase).
          for (std::size_t i = 0; i < n; ++i) {   // columns p,q of A and Q
            const complexd aip = a(i, p), aiq = a(i, qq);
            a(i, p) = c * aip - spc * aiq;
            a(i, qq) = sp * aip + c * aiq;
            const complexd qip = q(i, p), qiq = q(i, qq);
            q(i, p) = c * qip - spc * qiq;
            q(i, qq) = sp * qip + c * qiq;
          }
          for (std::size_t j = 0; j < n; ++j) {   // rows p,q of A
            const complexd apj = a(p, j), aqj = a(qq, j);
            a(p, j) = c * apj - sp * aqj;
            a(qq, j) = spc * apj + c * aqj;
          }
          a(p, qq) = 0.0;
          a(qq, p) = 0.0;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermEigResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, k) = q(i, order[k]);
  }
  return res;
}

double min_eig(const Matrix& a) { return herm_eig(a).eigenvalues.front(); }

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix g = dagger(a) * a;
  const double lmax = herm_eig(g, 1e-8).eigenvalues.back();
  return std::sqrt(std::max(lmax, 0.0));
}

Matrix null_space(const Matrix& m, double tol) {
  if (tol <= 0.0) throw Error("null_space: tol must be positive");
  const std::size_t rows = m.rows(), cols = m.cols();

  // Column-pivoted Householder QR on m itself.  Working on m keeps the small
  // singular values at full precision; an eigendecomposition of m†m would
  // square the condition number and drown σ ≈ 0 directions in O(ε·σ_max²)
  // noise, far above a 1e-10 relative cut.
  Matrix r = m;
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), 0);

  const std::size_t steps = std::min(rows, cols);
  std::size_t rank = 0;
  double rmax = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t piv = k;
    double bestn = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += std::norm(r(i, j));
      if (s > bestn) {
        bestn = s;
        piv = j;
      }
    }
    if (piv != k) {
      std::swap(perm[k], perm[piv]);
      for (std::size_t i = 0; i < rows; ++i) std::swap(r(i, k), r(i, piv));
    }
    const double xnorm = std::sqrt(std::max(bestn, 0.0));
    if (k == 0) rmax = xnorm;
    if (xnorm <= tol * rmax || xnorm == 0.0) break;
    ++rank;

    // Reflector v = x + phase·‖x‖·e_k on rows k.. of columns k..
    const complexd alpha = r(k, k);
    const double amag = std::abs(alpha);
    const complexd phase = amag > 1e-300 ? alpha / amag : complexd(1.0);
    std::vector<complexd> v(rows, 0.0);
    for (std::size_t i = k; i < rows; ++i) v[i] = r(i, k);
    v[k] += phase * xnorm;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < rows; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 <= 1e-300) continue;
    const double beta = 2.0 / vnorm2;
    for (std::size_t j = k; j < cols; ++j) {
      complexd dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += std::conj(v[i]) * r(i, j);
      dot *= beta;
      for (std::size_t i = k; i < rows; ++i) r(i, j) -= dot * v[i];
    }
    for (std::size_t i = k + 1; i < rows; ++i) r(i, k) = 0.0;
  }

  // Basic solutions: one per free (non-pivot) column f, solving the pivot
  // block R11·z = −R(·,f) by back-substitution.
  const std::size_t nullity = cols - rank;
  Matrix basis(cols, nullity);
  for (std::size_t fidx = 0; fidx < nullity; ++fidx) {
    const std::size_t f = rank + fidx;
    std::vector<complexd> z(rank, 0.0);
    for (std::size_t i = rank; i-- > 0;) {
      complexd acc = -r(i, f);
      for (std::size_t j = i + 1; j < rank; ++j) acc -= r(i, j) * z[j];
      z[i] = acc / r(i, i);
    }
    for (std::size_t i = 0; i < rank; ++i) basis(perm[i], fidx) = z[i];
    basis(perm[f], fidx) = 1.0;
  }

  // Orthonormalize (twice, for the usual Gram–Schmidt stability reasons).
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < nullity; ++j) {
      for (std::size_t p = 0; p < j; ++p) {
        complexd ip = 0.0;
        for (std::size_t i = 0; i < cols; ++i) ip += std::conj(basis(i, p)) * basis(i, j);
        for (std::size_t i = 0; i < cols; ++i) basis(i, j) -= ip * basis(i, p);
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < cols; ++i) nrm += std::norm(basis(i, j));
      nrm = std::sqrt(nrm);
      for (std::size_t i = 0; i < cols; ++i) basis(i, j) /= nrm;
    }
  }
  return basis;
}

namespace {

// Householder reduction to upper Hessenberg form (in place).
void hessenberg(Matrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm <= 1e-300) continue;
    complexd alpha = h(k + 1, k);
    const double amag = std::abs(alpha);
    const complexd phase = amag > 1e-300 ? alpha / amag : complexd(1.0);
    // v = x + phase·‖x‖·e1, reflector P = I - 2vv†/v†v
    std::vector<complexd> v(n, 0.0);
    for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
    v[k + 1] += phase * xnorm;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 <= 1e-300) continue;
    const double beta = 2.0 / vnorm2;
    // H <- P H
    for (std::size_t j = k; j < n; ++j) {
      complexd dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      dot *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
    }
    // H <- H P
    for (std::size_t i = 0; i < n; ++i) {
      complexd dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

complexd wilkinson_shift(const Matrix& h, std::size_t m) {
  // Eigenvalue of the trailing 2x2 block closest to h(m,m).
  const complexd a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
  const complexd tr = a + d;
  const complexd det = a * d - b * c;
  const complexd disc = std::sqrt(tr * tr - 4.0 * det);
  const complexd l1 = 0.5 * (tr + disc);
  const complexd l2 = 0.5 * (tr - disc);
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<complexd> eig_values(const Matrix& a, std::size_t max_iter_per_eig) {
  if (a.rows() != a.cols()) throw ShapeMismatch("eig_values: matrix not square");
  const std::size_t n = a.rows();
  std::vector<complexd> lam(n);
  if (n == 0) return lam;
  Matrix h = a;
  hessenberg(h);
  const double scale = std::max(fro_norm(h), 1e-300);

  std::size_t hi = n;  // active block is h[0..hi)
  std::size_t iter = 0, since_deflate = 0;
  const std::size_t budget = max_iter_per_eig * n + 50;
  while (hi > 0) {
    if (hi == 1) {
      lam[0] = h(0, 0);
      break;
    }
    // Deflate any negligible subdiagonal entry at the bottom of the block.
    const double eps = 1e-15;
    if (std::abs(h(hi - 1, hi - 2)) <=
        eps * (std::abs(h(hi - 2, hi - 2)) + std::abs(h(hi - 1, hi - 1)) + 1e-30 * scale)) {
      lam[hi - 1] = h(hi - 1, hi - 1);
      --hi;
      since_deflate = 0;
      continue;
    }
    if (++iter > budget)
      throw NoConvergence("eig_values: QR iteration budget exhausted");
    complexd mu = wilkinson_shift(h, hi - 1);
    if (++since_deflate % 16 == 0) {
      // Occasional exceptional shift breaks the rare symmetric stall;
      // deterministic on purpose.
      mu = h(hi - 1, hi - 1) + 0.9 * std::abs(h(hi - 1, hi - 2));
    }
    // One implicit shifted QR step on the leading hi x hi block via Givens.
    std::vector<complexd> cs(hi - 1), sn(hi - 1);
    for (std::size_t k = 0; k < hi; ++k) h(k, k) -= mu;
    for (std::size_t k = 0; k + 1 < hi; ++k) {
      const complexd x = h(k, k), y = h(k + 1, k);
      const double r = std::sqrt(std::norm(x) + std::norm(y));
      if (r <= 1e-300) {
        cs[k] = 1.0;
        sn[k] = 0.0;
        continue;
      }
      cs[k] = x / r;
      sn[k] = y / r;
      // Rows k, k+1: G = [[c̄, s̄], [−s, c]]
      for (std::size_t j = k; j < hi; ++j) {
        const complexd t1 = h(k, j), t2 = h(k + 1, j);
        h(k, j) = std::conj(cs[k]) * t1 + std::conj(sn[k]) * t2;
        h(k + 1, j) = -sn[k] * t1 + cs[k] * t2;
      }
    }
    for (std::size_t k = 0; k + 1 < hi; ++k) {
      // Columns k, k+1: multiply by G† on the right.
      const std::size_t top = std::min(k + 2, hi - 1);
      for (std::size_t i = 0; i <= top; ++i) {
        const complexd t1 = h(i, k), t2 = h(i, k + 1);
        h(i, k) = t1 * cs[k] + t2 * sn[k];
        h(i, k + 1) = -t1 * std::conj(sn[k]) + t2 * std::conj(cs[k]);
      }
    }
    for (std::size_t k = 0; k < hi; ++k) h(k, k) += mu;
  }
  return lam;
}

}  // namespace fcs
