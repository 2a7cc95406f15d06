#include "fcs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcs/eig.hpp"
#include "fcs/errors.hpp"
#include "fcs/rng.hpp"

namespace fcs {

namespace {

std::size_t window_dim(std::size_t d, std::size_t n) {
  std::size_t dim = 1;
  for (std::size_t k = 0; k < n; ++k) dim *= d * d;
  return dim;
}

// Covectors ξ∘E_(m)(X_flat ⊗ ·) for every monomial of the left window,
// site-major flat indexing.
std::vector<Matrix> left_covectors(const CpMap& cp, const BoundaryState& xi,
                                   std::size_t m) {
  std::vector<Matrix> site_ops;
  for (const Matrix& g : hs_basis(cp.d)) site_ops.push_back(letter_superop(cp, g));
  std::vector<Matrix> level{dagger(vec(xi.rho))};
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Matrix> next;
    next.reserve(level.size() * site_ops.size());
    for (const Matrix& u : level)
      for (const Matrix& l : site_ops) next.push_back(u * l);
    level = std::move(next);
  }
  return level;
}

// Vectors E_(n)(X_flat ⊗ 1) for the right window, site-major flat indexing.
std::vector<Matrix> right_vectors(const CpMap& cp, std::size_t n) {
  std::vector<Matrix> site_ops;
  for (const Matrix& g : hs_basis(cp.d)) site_ops.push_back(letter_superop(cp, g));
  std::vector<Matrix> level{vec(Matrix::identity(cp.r))};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Matrix> next(level.size() * site_ops.size(), Matrix());
    for (std::size_t rest = 0; rest < level.size(); ++rest)
      for (std::size_t g = 0; g < site_ops.size(); ++g)
        next[g * level.size() + rest] = site_ops[g] * level[rest];
    level = std::move(next);
  }
  return level;
}

std::vector<complexd> coefficients(const std::vector<Matrix>& basis, const Matrix& x) {
  std::vector<complexd> c(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) c[i] = hs_inner(basis[i], x);
  return c;
}

// All positive left-window candidates: coefficient vectors of g₁²⊗…⊗g_m²
// (site-major), plus `samples` random y†y; paired with nothing else.
std::vector<std::vector<complexd>> left_candidates(std::size_t d, std::size_t m,
                                                   std::size_t samples,
                                                   std::uint64_t seed) {
  std::vector<Matrix> site = hs_basis(d);
  const std::size_t ds = site.size();
  std::vector<std::vector<complexd>> per_site;
  for (const Matrix& g : site) {
    std::vector<complexd> c = coefficients(site, g * g);
    per_site.push_back(std::move(c));
  }

  std::vector<std::vector<complexd>> out;
  std::vector<std::size_t> digits(m, 0);
  const std::size_t total = window_dim(d, m);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = m; k-- > 0;) {
      digits[k] = rem % ds;
      rem /= ds;
    }
    std::vector<complexd> c{1.0};
    for (std::size_t k = 0; k < m; ++k) {
      const std::vector<complexd>& s = per_site[digits[k]];
      std::vector<complexd> nextc(c.size() * s.size());
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) nextc[i * s.size() + j] = c[i] * s[j];
      c = std::move(nextc);
    }
    out.push_back(std::move(c));
  }

  if (samples > 0) {
    std::vector<Matrix> big = window_basis(d, m);
    std::size_t dim = 1;
    for (std::size_t k = 0; k < m; ++k) dim *= d;
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      Matrix y = rng.gaussian_matrix(dim, dim);
      out.push_back(coefficients(big, dagger(y) * y));
    }
  }
  return out;
}

std::vector<Matrix> hermitian_generators(const std::vector<Matrix>& kernel) {
  std::vector<Matrix> gens;
  for (const Matrix& k : kernel) {
    Matrix h = k + dagger(k);
    h *= complexd(0.5);
    Matrix ah = k - dagger(k);
    ah *= complexd(0.0, -0.5);
    for (Matrix m : {h, ah}) {
      for (const Matrix& g : gens) m -= hs_inner(g, m) * g;
      const double norm = fro_norm(m);
      if (norm > 1e-10) {
        m *= complexd(1.0 / norm);
        gens.push_back(m);
      }
    }
  }
  return gens;
}

}  // namespace

std::vector<Matrix> window_basis(std::size_t d, std::size_t n) {
  std::vector<Matrix> site = hs_basis(d);
  std::vector<Matrix> out{Matrix::identity(1)};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Matrix> next;
    next.reserve(out.size() * site.size());
    for (const Matrix& a : out)
      for (const Matrix& g : site) next.push_back(kron(a, g));
    out = std::move(next);
  }
  return out;
}

FunctionalMatrix functional_matrix(const CpMap& cp, const BoundaryState& xi,
                                   std::size_t m_left, std::size_t n_right) {
  if (m_left < 1 || n_right < 1)
    throw ShapeMismatch("functional_matrix: window lengths must be ≥ 1");
  const double entries =
      std::pow(static_cast<double>(cp.d), 2.0 * static_cast<double>(m_left + n_right));
  if (entries > 1e6)
    throw WindowTooLarge("functional_matrix: d^{2(m+n)} = " + std::to_string(entries) +
                         " exceeds the 1e6 entry budget");

  std::vector<Matrix> us = left_covectors(cp, xi, m_left);
  std::vector<Matrix> vs = right_vectors(cp, n_right);
  FunctionalMatrix out;
  out.d = cp.d;
  out.m_left = m_left;
  out.n_right = n_right;
  out.f = Matrix(us.size(), vs.size());
  for (std::size_t i = 0; i < us.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) out.f(i, j) = (us[i] * vs[j])(0, 0);
  return out;
}

KernelBasis kernel_basis(const FunctionalMatrix& fm, double tol) {
  if (tol <= 0) throw Error("kernel_basis: tol must be positive");
  KernelBasis out;
  out.d = fm.d;
  out.n_right = fm.n_right;
  out.vectors = null_space(fm.f, tol);
  out.quotient_dim = window_dim(fm.d, fm.n_right) - out.vectors.cols();
  return out;
}

std::vector<Matrix> kernel_matrices(const KernelBasis& kb) {
  std::vector<Matrix> basis = window_basis(kb.d, kb.n_right);
  std::vector<Matrix> out;
  for (std::size_t j = 0; j < kb.vectors.cols(); ++j) {
    Matrix k = Matrix::zero(basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Matrix term = basis[i];
      term *= kb.vectors(i, j);
      k += term;
    }
    out.push_back(k);
  }
  return out;
}

double gamma_lower_bound(const CpMap& cp, const BoundaryState& xi, const Matrix& b_repr,
                         std::size_t n_right, std::size_t m_left, std::size_t samples,
                         std::uint64_t seed) {
  return gamma_lower_bound_amplified(cp, xi, {b_repr}, 1, n_right, m_left, samples,
                                     seed);
}

double gamma_lower_bound_amplified(const CpMap& cp, const BoundaryState& xi,
                                   const std::vector<Matrix>& blocks, std::size_t level,
                                   std::size_t n_right, std::size_t m_left,
                                   std::size_t samples, std::uint64_t seed) {
  if (blocks.size() != level * level)
    throw ShapeMismatch("gamma_lower_bound: expected level² blocks");
  FunctionalMatrix fm = functional_matrix(cp, xi, m_left, n_right);
  std::vector<Matrix> right = window_basis(cp.d, n_right);
  std::size_t dim_n = 1;
  for (std::size_t k = 0; k < n_right; ++k) dim_n *= cp.d;
  for (const Matrix& b : blocks)
    if (b.rows() != dim_n || b.cols() != dim_n)
      throw ShapeMismatch("gamma_lower_bound: b must live on the right window");

  // Precontract F with every block and with the identity column.
  std::vector<std::vector<complexd>> fw(blocks.size());
  for (std::size_t u = 0; u < blocks.size(); ++u) {
    std::vector<complexd> e = coefficients(right, blocks[u]);
    fw[u].resize(fm.f.rows());
    for (std::size_t i = 0; i < fm.f.rows(); ++i) {
      complexd acc = 0.0;
      for (std::size_t j = 0; j < fm.f.cols(); ++j) acc += fm.f(i, j) * e[j];
      fw[u][i] = acc;
    }
  }
  // The identity column goes through the same coefficient path as the blocks
  // so that b = 1 yields a bitwise ratio of exactly 1.
  std::vector<complexd> e_id = coefficients(right, Matrix::identity(dim_n));
  std::vector<complexd> fid(fm.f.rows());
  for (std::size_t i = 0; i < fm.f.rows(); ++i) {
    complexd acc = 0.0;
    for (std::size_t j = 0; j < fm.f.cols(); ++j) acc += fm.f(i, j) * e_id[j];
    fid[i] = acc;
  }

  double best = 0.0;
  for (const std::vector<complexd>& c : left_candidates(cp.d, m_left, samples, seed)) {
    complexd den = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) den += c[i] * fid[i];
    if (den.real() <= 1e-12) continue;
    if (level == 1) {
      complexd num = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) num += c[i] * fw[0][i];
      best = std::max(best, std::abs(num) / den.real());
    } else {
      Matrix z(level, level);
      for (std::size_t u = 0; u < level; ++u)
        for (std::size_t v = 0; v < level; ++v) {
          complexd num = 0.0;
          for (std::size_t i = 0; i < c.size(); ++i) num += c[i] * fw[u * level + v][i];
          z(u, v) = num / den.real();
        }
      best = std::max(best, operator_norm(z));
    }
  }
  return best;
}

MembershipResult archimedean_membership(const Matrix& a, const std::vector<Matrix>& kernel,
                                        double tol, std::size_t iters) {
  if (a.rows() != a.cols()) throw ShapeMismatch("archimedean_membership: a not square");
  if (!is_hermitian(a, 1e-10))
    throw NotHermitian("archimedean_membership: a is not Hermitian");
  for (const Matrix& k : kernel)
    if (k.rows() != a.rows() || k.cols() != a.cols())
      throw ShapeMismatch("archimedean_membership: kernel element shape mismatch");

  std::vector<Matrix> gens = hermitian_generators(kernel);
  const std::size_t nj = gens.size();
  const double scale = std::max(1.0, max_abs(a));

  // Returns λ_min and (optionally) the orthonormal eigenvectors spanning its
  // near-degenerate cluster.  Averaging the supergradient over the whole
  // cluster keeps the ascent moving when λ_min is multiple — a single
  // eigenvector sees only one copy of a repeated block and stalls.
  auto value = [&](const std::vector<double>& c, Matrix* cluster) {
    Matrix m = a;
    for (std::size_t j = 0; j < nj; ++j) {
      Matrix term = gens[j];
      term *= complexd(c[j]);
      m += term;
    }
    HermEigResult eig = herm_eig(m);
    const double lmin = eig.eigenvalues.front();
    if (cluster) {
      const double spread = 1e-8 * std::max(scale, std::abs(eig.eigenvalues.back()));
      std::size_t mult = 1;
      while (mult < eig.eigenvalues.size() && eig.eigenvalues[mult] <= lmin + spread)
        ++mult;
      *cluster = eig.eigenvectors.block(0, 0, a.rows(), mult);
    }
    return lmin;
  };

  std::vector<double> c(nj, 0.0);
  Matrix v;
  double best = value(c, &v);
  if (nj == 0) return {best >= -tol, best};

  double step = scale;
  for (std::size_t it = 0; it < iters; ++it) {
    if (best >= tol) break;  // safely inside the cone, no need to polish
    std::vector<double> grad(nj);
    double gnorm = 0.0;
    for (std::size_t j = 0; j < nj; ++j) {
      const Matrix proj = dagger(v) * gens[j] * v;
      grad[j] = trace(proj).real() / static_cast<double>(v.cols());
      gnorm += grad[j] * grad[j];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-14) break;  // stationary: λ_min insensitive to the kernel
    std::vector<double> trial = c;
    for (std::size_t j = 0; j < nj; ++j) trial[j] += step * grad[j] / gnorm;
    Matrix tv;
    const double tval = value(trial, &tv);
    if (tval > best + 1e-16) {
      c = std::move(trial);
      v = tv;
      best = tval;
      step *= 1.25;
    } else {
      step *= 0.5;
      if (step < 1e-13 * scale) break;
    }
  }
  return {best >= -tol, best};
}

MembershipResult archimedean_membership(const Matrix& a, const KernelBasis& kernel,
                                        double tol, std::size_t iters) {
  return archimedean_membership(a, kernel_matrices(kernel), tol, iters);
}

double order_seminorm(const Matrix& a, const std::vector<Matrix>& kernel, double tol) {
  if (a.rows() != a.cols()) throw ShapeMismatch("order_seminorm: a not square");
  if (!is_hermitian(a, 1e-10)) throw NotHermitian("order_seminorm: a is not Hermitian");
  if (max_abs(a) == 0) return 0.0;

  const double mtol = 1e-9 * std::max(1.0, operator_norm(a));
  auto member = [&](double radius) {
    Matrix plus = a + radius * Matrix::identity(a.rows());
    if (!archimedean_membership(plus, kernel, mtol).member) return false;
    Matrix minus = radius * Matrix::identity(a.rows()) - a;
    return archimedean_membership(minus, kernel, mtol).member;
  };

  double hi = operator_norm(a);
  // Adding kernel directions can only enlarge the cone, so ‖a‖ is always an
  // upper endpoint; keep a numeric escape hatch anyway.
  for (int guard = 0; guard < 4 && !member(hi); ++guard) hi *= 1.25;
  double lo = 0.0;
  if (member(lo)) return 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (hi + lo);
    if (member(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double order_seminorm(const Matrix& a, const KernelBasis& kernel, double tol) {
  return order_seminorm(a, kernel_matrices(kernel), tol);
}

GammaProbe gamma_condition_probe(const CpMap& cp, const BoundaryState& xi,
                                 std::size_t n_right, std::size_t m_left,
                                 std::size_t samples, std::uint64_t seed) {
  FunctionalMatrix fm = functional_matrix(cp, xi, m_left, n_right);
  KernelBasis kb = kernel_basis(fm);
  if (kb.quotient_dim == 0) return {0.0, true};

  // Orthonormal complement of the kernel: singular directions of F above cut.
  // The cut sits above the Jacobi noise floor of the squared problem
  // (≈1e-14·top) so that numerically-zero directions never leak in.
  Matrix gram = dagger(fm.f) * fm.f;
  HermEigResult eig = herm_eig(gram, 1e-8);
  const double top = eig.eigenvalues.back();
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k)
    if (eig.eigenvalues[k] > 1e-12 * top) keep.push_back(k);

  std::vector<Matrix> right = window_basis(cp.d, n_right);
  Rng rng(seed);
  double probe = -1.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<complexd> coeff(right.size(), 0.0);
    double norm2 = 0.0;
    std::vector<complexd> alpha(keep.size());
    for (std::size_t q = 0; q < keep.size(); ++q) {
      alpha[q] = rng.cgaussian();
      norm2 += std::norm(alpha[q]);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t q = 0; q < keep.size(); ++q)
      for (std::size_t i = 0; i < coeff.size(); ++i)
        coeff[i] += alpha[q] * inv * eig.eigenvectors(i, keep[q]);
    Matrix b = Matrix::zero(right[0].rows(), right[0].cols());
    for (std::size_t i = 0; i < right.size(); ++i) {
      Matrix term = right[i];
      term *= coeff[i];
      b += term;
    }
    const double val =
        gamma_lower_bound(cp, xi, b, n_right, m_left, samples, seed + 1 + s);
    probe = probe < 0 ? val : std::min(probe, val);
  }
  return {std::max(probe, 0.0), false};
}

std::vector<Matrix> amplify_kernel(const std::vector<Matrix>& kernel, std::size_t level) {
  std::vector<Matrix> out;
  for (std::size_t u = 0; u < level; ++u)
    for (std::size_t v = 0; v < level; ++v)
      for (const Matrix& k : kernel) out.push_back(kron(matrix_unit(level, u, v), k));
  return out;
}

}  // namespace fcs
