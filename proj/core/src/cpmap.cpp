#include "fcs/cpmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcs/eig.hpp"
#include "fcs/errors.hpp"

namespace fcs {

namespace {

// superop column for the matrix unit e_{pq} ⊗ e_{st} of M_d ⊗ M_r is
// vec(Σ_k Σ_{(p,k)} e_{st} Σ_{(q,k)}†); the (a,b) entry of that product is
// Σ_k Σ_{(p,k)}[a,s] · conj(Σ_{(q,k)}[b,t]).
Matrix superop_from_slices(const std::vector<Matrix>& slices, std::size_t d,
                           std::size_t r, std::size_t k_mult) {
  Matrix s(r * r, d * d * r * r);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q)
      for (std::size_t si = 0; si < r; ++si)
        for (std::size_t t = 0; t < r; ++t) {
          const std::size_t col = (p * r + si) + (q * r + t) * (d * r);
          for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
              complexd acc = 0.0;
              for (std::size_t k = 0; k < k_mult; ++k)
                acc += slices[p * k_mult + k](a, si) *
                       std::conj(slices[q * k_mult + k](b, t));
              s(a + b * r, col) = acc;
            }
        }
  return s;
}

std::vector<Matrix> slices_from_isometry(const Matrix& v, std::size_t d_total,
                                         std::size_t r) {
  std::vector<Matrix> slices;
  slices.reserve(d_total);
  for (std::size_t i = 0; i < d_total; ++i)
    slices.push_back(dagger(v.block(i * r, 0, r, r)));
  return slices;
}

}  // namespace

CpMap cp_from_isometry(const Matrix& v, std::size_t d, std::size_t r, double tol) {
  if (d == 0 || r == 0) throw ShapeMismatch("cp_from_isometry: zero dimension");
  if (v.rows() != d * r || v.cols() != r)
    throw ShapeMismatch("cp_from_isometry: V must be (d*r) x r, got " +
                        std::to_string(v.rows()) + " x " + std::to_string(v.cols()));
  Matrix gram = dagger(v) * v;
  gram -= Matrix::identity(r);
  if (max_abs(gram) > tol)
    throw NotIsometry("cp_from_isometry: V†V deviates from identity by " +
                      std::to_string(max_abs(gram)));

  CpMap cp;
  cp.d = d;
  cp.r = r;
  cp.multiplicity = 1;
  cp.stinespring = v;
  cp.kraus_slices = slices_from_isometry(v, d, r);
  cp.superop = superop_from_slices(cp.kraus_slices, d, r, 1);
  return cp;
}

Matrix apply(const CpMap& cp, const Matrix& x) {
  const std::size_t dr = cp.d * cp.r;
  if (x.rows() != dr || x.cols() != dr)
    throw ShapeMismatch("apply: argument must be (d*r) x (d*r)");
  return unvec(cp.superop * vec(x), cp.r, cp.r);
}

Matrix choi(const CpMap& cp) {
  const std::size_t d = cp.d, r = cp.r, dr = d * r;
  Matrix c(dr * r, dr * r);
  for (std::size_t mu = 0; mu < dr; ++mu)
    for (std::size_t nu = 0; nu < dr; ++nu) {
      // E(e_{μν}) sits in superop column μ + ν·(d·r).
      const std::size_t col = mu + nu * dr;
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          c(mu * r + a, nu * r + b) = cp.superop(a + b * r, col);
    }
  return c;
}

Matrix superop_from_choi(const Matrix& c, std::size_t d, std::size_t r) {
  const std::size_t dr = d * r;
  if (c.rows() != dr * r || c.cols() != dr * r)
    throw ShapeMismatch("superop_from_choi: C must be (d*r*r) x (d*r*r)");
  Matrix s(r * r, dr * dr);
  for (std::size_t mu = 0; mu < dr; ++mu)
    for (std::size_t nu = 0; nu < dr; ++nu)
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          s(a + b * r, mu + nu * dr) = c(mu * r + a, nu * r + b);
  return s;
}

CpMap stinespring_from_choi(const Matrix& superop, std::size_t d, std::size_t r,
                            double tol) {
  if (d == 0 || r == 0) throw ShapeMismatch("stinespring_from_choi: zero dimension");
  if (superop.rows() != r * r || superop.cols() != d * d * r * r)
    throw ShapeMismatch("stinespring_from_choi: superop must be r² x (d²r²)");

  CpMap base;
  base.d = d;
  base.r = r;
  base.superop = superop;

  // Unitality first: E(1) = 1.
  Matrix unital = apply(base, Matrix::identity(d * r));
  unital -= Matrix::identity(r);
  if (max_abs(unital) > tol)
    throw NotUnital("stinespring_from_choi: E(1) deviates from 1 by " +
                    std::to_string(max_abs(unital)));

  Matrix c = choi(base);
  if (!is_hermitian(c, 1e-8))
    throw NotCP("stinespring_from_choi: Choi matrix is not Hermitian");
  HermEigResult eig = herm_eig(c);

  double tr_c = 0.0;
  for (double lam : eig.eigenvalues) tr_c += lam;
  const double cut = tol * std::max(tr_c, 1.0);
  if (eig.eigenvalues.front() < -cut)
    throw NotCP("stinespring_from_choi: Choi matrix has eigenvalue " +
                std::to_string(eig.eigenvalues.front()));

  // Kraus operators from eigenpairs above the cut, largest eigenvalue first.
  // K_k[a,μ] = √λ_k · w_k[μ·r+a].  Phases are fixed so the largest-modulus
  // entry of each eigenvector is real positive: output is then reproducible
  // down to the last bit for a given spectrum.
  const std::size_t dr = d * r;
  std::vector<Matrix> kraus;
  for (std::size_t idx = eig.eigenvalues.size(); idx-- > 0;) {
    const double lam = eig.eigenvalues[idx];
    if (lam <= cut) continue;
    std::size_t peak = 0;
    double peak_mod = -1.0;
    for (std::size_t i = 0; i < dr * r; ++i) {
      const double m = std::abs(eig.eigenvectors(i, idx));
      if (m > peak_mod + 1e-14) {
        peak_mod = m;
        peak = i;
      }
    }
    const complexd phase =
        peak_mod > 0 ? eig.eigenvectors(peak, idx) / peak_mod : complexd(1.0);
    const double root = std::sqrt(lam);
    Matrix kk(r, dr);
    for (std::size_t mu = 0; mu < dr; ++mu)
      for (std::size_t a = 0; a < r; ++a)
        kk(a, mu) = root * eig.eigenvectors(mu * r + a, idx) / phase;
    kraus.push_back(kk);
  }
  const std::size_t k_mult = kraus.size();
  if (k_mult == 0) throw NotCP("stinespring_from_choi: Choi matrix is zero");

  // V : C^r -> C^d ⊗ C^K ⊗ C^r,  block row (i,k) equals Σ_{(i,k)}† where
  // Σ_{(i,k)} is the i-th r x r block of K_k.
  CpMap cp = base;
  cp.multiplicity = k_mult;
  cp.kraus_slices.resize(d * k_mult);
  cp.stinespring = Matrix(d * k_mult * r, r);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < k_mult; ++k) {
      Matrix slice = kraus[k].block(0, i * r, r, r);
      cp.kraus_slices[i * k_mult + k] = slice;
      cp.stinespring.set_block((i * k_mult + k) * r, 0, dagger(slice));
    }

  Matrix gram = dagger(cp.stinespring) * cp.stinespring;
  gram -= Matrix::identity(r);
  if (max_abs(gram) > 1e-7)
    throw NotIsometry("stinespring_from_choi: recovered V fails V†V = 1 by " +
                      std::to_string(max_abs(gram)));

  // The slices must regenerate the map that was handed in.
  Matrix rebuilt = superop_from_slices(cp.kraus_slices, d, r, k_mult);
  rebuilt -= superop;
  if (max_abs(rebuilt) > 1e-6 * std::max(1.0, max_abs(superop)))
    throw Error("stinespring_from_choi: slice reconstruction mismatch " +
                std::to_string(max_abs(rebuilt)));
  return cp;
}

Matrix iterate(const CpMap& cp, const Word& word, const Matrix& t) {
  if (t.rows() != cp.r || t.cols() != cp.r)
    throw ShapeMismatch("iterate: boundary operator must be r x r");
  Matrix acc = t;
  for (std::size_t k = word.size(); k-- > 0;) {
    const Matrix& a = word[k];
    if (a.rows() != cp.d || a.cols() != cp.d)
      throw ShapeMismatch("iterate: word letters must be d x d");
    acc = apply(cp, kron(a, acc));
  }
  return acc;
}

CheckResult markov_check(const CpMap& cp, const Word& word_x, const Word& word_y,
                         const Matrix& t, double tol) {
  // Left side through left-to-right transfer products, right side through the
  // nested right-to-left recursion: two distinct evaluation orders of
  // E_(m+n)(x⊗y⊗t) vs E_(m)(x ⊗ E_(n)(y⊗t)).
  Word joined = word_x;
  joined.insert(joined.end(), word_y.begin(), word_y.end());
  if (t.rows() != cp.r || t.cols() != cp.r)
    throw ShapeMismatch("markov_check: boundary operator must be r x r");
  Matrix acc = vec(t);
  for (std::size_t k = joined.size(); k-- > 0;) acc = letter_superop(cp, joined[k]) * acc;
  Matrix lhs = unvec(acc, cp.r, cp.r);
  Matrix rhs = iterate(cp, word_x, iterate(cp, word_y, t));
  rhs -= lhs;
  const double residual = fro_norm(rhs);
  return {residual <= tol, residual};
}

Matrix letter_superop(const CpMap& cp, const Matrix& a) {
  if (a.rows() != cp.d || a.cols() != cp.d)
    throw ShapeMismatch("letter_superop: a must be d x d");
  const std::size_t r = cp.r;
  Matrix m(r * r, r * r);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) {
      Matrix image = vec(apply(cp, kron(a, matrix_unit(r, s, t))));
      for (std::size_t i = 0; i < r * r; ++i) m(i, s + t * r) = image(i, 0);
    }
  return m;
}

}  // namespace fcs
