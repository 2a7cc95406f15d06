#include "fcs/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcs/eig.hpp"
#include "fcs/errors.hpp"
#include "fcs/rng.hpp"

namespace fcs {

namespace {

std::size_t unit_multiplicity(const Matrix& transfer, double tol = 1e-8) {
  std::vector<complexd> vals = eig_values(transfer);
  std::size_t count = 0;
  for (complexd lam : vals)
    if (std::abs(lam - complexd(1.0)) <= tol) ++count;
  return count;
}

Matrix rho_row(const BoundaryState& xi) {
  return dagger(vec(xi.rho));  // 1 x r² covector of ξ
}

}  // namespace

Matrix shift_superop(const CpMap& cp) {
  return letter_superop(cp, Matrix::identity(cp.d));
}

TransferSpectrum transfer_spectrum(const CpMap& cp) {
  TransferSpectrum out;
  out.eigenvalues = eig_values(shift_superop(cp));
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](complexd a, complexd b) {
              if (std::abs(std::abs(a) - std::abs(b)) > 1e-14)
                return std::abs(a) > std::abs(b);
              if (std::abs(a.real() - b.real()) > 1e-14) return a.real() > b.real();
              return a.imag() > b.imag();
            });
  out.gap_modulus =
      out.eigenvalues.size() > 1 ? std::abs(out.eigenvalues[1]) : 0.0;
  return out;
}

Matrix fixed_point_unit(const CpMap& cp, double tol, std::size_t max_iter) {
  const std::size_t r = cp.r;
  Matrix transfer = shift_superop(cp);
  Matrix unital = unvec(transfer * vec(Matrix::identity(r)), r, r);
  unital -= Matrix::identity(r);
  if (max_abs(unital) > tol)
    throw NotUnital("fixed_point_unit: S̄(1) deviates from 1 by " +
                    std::to_string(max_abs(unital)));

  // The unit is a fixed point; certify it is the *attractor* by iterating a
  // generic traceless deviation z ← S̄(z) − (Tr S̄(z)/r)·1 down to tol.
  Rng rng(0x5eed);
  Matrix z = rng.hermitian(r);
  z -= (trace(z) / complexd(static_cast<double>(r))) * Matrix::identity(r);
  double dev = fro_norm(z);
  if (dev > 0) z *= complexd(1.0 / dev);

  for (std::size_t it = 0; it < max_iter; ++it) {
    Matrix next = unvec(transfer * vec(z), r, r);
    next -= (trace(next) / complexd(static_cast<double>(r))) * Matrix::identity(r);
    const double step = fro_norm(next - z);
    z = next;
    dev = fro_norm(z);
    if (dev <= tol) return Matrix::identity(r) + z;
    if (step <= 1e-15 && dev > tol) break;  // stalled on a nontrivial fixed deviation
  }
  if (unit_multiplicity(transfer) > 1)
    throw DegenerateFixedSpace("fixed_point_unit: fixed space of S̄ has dimension > 1");
  throw NoConvergence("fixed_point_unit: deviation still " + std::to_string(dev) +
                      " after " + std::to_string(max_iter) + " iterations");
}

InvariantCandidates invariant_candidates(const CpMap& cp, double tol) {
  const std::size_t r = cp.r;
  Matrix transfer = shift_superop(cp);
  InvariantCandidates out;
  out.degenerate = unit_multiplicity(transfer) != 1;

  Matrix a = dagger(transfer);
  a -= Matrix::identity(r * r);
  Matrix ns = null_space(a, tol);

  // Split every null vector into (anti-)Hermitian parts and orthonormalize.
  std::vector<Matrix> raw;
  for (std::size_t j = 0; j < ns.cols(); ++j) {
    Matrix c = unvec(ns.block(0, j, r * r, 1), r, r);
    Matrix h = c + dagger(c);
    h *= complexd(0.5);
    Matrix k = c - dagger(c);
    k *= complexd(0.0, -0.5);
    raw.push_back(h);
    raw.push_back(k);
  }
  for (Matrix& m : raw) {
    for (const Matrix& b : out.candidates) m -= hs_inner(b, m) * b;
    const double norm = fro_norm(m);
    if (norm > 1e-10) {
      m *= complexd(1.0 / norm);
      out.candidates.push_back(m);
    }
  }
  return out;
}

BoundaryState invariant_functional(const CpMap& cp, double tol) {
  const std::size_t r = cp.r;
  Matrix transfer = shift_superop(cp);
  const std::size_t mult = unit_multiplicity(transfer);
  if (mult != 1)
    throw DegenerateFixedSpace("invariant_functional: eigenvalue 1 of S̄ has multiplicity " +
                               std::to_string(mult));

  Matrix a = dagger(transfer);
  a -= Matrix::identity(r * r);
  Matrix ns = null_space(a, 1e-7);
  if (ns.cols() == 0)
    throw NoConvergence("invariant_functional: no left fixed vector at tolerance");

  Matrix rho = unvec(ns.block(0, 0, r * r, 1), r, r);
  Matrix herm = rho + dagger(rho);
  herm *= complexd(0.5);
  if (fro_norm(herm) < 1e-10) {
    herm = rho - dagger(rho);
    herm *= complexd(0.0, -0.5);
  }
  complexd tr = trace(herm);
  if (std::abs(tr) < 1e-10)
    throw NotPositive("invariant_functional: fixed functional is traceless");
  herm *= complexd(1.0) / tr;

  // Positivity with noise clipping: eigenvalues in (−1e-12, 0) are rounding
  // debris and get set to zero; anything more negative is a real failure.
  HermEigResult eig = herm_eig(herm);
  Matrix clipped = Matrix::zero(r, r);
  for (std::size_t k = 0; k < r; ++k) {
    double lam = eig.eigenvalues[k];
    if (lam < -1e-12)
      throw NotPositive("invariant_functional: candidate eigenvalue " +
                        std::to_string(lam));
    if (lam < 0) lam = 0;
    Matrix v = eig.eigenvectors.block(0, k, r, 1);
    Matrix term = v * dagger(v);
    term *= complexd(lam);
    clipped += term;
  }
  clipped *= complexd(1.0) / trace(clipped);

  BoundaryState out;
  out.rho = clipped;
  Matrix drift = unvec(dagger(transfer) * vec(out.rho), r, r);
  drift -= out.rho;
  out.residual = fro_norm(drift);
  if (out.residual > tol)
    throw NoConvergence("invariant_functional: invariance residual " +
                        std::to_string(out.residual));
  return out;
}

complexd omega_eval(const CpMap& cp, const BoundaryState& xi, const Word& word) {
  Matrix t = iterate(cp, word, Matrix::identity(cp.r));
  return trace(xi.rho * t);
}

CheckResult shift_invariance_check(const CpMap& cp, const BoundaryState& xi,
                                   const Word& word, double tol) {
  const complexd base = omega_eval(cp, xi, word);
  Word left = word, right = word;
  left.insert(left.begin(), Matrix::identity(cp.d));
  right.push_back(Matrix::identity(cp.d));
  const double residual = std::max(std::abs(omega_eval(cp, xi, left) - base),
                                   std::abs(omega_eval(cp, xi, right) - base));
  return {residual <= tol, residual};
}

complexd correlation(const CpMap& cp, const BoundaryState& xi, const Matrix& a,
                     const Matrix& b, std::size_t sep) {
  const std::size_t r = cp.r;
  Matrix la = letter_superop(cp, a);
  Matrix lb = letter_superop(cp, b);
  Matrix s = shift_superop(cp);
  Matrix u = rho_row(xi);
  Matrix unit_vec = vec(Matrix::identity(r));

  Matrix chain = lb * unit_vec;
  for (std::size_t k = 0; k < sep; ++k) chain = s * chain;
  chain = la * chain;
  const complexd joint = (u * chain)(0, 0);
  const complexd ev_a = (u * (la * unit_vec))(0, 0);
  const complexd ev_b = (u * (lb * unit_vec))(0, 0);
  return joint - ev_a * ev_b;
}

complexd correlation_by_word(const CpMap& cp, const BoundaryState& xi, const Matrix& a,
                             const Matrix& b, std::size_t sep) {
  Word word;
  word.push_back(a);
  for (std::size_t k = 0; k < sep; ++k) word.push_back(Matrix::identity(cp.d));
  word.push_back(b);
  return omega_eval(cp, xi, word) -
         omega_eval(cp, xi, {a}) * omega_eval(cp, xi, {b});
}

double clustering_rate(const CpMap& cp) {
  Matrix transfer = shift_superop(cp);
  if (unit_multiplicity(transfer) != 1)
    throw DegenerateFixedSpace("clustering_rate: eigenvalue 1 of S̄ is not simple");
  TransferSpectrum spec = transfer_spectrum(cp);
  return spec.gap_modulus;
}

std::size_t fullness_dimension(const CpMap& cp, const Matrix& seed, std::size_t n_max,
                               double tol) {
  const std::size_t d = cp.d, r = cp.r;
  if (seed.rows() != r || seed.cols() != r)
    throw ShapeMismatch("fullness_dimension: seed must be r x r");
  if (fro_norm(seed) < 1e-14)
    throw Error("fullness_dimension: seed must be nonzero");

  std::vector<Matrix> unit_transfer;
  unit_transfer.reserve(d * d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q)
      unit_transfer.push_back(letter_superop(cp, matrix_unit(d, p, q)));

  std::vector<Matrix> level{vec(seed)};
  std::vector<Matrix> collected;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (collected.size() + level.size() * d * d > 200000)
      throw WindowTooLarge("fullness_dimension: span exceeds the size guard");
    std::vector<Matrix> next;
    next.reserve(level.size() * d * d);
    for (const Matrix& v : level)
      for (const Matrix& l : unit_transfer) next.push_back(l * v);
    collected.insert(collected.end(), next.begin(), next.end());
    level = std::move(next);
  }

  // Rank of the collected vectors, via the pivoted-QR null space of the
  // r² x N matrix whose columns are the collected vecs.  Working on the
  // vectors directly (rather than a Gram matrix) keeps the rank decision at
  // the stated tolerance instead of its square.
  Matrix stacked(r * r, collected.size());
  for (std::size_t c = 0; c < collected.size(); ++c)
    for (std::size_t i = 0; i < r * r; ++i) stacked(i, c) = collected[c](i, 0);
  if (max_abs(stacked) == 0.0) return 0;
  const std::size_t rank = collected.size() - null_space(stacked, tol).cols();
  return std::min(rank, r * r);
}

complexd ring_expectation(const CpMap& cp, const Word& word, std::size_t length) {
  if (word.size() > length)
    throw ShapeMismatch("ring_expectation: word longer than the ring");
  Matrix s = shift_superop(cp);
  Matrix num = Matrix::identity(cp.r * cp.r);
  for (const Matrix& a : word) num = num * letter_superop(cp, a);
  Matrix den = Matrix::identity(cp.r * cp.r);
  for (std::size_t k = word.size(); k < length; ++k) num = num * s;
  for (std::size_t k = 0; k < length; ++k) den = den * s;
  return trace(num) / trace(den);
}

}  // namespace fcs
