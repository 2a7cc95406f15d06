#include "fcs/models.hpp"

#include <cmath>
#include <string>

#include "fcs/eig.hpp"
#include "fcs/errors.hpp"
#include "fcs/rng.hpp"

namespace fcs {

namespace {

Matrix triplet_isometry() {
  // Columns: |00⟩, (|01⟩+|10⟩)/√2, |11⟩ → total-spin-1 states with
  // m = +1, 0, −1 in that order (basis |0⟩ = up).
  Matrix w(4, 3);
  w(0, 0) = 1.0;
  w(1, 1) = w(2, 1) = 1.0 / std::sqrt(2.0);
  w(3, 2) = 1.0;
  return w;
}

}  // namespace

AkltData aklt_model() {
  AkltData out;
  std::vector<Matrix> sigma = pauli_basis();
  out.g = {0.75, 0.25, 0.25, 0.25};
  out.p = Matrix::zero(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    Matrix term = kron(sigma[k], sigma[k]);
    term *= complexd(out.g[k]);
    out.p += term;
  }
  // P0 = 1 − P is the rank-one complement: the antisymmetric (singlet) line.
  out.p0 = Matrix::identity(4) - out.p;
  out.w = triplet_isometry();

  // E(e_pq ⊗ e_st)[i,j] = (4/3) Σ_{k,l} Y[2i+k, 2j+l] · P0[2l+t, 2k+s]
  // with Y = W e_pq W†: the left qubit of each site survives, the right
  // qubit is paired with the next site's left qubit through ξ0 = (4/3)Tr(·P0).
  const std::size_t d = 3, r = 2;
  Matrix superop(r * r, d * d * r * r);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) {
      Matrix y = out.w * matrix_unit(d, p, q) * dagger(out.w);
      for (std::size_t s = 0; s < r; ++s)
        for (std::size_t t = 0; t < r; ++t) {
          const std::size_t col = (p * r + s) + (q * r + t) * (d * r);
          for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
              complexd acc = 0.0;
              for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                  acc += y(2 * i + k, 2 * j + l) * out.p0(2 * l + t, 2 * k + s);
              superop(i + j * r, col) = (4.0 / 3.0) * acc;
            }
        }
    }

  out.cp = stinespring_from_choi(superop, d, r, 1e-10);
  return out;
}

SpinOperators aklt_spin_operators() {
  // Transport the two-qubit total spin through W; with the basis order fixed
  // in triplet_isometry this lands on the standard spin-1 matrices.
  std::vector<Matrix> sigma = pauli_basis();
  Matrix w = triplet_isometry();
  SpinOperators s;
  Matrix* out[3] = {&s.sx, &s.sy, &s.sz};
  for (std::size_t k = 1; k <= 3; ++k) {
    Matrix total = kron(sigma[k], sigma[0]) + kron(sigma[0], sigma[k]);
    total *= complexd(0.5);
    *out[k - 1] = dagger(w) * total * w;
  }
  return s;
}

ProductModelData product_model(const Matrix& state) {
  ProductModelData out;
  std::size_t d = 0;

  if (state.cols() == 1 && state.rows() >= 1) {
    d = state.rows();
    double norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm2 += std::norm(state(i, 0));
    if (std::abs(norm2 - 1.0) > 1e-8)
      throw NotAState("product_model: vector norm² = " + std::to_string(norm2));
    out.psi0 = state;
    out.psi0 *= complexd(1.0 / std::sqrt(norm2));
    out.rho0 = out.psi0 * dagger(out.psi0);
  } else if (state.rows() == state.cols() && state.rows() >= 1) {
    d = state.rows();
    if (!is_hermitian(state, 1e-8)) throw NotAState("product_model: ρ0 not Hermitian");
    if (std::abs(trace(state).real() - 1.0) > 1e-8 ||
        std::abs(trace(state).imag()) > 1e-8)
      throw NotAState("product_model: Tr ρ0 ≠ 1");
    if (min_eig(state) < -1e-10) throw NotAState("product_model: ρ0 has negative eigenvalue");
    out.rho0 = state;
  } else {
    throw ShapeMismatch("product_model: expected d x 1 vector or d x d matrix");
  }

  // r = 1 and E(e_pq ⊗ λ) = λ·ω0(e_pq) = λ·ρ0[q,p].  The dilation purifies
  // ρ0 = Σ_k p_k v_k v_k†: V[(i·K+k), 0] = √p_k · v_k[i].
  CpMap cp;
  cp.d = d;
  cp.r = 1;
  cp.superop = Matrix(1, d * d);
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = 0; q < d; ++q) cp.superop(0, p + q * d) = out.rho0(q, p);

  HermEigResult eig = herm_eig(out.rho0);
  std::vector<std::size_t> kept;
  for (std::size_t idx = eig.eigenvalues.size(); idx-- > 0;)
    if (eig.eigenvalues[idx] > 1e-12) kept.push_back(idx);
  cp.multiplicity = kept.size();
  cp.stinespring = Matrix(d * kept.size(), 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < kept.size(); ++k)
      cp.stinespring(i * kept.size() + k, 0) =
          std::sqrt(eig.eigenvalues[kept[k]]) * eig.eigenvectors(i, kept[k]);
  cp.kraus_slices.resize(d * kept.size());
  for (std::size_t i = 0; i < d * kept.size(); ++i) {
    Matrix slice(1, 1);
    slice(0, 0) = std::conj(cp.stinespring(i, 0));
    cp.kraus_slices[i] = slice;
  }
  out.cp = cp;
  return out;
}

CpMap random_model(std::size_t d, std::size_t r, std::uint64_t seed) {
  if (d == 0 || r == 0) throw ShapeMismatch("random_model: zero dimension");
  Rng rng(seed);
  Matrix v = rng.gaussian_matrix(d * r, r);
  // Modified Gram–Schmidt, twice for orthogonality at working precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        complexd proj = 0.0;
        for (std::size_t i = 0; i < d * r; ++i)
          proj += std::conj(v(i, k)) * v(i, j);
        for (std::size_t i = 0; i < d * r; ++i) v(i, j) -= proj * v(i, k);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < d * r; ++i) norm += std::norm(v(i, j));
      norm = std::sqrt(norm);
      if (norm < 1e-8) {
        // Degenerate draw (measure zero): replace the column and redo it.
        for (std::size_t i = 0; i < d * r; ++i) v(i, j) = rng.cgaussian();
        --j;
        continue;
      }
      for (std::size_t i = 0; i < d * r; ++i) v(i, j) /= norm;
    }
  }
  return cp_from_isometry(v, d, r, 1e-10);
}

}  // namespace fcs
