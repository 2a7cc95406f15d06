#include "fcs/opprod.hpp"

#include <cmath>
#include <string>

#include "fcs/errors.hpp"
#include "fcs/rng.hpp"

namespace fcs {

namespace {

// Letters act on the dilated space as a ⊗ I_K.
complexd dilated_element(const Matrix& a, std::size_t k_mult, std::size_t i,
                         std::size_t j) {
  if (i % k_mult != j % k_mult) return 0.0;
  return a(i / k_mult, j / k_mult);
}

}  // namespace

UnitMatrixBasis unit_matrix_basis(std::size_t n) {
  UnitMatrixBasis out;
  for (std::size_t a = 0; a < n; ++a) {
    Matrix chi(n, 1);
    chi(a, 0) = 1.0;
    out.chi.push_back(chi);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out.b.push_back(matrix_unit(n, a, b));
  return out;
}

Matrix z_operator(std::size_t i, std::size_t d) {
  if (i >= d) throw IndexOutOfRange("z_operator: index " + std::to_string(i) +
                                    " out of range for d = " + std::to_string(d));
  return matrix_unit(d + 1, i + 1, 0);
}

ExtendedModel extend_model(const CpMap& cp) {
  ExtendedModel em;
  if (cp.has_stinespring()) {
    em.base = cp;
  } else {
    try {
      em.base = stinespring_from_choi(cp.superop, cp.d, cp.r);
    } catch (const Error& e) {
      throw NoDilation(std::string("extend_model: ") + e.what());
    }
  }
  const std::size_t r = em.base.r;
  const std::size_t big = em.base.d * em.base.multiplicity;
  em.dim_h1 = big;

  em.v_ext = Matrix((big + 1) * (r + 1), r + 1);
  em.v_ext(0, 0) = 1.0;  // ξ₂ ↦ ξ₁ ⊗ ξ₂
  for (std::size_t i = 0; i < big; ++i)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t al = 0; al < r; ++al)
        em.v_ext((i + 1) * (r + 1) + (b + 1), al + 1) =
            em.base.stinespring(i * r + b, al);

  Matrix gram = dagger(em.v_ext) * em.v_ext;
  gram -= Matrix::identity(r + 1);
  if (max_abs(gram) > 1e-10)
    throw NoDilation("extend_model: extended isometry fails V†V = 1 by " +
                     std::to_string(max_abs(gram)));

  em.u = Matrix((big + 1) * (r + 1), r + 1);
  for (std::size_t al = 0; al <= r; ++al) em.u(al, al) = 1.0;

  for (std::size_t i = 0; i < big; ++i)
    em.sigma.push_back(dagger(em.v_ext) * kron(z_operator(i, big), Matrix::identity(r + 1)) * em.u);

  // Hypothesis checks: commuting factor representations, isometric U, and
  // the ξ₁-corner compression identity P π̂₂(T̃) P = U T̃ U†.
  Rng rng(0xfc5);
  Matrix at = rng.gaussian_matrix(big + 1, big + 1);
  Matrix tt = rng.gaussian_matrix(r + 1, r + 1);
  Matrix lhs = kron(at, Matrix::identity(r + 1)) * kron(Matrix::identity(big + 1), tt);
  Matrix rhs = kron(Matrix::identity(big + 1), tt) * kron(at, Matrix::identity(r + 1));
  lhs -= rhs;
  if (max_abs(lhs) > 1e-12)
    throw Error("extend_model: factor representations do not commute");

  Matrix ugram = dagger(em.u) * em.u;
  ugram -= Matrix::identity(r + 1);
  if (max_abs(ugram) > 1e-12) throw Error("extend_model: U is not an isometry");

  Matrix proj = em.u * dagger(em.u);
  Matrix compressed = proj * kron(Matrix::identity(big + 1), tt) * proj;
  compressed -= em.u * tt * dagger(em.u);
  if (max_abs(compressed) > 1e-12)
    throw Error("extend_model: compression identity fails");

  // Slice sanity: annihilate ξ₂ exactly, restrict to the Kraus slices on H₂.
  // The ξ₂ column is exactly zero by the block layout (no rounding involved).
  for (std::size_t i = 0; i < big; ++i) {
    for (std::size_t a = 0; a <= r; ++a)
      if (em.sigma[i](a, 0) != complexd(0.0))
        throw Error("extend_model: slice does not annihilate ξ₂");
    Matrix corner = em.sigma[i].block(1, 1, r, r);
    corner -= em.base.kraus_slices[i];
    if (max_abs(corner) > 1e-10)
      throw Error("extend_model: slice " + std::to_string(i) +
                  " deviates from the Kraus slice by " + std::to_string(max_abs(corner)));
  }
  return em;
}

Matrix embed_operator(const Matrix& t) {
  Matrix out(t.rows() + 1, t.cols() + 1);
  out.set_block(1, 1, t);
  return out;
}

Matrix compress_operator(const Matrix& te) {
  if (te.rows() < 2 || te.cols() < 2)
    throw ShapeMismatch("compress_operator: matrix too small");
  return te.block(1, 1, te.rows() - 1, te.cols() - 1);
}

Matrix op_product_eval(const ExtendedModel& em, const Word& word, const Matrix& t) {
  const std::size_t r = em.base.r;
  const std::size_t k_mult = em.base.multiplicity;
  if (t.rows() != r || t.cols() != r)
    throw ShapeMismatch("op_product_eval: boundary operator must be r x r");
  Matrix acc = embed_operator(t);
  for (std::size_t pos = word.size(); pos-- > 0;) {
    const Matrix& a = word[pos];
    if (a.rows() != em.base.d || a.cols() != em.base.d)
      throw ShapeMismatch("op_product_eval: letters must be d x d");
    Matrix next(r + 1, r + 1);
    for (std::size_t i0 = 0; i0 < em.base.d; ++i0)
      for (std::size_t j0 = 0; j0 < em.base.d; ++j0) {
        const complexd coeff = a(i0, j0);
        if (coeff == complexd(0.0)) continue;
        for (std::size_t k = 0; k < k_mult; ++k) {
          Matrix term = em.sigma[i0 * k_mult + k] * acc *
                        dagger(em.sigma[j0 * k_mult + k]);
          term *= coeff;
          next += term;
        }
      }
    acc = next;
  }
  return acc;
}

complexd gamma_n_presentation(const ExtendedModel& em, const BoundaryState& xi,
                              const Word& word) {
  const std::size_t r = em.base.r;
  const std::size_t big = em.dim_h1;
  const std::size_t k_mult = em.base.multiplicity;
  const std::size_t n = word.size();
  if (xi.rho.rows() != r || xi.rho.cols() != r)
    throw ShapeMismatch("gamma_n_presentation: boundary state must be r x r");
  for (const Matrix& a : word)
    if (a.rows() != em.base.d || a.cols() != em.base.d)
      throw ShapeMismatch("gamma_n_presentation: letters must be d x d");

  // P_j = Σ†_{j_n}···Σ†_{j_1} for every multi-index, site-major flat layout
  // (the last letter is the least significant digit).
  std::vector<Matrix> prods{Matrix::identity(r + 1)};
  std::vector<Matrix> sigma_dag;
  for (const Matrix& s : em.sigma) sigma_dag.push_back(dagger(s));
  std::size_t total = 1;
  for (std::size_t pos = 0; pos < n; ++pos) {
    total *= big;
    std::vector<Matrix> next(prods.size() * big, Matrix());
    for (std::size_t prev = 0; prev < prods.size(); ++prev)
      for (std::size_t j = 0; j < big; ++j)
        next[prev * big + j] = sigma_dag[j] * prods[prev];
    prods = std::move(next);
  }

  Matrix rho_ext = embed_operator(xi.rho);

  // A_(n) applied to a coefficient vector, one tensor leg at a time.
  auto apply_word = [&](std::vector<complexd> g) {
    std::vector<complexd> out(total);
    for (std::size_t pos = 0; pos < n; ++pos) {
      std::size_t stride = 1;
      for (std::size_t t2 = pos + 1; t2 < n; ++t2) stride *= big;
      std::fill(out.begin(), out.end(), complexd(0.0));
      for (std::size_t flat = 0; flat < total; ++flat) {
        const std::size_t digit = (flat / stride) % big;
        const std::size_t base_flat = flat - digit * stride;
        complexd acc = 0.0;
        for (std::size_t j = 0; j < big; ++j) {
          const complexd el = dilated_element(word[pos], k_mult, digit, j);
          if (el != complexd(0.0)) acc += el * g[base_flat + j * stride];
        }
        out[flat] = acc;
      }
      g = out;
    }
    return g;
  };

  // Γ_n(B_{αβ})[j] = ⟨χ_β, P_j χ_α⟩ = P_j[β,α].
  complexd value = 0.0;
  for (std::size_t beta = 0; beta <= r; ++beta)
    for (std::size_t gamma = 0; gamma <= r; ++gamma) {
      std::vector<complexd> g_gb(total);
      for (std::size_t j = 0; j < total; ++j) g_gb[j] = prods[j](beta, gamma);
      std::vector<complexd> w = apply_word(std::move(g_gb));
      for (std::size_t alpha = 0; alpha <= r; ++alpha) {
        const complexd weight = rho_ext(gamma, alpha);
        if (weight == complexd(0.0)) continue;
        complexd inner = 0.0;
        for (std::size_t i = 0; i < total; ++i)
          inner += std::conj(prods[i](beta, alpha)) * w[i];
        value += weight * inner;
      }
    }
  return value;
}

}  // namespace fcs
