#pragma once

#include <vector>

#include "fcs/cpmap.hpp"
#include "fcs/matrix.hpp"
#include "fcs/reconstruct.hpp"

namespace fcs {

// Operator-product presentation over extended spaces H̃_i = C·ξ_i ⊕ H_i.
// Basis convention: index 0 is the distinguished vector ξ, indices 1.. carry
// the original space.  H₁ is the dilated letter space of dimension
// dim_h1 = d·multiplicity, so letters a ∈ M_d act as a ⊗ I_K on it.
struct ExtendedModel {
  CpMap base;                 // guaranteed to carry a Stinespring isometry
  std::size_t dim_h1 = 0;     // d·K
  Matrix v_ext;               // (dim_h1+1)(r+1) x (r+1) extended isometry
  Matrix u;                   // embedding U(χ̃) = ξ₁ ⊗ χ̃
  std::vector<Matrix> sigma;  // dim_h1 slices, (r+1) x (r+1), Σ_i ξ₂ = 0
};

struct UnitMatrixBasis {
  std::vector<Matrix> chi;  // orthonormal basis vectors of C^n
  std::vector<Matrix> b;    // matrix units |χ_α⟩⟨χ_β|, row-major over (α,β)
};
UnitMatrixBasis unit_matrix_basis(std::size_t n);

// (d+1)x(d+1) operator with Z_i(α·ξ₁ + ψ′) = α·δ_i, i.e. |δ_i⟩⟨ξ₁|.
Matrix z_operator(std::size_t i, std::size_t d);

// Minimal extension: V_ext(ξ₂) = ξ₁⊗ξ₂ and V_ext|_{H₂} = inclusion of V₀.
// The slices come out as Σ_i = V_ext†(Z_i ⊗ 1)U, which act by 0 on ξ₂ and by
// the Kraus slice on H₂.  Verifies the commuting-representation, isometry,
// and compression hypotheses before returning.
ExtendedModel extend_model(const CpMap& cp);

// Σ_{i,j} ⟨δ_i, A_(n) δ_j⟩ Σ_{i₁}···Σ_{i_n} T̃ Σ†_{j_n}···Σ†_{j_1} for the
// monomial word, contracted letter by letter; t is r x r and gets embedded.
// The H₂ corner of the result equals iterate(base, word, t).
Matrix op_product_eval(const ExtendedModel& em, const Word& word, const Matrix& t);

// State presentation through the Γ_n coefficient vectors
// Γ_n(B)[j] = Tr(B·Σ†_{j_n}···Σ†_{j_1}): evaluates
// Σ_{αβγ} ω̄(B_{αγ})·⟨Γ_n(B_{αβ}), A_(n) Γ_n(B_{γβ})⟩ with ω̄ = Tr(ρ_ext ·).
complexd gamma_n_presentation(const ExtendedModel& em, const BoundaryState& xi,
                              const Word& word);

Matrix embed_operator(const Matrix& t);      // r x r -> (r+1) x (r+1) corner
Matrix compress_operator(const Matrix& te);  // inverse block extraction

}  // namespace fcs
