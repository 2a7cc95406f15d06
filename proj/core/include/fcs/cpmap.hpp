#pragma once

#include <vector>

#include "fcs/matrix.hpp"

namespace fcs {

// Generating map E : M_d ⊗ M_r -> M_r.  The superoperator acts on
// column-stacked vectorizations and is always present; the Stinespring
// isometry and its Kraus slices are carried when known (built directly from
// an isometry, or recovered from the Choi matrix).
//
// Dilation convention: V maps C^r into C^d ⊗ C^K ⊗ C^r and
// E(a⊗T) = V†(a ⊗ I_K ⊗ T)V.  K is the Kraus rank of the map ("multiplicity"
// below); maps of Kraus rank 1 have the plain (d·r) x r isometry and d slices
// with Σ_i χ = V†(δ_i ⊗ χ).  For K > 1 there are d·K slices, slice (i,k)
// stored at index i·K + k.
struct CpMap {
  std::size_t d = 0;
  std::size_t r = 0;
  Matrix superop;                    // r² x (d²·r²)
  Matrix stinespring;                // (d·K·r) x r, empty when unavailable
  std::size_t multiplicity = 1;      // K
  std::vector<Matrix> kraus_slices;  // d·K matrices, r x r

  bool has_stinespring() const { return stinespring.size() > 0; }
};

using Word = std::vector<Matrix>;

struct CheckResult {
  bool ok = false;
  double residual = 0.0;
};

// E(a⊗T) = V†(a⊗T)V from an isometry V of shape (d·r) x r.
CpMap cp_from_isometry(const Matrix& v, std::size_t d, std::size_t r, double tol = 1e-8);

// E(x) for x ∈ M_d ⊗ M_r given as a (d·r) x (d·r) matrix.
Matrix apply(const CpMap& cp, const Matrix& x);

// C = Σ_{μν} e_{μν} ⊗ E(e_{μν}) over the matrix units of M_{d·r};
// shape (d·r·r) x (d·r·r).  The map is completely positive iff C ⪰ 0.
Matrix choi(const CpMap& cp);
Matrix superop_from_choi(const Matrix& c, std::size_t d, std::size_t r);

// Recover a Stinespring isometry from the spectral decomposition of the Choi
// matrix.  Eigenvalues below tol·max(Tr C, 1) are treated as zero; negative
// ones beyond that bound raise NotCP.  The returned map keeps the input
// superoperator and gains stinespring/kraus_slices/multiplicity.
CpMap stinespring_from_choi(const Matrix& superop, std::size_t d, std::size_t r,
                            double tol = 1e-8);

// E_(n)(a_1⊗…⊗a_n⊗t) by right-to-left recursion; empty word returns t.
Matrix iterate(const CpMap& cp, const Word& word, const Matrix& t);

// ‖E_(m+n)(x⊗y⊗t) − E_(m)(x ⊗ E_(n)(y⊗t))‖_F and the comparison with tol.
CheckResult markov_check(const CpMap& cp, const Word& word_x, const Word& word_y,
                         const Matrix& t, double tol = 1e-10);

// r² x r² matrix of T ↦ E(a⊗T): the one-letter transfer operator.
Matrix letter_superop(const CpMap& cp, const Matrix& a);

}  // namespace fcs
