#pragma once

#include <vector>

#include "fcs/cpmap.hpp"
#include "fcs/matrix.hpp"

namespace fcs {

// Boundary functional ξ(T) = Tr(ρT) with ρ the invariant density matrix of
// the shift channel; residual is ‖ξ∘S̄ − ξ‖ in Frobenius norm on ρ.
struct BoundaryState {
  Matrix rho;  // r x r, ρ ⪰ 0, Tr ρ = 1
  double residual = 0.0;
};

struct TransferSpectrum {
  std::vector<complexd> eigenvalues;  // sorted by modulus, descending
  double gap_modulus = 0.0;           // |λ2|, 0 when r = 1
};

struct InvariantCandidates {
  std::vector<Matrix> candidates;  // basis of fix(S̄*), Hermitized
  bool degenerate = false;         // eigenvalue 1 not simple
};

// S̄(T) = E(1_d ⊗ T): the transfer channel, returned as its r²xr² matrix.
Matrix shift_superop(const CpMap& cp);

TransferSpectrum transfer_spectrum(const CpMap& cp);

// Power iteration for the unit fixed point of S̄ itself (trivially 1 for a
// unital map; kept as the certified check).  Throws NotUnital / NoConvergence.
Matrix fixed_point_unit(const CpMap& cp, double tol = 1e-10, std::size_t max_iter = 5000);

// Invariant state of S̄: the density matrix ρ with Tr(ρ·S̄(T)) = Tr(ρT).
// Requires eigenvalue 1 of S̄ to be simple (else DegenerateFixedSpace); the
// fixed-space basis is available unconditionally via invariant_candidates.
BoundaryState invariant_functional(const CpMap& cp, double tol = 1e-10);
InvariantCandidates invariant_candidates(const CpMap& cp, double tol = 1e-8);

// ω(a_1 ⊗ … ⊗ a_n) = ξ(E_(n)(a_1⊗…⊗a_n⊗1)).
complexd omega_eval(const CpMap& cp, const BoundaryState& xi, const Word& word);

// max over padding sides of |ω(1⊗word) − ω(word)| and |ω(word⊗1) − ω(word)|.
CheckResult shift_invariance_check(const CpMap& cp, const BoundaryState& xi,
                                   const Word& word, double tol = 1e-10);

// ω(A⊗1^{⊗sep}⊗B) − ω(A)ω(B): `sep` identity sites sit between the two
// observables, so sep = 0 means adjacent sites.  correlation uses powers of
// the transfer matrix, correlation_by_word re-evaluates through omega_eval on
// padded words.
complexd correlation(const CpMap& cp, const BoundaryState& xi, const Matrix& a,
                     const Matrix& b, std::size_t sep);
complexd correlation_by_word(const CpMap& cp, const BoundaryState& xi, const Matrix& a,
                             const Matrix& b, std::size_t sep);

// |λ2| of the transfer channel; exponential clustering holds when this is < 1
// and eigenvalue 1 is simple (DegenerateFixedSpace otherwise).
double clustering_rate(const CpMap& cp);

// dim span{E_(n)(x ⊗ s) : x ∈ M_d^(n), 1 ≤ n ≤ n_max}, capped at r².
std::size_t fullness_dimension(const CpMap& cp, const Matrix& seed, std::size_t n_max,
                               double tol = 1e-8);

// Expectation of word·1^(L−n) on the length-L periodic closure of the chain:
// Tr(L_{a1}···L_{an}·L_1^{L−n}) / Tr(L_1^L) over the bond-pair space.
complexd ring_expectation(const CpMap& cp, const Word& word, std::size_t length);

}  // namespace fcs
