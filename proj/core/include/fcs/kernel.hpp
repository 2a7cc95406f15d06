#pragma once

#include <cstdint>
#include <vector>

#include "fcs/cpmap.hpp"
#include "fcs/matrix.hpp"
#include "fcs/reconstruct.hpp"

namespace fcs {

// ω evaluated over a finite window (−m_left, n_right]: rows run over the
// Hilbert–Schmidt orthonormal monomial basis of the left window, columns over
// the right window, entry = ω(x ⊗ a).  The null space of F is the truncated
// entanglement kernel; its codimension the quotient dimension.
struct FunctionalMatrix {
  std::size_t d = 0;
  std::size_t m_left = 0;
  std::size_t n_right = 0;
  Matrix f;  // d^{2m} x d^{2n}
};

struct KernelBasis {
  std::size_t d = 0;
  std::size_t n_right = 0;
  std::size_t quotient_dim = 0;
  Matrix vectors;  // d^{2n} x nullity, orthonormal coefficient columns
};

struct MembershipResult {
  bool member = false;
  double achieved = 0.0;  // best λ_min(a + Σ c_j k_j) found
};

struct GammaProbe {
  double value = 0.0;
  bool degenerate = false;  // quotient dimension was zero, nothing to probe
};

// Materialized HS-orthonormal basis of M_{d^n} as n-fold tensor monomials of
// the single-site basis; flat index runs site-major (leftmost site varies
// slowest).  Matches the row/column indexing of FunctionalMatrix.
std::vector<Matrix> window_basis(std::size_t d, std::size_t n);

// Guard: d^{2(m+n)} ≤ 1e6 entries, else WindowTooLarge.
FunctionalMatrix functional_matrix(const CpMap& cp, const BoundaryState& xi,
                                   std::size_t m_left, std::size_t n_right);

KernelBasis kernel_basis(const FunctionalMatrix& fm, double tol = 1e-8);
std::vector<Matrix> kernel_matrices(const KernelBasis& kb);

// Sampled lower bound on Γ(⌊b⌋) = sup_x |ω_x(b)| over left-window states:
// candidates are all positive per-site monomials g₁²⊗…⊗g_m² plus `samples`
// random y†y, each normalized by ω(x).
double gamma_lower_bound(const CpMap& cp, const BoundaryState& xi, const Matrix& b_repr,
                         std::size_t n_right, std::size_t m_left, std::size_t samples,
                         std::uint64_t seed);

// Matrix-level variant: blocks is a level x level array (row-major) of right
// window elements; value = max_x ‖ [ω_x(b_uv)] ‖ over the same candidates.
double gamma_lower_bound_amplified(const CpMap& cp, const BoundaryState& xi,
                                   const std::vector<Matrix>& blocks, std::size_t level,
                                   std::size_t n_right, std::size_t m_left,
                                   std::size_t samples, std::uint64_t seed);

// Does ε + a + K hit the positive cone for every ε > 0?  Maximizes
// λ_min(a + Σ c_j k_j) by supergradient ascent (λ_min is concave); member
// iff the achieved value ≥ −tol.
MembershipResult archimedean_membership(const Matrix& a, const std::vector<Matrix>& kernel,
                                        double tol = 1e-8, std::size_t iters = 500);
MembershipResult archimedean_membership(const Matrix& a, const KernelBasis& kernel,
                                        double tol = 1e-8, std::size_t iters = 500);

// ⟦a⟧ = inf{ r ≥ 0 : r·1 ± a both members }, by bisection from operator_norm(a).
// With an empty kernel this is the C*-norm of Hermitian a.
double order_seminorm(const Matrix& a, const std::vector<Matrix>& kernel,
                      double tol = 1e-7);
double order_seminorm(const Matrix& a, const KernelBasis& kernel, double tol = 1e-7);

// min of gamma_lower_bound over random unit-HS quotient representatives: a
// sampled upper bound on inf{Γ(⌊b⌋) : ‖b‖ = 1, b ⊥ kernel}.
GammaProbe gamma_condition_probe(const CpMap& cp, const BoundaryState& xi,
                                 std::size_t n_right, std::size_t m_left,
                                 std::size_t samples, std::uint64_t seed);

// Kernel of the level-n amplification M_n(A): elements e_uv ⊗ k.
std::vector<Matrix> amplify_kernel(const std::vector<Matrix>& kernel, std::size_t level);

}  // namespace fcs
