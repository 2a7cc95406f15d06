#pragma once

#include <array>
#include <cstdint>

#include "fcs/cpmap.hpp"
#include "fcs/matrix.hpp"

namespace fcs {

// Spin-1 chain built from nearest-neighbour valence bonds: the local algebra
// is the range of the two-qubit triplet projector P, and the generating map
// contracts one virtual qubit per site against the singlet projector P0.
struct AkltData {
  Matrix p;               // triplet projector on C²⊗C², 4 x 4
  Matrix p0;              // singlet projector, 4 x 4
  Matrix w;               // isometry C³ -> C²⊗C² onto range(P), 4 x 3
  std::array<double, 4> g;  // P = g0·I⊗I + Σ_k g_k·σᵏ⊗σᵏ = (3/4, 1/4, 1/4, 1/4)
  CpMap cp;               // d = 3, r = 2, with Stinespring isometry attached
};

AkltData aklt_model();

struct SpinOperators {
  Matrix sx, sy, sz;  // spin-1 matrices in the basis fixed by aklt_model().w
};
SpinOperators aklt_spin_operators();

// Product state over letters of dimension d: r = 1 and E(a⊗λ) = λ·ω0(a).
// Accepts either a unit vector (d x 1) or a density matrix (d x d); the
// latter is purified into a rank-K dilation.  Rejects non-states (NotAState).
struct ProductModelData {
  Matrix psi0;  // d x 1 for a pure input, empty otherwise
  Matrix rho0;  // d x d single-site density matrix
  CpMap cp;
};
ProductModelData product_model(const Matrix& state);

// Haar-flavoured isometry V : C^r -> C^d ⊗ C^r from a seeded Gaussian matrix,
// orthonormalized; same seed, same model.
CpMap random_model(std::size_t d, std::size_t r, std::uint64_t seed);

}  // namespace fcs
