#include <doctest.h>

#include <fcs/cpmap.hpp>
#include <fcs/eig.hpp>
#include <fcs/kernel.hpp>
#include <fcs/matrix.hpp>
#include <fcs/models.hpp>
#include <fcs/reconstruct.hpp>
#include <fcs/rng.hpp>

#include <cmath>

#include "oracles.hpp"

using namespace fcs;

namespace {

ProductModelData pure_product() {
  Matrix psi(2, 1);
  psi(0, 0) = 1.0;
  return product_model(psi);
}

}  // namespace

TEST_CASE("window basis is orthonormal and site-major") {
  std::vector<Matrix> b1 = window_basis(2, 1);
  REQUIRE(b1.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      complexd ip = hs_inner(b1[i], b1[j]);
      CHECK(std::abs(ip - (i == j ? complexd(1.0) : complexd(0.0))) <= 1e-14);
    }
  std::vector<Matrix> b2 = window_basis(2, 2);
  REQUIRE(b2.size() == 16);
  // flat = i*4 + j -> b1[i] (x) b1[j]
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Matrix want = kron(b1[i], b1[j]);
      want -= b2[i * 4 + j];
      CHECK(max_abs(want) <= 1e-14);
    }
}

TEST_CASE("functional matrix rows reproduce window expectations") {
  AkltData m = aklt_model();
  BoundaryState xi = invariant_functional(m.cp);
  FunctionalMatrix fm = functional_matrix(m.cp, xi, 1, 1);
  CHECK(fm.f.rows() == 9);
  CHECK(fm.f.cols() == 9);

  std::vector<Matrix> basis = window_basis(3, 1);
  // Row of x = identity/√3: F[0,j] = ω(1/√3 ⊗ B_j) = ω₁(B_j)/√3.
  for (std::size_t j = 0; j < 9; ++j) {
    complexd want = omega_eval(m.cp, xi, {basis[j]}) / std::sqrt(3.0);
    CHECK(std::abs(fm.f(0, j) - want) <= 1e-10);
    // column j against a non-identity left monomial too
    complexd want2 = omega_eval(m.cp, xi, {basis[4], basis[j]});
    CHECK(std::abs(fm.f(4, j) - want2) <= 1e-10);
  }
}

TEST_CASE("functional matrix ranks against Gaussian elimination") {
  ProductModelData pm = pure_product();
  BoundaryState xp = invariant_functional(pm.cp);
  FunctionalMatrix fp = functional_matrix(pm.cp, xp, 1, 1);
  CHECK(oracle::rank_gauss(fp.f) == 1);

  AkltData m = aklt_model();
  BoundaryState xa = invariant_functional(m.cp);
  FunctionalMatrix fa = functional_matrix(m.cp, xa, 1, 1);
  CHECK(oracle::rank_gauss(fa.f) == 4);
}

TEST_CASE("window guard rejects oversized requests") {
  AkltData m = aklt_model();
  BoundaryState xi = invariant_functional(m.cp);
  CHECK_THROWS_AS(functional_matrix(m.cp, xi, 5, 3), WindowTooLarge);
}

TEST_CASE("product model has one-dimensional quotients") {
  ProductModelData pm = pure_product();
  BoundaryState xi = invariant_functional(pm.cp);
  for (std::size_t mleft = 1; mleft <= 2; ++mleft)
    for (std::size_t nright = 1; nright <= 2; ++nright) {
      FunctionalMatrix fm = functional_matrix(pm.cp, xi, mleft, nright);
      KernelBasis kb = kernel_basis(fm);
      CHECK(kb.quotient_dim == 1);
      std::size_t dim = 1;
      for (std::size_t k = 0; k < nright; ++k) dim *= 4;
      CHECK(kb.vectors.cols() == dim - 1);
    }
}

TEST_CASE("valence-bond quotient stabilizes at four") {
  AkltData m = aklt_model();
  BoundaryState xi = invariant_functional(m.cp);

  FunctionalMatrix f11 = functional_matrix(m.cp, xi, 1, 1);
  KernelBasis k11 = kernel_basis(f11);
  CHECK(k11.quotient_dim == 4);

  FunctionalMatrix f12 = functional_matrix(m.cp, xi, 1, 2);
  FunctionalMatrix f22 = functional_matrix(m.cp, xi, 2, 2);
  KernelBasis k12 = kernel_basis(f12);
  KernelBasis k22 = kernel_basis(f22);
  // growing the left window can only cut the kernel down
  CHECK(k22.quotient_dim >= k12.quotient_dim);
  CHECK(k22.quotient_dim == 4);
  CHECK(oracle::rank_gauss(f22.f) == 4);

  // n = 1 window for completeness: also rank 4 by the m=1 case above.
  FunctionalMatrix f21 = functional_matrix(m.cp, xi, 2, 1);
  CHECK(kernel_basis(f21).quotient_dim == 4);
}

TEST_CASE("kernel vectors really annihilate the functionals") {
  AkltData m = aklt_model();
  BoundaryState xi = invariant_functional(m.cp);
  FunctionalMatrix fm = functional_matrix(m.cp, xi, 2, 1);
  KernelBasis kb = kernel_basis(fm);
  REQUIRE(kb.vectors.cols() == 5);
  const double scale = fro_norm(fm.f);
  for (std::size_t j = 0; j < kb.vectors.cols(); ++j) {
    Matrix v = kb.vectors.col(j);
    Matrix fv = fm.f * v;
    CHECK(fro_norm(fv) <= 1e-8 * scale);
    // kernel is *-closed: conjugate coefficients stay in it
    Matrix fvc = fm.f * conjugate(v);
    CHECK(fro_norm(fvc) <= 1e-8 * scale);
  }
  // ω itself vanishes on kernel representatives.
  std::vector<Matrix> reps = kernel_matrices(kb);
  std::vector<Matrix> basis = window_basis(3, 1);
  for (const Matrix& k : reps) {
    complexd acc = 0.0;
    for (std::size_t j = 0; j < basis.size(); ++j)
      acc += hs_inner(basis[j], k) * omega_eval(m.cp, xi, {basis[j]});
    CHECK(std::abs(acc) <= 1e-8);
  }
}

TEST_CASE("gamma lower bound: identity class and homogeneity") {
  AkltData m = aklt_model();
  BoundaryState xi = invariant_functional(m.cp);
  Matrix one3 = Matrix::identity(3);
  // The identity representative is reproduced through the same contraction
  // that normalizes, so the ratio collapses to exactly one.
  double v1 = gamma_lower_bound(m.cp, xi, one3, 1, 1, 10, 7);
  CHECK(v1 == 1.0);

  SpinOperators s = aklt_spin_operators();
  double vz = gamma_lower_bound(m.cp, xi, s.sz, 1, 1, 10, 7);
  CHECK(vz > 1e-3);
  Matrix half = s.sz;
  half *= complexd(0.5);
  double vh = gamma_lower_bound(m.cp, xi, half, 1, 1, 10, 7);
  CHECK(std::abs(vh - 0.5 * vz) <= 1e-12);

  ProductModelData pm = pure_product();
  BoundaryState xp = invariant_functional(pm.cp);
  CHECK(gamma_lower_bound(pm.cp, xp, Matrix::identity(2), 1, 1, 10, 7) == 1.0);
}

TEST_CASE("membership: strictly positive and strictly negative cases") {
  Rng rng(101);
  Matrix a = rng.psd(3);
  a += Matrix::identity(3);  // λ_min ≥ 1
  MembershipResult res = archimedean_membership(a, std::vector<Matrix>{});
  CHECK(res.member);
  CHECK(std::abs(res.achieved - min_eig(a)) <= 1e-12);

  Matrix neg = Matrix::identity(2);
  neg *= complexd(-1.0);
  std::vector<Matrix> sigma = pauli_basis();
  MembershipResult res2 = archimedean_membership(neg, {sigma[1]});
  CHECK_FALSE(res2.member);
  CHECK(std::abs(res2.achieved + 1.0) <= 1e-9);
}

TEST_CASE("membership: boundary instance against the grid oracle") {
  Matrix a(2, 2);
  a(0, 0) = -1.0;
  a(1, 1) = 1.0;
  Matrix k(2, 2);
  k(0, 0) = 1.0 / std::sqrt(2.0);
  k(1, 1) = -1.0 / std::sqrt(2.0);

  // max_c λ_min(a + c·k) = 0, attained at c = √2.
  double grid = oracle::grid_max_min_eig(a, k, 0.0, 3.0, 3000);
  CHECK(grid <= 1e-12);
  CHECK(grid >= -1e-3);

  MembershipResult res = archimedean_membership(a, {k}, 1e-6);
  CHECK(res.member);
  CHECK(std::abs(res.achieved) <= 1e-5);
}

TEST_CASE("membership is monotone under adding positives") {
  Rng rng(111);
  Matrix k = rng.hermitian(3);
  k *= complexd(1.0 / fro_norm(k));
  for (int rep = 0; rep < 5; ++rep) {
    Matrix a = rng.hermitian(3);
    MembershipResult base = archimedean_membership(a, {k});
    if (!base.member) continue;
    Matrix bigger = a + rng.psd(3);
    MembershipResult more = archimedean_membership(bigger, {k}, 1e-6);
    CHECK(more.member);
  }
}

TEST_CASE("order seminorm equals the operator norm without a kernel") {
  std::vector<Matrix> sigma = pauli_basis();
  CHECK(std::abs(order_seminorm(sigma[3], std::vector<Matrix>{}) - 1.0) <= 1e-6);
  CHECK(order_seminorm(sigma[0], std::vector<Matrix>{}) == 1.0);
  CHECK(order_seminorm(Matrix::zero(2, 2), std::vector<Matrix>{}) <= 1e-7);

  Rng rng(121);
  for (int rep = 0; rep < 10; ++rep) {
    std::size_t n = 2 + rng.integer(3);
    Matrix a = rng.hermitian(n);
    double want = operator_norm(a);
    double got = order_seminorm(a, std::vector<Matrix>{});
    CHECK(std::abs(got - want) <= 1e-6);
  }
}

TEST_CASE("order seminorm in a quotient") {
  Matrix k(2, 2);
  k(0, 0) = 1.0 / std::sqrt(2.0);
  k(1, 1) = -1.0 / std::sqrt(2.0);

  // a ≡ 0 modulo the kernel direction.
  Matrix a0(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = -1.0;
  CHECK(order_seminorm(a0, {k}) <= 1e-6);

  // diag(2,0): membership analysis gives ⟦a⟧ = 1 < ‖a‖ = 2.
  Matrix a1(2, 2);
  a1(0, 0) = 2.0;
  CHECK(std::abs(order_seminorm(a1, {k}) - 1.0) <= 1e-5);
}

TEST_CASE("amplified seminorm agrees on trivially amplified elements") {
  Matrix k(2, 2);
  k(0, 0) = 1.0 / std::sqrt(2.0);
  k(1, 1) = -1.0 / std::sqrt(2.0);
  std::vector<Matrix> amp = amplify_kernel({k}, 2);
  REQUIRE(amp.size() == 4);

  Matrix a(2, 2);
  a(0, 0) = 2.0;
  double base = order_seminorm(a, {k});
  double lifted = order_seminorm(kron(Matrix::identity(2), a), amp);
  CHECK(std::abs(lifted - base) <= 2e-5);
}

TEST_CASE("amplified gamma bound on block-diagonal lifts") {
  AkltData m = aklt_model();
  BoundaryState xi = invariant_functional(m.cp);
  SpinOperators s = aklt_spin_operators();
  // blocks = diag(b, b): the 2x2 functional matrix is b's value times I_2,
  // so the amplified bound equals the scalar one.
  std::vector<Matrix> blocks = {s.sz, Matrix::zero(3, 3), Matrix::zero(3, 3), s.sz};
  double amp = gamma_lower_bound_amplified(m.cp, xi, blocks, 2, 1, 1, 10, 7);
  double scalar = gamma_lower_bound(m.cp, xi, s.sz, 1, 1, 10, 7);
  CHECK(std::abs(amp - scalar) <= 1e-9);
}

TEST_CASE("gamma condition probe") {
  ProductModelData pm = pure_product();
  BoundaryState xp = invariant_functional(pm.cp);
  GammaProbe gp = gamma_condition_probe(pm.cp, xp, 1, 1, 10, 5);
  CHECK_FALSE(gp.degenerate);
  CHECK(std::abs(gp.value - 1.0) <= 1e-9);

  AkltData m = aklt_model();
  BoundaryState xa = invariant_functional(m.cp);
  GammaProbe ga = gamma_condition_probe(m.cp, xa, 1, 1, 10, 5);
  CHECK_FALSE(ga.degenerate);
  CHECK(ga.value > 1e-3);

  // Zero boundary: every functional vanishes, quotient collapses.
  BoundaryState zero;
  zero.rho = Matrix::zero(2, 2);
  GammaProbe gz = gamma_condition_probe(m.cp, zero, 1, 1, 4, 5);
  CHECK(gz.degenerate);
  CHECK(gz.value == 0.0);
}
