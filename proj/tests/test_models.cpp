#include <doctest.h>

#include <fcs/cpmap.hpp>
#include <fcs/eig.hpp>
#include <fcs/matrix.hpp>
#include <fcs/models.hpp>
#include <fcs/rng.hpp>

#include <cmath>

using namespace fcs;

TEST_CASE("triplet projector invariants") {
  AkltData m = aklt_model();
  CHECK(m.g[0] == 0.75);
  CHECK(m.g[1] == 0.25);
  CHECK(m.g[2] == 0.25);
  CHECK(m.g[3] == 0.25);

  Matrix p2 = m.p * m.p;
  p2 -= m.p;
  CHECK(max_abs(p2) <= 1e-14);
  CHECK(std::abs(trace(m.p) - 3.0) <= 1e-14);
  Matrix pd = dagger(m.p);
  pd -= m.p;
  CHECK(max_abs(pd) <= 1e-15);

  // Singlet complement, frozen entries.
  Matrix p0_ref(4, 4);
  p0_ref(1, 1) = p0_ref(2, 2) = 0.5;
  p0_ref(1, 2) = p0_ref(2, 1) = -0.5;
  Matrix d0 = m.p0;
  d0 -= p0_ref;
  CHECK(max_abs(d0) <= 1e-15);
  Matrix ortho = m.p * m.p0;
  CHECK(max_abs(ortho) <= 1e-14);
  CHECK(std::abs(trace(m.p0) - 1.0) <= 1e-14);

  // P commutes with the total spin of the two qubits.
  std::vector<Matrix> sigma = pauli_basis();
  for (std::size_t k = 1; k <= 3; ++k) {
    Matrix j = kron(sigma[k], sigma[0]) + kron(sigma[0], sigma[k]);
    Matrix comm = m.p * j - j * m.p;
    CHECK(max_abs(comm) <= 1e-14);
  }
}

TEST_CASE("triplet isometry spans range(P)") {
  AkltData m = aklt_model();
  Matrix g = dagger(m.w) * m.w;
  g -= Matrix::identity(3);
  CHECK(max_abs(g) <= 1e-14);
  Matrix proj = m.w * dagger(m.w);
  proj -= m.p;
  CHECK(max_abs(proj) <= 1e-14);
}

TEST_CASE("generating map: unitality and Pauli contraction") {
  AkltData m = aklt_model();
  CHECK(m.cp.d == 3);
  CHECK(m.cp.r == 2);
  CHECK(m.cp.multiplicity == 1);
  CHECK(m.cp.has_stinespring());

  std::vector<Matrix> sigma = pauli_basis();
  Matrix one3 = Matrix::identity(3);

  Matrix u = apply(m.cp, kron(one3, sigma[0]));
  u -= sigma[0];
  CHECK(max_abs(u) <= 1e-12);

  for (std::size_t k = 1; k <= 3; ++k) {
    Matrix got = apply(m.cp, kron(one3, sigma[k]));
    Matrix want = sigma[k];
    want *= complexd(-1.0 / 3.0);
    got -= want;
    CHECK(max_abs(got) <= 1e-12);
  }
}

TEST_CASE("generating map is completely positive") {
  AkltData m = aklt_model();
  Matrix c = choi(m.cp);
  CHECK(min_eig(c) >= -1e-10);
  // One Kraus operator only: the map is pure (conjugation by one isometry).
  auto eg = herm_eig(c);
  std::size_t n = eg.eigenvalues.size();
  for (std::size_t i = 0; i + 1 < n; ++i) CHECK(std::abs(eg.eigenvalues[i]) <= 1e-10);
  CHECK(eg.eigenvalues[n - 1] > 1.0);

  // Recovered dilation actually reproduces the superoperator.
  CpMap rebuilt = cp_from_isometry(m.cp.stinespring, 3, 2);
  Matrix diff = rebuilt.superop;
  diff -= m.cp.superop;
  CHECK(max_abs(diff) <= 1e-10);
}

TEST_CASE("spin-1 operators are the standard ones") {
  SpinOperators s = aklt_spin_operators();
  const double is2 = 1.0 / std::sqrt(2.0);

  Matrix sx_ref(3, 3);
  sx_ref(0, 1) = sx_ref(1, 0) = sx_ref(1, 2) = sx_ref(2, 1) = is2;
  Matrix sy_ref(3, 3);
  sy_ref(0, 1) = complexd(0, -is2);
  sy_ref(1, 0) = complexd(0, is2);
  sy_ref(1, 2) = complexd(0, -is2);
  sy_ref(2, 1) = complexd(0, is2);
  Matrix sz_ref(3, 3);
  sz_ref(0, 0) = 1.0;
  sz_ref(2, 2) = -1.0;

  Matrix dx = s.sx; dx -= sx_ref;
  Matrix dy = s.sy; dy -= sy_ref;
  Matrix dz = s.sz; dz -= sz_ref;
  CHECK(max_abs(dx) <= 1e-14);
  CHECK(max_abs(dy) <= 1e-14);
  CHECK(max_abs(dz) <= 1e-14);

  // su(2): [Sx, Sy] = i Sz, Casimir = s(s+1) = 2.
  Matrix comm = s.sx * s.sy - s.sy * s.sx;
  Matrix want = complexd(0, 1) * s.sz;
  comm -= want;
  CHECK(max_abs(comm) <= 1e-14);
  Matrix cas = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
  cas -= complexd(2.0) * Matrix::identity(3);
  CHECK(max_abs(cas) <= 1e-14);

  auto eg = herm_eig(s.sz);
  CHECK(std::abs(eg.eigenvalues[0] + 1.0) <= 1e-14);
  CHECK(std::abs(eg.eigenvalues[1]) <= 1e-14);
  CHECK(std::abs(eg.eigenvalues[2] - 1.0) <= 1e-14);
}

TEST_CASE("product model from a pure vector") {
  Matrix psi(2, 1);
  psi(0, 0) = 1.0;
  ProductModelData pm = product_model(psi);
  CHECK(pm.cp.d == 2);
  CHECK(pm.cp.r == 1);
  CHECK(pm.cp.multiplicity == 1);

  // superop row: E(e_pq ⊗ 1) = ρ0[q,p]; for |0⟩ that is [1,0,0,0].
  CHECK(std::abs(pm.cp.superop(0, 0) - 1.0) <= 1e-15);
  for (std::size_t j = 1; j < 4; ++j) CHECK(std::abs(pm.cp.superop(0, j)) <= 1e-15);

  std::vector<Matrix> sigma = pauli_basis();
  Matrix one1 = Matrix::identity(1);
  Matrix z = apply(pm.cp, kron(sigma[3], one1));
  CHECK(std::abs(z(0, 0) - 1.0) <= 1e-14);
  Matrix x = apply(pm.cp, kron(sigma[1], one1));
  CHECK(std::abs(x(0, 0)) <= 1e-14);

  // Words multiply: E_(2)(σ³⊗σ³⊗1) = ω0(σ³)².
  Matrix two = iterate(pm.cp, {sigma[3], sigma[3]}, one1);
  CHECK(std::abs(two(0, 0) - 1.0) <= 1e-14);
}

TEST_CASE("product model normalizes and rejects non-states") {
  Matrix near(2, 1);
  near(0, 0) = 1.0 + 1e-10;  // within tolerance: renormalized
  ProductModelData pm = product_model(near);
  CHECK(std::abs(pm.rho0(0, 0) - 1.0) <= 1e-9);

  Matrix off(2, 1);
  off(0, 0) = 1.1;
  CHECK_THROWS_AS(product_model(off), NotAState);

  Matrix neg(2, 2);  // Hermitian, trace one, not positive
  neg(0, 0) = 2.0;
  neg(1, 1) = -1.0;
  CHECK_THROWS_AS(product_model(neg), NotAState);

  Matrix tr(2, 2);  // positive, wrong trace
  tr(0, 0) = 2.0;
  CHECK_THROWS_AS(product_model(tr), NotAState);

  Matrix nh(2, 2);  // not Hermitian
  nh(0, 0) = 0.5;
  nh(1, 1) = 0.5;
  nh(0, 1) = 0.3;
  CHECK_THROWS_AS(product_model(nh), NotAState);
}

TEST_CASE("mixed product model dilates with multiplicity") {
  Matrix rho(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  ProductModelData pm = product_model(rho);
  CHECK(pm.psi0.empty());
  CHECK(pm.cp.r == 1);
  CHECK(pm.cp.multiplicity == 2);
  CHECK(pm.cp.kraus_slices.size() == 4);

  // E(e_pq ⊗ 1) = ρ0[q,p].
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q) {
      Matrix e = apply(pm.cp, kron(matrix_unit(2, p, q), Matrix::identity(1)));
      CHECK(std::abs(e(0, 0) - rho(q, p)) <= 1e-14);
    }

  // Dilation is an isometry and the Kraus sum reproduces the superoperator.
  REQUIRE(pm.cp.has_stinespring());
  Matrix g = dagger(pm.cp.stinespring) * pm.cp.stinespring;
  g -= Matrix::identity(1);
  CHECK(max_abs(g) <= 1e-14);
  const std::size_t K = pm.cp.multiplicity;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      complexd acc = 0.0;
      for (std::size_t k = 0; k < K; ++k)
        acc += pm.cp.kraus_slices[i * K + k](0, 0) *
               std::conj(pm.cp.kraus_slices[j * K + k](0, 0));
      CHECK(std::abs(acc - rho(j, i)) <= 1e-14);
    }
}

TEST_CASE("random models are deterministic isometries") {
  CpMap a = random_model(3, 2, 42);
  CpMap b = random_model(3, 2, 42);
  Matrix diff = a.stinespring;
  diff -= b.stinespring;
  CHECK(max_abs(diff) == 0.0);

  CpMap c = random_model(3, 2, 43);
  Matrix diff2 = c.stinespring;
  diff2 -= a.stinespring;
  CHECK(max_abs(diff2) > 1e-3);

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CpMap m = random_model(2, 3, seed);
    Matrix g = dagger(m.stinespring) * m.stinespring;
    g -= Matrix::identity(3);
    CHECK(max_abs(g) <= 1e-12);
    Matrix uu = apply(m, Matrix::identity(6));
    uu -= Matrix::identity(3);
    CHECK(max_abs(uu) <= 1e-12);
  }
}
