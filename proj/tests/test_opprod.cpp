#include <doctest.h>

#include <fcs/cpmap.hpp>
#include <fcs/matrix.hpp>
#include <fcs/models.hpp>
#include <fcs/opprod.hpp>
#include <fcs/reconstruct.hpp>
#include <fcs/rng.hpp>

#include <cmath>

using namespace fcs;

namespace {

ProductModelData pure_product() {
  Matrix psi(2, 1);
  psi(0, 0) = 1.0;
  return product_model(psi);
}

Word random_word(Rng& rng, std::size_t d, std::size_t n) {
  Word w;
  for (std::size_t k = 0; k < n; ++k) w.push_back(rng.gaussian_matrix(d, d));
  return w;
}

}  // namespace

TEST_CASE("matrix units multiply like matrix units") {
  UnitMatrixBasis ub = unit_matrix_basis(3);
  REQUIRE(ub.chi.size() == 3);
  REQUIRE(ub.b.size() == 9);
  for (std::size_t al = 0; al < 3; ++al)
    for (std::size_t be = 0; be < 3; ++be)
      for (std::size_t ga = 0; ga < 3; ++ga)
        for (std::size_t de = 0; de < 3; ++de) {
          Matrix prod = ub.b[al * 3 + be] * ub.b[ga * 3 + de];
          Matrix want = Matrix::zero(3, 3);
          if (be == ga) want = ub.b[al * 3 + de];
          prod -= want;
          CHECK(max_abs(prod) == 0.0);
        }
}

TEST_CASE("z operators connect xi to the letter levels") {
  Matrix z0 = z_operator(0, 2);
  CHECK(z0.rows() == 3);
  Matrix want = matrix_unit(3, 1, 0);
  want -= z0;
  CHECK(max_abs(want) == 0.0);

  // Z_i† Z_j = δ_ij |ξ⟩⟨ξ| and Z_i Z_j† = |δ_i⟩⟨δ_j|.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Matrix a = dagger(z_operator(i, 2)) * z_operator(j, 2);
      Matrix wa = (i == j) ? matrix_unit(3, 0, 0) : Matrix::zero(3, 3);
      a -= wa;
      CHECK(max_abs(a) == 0.0);
      Matrix b = z_operator(i, 2) * dagger(z_operator(j, 2));
      Matrix wb = matrix_unit(3, i + 1, j + 1);
      b -= wb;
      CHECK(max_abs(b) == 0.0);
    }

  // Σ_ij A_ij Z_i Z_j† embeds A in the letter corner.
  Rng rng(3);
  Matrix a = rng.gaussian_matrix(2, 2);
  Matrix acc = Matrix::zero(3, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Matrix term = z_operator(i, 2) * dagger(z_operator(j, 2));
      term *= a(i, j);
      acc += term;
    }
  Matrix emb = embed_operator(a);
  emb -= acc;
  CHECK(max_abs(emb) == 0.0);

  CHECK_THROWS_AS(z_operator(2, 2), IndexOutOfRange);
}

TEST_CASE("embed / compress are inverse corner maps") {
  Rng rng(5);
  Matrix t = rng.gaussian_matrix(2, 2);
  Matrix te = embed_operator(t);
  CHECK(te.rows() == 3);
  CHECK(std::abs(te(0, 0)) == 0.0);
  Matrix back = compress_operator(te);
  back -= t;
  CHECK(max_abs(back) == 0.0);
}

TEST_CASE("extended model of the pure product state") {
  ProductModelData pm = pure_product();
  ExtendedModel em = extend_model(pm.cp);
  CHECK(em.dim_h1 == 2);
  REQUIRE(em.sigma.size() == 2);
  // Slices are scalars on H₂ = C: ⟨ψ0|δ_i⟩ in the corner, zero elsewhere.
  Matrix s0_want(2, 2);
  s0_want(1, 1) = 1.0;
  Matrix d0 = em.sigma[0];
  d0 -= s0_want;
  CHECK(max_abs(d0) <= 1e-14);
  CHECK(max_abs(em.sigma[1]) <= 1e-14);
}

TEST_CASE("extended model of the identity channel") {
  CpMap cp = cp_from_isometry(Matrix::identity(2), 1, 2);
  ExtendedModel em = extend_model(cp);
  CHECK(em.dim_h1 == 1);
  REQUIRE(em.sigma.size() == 1);
  Matrix corner = compress_operator(em.sigma[0] * embed_operator(Matrix::identity(2)) *
                                    dagger(em.sigma[0]));
  corner -= Matrix::identity(2);
  CHECK(max_abs(corner) <= 1e-12);
}

TEST_CASE("extension invariants") {
  AkltData m = aklt_model();
  ExtendedModel em = extend_model(m.cp);
  const std::size_t r = m.cp.r;
  CHECK(em.dim_h1 == 3);
  CHECK(em.v_ext.rows() == (em.dim_h1 + 1) * (r + 1));
  CHECK(em.v_ext.cols() == r + 1);

  Matrix g = dagger(em.v_ext) * em.v_ext;
  g -= Matrix::identity(r + 1);
  CHECK(max_abs(g) <= 1e-10);

  // V_ext ξ₂ = ξ₁ ⊗ ξ₂ exactly: column 0 has a single unit entry at index 0.
  CHECK(em.v_ext(0, 0) == complexd(1.0));
  for (std::size_t i = 1; i < em.v_ext.rows(); ++i)
    CHECK(std::abs(em.v_ext(i, 0)) == 0.0);

  for (std::size_t i = 0; i < em.sigma.size(); ++i) {
    // Σ_i annihilates ξ₂ exactly.
    for (std::size_t a = 0; a < r + 1; ++a) CHECK(std::abs(em.sigma[i](a, 0)) == 0.0);
    // H₂ corner is the Kraus slice.
    Matrix corner = em.sigma[i].block(1, 1, r, r);
    corner -= m.cp.kraus_slices[i];
    CHECK(max_abs(corner) <= 1e-10);
  }
}

TEST_CASE("single letters reduce to Kraus slices") {
  AkltData m = aklt_model();
  ExtendedModel em = extend_model(m.cp);
  Rng rng(7);
  Matrix t = rng.gaussian_matrix(2, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Matrix got = op_product_eval(em, {matrix_unit(3, i, j)}, t);
      Matrix want = em.sigma[i] * embed_operator(t) * dagger(em.sigma[j]);
      want -= got;
      CHECK(max_abs(want) <= 1e-13);
    }
}

TEST_CASE("operator product equals iteration") {
  std::vector<CpMap> cps;
  cps.push_back(pure_product().cp);
  cps.push_back(aklt_model().cp);
  Matrix rho(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  cps.push_back(product_model(rho).cp);  // multiplicity 2 path
  for (std::uint64_t seed = 1; seed <= 3; ++seed) cps.push_back(random_model(2, 2, seed));

  Rng rng(11);
  for (const CpMap& cp : cps) {
    ExtendedModel em = extend_model(cp);
    for (int rep = 0; rep < 10; ++rep) {
      std::size_t n = 1 + rng.integer(5);
      Word w = random_word(rng, cp.d, n);
      Matrix t = rng.hermitian(cp.r);
      Matrix via_sigma = compress_operator(op_product_eval(em, w, t));
      Matrix via_iter = iterate(cp, w, t);
      via_iter -= via_sigma;
      CHECK(max_abs(via_iter) <= 1e-9);
    }
  }
}

TEST_CASE("triple identity letter contracts to (-1/3)^3") {
  AkltData m = aklt_model();
  ExtendedModel em = extend_model(m.cp);
  std::vector<Matrix> sigma = pauli_basis();
  Word w(3, Matrix::identity(3));
  Matrix got = compress_operator(op_product_eval(em, w, sigma[3]));
  Matrix want = sigma[3];
  want *= complexd(std::pow(-1.0 / 3.0, 3.0));
  want -= got;
  CHECK(max_abs(want) <= 1e-12);
}

TEST_CASE("gamma presentation reproduces the state") {
  AkltData m = aklt_model();
  BoundaryState xi = invariant_functional(m.cp);
  ExtendedModel em = extend_model(m.cp);

  CHECK(std::abs(gamma_n_presentation(em, xi, {}) - complexd(1.0)) <= 1e-12);

  Rng rng(13);
  for (int rep = 0; rep < 8; ++rep) {
    std::size_t n = 1 + rng.integer(3);
    Word w = random_word(rng, 3, n);
    complexd via_gamma = gamma_n_presentation(em, xi, w);
    complexd via_omega = omega_eval(m.cp, xi, w);
    CHECK(std::abs(via_gamma - via_omega) <= 1e-9);
  }

  ProductModelData pm = pure_product();
  BoundaryState xp = invariant_functional(pm.cp);
  ExtendedModel ep = extend_model(pm.cp);
  Matrix a1 = rng.gaussian_matrix(2, 2);
  Matrix a2 = rng.gaussian_matrix(2, 2);
  complexd want = trace(pm.rho0 * a1) * trace(pm.rho0 * a2);
  CHECK(std::abs(gamma_n_presentation(ep, xp, {a1, a2}) - want) <= 1e-12);

  // Mixed product model exercises the multiplicity-2 slices.
  Matrix rho(2, 2);
  rho(0, 0) = 0.7;
  rho(1, 1) = 0.3;
  ProductModelData mm = product_model(rho);
  BoundaryState xm = invariant_functional(mm.cp);
  ExtendedModel emix = extend_model(mm.cp);
  for (int rep = 0; rep < 5; ++rep) {
    Word w = random_word(rng, 2, 1 + rng.integer(3));
    complexd via_gamma = gamma_n_presentation(emix, xm, w);
    complexd via_omega = omega_eval(mm.cp, xm, w);
    CHECK(std::abs(via_gamma - via_omega) <= 1e-9);
  }
}
