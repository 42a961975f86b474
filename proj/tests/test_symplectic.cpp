#include "qcat/symplectic.hpp"

#include "doctest.h"

using namespace qcat;

namespace {

const std::vector<std::vector<long long>> kCat = {{2, 3}, {1, 2}};
const std::vector<std::vector<long long>> kA1 = {
    {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 1}, {0, -1, 1, 2}};
// [[2,3],[1,2]] (+) F, interleaved pair ordering z = (x1, x2, xi1, xi2)
const std::vector<std::vector<long long>> kA2 = {
    {2, 0, 3, 0}, {0, 0, 0, 1}, {1, 0, 2, 0}, {0, -1, 0, 0}};
// isotropic case: L_B with the cubic B = [[0,1,0],[0,0,1],[1,1,0]],
// lower-right block B^{-T}
const std::vector<std::vector<long long>> kIso = {
    {0, 1, 0, 0, 0, 0},  {0, 0, 1, 0, 0, 0},  {1, 1, 0, 0, 0, 0},
    {0, 0, 0, -1, 1, 0}, {0, 0, 0, 0, 0, 1},  {0, 0, 0, 1, 0, 0}};

}  // namespace

TEST_CASE("verify symplectic") {
  CHECK_NOTHROW(SympIntMatrix::verify(IntMatrix::identity(2)));
  CHECK_NOTHROW(SympIntMatrix::verify(kCat));
  CHECK_THROWS_AS(SympIntMatrix::verify({{2, 0}, {0, 1}}), NotSymplectic);
  CHECK_THROWS_AS(SympIntMatrix::verify({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), NotSquareEven);
  CHECK_NOTHROW(SympIntMatrix::verify(kA1));
  CHECK_NOTHROW(SympIntMatrix::verify(kA2));
  // B^{-T} of the cubic B: check the direct-sum build is symplectic
  auto iso = SympIntMatrix::verify(kIso);
  CHECK(iso.n() == 3);
}

TEST_CASE("spectral analysis cat") {
  auto a = SympIntMatrix::verify(kCat);
  SpectralData s = spectral_analysis(a);
  CHECK(s.lambda_plus.approx == doctest::Approx(2 + std::sqrt(3.0)).epsilon(1e-12));
  CHECK(s.lambda_minus.approx == doctest::Approx(2 - std::sqrt(3.0)).epsilon(1e-12));
  // sigma(e_+, e_-) = 1
  int n = 1;
  double sg = s.e_plus(n) * s.e_minus(0) - s.e_plus(0) * s.e_minus(n);
  CHECK(sg == doctest::Approx(1.0).epsilon(1e-12));
  // eigenvector residuals
  Eigen::MatrixXd ad = a.dmat();
  CHECK((ad * s.e_plus - s.lambda_plus.approx * s.e_plus).cwiseAbs().maxCoeff() <=
        1e-12 * ad.cwiseAbs().maxCoeff() * s.e_plus.cwiseAbs().maxCoeff() * 10);
  // gamma = sqrt(lambda_+ * 1) for n = 1
  CHECK(s.gamma == doctest::Approx(std::sqrt(2 + std::sqrt(3.0))).epsilon(1e-9));
}

TEST_CASE("spectral analysis gap failures") {
  CHECK_THROWS_AS(spectral_analysis(SympIntMatrix::verify(IntMatrix::identity(2))),
                  NoSpectralGap);
  // F has eigenvalues +-i, no real leading eigenvalue
  CHECK_THROWS_AS(spectral_analysis(SympIntMatrix::verify({{0, 1}, {-1, 0}})), NoSpectralGap);
}

TEST_CASE("spectral analysis A1 quartic") {
  auto a = SympIntMatrix::verify(kA1);
  SpectralData s = spectral_analysis(a);
  CHECK(s.lambda_plus.approx == doctest::Approx(1.8832035059).epsilon(1e-8));
  CHECK(s.r2 == doctest::Approx(1.0).epsilon(1e-9));  // complex pair on the unit circle
  auto [pp, pm] = minimal_polys(a, s);
  CHECK(pp == char_poly(a.mat()));  // irreducible quartic
  CHECK(pp == pm);
}

TEST_CASE("minimal polys isotropic case") {
  auto a = SympIntMatrix::verify(kIso);
  SpectralData s = spectral_analysis(a);
  auto [pp, pm] = minimal_polys(a, s);
  CHECK(pp.degree() == 3);
  CHECK(pm.degree() == 3);
  CHECK(!(pp == pm));
  CHECK(pp == IntPolynomial::from_ll({-1, -1, 0, 1}));  // x^3 - x - 1
  CHECK(pm == IntPolynomial::from_ll({-1, 0, 1, 1}));   // its reversal x^3 + x^2 - 1
  CHECK(pm == pp.reversal());
}

TEST_CASE("invariant spaces") {
  SUBCASE("cat: V = Q^2") {
    auto a = SympIntMatrix::verify(kCat);
    auto s = spectral_analysis(a);
    auto [pp, pm] = minimal_polys(a, s);
    auto inv = invariant_spaces(a, pp, pm);
    CHECK(inv.v_plus.dim() == 2);
    CHECK(inv.v_plus == inv.v_minus);
    CHECK(inv.plus_equals_minus);
    CHECK(inv.v_pm_symplectic);
    CHECK(inv.v1.dim() == 0);
  }
  SUBCASE("A2: dim V = 2, V1 complementary symplectic plane") {
    auto a = SympIntMatrix::verify(kA2);
    auto s = spectral_analysis(a);
    auto [pp, pm] = minimal_polys(a, s);
    CHECK(pp == IntPolynomial::from_ll({1, -4, 1}));
    CHECK(pp == pm);
    auto inv = invariant_spaces(a, pp, pm);
    CHECK(inv.v_plus.dim() == 2);
    CHECK(inv.v_plus == inv.v_minus);
    CHECK(inv.v_pm_symplectic);
    CHECK(inv.v0.dim() == 2);
    CHECK(inv.v1.dim() == 2);
    // V+ = span{(1,0,0,0),(0,0,1,0)}: the (x1, xi1) plane
    CHECK(inv.v_plus.basis(0, 0) == 1);
    CHECK(inv.v_plus.basis(0, 2) == 0);
    CHECK(inv.v_plus.basis(1, 2) == 1);
  }
  SUBCASE("isotropic: V+ = {xi=0}, V- = {x=0}") {
    auto a = SympIntMatrix::verify(kIso);
    auto s = spectral_analysis(a);
    auto [pp, pm] = minimal_polys(a, s);
    auto inv = invariant_spaces(a, pp, pm);
    CHECK(inv.v_plus.dim() == 3);
    CHECK(inv.v_minus.dim() == 3);
    CHECK(!inv.plus_equals_minus);
    CHECK(inv.v_pm_isotropic);
    CHECK(inv.v0.dim() == 6);
    CHECK(inv.v1.dim() == 0);
    // V+ spanned by x-coordinates only
    for (int r = 0; r < 3; r++)
      for (int c = 3; c < 6; c++) CHECK(inv.v_plus.basis(r, c) == 0);
    for (int r = 0; r < 3; r++)
      for (int c = 0; c < 3; c++) CHECK(inv.v_minus.basis(r, c) == 0);
  }
}

TEST_CASE("dim V equals deg P") {
  for (const auto& rows : {kCat, kA1, kA2}) {
    auto a = SympIntMatrix::verify(rows);
    auto s = spectral_analysis(a);
    auto [pp, pm] = minimal_polys(a, s);
    auto inv = invariant_spaces(a, pp, pm);
    CHECK(inv.v_plus.dim() == pp.degree());
    CHECK(inv.v_minus.dim() == pm.degree());
  }
}

TEST_CASE("parity vector") {
  auto phi_cat = parity_vector(SympIntMatrix::verify(kCat));
  CHECK(phi_cat == std::vector<int>{0, 0});
  auto phi_f = parity_vector(SympIntMatrix::verify({{0, 1}, {-1, 0}}));
  CHECK(phi_f == std::vector<int>{0, 0});
  auto phi_s = parity_vector(SympIntMatrix::verify({{1, 0}, {1, 1}}));
  CHECK(phi_s == std::vector<int>{0, 1});
}

TEST_CASE("parity relation on a box of lattice vectors") {
  for (const auto& rows : {kCat, kA2}) {
    auto a = SympIntMatrix::verify(rows);
    auto phi = parity_vector(a);
    int n = a.n(), d = a.dim();
    std::vector<Int> w(d);
    for (int trial = 0; trial < 200; trial++) {
      for (int i = 0; i < d; i++) w[i] = (trial * 131 + i * 37) % 7 - 3;
      Int sp = 0;
      for (int t = 0; t < n; t++) sp += Int(phi[n + t]) * w[t] - Int(phi[t]) * w[n + t];
      int lhs = (parity_Q(a.apply_inv(w), n) - parity_Q(w, n) + 4) % 2;
      CHECK(lhs == int(((sp % 2) + 2) % 2));
    }
  }
}

TEST_CASE("solve theta") {
  SUBCASE("even N always contains zero") {
    for (const auto& rows : {kCat, kA1, kA2}) {
      auto a = SympIntMatrix::verify(rows);
      auto sol = solve_theta(a, 60);
      REQUIRE(sol.solvable);
      auto th = sol.enumerate(16);
      REQUIRE(!th.empty());
      for (const auto& x : th[0]) CHECK(x == 0);
    }
  }
  SUBCASE("cat at odd N: phi = 0 so zero still works") {
    auto a = SympIntMatrix::verify(kCat);
    auto sol = solve_theta(a, 781);
    REQUIRE(sol.solvable);
    auto th = sol.enumerate(8);
    REQUIRE(!th.empty());
    for (const auto& x : th[0]) CHECK(x == 0);
  }
  SUBCASE("S_B at odd N needs a half-integer shift") {
    auto a = SympIntMatrix::verify({{1, 0}, {1, 1}});
    auto sol = solve_theta(a, 5);
    REQUIRE(sol.solvable);
    auto th = sol.enumerate(64);
    REQUIRE(!th.empty());
    for (const auto& t : th) {
      CHECK(theta_admissible(a, 5, t));
      bool zero = true;
      for (const auto& x : t) zero = zero && x == 0;
      CHECK(!zero);  // (I-A)0 = 0 != (0, 5/2) mod 1
    }
  }
  SUBCASE("exactness of every enumerated solution") {
    for (long long n : {4, 7, 12}) {
      auto a = SympIntMatrix::verify(kCat);
      auto sol = solve_theta(a, n);
      for (const auto& t : sol.enumerate(32)) CHECK(theta_admissible(a, n, t));
    }
  }
}
