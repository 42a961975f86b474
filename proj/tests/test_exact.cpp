#include "qcat/exact.hpp"

#include "doctest.h"

using namespace qcat;

TEST_CASE("rref and kernel") {
  RatMatrix m(2, 3);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 2) = 3;
  m(1, 0) = 2;
  m(1, 1) = 4;
  m(1, 2) = 6;
  CHECK(row_space(m).rows() == 1);
  RatMatrix k = rational_kernel(m);
  CHECK(k.rows() == 2);
  // every kernel row annihilated
  for (int r = 0; r < k.rows(); r++) {
    Rat s = 0;
    for (int c = 0; c < 3; c++) s += m(0, c) * k(r, c);
    CHECK(s == 0);
  }
}

TEST_CASE("smith normal form small") {
  IntMatrix a = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  SmithForm s = smith_normal_form(a);
  // U A V = D diagonal with divisibility chain
  IntMatrix d2 = s.u * a * s.v;
  CHECK(d2 == s.d);
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      if (i != j) CHECK(s.d(i, j) == 0);
  CHECK(s.d(0, 0) == 2);
  CHECK(s.d(1, 1) == 6);
  CHECK(s.d(2, 2) == 12);  // classic example: diag(2, 6, 12)
}

TEST_CASE("char poly examples") {
  // trace 4, det 1 for the arnold cat family member [[2,3],[1,2]]
  IntMatrix cat = IntMatrix::from_rows({{2, 3}, {1, 2}});
  CHECK(char_poly(cat) == IntPolynomial::from_ll({1, -4, 1}));
  CHECK(char_poly(IntMatrix::identity(2)) == IntPolynomial::from_ll({1, -2, 1}));
  // 4x4 example with irreducible quartic
  IntMatrix a4 = IntMatrix::from_rows(
      {{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 1}, {0, -1, 1, 2}});
  CHECK(char_poly(a4) == IntPolynomial::from_ll({1, -2, 1, -2, 1}));
  CHECK(char_poly(a4).palindromic_up_to_sign());
}

TEST_CASE("factor over Z") {
  auto f1 = factor_over_Z(IntPolynomial::from_ll({1, -4, 1}));
  REQUIRE(f1.factors.size() == 1);
  CHECK(f1.factors[0] == IntPolynomial::from_ll({1, -4, 1}));

  auto f2 = factor_over_Z(IntPolynomial::from_ll({-1, 0, 1}));  // x^2 - 1
  REQUIRE(f2.factors.size() == 2);
  CHECK(f2.factors[0] == IntPolynomial::from_ll({-1, 1}));
  CHECK(f2.factors[1] == IntPolynomial::from_ll({1, 1}));

  // quartic of the block-diagonal example: (x^2-4x+1)(x^2+1)
  auto p = IntPolynomial::from_ll({1, -4, 1}) * IntPolynomial::from_ll({1, 0, 1});
  auto f3 = factor_over_Z(p);
  REQUIRE(f3.factors.size() == 2);
  CHECK(f3.factors[0] == IntPolynomial::from_ll({1, -4, 1}));
  CHECK(f3.factors[1] == IntPolynomial::from_ll({1, 0, 1}));

  // product reconstructs the input exactly
  IntPolynomial prod = IntPolynomial::from_ll({1});
  for (const auto& f : f3.factors) prod = prod * f;
  std::vector<Int> scaled;
  for (const auto& c : prod.coeffs()) scaled.push_back(c * f3.content);
  CHECK(IntPolynomial(scaled) == p);

  CHECK_THROWS_AS(factor_over_Z(IntPolynomial::from_ll({1, 0, 0, 0, 0, 0, 0, 0, 0, 1})),
                  DegreeTooLarge);
}

TEST_CASE("factor with content and non-monic") {
  // 2x^2 - 2 = 2 (x-1)(x+1)
  auto f = factor_over_Z(IntPolynomial::from_ll({-2, 0, 2}));
  CHECK(f.content == 2);
  REQUIRE(f.factors.size() == 2);
  // 2x^2 + 3x + 1 = (2x + 1)(x + 1)
  auto g = factor_over_Z(IntPolynomial::from_ll({1, 3, 2}));
  REQUIRE(g.factors.size() == 2);
}

TEST_CASE("algebraic real refinement") {
  IntPolynomial p = IntPolynomial::from_ll({1, -4, 1});  // roots 2 +- sqrt(3)
  AlgebraicReal a = make_algebraic_real(p, 3.7320508, 3.4);
  CHECK(std::abs(a.approx - (2 + std::sqrt(3.0))) < 1e-14);
  a.refine(Rat(1, Int(1) << 100));
  CHECK(std::abs(a.approx - (2 + std::sqrt(3.0))) < 1e-15);
}

TEST_CASE("poly roots") {
  IntPolynomial p = IntPolynomial::from_ll({1, -2, 1, -2, 1});
  auto roots = poly_roots(p);
  REQUIRE(roots.size() == 4);
  // real roots 1.8832.., 0.5310..; complex pair on the unit circle
  int on_circle = 0, real_cnt = 0;
  for (auto z : roots) {
    if (std::abs(z.imag()) < 1e-9)
      real_cnt++;
    else if (std::abs(std::abs(z) - 1.0) < 1e-9)
      on_circle++;
  }
  CHECK(real_cnt == 2);
  CHECK(on_circle == 2);
}
