#include "qcat/quantize.hpp"

#include <random>

#include "doctest.h"

using namespace qcat;

namespace {

TrigSymbol random_symbol(int n, long long wmax, std::mt19937_64& rng, bool real = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigSymbol a(n);
  std::vector<long long> w(2 * n);
  for (int k = 0; k < 8; k++) {
    for (int i = 0; i < 2 * n; i++) w[i] = std::uniform_int_distribution<long long>(-wmax, wmax)(rng);
    cdouble c{u(rng), u(rng)};
    a.add(w, c);
    if (real) {
      std::vector<long long> mw(w.size());
      for (size_t i = 0; i < w.size(); i++) mw[i] = -w[i];
      a.add(mw, std::conj(c));
    }
  }
  return a;
}

CVec random_state(long long dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(dim);
  for (long long i = 0; i < dim; i++) v(i) = cdouble(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_CASE("mode operator basics") {
  QuantizationParams p(1, 4);
  SUBCASE("w = 0 gives the identity") {
    OperatorOnH op = mode_operator({0, 0}, p);
    CHECK((op.m - CMat::Identity(4, 4)).norm() < 1e-15);
  }
  SUBCASE("w = (0,1): diagonal with phases e^{2 pi i j / N}") {
    OperatorOnH op = mode_operator({0, 1}, p);
    for (int j = 0; j < 4; j++) {
      CHECK(std::abs(op.m(j, j) - std::polar(1.0, 2 * M_PI * j / 4.0)) < 1e-14);
      for (int i = 0; i < 4; i++)
        if (i != j) CHECK(std::abs(op.m(i, j)) == 0.0);
    }
  }
  SUBCASE("w = (1,0) at N = 3: plain cyclic shift") {
    QuantizationParams p3(1, 3);
    OperatorOnH op = mode_operator({1, 0}, p3);
    for (int j = 0; j < 3; j++) CHECK(std::abs(op.m((j + 1) % 3, j) - 1.0) < 1e-14);
  }
}

TEST_CASE("unitarity of modes and translations") {
  for (long long n : {2, 5, 8}) {
    QuantizationParams p(1, n);
    for (long long wy = -3; wy <= 3; wy++)
      for (long long we = -3; we <= 3; we++) {
        CMat u = mode_translation({wy, we}, p).dense();
        CHECK((u.adjoint() * u - CMat::Identity(n, n)).norm() <= 1e-12 * n);
      }
  }
  // general theta as well
  QuantizationParams pt(1, 6, {Rat(1, 3), Rat(2, 7)});
  for (long long wy = -2; wy <= 2; wy++)
    for (long long we = -2; we <= 2; we++) {
      CMat u = mode_translation({wy, we}, pt).dense();
      CHECK((u.adjoint() * u - CMat::Identity(6, 6)).norm() <= 1e-12 * 6);
    }
}

TEST_CASE("quantize basics") {
  QuantizationParams p(1, 6);
  SUBCASE("constant symbol is the identity") {
    OperatorOnH op = quantize(TrigSymbol::constant(1, 1.0), p);
    CHECK((op.m - CMat::Identity(6, 6)).norm() < 1e-14);
  }
  SUBCASE("cos(2 pi x) is diagonal with values cos(2 pi j / N)") {
    OperatorOnH op = quantize(TrigSymbol::cos_position(1, {1}), p);
    for (int j = 0; j < 6; j++)
      CHECK(std::abs(op.m(j, j) - std::cos(2 * M_PI * j / 6.0)) < 1e-14);
    CHECK(op.m.imag().cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("adjoint identity Op(a)* = Op(conj a)") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; t++) {
      TrigSymbol a = random_symbol(1, 3, rng);
      OperatorOnH opa = quantize(a, p);
      OperatorOnH opc = quantize(a.conj(), p);
      CHECK((opa.m.adjoint() - opc.m).norm() <= 1e-12 * a.l1_norm());
    }
  }
}

TEST_CASE("Heisenberg relations for translations") {
  // U_v U_v' = e^{i sigma(v,v')/2h} U_{v+v'} and the commutator form,
  // for v, v' in (1/N)Z^2 with |N v|_inf <= 3
  for (long long n : {4, 7}) {
    QuantizationParams p(1, n);
    for (long long a1 = -3; a1 <= 3; a1++)
      for (long long a2 = -3; a2 <= 3; a2++)
        for (long long b1 = -3; b1 <= 3; b1 += 2)
          for (long long b2 = -3; b2 <= 3; b2 += 3) {
            CMat ua = mode_translation({a1, a2}, p).dense();
            CMat ub = mode_translation({b1, b2}, p).dense();
            CMat uab = mode_translation({a1 + b1, a2 + b2}, p).dense();
            // sigma(v, v') with v = a/N, v' = b/N; 1/(2h) = pi N
            double sg = double(a2 * b1 - a1 * b2) / double(n * n);
            cdouble ph = std::polar(1.0, M_PI * double(n) * sg);
            CHECK((ua * ub - ph * uab).norm() <= 1e-12 * n);
            cdouble phc = std::polar(1.0, 2 * M_PI * double(n) * sg);
            CHECK((ua * ub - phc * ub * ua).norm() <= 1e-12 * n);
          }
  }
}

TEST_CASE("translation requires lattice compatibility") {
  QuantizationParams p(1, 4);
  CHECK_NOTHROW(translation({Rat(1, 4), Rat(0)}, p));
  CHECK_THROWS_AS(translation({Rat(1, 3), Rat(0)}, p), NotLatticeCompatible);
}

TEST_CASE("grid quadratic form matches the operator pairing") {
  std::mt19937_64 rng(11);
  QuantizationParams p(1, 8);
  SUBCASE("a = 1 gives the squared norm") {
    StateVector f{p, random_state(8, rng)};
    auto vals = sample_symbol_2N(TrigSymbol::constant(1, 1.0), p);
    cdouble q = grid_quadratic_form(vals, f);
    CHECK(std::abs(q - cdouble(f.v.squaredNorm())) < 1e-10);
  }
  SUBCASE("random trig symbols, W <= 3") {
    for (int t = 0; t < 6; t++) {
      TrigSymbol a = random_symbol(1, 3, rng);
      StateVector f{p, random_state(8, rng)};
      OperatorOnH op = quantize(a, p);
      cdouble direct = std::conj((op.m * f.v).dot(f.v));  // <Op f, f>
      cdouble viagrid = grid_quadratic_form(sample_symbol_2N(a, p), f);
      CHECK(std::abs(direct - viagrid) < 1e-10 * (1 + a.l1_norm()) * f.v.squaredNorm());
    }
  }
  SUBCASE("shape mismatch is reported") {
    StateVector f{p, random_state(8, rng)};
    CHECK_THROWS_AS(grid_quadratic_form(std::vector<cdouble>(5), f), GridShapeMismatch);
  }
}

TEST_CASE("wigner pairing identity") {
  std::mt19937_64 rng(13);
  for (long long n = 2; n <= 16; n += 7) {
    QuantizationParams p(1, n);
    StateVector f{p, random_state(n, rng)};
    WignerMatrix w = wigner(f);
    for (int t = 0; t < 4; t++) {
      TrigSymbol a = random_symbol(1, 3, rng);
      OperatorOnH op = quantize(a, p);
      cdouble direct = std::conj((op.m * f.v).dot(f.v));
      cdouble viaw = wigner_pairing(w, a);
      CHECK(std::abs(direct - viaw) < 1e-10 * (1 + a.l1_norm()) * f.v.squaredNorm());
    }
  }
}

TEST_CASE("wigner of zero and total mass") {
  QuantizationParams p(1, 2);
  SUBCASE("zero vector gives the zero matrix") {
    StateVector f{p, CVec::Zero(2)};
    CHECK(wigner(f).w.norm() == 0.0);
  }
  SUBCASE("pairing with 1 recovers the squared norm") {
    StateVector f{p, CVec(2)};
    f.v << 1.0, 0.0;  // e_0
    WignerMatrix w = wigner(f);
    cdouble mass = wigner_pairing(w, TrigSymbol::constant(1, 1.0));
    CHECK(std::abs(mass - 1.0) < 1e-12);
  }
}

TEST_CASE("wigner heatmap basics") {
  QuantizationParams p(1, 8);
  SUBCASE("zero vector is the constant floor") {
    StateVector f{p, CVec::Zero(8)};
    Eigen::MatrixXd h = wigner_heatmap(f, 1.0 / 16);
    CHECK(h.maxCoeff() == h.minCoeff());
  }
  SUBCASE("position state concentrates at x = 0") {
    StateVector f{p, CVec::Zero(8)};
    f.v(0) = 1.0;
    Eigen::MatrixXd h = wigner_heatmap(f, 1.0 / 16);
    Eigen::Index r, c;
    h.maxCoeff(&r, &c);
    CHECK((r <= 1 || r >= 15));  // rows index position p; 0 wraps at 2N = 16
  }
}

TEST_CASE("norm bound softness across N") {
  // excess(N) = max(0, ||Op(a)|| - sup|a|) shrinks as N grows
  TrigSymbol a(1);
  a.add({1, 2}, cdouble(0.4, 0.1));
  a.add({-1, -2}, cdouble(0.4, -0.1));
  a.add({2, -1}, cdouble(0.2, -0.3));
  a.add({-2, 1}, cdouble(0.2, 0.3));
  a.add({0, 0}, 0.5);
  double sup = a.sup_on_grid(512);
  double prev_excess = -1;
  for (long long n : {8, 32, 128, 512}) {
    QuantizationParams p(1, n);
    OperatorOnH op = quantize(a, p);
    Eigen::JacobiSVD<CMat> svd(op.m);
    double excess = std::max(0.0, svd.singularValues()(0) - sup);
    if (prev_excess >= 0) CHECK(excess <= 0.9 * prev_excess + 1e-9);
    prev_excess = excess;
  }
}

TEST_CASE("Garding softness: Op of |c|^2 is almost nonnegative") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 3; t++) {
    TrigSymbol c = random_symbol(1, 2, rng);
    TrigSymbol a = c * c.conj();  // pointwise |c|^2 >= 0
    double worst_scaled = 0;
    double c_fit = 0;
    for (long long n : {8, 16, 32, 64}) {
      QuantizationParams p(1, n);
      OperatorOnH op = quantize(a, p);
      CMat herm = 0.5 * (op.m + op.m.adjoint());
      Eigen::SelfAdjointEigenSolver<CMat> es(herm);
      double lam_min = es.eigenvalues()(0);
      if (n == 8) c_fit = std::max(1e-12, -lam_min * double(n));
      worst_scaled = std::max(worst_scaled, -lam_min * double(n));
    }
    // min eigenvalue >= -C/N with C fit at the smallest N and factor-2 slack
    CHECK(worst_scaled <= 2.0 * c_fit + 1e-9);
  }
}

TEST_CASE("operator and symbol tensor products") {
  QuantizationParams p1(1, 5);
  std::mt19937_64 rng(23);
  TrigSymbol a1 = random_symbol(1, 2, rng), a2 = random_symbol(1, 2, rng);
  OperatorOnH o1 = quantize(a1, p1), o2 = quantize(a2, p1);
  OperatorOnH kron = operator_tensor(o1, o2);
  OperatorOnH direct = quantize(symbol_tensor(a1, a2), QuantizationParams(2, 5));
  CHECK((kron.m - direct.m).norm() < 1e-11 * (1 + a1.l1_norm() * a2.l1_norm()));
}
