#pragma once

// Exact analysis of integer symplectic matrices: symplectic certificate,
// spectral gap data, minimal polynomials and invariant rational subspaces,
// parity vector and the theta quantization condition.

#include <Eigen/Dense>

#include "qcat/exact.hpp"

namespace qcat {

struct NotSquareEven : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotSymplectic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoSpectralGap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// z = (x, xi) block convention; sigma(z, w) = <xi, y> - <x, eta> = z^T J w
/// with J = [[0, -I], [I, 0]].
IntMatrix symplectic_J(int n);

/// Certified integer symplectic matrix (A^T J A = J checked exactly).
class SympIntMatrix {
 public:
  /// Throws NotSquareEven / NotSymplectic.
  static SympIntMatrix verify(const IntMatrix& entries);
  static SympIntMatrix verify(const std::vector<std::vector<long long>>& rows);

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const IntMatrix& mat() const { return a_; }
  const IntMatrix& inv() const { return ainv_; }  // exact inverse, also integer
  std::vector<Int> apply(const std::vector<Int>& v) const { return a_.apply(v); }
  std::vector<Int> apply_inv(const std::vector<Int>& v) const { return ainv_.apply(v); }
  Eigen::MatrixXd dmat() const;

 private:
  SympIntMatrix(IntMatrix a, IntMatrix ainv, int n)
      : a_(std::move(a)), ainv_(std::move(ainv)), n_(n) {}
  IntMatrix a_, ainv_;
  int n_;
};

/// Spectral data under the gap condition: a unique simple real eigenvalue of
/// maximal modulus lambda_+, lambda_- = 1/lambda_+, all other eigenvalues in
/// the open annulus gamma^{-1} < |z| < gamma.
struct SpectralData {
  AlgebraicReal lambda_plus, lambda_minus;  // exact, with isolating intervals
  double gamma = 0.0;                       // sqrt(|lambda_+| * r2), see below
  double r2 = 0.0;                          // max modulus over Spec \ {lambda_+-}, 1 if none
  Eigen::VectorXd e_plus, e_minus;          // eigenvectors with sigma(e_+, e_-) = 1
  Eigen::MatrixXd L_plus, L_minus;          // orthonormal bases (columns) of Range(A - lambda_-+ I)
  std::vector<std::complex<double>> eigenvalues;  // all 2n roots, sorted
};

/// Throws NoSpectralGap if the gap condition fails.
SpectralData spectral_analysis(const SympIntMatrix& a);

/// Minimal polynomials P_+- of lambda_+- (irreducible factors of the
/// characteristic polynomial located by exact sign evaluation on the
/// isolating intervals).
std::pair<IntPolynomial, IntPolynomial> minimal_polys(const SympIntMatrix& a,
                                                      const SpectralData& spec);

/// A-invariant rational subspace; `basis` rows are a reduced-echelon basis,
/// making subspace equality decidable by comparison.
struct RationalSubspace {
  RatMatrix basis;  // dim x 2n, reduced row echelon form
  int dim() const { return basis.rows(); }
  bool operator==(const RationalSubspace& o) const { return basis == o.basis; }
};

struct InvariantSpaces {
  RationalSubspace v_plus, v_minus, v0, v1;
  bool plus_equals_minus = false;  // Galois-conjugate case: V_+ = V_- symplectic
  bool v_pm_symplectic = false;    // sigma nondegenerate on V_+ (= V_-)
  bool v_pm_isotropic = false;     // sigma vanishes on V_+ and on V_-
};

InvariantSpaces invariant_spaces(const SympIntMatrix& a, const IntPolynomial& p_plus,
                                 const IntPolynomial& p_minus);

/// Q(y, eta) = <y, eta> on Z^{2n}, reduced mod 2.
int parity_Q(const std::vector<Int>& w, int n);

/// The unique phi in Z_2^{2n} with Q(A^{-1}w) - Q(w) = sigma(phi, w) mod 2.
std::vector<int> parity_vector(const SympIntMatrix& a);

/// Solution set of (I - A) theta = N phi_A / 2 mod Z^{2n}, described by a
/// particular solution plus torsion generators (order d_i along direction
/// g_i) and free circle directions; all exact.
struct ThetaSolutions {
  bool solvable = false;
  std::vector<Rat> particular;            // representative in [0,1)^{2n}
  std::vector<std::pair<Int, std::vector<Rat>>> torsion;  // (order, direction step)
  std::vector<std::vector<Rat>> free_dirs;                // continuous circle directions
  Int count_finite() const;  // number of solutions if no free directions, else 0

  /// Enumerate up to `cap` solutions (all of them if finite and <= cap),
  /// theta = 0 first whenever it solves the congruence.
  std::vector<std::vector<Rat>> enumerate(size_t cap) const;
};

ThetaSolutions solve_theta(const SympIntMatrix& a, long long bigN);

/// True if theta satisfies the quantization condition for (A, N), exactly.
bool theta_admissible(const SympIntMatrix& a, long long bigN, const std::vector<Rat>& theta);

}  // namespace qcat
