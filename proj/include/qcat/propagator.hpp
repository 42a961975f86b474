#pragma once

// Quantum cat map propagators M_{N,theta}: explicit generator formulas,
// generator words with exact integer targets, the SL(2,Z) Euclidean
// factorization, and a matrix-free intertwiner solver. Exact Egorov holds by
// construction and is measured by the residual helpers.

#include <memory>
#include <string>
#include <variant>

#include "qcat/quantize.hpp"
#include "qcat/symplectic.hpp"

namespace qcat {

struct OddNForSB : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateIntertwiner : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One generator of Sp(2n,Z): S(B) with B symmetric, L(E) with |det E| = 1,
/// or the symplectic rotation F.
struct GeneratorToken {
  enum class Kind { S, L, F } kind;
  IntMatrix block;  // B for S, E for L, unused for F

  static GeneratorToken S(const IntMatrix& b);
  static GeneratorToken L(const IntMatrix& e);
  static GeneratorToken F();

  /// The 2n x 2n symplectic matrix of this token.
  IntMatrix symplectic(int n) const;
  std::string to_string() const;
};

/// Ordered token list whose exact integer product is `target`.
struct GeneratorWord {
  std::vector<GeneratorToken> tokens;
  SympIntMatrix target;

  static GeneratorWord from_tokens(std::vector<GeneratorToken> tokens, int n);
};

/// Unitary propagator on H_N(theta) quantizing the matrix A.
struct Propagator {
  QuantizationParams params;
  CMat m;
  SympIntMatrix a;
  std::string provenance;  // "word" | "intertwiner" | "tensor"

  CVec apply(const CVec& x) const { return m * x; }
  CVec apply_inv(const CVec& x) const { return m.adjoint() * x; }
};

/// Quantization of a single generator (theta = 0; N even required for S(B)).
OperatorOnH generator_matrix(const GeneratorToken& t, const QuantizationParams& p);

/// Ordered product of the generator quantizations (theta = 0).
Propagator word_propagator(const GeneratorWord& word, const QuantizationParams& p);

/// Euclidean factorization of a 2x2 integer symplectic matrix into S/F
/// tokens (L(-I) realized as F^2).
GeneratorWord factor_sl2(const SympIntMatrix& a);

/// Tensor product of propagators for interleaved block-diagonal targets:
/// the result quantizes A = Bsymp (+) Csymp acting on separate symplectic
/// pairs, on H with n = na + nb, same N.
Propagator propagator_tensor(const Propagator& pa, const Propagator& pb);

/// Interleaved direct sum of symplectic matrices (first block's pairs come
/// first in the x- and xi-coordinate groups).
IntMatrix symplectic_direct_sum(const IntMatrix& a, const IntMatrix& b);

/// Matrix-free intertwiner solve: the unique (up to phase) unitary M with
/// U_{A e_k / N} M = M U_{e_k / N} for k = 1..2n, computed by cyclic group
/// averaging over the commuting family X -> V_k^* X U_k; never materializes
/// the N^{2n} x N^{2n} quadratic form. Phase-normalized so the
/// largest-modulus entry (first such, column-major) is real positive.
Propagator intertwiner_solve(const SympIntMatrix& a, const QuantizationParams& p,
                             double tol = 1e-8);

/// Pullback a -> a o A on Fourier coefficients (exact index arithmetic).
TrigSymbol symbol_pullback(const TrigSymbol& a, const SympIntMatrix& A);

/// || M^{-1} Op(a) M - Op(a o A) ||, operator norm.
double egorov_residual(const Propagator& m, const TrigSymbol& a);

/// Frobenius upper bound of the single-mode Egorov defect
/// || U_{w/N} M - M U_{A^{-1}w/N} ||_F in one cache-friendly pass.
double egorov_mode_residual_fro(const Propagator& m, const std::vector<long long>& w);

/// Worst egorov_mode_residual_fro over |w|_inf <= wmax (uses the w <-> -w
/// symmetry of the defect).
double egorov_residual_box(const Propagator& m, long long wmax);

/// Rotate by a unit scalar so that the first largest-modulus entry is real
/// positive.
void normalize_phase(CMat& m);

/// min over unit phi of || m1 - e^{i phi} m2 ||_F.
double phase_distance(const CMat& m1, const CMat& m2);

}  // namespace qcat
