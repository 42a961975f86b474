#pragma once

// The finite quantum model on the torus: spaces H_N(theta) in the e_j^theta
// basis, quantization of trigonometric symbols, quantum translations, Wigner
// matrices and their heatmaps.
//
// Conventions (locked throughout the library):
//   z = (x, xi), w = (y, eta), sigma(z, w) = <xi, y> - <x, eta>, h = 1/(2 pi N);
//   a trig symbol is a(z) = sum_w  coeff(w) * exp(2 pi i sigma(w, z));
//   basis vectors e_j^theta, j in Z_N^n, indexed lexicographically;
//   Op(exp(2 pi i sigma(w, .))) e_j
//     = exp(2 pi i [ <eta, j - theta_x>/N + <y, eta>/(2N) + <theta_xi, l> ]) e_r,
//   where j + y = r + N l with r in Z_N^n.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "qcat/exact.hpp"

namespace qcat {

using cdouble = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

struct NotLatticeCompatible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GridShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameters fixing one space H_N(theta) of dimension N^n.
struct QuantizationParams {
  int n = 1;
  long long N = 1;
  std::vector<Rat> theta;  // representative in Q^{2n}; theta_x = first n entries

  QuantizationParams(int n_, long long N_) : n(n_), N(N_), theta(2 * n_, Rat(0)) {}
  QuantizationParams(int n_, long long N_, std::vector<Rat> th)
      : n(n_), N(N_), theta(std::move(th)) {}

  double h() const { return 1.0 / (2.0 * M_PI * double(N)); }
  long long dim() const {
    long long d = 1;
    for (int i = 0; i < n; i++) d *= N;
    return d;
  }
  bool theta_zero() const {
    for (const auto& t : theta)
      if (t != 0) return false;
    return true;
  }
  bool operator==(const QuantizationParams& o) const {
    return n == o.n && N == o.N && theta == o.theta;
  }

  /// Lexicographic index <-> multi-index in Z_N^n (first coordinate slowest).
  std::vector<long long> unrank(long long idx) const;
  long long rank(const std::vector<long long>& j) const;
};

/// Finitely supported Fourier coefficients on Z^{2n}:
/// a(z) = sum_w coeff[w] e^{2 pi i sigma(w, z)}.
class TrigSymbol {
 public:
  explicit TrigSymbol(int n) : n_(n) {}
  static TrigSymbol constant(int n, cdouble c);
  /// cos(2 pi <k, x>) for a frequency k in Z^n (position-only symbol).
  static TrigSymbol cos_position(int n, const std::vector<long long>& k);
  static TrigSymbol cos_momentum(int n, const std::vector<long long>& k);

  int n() const { return n_; }
  void add(const std::vector<long long>& w, cdouble c);
  const std::map<std::vector<long long>, cdouble>& coeffs() const { return c_; }
  long long max_freq() const;  // max |w|_inf
  double l1_norm() const;      // sum |coeff|, an upper bound for sup |a|
  bool is_real(double tol = 1e-12) const;

  cdouble eval(const std::vector<double>& z) const;  // z = (x, xi) in R^{2n}
  double sup_on_grid(long long points_per_dim) const;

  TrigSymbol operator+(const TrigSymbol& o) const;
  TrigSymbol operator*(const TrigSymbol& o) const;  // pointwise product
  TrigSymbol operator*(cdouble s) const;
  TrigSymbol conj() const;

 private:
  int n_;
  std::map<std::vector<long long>, cdouble> c_;
};

/// Dense operator on H_N(theta) in the e_j^theta basis.
struct OperatorOnH {
  QuantizationParams params;
  CMat m;
};

/// State in H_N(theta); coordinates f_j.
struct StateVector {
  QuantizationParams params;
  CVec v;
  double norm() const { return v.norm(); }
};

/// Quantum translation data: column j carries a phase and maps to row
/// perm[j]; enough to apply U and U^* without materializing matrices.
struct TranslationOp {
  QuantizationParams params;
  std::vector<long long> perm;  // j -> row index
  CVec phase;                    // per-column phase (unit modulus)
  CMat dense() const;
};

/// U_{w/N} restricted to H_N(theta), for integer w; the quantization of the
/// mode exp(2 pi i sigma(w, .)).
TranslationOp mode_translation(const std::vector<long long>& w, const QuantizationParams& p);
OperatorOnH mode_operator(const std::vector<long long>& w, const QuantizationParams& p);

/// Op_{N,theta}(a) = sum_w coeff(w) U_{w/N}.
OperatorOnH quantize(const TrigSymbol& a, const QuantizationParams& p);

/// Quantum translation U_v for v in (1/N) Z^{2n} (throws otherwise).
TranslationOp translation(const std::vector<Rat>& v, const QuantizationParams& p);

/// <Op(a) f, f> evaluated from samples of a on the (1/2N)-grid, by the
/// explicit lattice-sum formula (theta = 0 only). a_values is indexed
/// a_values[rank2N(p)*  (2N)^n + rank2N(q)] = a(p/2N, q/2N).
cdouble grid_quadratic_form(const std::vector<cdouble>& a_values, const StateVector& f);

/// Wigner matrix W(f)_{pq}, p,q in Z_{2N}^n (theta = 0).
struct WignerMatrix {
  QuantizationParams params;
  CMat w;  // (2N)^n x (2N)^n, rows indexed by p, columns by q
  double max_imag() const { return w.imag().cwiseAbs().maxCoeff(); }
};
WignerMatrix wigner(const StateVector& f);

/// Pairing <Op(a) f, f> = (2N)^{-2n} sum_{pq} a(p/2N, q/2N) W_pq.
cdouble wigner_pairing(const WignerMatrix& w, const TrigSymbol& a);

/// log10 of the periodically Gaussian-smoothed Re W, clipped below at
/// (1e-12 * grid max); n = 1 only. sigma_smooth in torus units.
Eigen::MatrixXd wigner_heatmap(const StateVector& f, double sigma_smooth);
Eigen::MatrixXd wigner_heatmap(const WignerMatrix& w, double sigma_smooth);

/// Pointwise samples of a trig symbol on the (1/2N)-grid, in the layout
/// grid_quadratic_form expects.
std::vector<cdouble> sample_symbol_2N(const TrigSymbol& a, const QuantizationParams& p);

/// Kronecker product of operators on factor spaces (theta = 0, same N):
/// quantizes symbols of the form a(z_1) b(z_2) on the joined pair ordering.
OperatorOnH operator_tensor(const OperatorOnH& a, const OperatorOnH& b);

/// Same joining on symbols: a(z) = a1(first n1 pairs) * a2(rest).
TrigSymbol symbol_tensor(const TrigSymbol& a1, const TrigSymbol& a2);

}  // namespace qcat
