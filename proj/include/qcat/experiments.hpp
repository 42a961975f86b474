#pragma once

// Finite-N spectral experiments: eigen-decomposition of propagators,
// quasimode residuals, per-cluster mass lower bounds, damped spectra,
// semiclassical-measure pairings, special eigenstates, and the word-operator
// machinery (conjugation, controlled/uncontrolled partitions, decay norms).

#include <optional>

#include "qcat/lindense.hpp"
#include "qcat/propagator.hpp"

namespace qcat {

struct NonUnitaryInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroVector : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct T0Zero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WordBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigen-decomposition of a unitary propagator via Schur (orthonormal vector
/// matrix by construction), with eigenvalues grouped into clusters by
/// single-linkage on unit-circle arc distance.
struct EigenSystem {
  QuantizationParams params;
  CVec eigenvalues;                     // sorted by angle in [0, 2 pi)
  CMat vectors;                         // columns, same order
  std::vector<std::vector<int>> clusters;
  double residual = 0.0;                // || M V - V diag ||_max proxy (Schur offdiag)
  double unit_modulus_defect = 0.0;     // max | |lambda| - 1 |
};

EigenSystem eigendecompose(const Propagator& m, double cluster_tol = 1e-7);

/// Signed arc distance between two angles, in (-pi, pi].
double angle_dist(double a, double b);

/// min over unit z of || M u - z u ||, in closed form.
double quasimode_residual(const Propagator& m, const CVec& u);

/// Per-cluster minimum of || Op(a) u || over unit u in the cluster span
/// (smallest singular value of Op(a) * V_cluster), and the global minimum.
struct MassProfile {
  std::vector<cdouble> cluster_eigenvalue;  // representative per cluster
  std::vector<int> cluster_size;
  std::vector<double> min_mass;
  double global_min = 0.0;
};
MassProfile mass_profile(const EigenSystem& e, const OperatorOnH& op_a);

/// Eigenvalues of Op(b) M and the spectral radius (dense solve).
struct DampedSpectrum {
  CVec eigenvalues;
  double radius = 0.0;
};
DampedSpectrum damped_spectrum(const OperatorOnH& op_b, const Propagator& m);

/// Spectral radius of Op(b) M by restarted Arnoldi (matrix products stay
/// implicit); cross-checked against damped_spectrum in the tests.
double damped_radius(const OperatorOnH& op_b, const Propagator& m);

/// <Op(a) u, u> for each symbol.
std::vector<cdouble> measure_pairings(const StateVector& u, const std::vector<TrigSymbol>& symbols);

/// The Gaussian theta-series state f_N (theta = 0), an eigenvector of the
/// DFT propagator; terms below 1e-18 are dropped.
StateVector gaussian_state(const QuantizationParams& p);

/// (e_0, uniform) pair; eigenvectors of L(B)-type propagators.
std::pair<StateVector, StateVector> block_eigenvectors(const QuantizationParams& p);

/// L(T) = M^{-T} L M^T.
OperatorOnH conjugated(const OperatorOnH& l, const Propagator& m, int t);

/// Propagation times for the word decomposition. The floor formula gives
/// T0 = floor(rho log N / (J log |lambda_+|)); at desk-scale N this is often
/// zero, so free_time overrides T1 directly (T0 = T1 / J).
struct PropagationPlan {
  double rho = 0.55, rho_prime = 0.3, alpha = 0.25;
  int j_blocks = 3;
  double gamma = 0.0, lambda_plus = 0.0;
  int t0 = 0, t1 = 0;
  bool constraints_ok = false;  // the strict inequalities on (rho, rho', J)

  static PropagationPlan make(double rho, double rho_prime, int j_blocks, double alpha,
                              long long bigN, const SpectralData& spec,
                              std::optional<int> free_time = std::nullopt);
};

/// Binary words over {1, 2}; digit-1 proportion F.
double digit_one_proportion(const std::vector<int>& word);

/// Partition of length-T0 words into controlled (F >= alpha) and their
/// complement, and the induced X/Y split of {1,2}^{2 T1}.
struct WordPartition {
  std::vector<std::vector<int>> z;           // controlled short words
  std::vector<std::vector<int>> complement;  // W(T0) \ Z
  Int size_x;                                // |complement|^{2J}
  Int size_y;                                // 2^{2T1} - |X|
  std::vector<std::vector<int>> enumerate_x(size_t cap) const;
  int t0 = 0, two_j = 0;
};
WordPartition word_partition(const PropagationPlan& plan);

struct WordContext {
  TrigSymbol b1, b2;
  OperatorOnH op_b1, op_b2, op_b;  // B = B1 + B2
  const Propagator* m = nullptr;
  PropagationPlan plan;

  static WordContext make(const TrigSymbol& b1, const TrigSymbol& b2, const Propagator& m,
                          const PropagationPlan& plan);
};

/// B_w = B_{w_{m-1}}(m-1) ... B_{w_0}(0) for a word over {1,2}.
OperatorOnH word_operator(const std::vector<int>& word, const WordContext& ctx);

/// Norms of the uncontrolled/controlled sums and the decomposition identity
/// residual || B_X + B_Y - M^{-(2T1-1)} (B M)^{2T1-1} B ||.
struct WordDecay {
  double norm_bx = 0.0, norm_by = 0.0;
  double identity_residual = 0.0;  // NaN in the matrix-free path
  Int size_x;
};

/// Dense path (materializes B_X and B_Y independently; dim <= ~1500).
WordDecay word_decay_dense(const WordContext& ctx);

/// Matrix-free path: norms by power iteration on implicit products; the
/// identity residual is probed on random vectors instead of in norm.
WordDecay word_decay_matfree(const WordContext& ctx, int probe_vectors = 4);

/// Fejer-smoothed indicator of [-halfwidth, halfwidth] on the circle: the
/// degree-`degree` truncation lies in [0, 1] exactly (convolution of a
/// 0/1 function with the nonnegative Fejer kernel).
TrigSymbol fejer_interval(double halfwidth, int degree);

/// Separable bump prod_i chi(z_i) over all 2n torus coordinates, with chi
/// the Fejer-smoothed interval; values in [0, 1], concentrated in the
/// halfwidth-box around the origin.
TrigSymbol box_bump(int n, double halfwidth, int degree = 8);

/// Built-in damping of the Figure-2 experiments: b = 1 - box_bump, so
/// |b| <= 1 exactly and the damping concentrates inside the 1/4-box.
TrigSymbol damping_symbol(int n, int degree = 8, double halfwidth = 0.22);

/// The quantization of a separable symbol prod_i a_i(z_i) as a Kronecker
/// product of one-pair quantizations (theta = 0).
OperatorOnH quantize_box_bump(int n, double halfwidth, int degree, long long bigN);

/// Older cosine-power bump prod_i ((1 + cos 2 pi z_i)/2)^degree (narrower,
/// used by the mass-profile tests).
TrigSymbol cosine_bump(int n, int degree = 8);
/// One-dimensional bump in position only: ((1 + cos 2 pi x_1)/2)^degree.
TrigSymbol cosine_bump_position(int n, int degree = 8);

}  // namespace qcat
