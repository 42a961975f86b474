#pragma once

// Fractal-uncertainty numerics: interval sets, exact porosity certification,
// discrete DFT-submatrix norms with power-law fits, the Omega_+-(z) cylinder
// sets for n = 1, and the safe-set check.

#include <optional>

#include "qcat/symplectic.hpp"

namespace qcat {

struct DegenerateSeries : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite union of closed disjoint intervals, kept sorted and normalized.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::pair<double, double>> parts);
  static IntervalSet cantor_middle_thirds(int level);  // iterate C_level in [0,1]

  const std::vector<std::pair<double, double>>& parts() const { return p_; }
  bool empty() const { return p_.empty(); }
  double min() const { return p_.front().first; }
  double max() const { return p_.back().second; }
  bool contains(double x, double tol = 0.0) const;
  IntervalSet union_with(const IntervalSet& o) const;

 private:
  std::vector<std::pair<double, double>> p_;
};

struct PorosityQuery {
  double nu = 0.0;
  double tau0 = 0.0, tau1 = 0.0;
};

/// Result of the dyadic-ladder porosity certification. `porous` is decided
/// exactly (up to 1e-12 slack on gap comparisons) at every ladder length
/// tau0 * 2^k capped at tau1; by scale halving this certifies nu/2-porosity
/// at every length in [tau0, tau1].
struct PorosityResult {
  bool porous = false;
  std::vector<std::pair<double, double>> ladder;  // (length, worst gap ratio)
  std::optional<std::pair<double, double>> witness;  // violating interval
  double worst_ratio = 0.0;  // min over ladder of worst-position gap ratio
};

PorosityResult porosity_check(const IntervalSet& x, const PorosityQuery& q);

/// Worst (minimal over positions) maximal-gap overlap ratio for windows of
/// one fixed length; exact sweep over critical positions.
double porosity_worst_ratio(const IntervalSet& x, double length,
                            std::pair<double, double>* witness = nullptr);

/// Largest singular value of the X_N x Y_N submatrix of the unitary DFT,
/// X_N = { j : j/N in X }.
double discrete_fup_norm(const IntervalSet& x, const IntervalSet& y, long long bigN);
/// Row/column counts of the same submatrix.
std::pair<long long, long long> fup_index_counts(const IntervalSet& x, const IntervalSet& y,
                                                 long long bigN);

/// Least-squares fit norm ~ c N^{-beta}: slope of log norm against log(1/N),
/// with a ~2-sigma confidence band from the residuals.
struct FupFit {
  double beta = 0.0;
  double band = 0.0;
  double intercept = 0.0;
};
FupFit fup_exponent_fit(const std::vector<std::pair<long long, double>>& series);

/// Axis-aligned open box on the torus (per-coordinate intervals mod 1).
struct TorusBox {
  std::vector<std::pair<double, double>> side;  // lo < hi, widths < 1
  bool contains(const std::vector<double>& z, double margin = 0.0) const;
};

/// Query for the Omega_+-(z) sets of the porosity argument, n = 1.
struct OmegaQuery {
  SympIntMatrix a;
  std::vector<int> word;        // digits over {1,2}, length T1
  int sign = +1;                // +1 -> Omega_+, -1 -> Omega_-
  std::vector<double> z;        // base point in T^2
  double c0 = 1.0;
  double rho = 0.55, rho_prime = 0.45;
  std::vector<TorusBox> holes_b1, holes_b2;  // supp b_i = torus minus holes
  double window = 1.0;          // t ranges over [0, window]
};

/// Outer-conservative computation of Omega_{sign}(z) on a t-grid of step
/// h^rho / 16 with one-cell dilation.
IntervalSet omega_set(const OmegaQuery& q, long long bigN);

/// Safe-set check: exact (U nonempty) when the characteristic polynomial is
/// irreducible; otherwise a flagged grid heuristic over translates of T_+-.
struct SafeVerdict {
  bool safe = false;
  bool heuristic = false;
};
SafeVerdict safe_check(const std::vector<TorusBox>& u, const SympIntMatrix& a,
                       const InvariantSpaces& spaces, bool char_poly_irreducible);

}  // namespace qcat
