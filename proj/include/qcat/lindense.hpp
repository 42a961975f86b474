#pragma once

// Dense complex eigen-solvers (LAPACK) and iterative norm / spectral-radius
// estimators used by the experiment drivers.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace qcat {

using CMatL = Eigen::MatrixXcd;
using CVecL = Eigen::VectorXcd;

/// Schur decomposition m = Q T Q^*; returns (Q, diag(T), offdiag_max).
/// For (numerically) normal m the columns of Q are eigenvectors.
struct SchurResult {
  CMatL q;
  CVecL eigenvalues;
  double offdiag_max = 0.0;
};
SchurResult schur_unitary(const CMatL& m);

/// All eigenvalues of a general complex matrix (LAPACK zgeev, no vectors).
CVecL eigenvalues_dense(const CMatL& m);

/// Largest singular value by power iteration on A^* A, where A is given by
/// its action and its adjoint's action. Deterministic start.
double operator_norm_est(long long dim, const std::function<void(const CVecL&, CVecL&)>& apply,
                         const std::function<void(const CVecL&, CVecL&)>& apply_adj,
                         int iters = 120, double tol = 1e-11);

/// Largest singular value of a dense matrix (power iteration wrapper).
double operator_norm_est(const CMatL& m, int iters = 120, double tol = 1e-11);

/// Spectral radius of a general (nonnormal) operator by restarted Arnoldi
/// with a fixed-size Krylov basis. Deterministic start.
double spectral_radius_arnoldi(long long dim,
                               const std::function<void(const CVecL&, CVecL&)>& apply,
                               int subspace = 60, int restarts = 6, double tol = 1e-9);

/// Spectral radius of the product left * right by block subspace iteration
/// with a Rayleigh-Ritz finish; accurate for peripheral spectra where
/// single-vector iteration stalls. GEMM-bound.
double spectral_radius_block(const CMatL& left, const CMatL& right, int block = 48,
                             int iters = 16);

}  // namespace qcat
