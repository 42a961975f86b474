#include "qcat/lindense.hpp"

#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qcat {

SchurResult schur_unitary(const CMatL& m) {
  lapack_int n = lapack_int(m.rows());
  CMatL t = m;  // column-major, overwritten with T
  CMatL q(n, n);
  CVecL w(n);
  lapack_int sdim = 0;
  lapack_int info = LAPACKE_zgees(
      LAPACK_COL_MAJOR, 'V', 'N', nullptr, n,
      reinterpret_cast<lapack_complex_double*>(t.data()), n, &sdim,
      reinterpret_cast<lapack_complex_double*>(w.data()),
      reinterpret_cast<lapack_complex_double*>(q.data()), n);
  if (info != 0) throw std::runtime_error("zgees failed, info=" + std::to_string(info));
  double off = 0.0;
  for (lapack_int j = 0; j < n; j++)
    for (lapack_int i = 0; i < j; i++) off = std::max(off, std::abs(t(i, j)));
  return {std::move(q), std::move(w), off};
}

CVecL eigenvalues_dense(const CMatL& m) {
  lapack_int n = lapack_int(m.rows());
  CMatL a = m;
  CVecL w(n);
  lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n,
                                  reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                  reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
                                  nullptr, 1);
  if (info != 0) throw std::runtime_error("zgeev failed, info=" + std::to_string(info));
  return w;
}

namespace {

// mt19937_64 with raw-bit uniforms: bit-identical across platforms, so
// deterministic runs stay deterministic
double unit_uniform(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1p-53; }

CVecL deterministic_start(long long dim) {
  std::mt19937_64 rng(0x51e95ul);
  CVecL v(dim);
  for (long long i = 0; i < dim; i++)
    v(i) = std::complex<double>(unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5);
  v.normalize();
  return v;
}

}  // namespace

double operator_norm_est(long long dim, const std::function<void(const CVecL&, CVecL&)>& apply,
                         const std::function<void(const CVecL&, CVecL&)>& apply_adj, int iters,
                         double tol) {
  CVecL v = deterministic_start(dim), av(dim), atav(dim);
  double prev = 0.0;
  for (int it = 0; it < iters; it++) {
    apply(v, av);
    apply_adj(av, atav);
    double nn = atav.norm();
    if (nn == 0.0) return 0.0;
    double est = std::sqrt(av.squaredNorm());
    v = atav / nn;
    if (it > 3 && std::abs(est - prev) < tol * std::max(1.0, est)) return est;
    prev = est;
  }
  return prev;
}

double operator_norm_est(const CMatL& m, int iters, double tol) {
  return operator_norm_est(
      m.rows(), [&](const CVecL& x, CVecL& y) { y.noalias() = m * x; },
      [&](const CVecL& x, CVecL& y) { y.noalias() = m.adjoint() * x; }, iters, tol);
}

double spectral_radius_block(const CMatL& left, const CMatL& right, int block, int iters) {
  const long long dim = left.rows();
  int b = int(std::min<long long>(block, dim));
  if (dim <= 600) {
    return eigenvalues_dense(CMatL(left * right)).cwiseAbs().maxCoeff();
  }
  CMatL y(dim, b);
  {
    std::mt19937_64 rng(0xb10cul);
    for (int c = 0; c < b; c++)
      for (long long r = 0; r < dim; r++)
        y(r, c) = std::complex<double>(unit_uniform(rng) - 0.5, unit_uniform(rng) - 0.5);
  }
  for (int it = 0; it < iters; it++) {
    y = left * (right * y).eval();
    Eigen::HouseholderQR<CMatL> qr(y);
    y = qr.householderQ() * CMatL::Identity(dim, b);
  }
  CMatL t = y.adjoint() * (left * (right * y).eval());
  Eigen::ComplexEigenSolver<CMatL> es(t, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius_arnoldi(long long dim, const std::function<void(const CVecL&, CVecL&)>& apply,
                               int subspace, int restarts, double tol) {
  int m = int(std::min<long long>(subspace, dim));
  if (dim <= 400) {
    // small: build the dense matrix column by column and use zgeev
    CMatL a(dim, dim);
    CVecL e = CVecL::Zero(dim), col(dim);
    for (long long j = 0; j < dim; j++) {
      e(j) = 1.0;
      apply(e, col);
      a.col(j) = col;
      e(j) = 0.0;
    }
    return eigenvalues_dense(a).cwiseAbs().maxCoeff();
  }
  CVecL v0 = deterministic_start(dim);
  double best_prev = 0.0;
  for (int cycle = 0; cycle < restarts; cycle++) {
    std::vector<CVecL> v;
    v.reserve(m + 1);
    v.push_back(v0.normalized());
    CMatL h = CMatL::Zero(m + 1, m);
    int k = m;
    CVecL w(dim);
    for (int j = 0; j < m; j++) {
      apply(v[j], w);
      for (int i = 0; i <= j; i++) {
        h(i, j) = v[i].dot(w);
        w -= h(i, j) * v[i];
      }
      // one re-orthogonalization pass keeps the basis clean
      for (int i = 0; i <= j; i++) {
        std::complex<double> c = v[i].dot(w);
        h(i, j) += c;
        w -= c * v[i];
      }
      h(j + 1, j) = w.norm();
      if (std::abs(h(j + 1, j)) < 1e-14) {
        k = j + 1;
        break;
      }
      v.push_back(w / h(j + 1, j));
    }
    CMatL hk = h.topLeftCorner(k, k);
    Eigen::ComplexEigenSolver<CMatL> es(hk, true);
    // restart towards the largest-|theta| Ritz vector
    int arg = 0;
    double best = 0.0;
    for (int i = 0; i < k; i++)
      if (std::abs(es.eigenvalues()(i)) > best) {
        best = std::abs(es.eigenvalues()(i));
        arg = i;
      }
    CVecL y = es.eigenvectors().col(arg);
    CVecL next = CVecL::Zero(dim);
    for (int i = 0; i < k; i++) next += y(i) * v[i];
    v0 = next;
    if (cycle > 0 && std::abs(best - best_prev) < tol * std::max(1.0, best)) return best;
    best_prev = best;
  }
  return best_prev;
}

}  // namespace qcat
