#include "qcat/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcat {

IntMatrix symplectic_J(int n) {
  IntMatrix j(2 * n, 2 * n);
  for (int i = 0; i < n; i++) {
    j(i, n + i) = -1;
    j(n + i, i) = 1;
  }
  return j;
}

SympIntMatrix SympIntMatrix::verify(const IntMatrix& entries) {
  int d = entries.rows();
  if (d == 0 || d != entries.cols() || d % 2 != 0)
    throw NotSquareEven("matrix must be square of even size, got " + std::to_string(entries.rows()) +
                        "x" + std::to_string(entries.cols()));
  int n = d / 2;
  IntMatrix j = symplectic_J(n);
  IntMatrix g = entries.transpose() * j * entries;
  for (int r = 0; r < d; r++)
    for (int c = 0; c < d; c++)
      if (g(r, c) != j(r, c)) {
        std::ostringstream os;
        os << "not symplectic: sigma(A e_" << r << ", A e_" << c << ") = " << g(r, c)
           << ", expected " << j(r, c);
        throw NotSymplectic(os.str());
      }
  // A^T J A = J gives det(A)^2 = 1; symplectic matrices have det exactly 1,
  // and A^{-1} = J^{-1} A^T J is again an integer matrix.
  IntMatrix jinv = j.transpose();  // J^{-1} = -J = J^T
  IntMatrix ainv = jinv * entries.transpose() * j;
  IntMatrix prod = ainv * entries;
  if (!(prod == IntMatrix::identity(d))) throw NotSymplectic("A^{-1} A != I (determinant -1?)");
  return SympIntMatrix(entries, ainv, n);
}

SympIntMatrix SympIntMatrix::verify(const std::vector<std::vector<long long>>& rows) {
  return verify(IntMatrix::from_rows(rows));
}

Eigen::MatrixXd SympIntMatrix::dmat() const {
  Eigen::MatrixXd m(dim(), dim());
  for (int i = 0; i < dim(); i++)
    for (int j = 0; j < dim(); j++) m(i, j) = double(a_(i, j));
  return m;
}

namespace {

double sigma_form(const Eigen::VectorXd& z, const Eigen::VectorXd& w) {
  int n = int(z.size()) / 2;
  return z.tail(n).dot(w.head(n)) - z.head(n).dot(w.tail(n));
}

Eigen::VectorXd eigenvector_of(const Eigen::MatrixXd& a, double lambda) {
  int d = int(a.rows());
  Eigen::MatrixXd shifted = a - lambda * Eigen::MatrixXd::Identity(d, d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(d - 1);
  // one step of inverse iteration to polish
  Eigen::VectorXd w = (shifted + 1e-14 * Eigen::MatrixXd::Identity(d, d)).fullPivLu().solve(v);
  if (w.norm() > 1e-12) v = w.normalized();
  return v;
}

}  // namespace

SpectralData spectral_analysis(const SympIntMatrix& a) {
  IntPolynomial p = char_poly(a.mat());
  auto roots = poly_roots(p);
  // locate the maximal modulus and check uniqueness/simplicity/realness
  double rmax = 0;
  for (auto z : roots) rmax = std::max(rmax, std::abs(z));
  std::vector<int> top;
  for (int i = 0; i < int(roots.size()); i++)
    if (std::abs(roots[i]) > rmax * (1 - 1e-9)) top.push_back(i);
  if (top.size() != 1)
    throw NoSpectralGap("largest modulus attained by " + std::to_string(top.size()) +
                        " eigenvalues");
  std::complex<double> lp = roots[top[0]];
  if (std::abs(lp.imag()) > 1e-9 * rmax)
    throw NoSpectralGap("leading eigenvalue is not real");
  if (std::abs(lp) <= 1 + 1e-9) throw NoSpectralGap("|lambda_+| <= 1 (no hyperbolic direction)");

  SpectralData s;
  s.eigenvalues = roots;
  double lam = lp.real();
  double lam_m = 1.0 / lam;
  // r2: largest modulus among Spec \ {lambda_+, lambda_-}; 1 if that set is
  // empty (n = 1). The annulus condition needs gamma > r2 and the paper needs
  // gamma < |lambda_+|; the geometric mean maximizes slack.
  double r2 = 1.0;
  {
    int skip_p = top[0], skip_m = -1;
    double best = 1e300;
    for (int i = 0; i < int(roots.size()); i++) {
      if (i == skip_p) continue;
      double d = std::abs(roots[i] - std::complex<double>(lam_m, 0));
      if (d < best) {
        best = d;
        skip_m = i;
      }
    }
    for (int i = 0; i < int(roots.size()); i++) {
      if (i == skip_p || i == skip_m) continue;
      r2 = std::max(r2, std::abs(roots[i]));
    }
  }
  s.r2 = r2;
  s.gamma = std::sqrt(std::abs(lam) * r2);
  if (!(s.gamma < std::abs(lam)))
    throw NoSpectralGap("middle spectrum reaches |lambda_+|: gap condition fails");

  // exact minimal-polynomial representation of lambda_+-
  auto fac = factor_over_Z(p);
  double sep = 1e300;
  for (int i = 0; i < int(roots.size()); i++)
    if (i != top[0]) sep = std::min(sep, std::abs(roots[i] - lp));
  const IntPolynomial* pplus = nullptr;
  const IntPolynomial* pminus = nullptr;
  for (const auto& f : fac.factors) {
    if (std::abs(f.eval(std::complex<double>(lam, 0))) < 1e-6 * std::abs(lam)) {
      // confirm by sign change
      double d2 = std::max(1e-9, sep / 4);
      Rat lo = rat_from_double_dyadic(lam - d2);
      Rat hi = rat_from_double_dyadic(lam + d2);
      Rat flo = f.eval(lo), fhi = f.eval(hi);
      if (flo == 0 || fhi == 0 || (flo < 0) != (fhi < 0)) pplus = &f;
    }
  }
  double sep_m = 1e300;
  for (auto z : roots)
    if (std::abs(z - std::complex<double>(lam_m, 0)) > 1e-12)
      sep_m = std::min(sep_m, std::abs(z - std::complex<double>(lam_m, 0)));
  for (const auto& f : fac.factors) {
    double d2 = std::max(1e-9, sep_m / 4);
    Rat lo = rat_from_double_dyadic(lam_m - d2);
    Rat hi = rat_from_double_dyadic(lam_m + d2);
    Rat flo = f.eval(lo), fhi = f.eval(hi);
    if (flo != 0 && fhi != 0 && (flo < 0) != (fhi < 0)) pminus = &f;
  }
  if (!pplus || !pminus) throw NoSpectralGap("failed to isolate lambda_+- in an irreducible factor");
  s.lambda_plus = make_algebraic_real(*pplus, lam, sep);
  s.lambda_minus = make_algebraic_real(*pminus, lam_m, sep_m);

  // eigenvectors, normalized so sigma(e_+, e_-) = 1
  Eigen::MatrixXd ad = a.dmat();
  s.e_plus = eigenvector_of(ad, s.lambda_plus.approx);
  s.e_minus = eigenvector_of(ad, s.lambda_minus.approx);
  double sg = sigma_form(s.e_plus, s.e_minus);
  if (std::abs(sg) < 1e-10)
    throw NoSpectralGap("sigma(e_+, e_-) ~ 0: eigenvector pairing degenerate");
  s.e_minus /= sg;

  // L_-+ = Range(A - lambda_+- I): the first 2n-1 left singular vectors
  auto range_basis = [&](double lambda) {
    Eigen::MatrixXd sh = ad - lambda * Eigen::MatrixXd::Identity(ad.rows(), ad.cols());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sh, Eigen::ComputeFullU);
    return Eigen::MatrixXd(svd.matrixU().leftCols(ad.rows() - 1));
  };
  s.L_minus = range_basis(s.lambda_plus.approx);
  s.L_plus = range_basis(s.lambda_minus.approx);
  return s;
}

std::pair<IntPolynomial, IntPolynomial> minimal_polys(const SympIntMatrix& a,
                                                      const SpectralData& spec) {
  (void)a;
  return {spec.lambda_plus.minpoly, spec.lambda_minus.minpoly};
}

namespace {

// rows of `basis` span an A-invariant subspace: evaluate p(A) and take the
// exact rational kernel
RatMatrix poly_at_matrix(const IntPolynomial& p, const IntMatrix& a) {
  int d = a.rows();
  IntMatrix acc(d, d);
  IntMatrix pw = IntMatrix::identity(d);
  for (int k = 0; k <= p.degree(); k++) {
    if (k > 0) pw = pw * a;
    if (p[k] != 0) acc = acc + pw * p[k];
  }
  return RatMatrix(acc);
}

RatMatrix stack(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix r(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); i++)
    for (int j = 0; j < a.cols(); j++) r(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); i++)
    for (int j = 0; j < b.cols(); j++) r(a.rows() + i, j) = b(i, j);
  return r;
}

// Gram matrix of sigma restricted to the row span of basis
RatMatrix sigma_gram(const RatMatrix& basis, int n) {
  int k = basis.rows();
  RatMatrix g(k, k);
  for (int i = 0; i < k; i++)
    for (int j = 0; j < k; j++) {
      Rat s = 0;
      for (int t = 0; t < n; t++)
        s += basis(i, n + t) * basis(j, t) - basis(i, t) * basis(j, n + t);
      g(i, j) = s;
    }
  return g;
}

}  // namespace

InvariantSpaces invariant_spaces(const SympIntMatrix& a, const IntPolynomial& p_plus,
                                 const IntPolynomial& p_minus) {
  InvariantSpaces out;
  out.v_plus.basis = rational_kernel(poly_at_matrix(p_plus, a.mat()));
  out.v_minus.basis = rational_kernel(poly_at_matrix(p_minus, a.mat()));
  out.v0.basis = row_space(stack(out.v_plus.basis, out.v_minus.basis));
  // V1 = V0^{perp sigma}: kernel of the map w -> (sigma(v_i, w))_i
  int n = a.n();
  const RatMatrix& b = out.v0.basis;
  RatMatrix m(b.rows(), 2 * n);
  for (int i = 0; i < b.rows(); i++)
    for (int t = 0; t < n; t++) {
      m(i, t) = b(i, n + t);    // sigma(v, w) = sum_t v_xi[t] w_y[t] - v_x[t] w_eta[t]
      m(i, n + t) = -b(i, t);
    }
  out.v1.basis = rational_kernel(m);

  out.plus_equals_minus = (p_plus == p_minus);
  RatMatrix gp = sigma_gram(out.v_plus.basis, n);
  RatMatrix gm = sigma_gram(out.v_minus.basis, n);
  auto all_zero = [](const RatMatrix& g) {
    for (int i = 0; i < g.rows(); i++)
      for (int j = 0; j < g.cols(); j++)
        if (g(i, j) != 0) return false;
    return true;
  };
  auto nondegenerate = [](RatMatrix g) { return g.rref() == g.rows(); };
  out.v_pm_isotropic = all_zero(gp) && all_zero(gm);
  out.v_pm_symplectic = nondegenerate(gp);
  return out;
}

int parity_Q(const std::vector<Int>& w, int n) {
  Int q = 0;
  for (int i = 0; i < n; i++) q += w[i] * w[n + i];
  return int(((q % 2) + 2) % 2);
}

std::vector<int> parity_vector(const SympIntMatrix& a) {
  int n = a.n(), d = 2 * n;
  // Evaluate the defect on the standard basis. sigma(phi, w) mod 2 picks out
  // phi_xi entries on position vectors and phi_x entries on momentum ones.
  std::vector<int> phi(d, 0);
  for (int i = 0; i < d; i++) {
    std::vector<Int> w(d, 0);
    w[i] = 1;
    int defect = (parity_Q(a.apply_inv(w), n) - parity_Q(w, n) + 2) % 2;
    if (i < n)
      phi[n + i] = defect;
    else
      phi[i - n] = defect;
  }
  // defining relation holds on all of Z^{2n} by linearity of the defect;
  // verify on the basis regardless
  for (int i = 0; i < d; i++) {
    std::vector<Int> w(d, 0);
    w[i] = 1;
    Int sp = 0;
    for (int t = 0; t < n; t++) sp += Int(phi[n + t]) * w[t] - Int(phi[t]) * w[n + t];
    int lhs = (parity_Q(a.apply_inv(w), n) - parity_Q(w, n) + 2) % 2;
    if (lhs != int(((sp % 2) + 2) % 2)) throw std::logic_error("parity vector relation failed");
  }
  return phi;
}

Int ThetaSolutions::count_finite() const {
  if (!solvable || !free_dirs.empty()) return 0;
  Int c = 1;
  for (const auto& t : torsion) c *= t.first;
  return c;
}

std::vector<std::vector<Rat>> ThetaSolutions::enumerate(size_t cap) const {
  std::vector<std::vector<Rat>> out;
  if (!solvable) return out;
  auto frac = [](const Rat& x) {
    Int num = numerator(x), den = denominator(x);
    Int q = num / den;
    Rat f = x - Rat(q);
    if (f < 0) f += 1;
    return f;
  };
  size_t k = torsion.size();
  std::vector<Int> idx(k, 0);
  while (true) {
    std::vector<Rat> th = particular;
    for (size_t i = 0; i < k; i++)
      for (size_t j = 0; j < th.size(); j++) th[j] += Rat(idx[i]) * torsion[i].second[j];
    for (auto& x : th) x = frac(x);
    out.push_back(th);
    if (out.size() >= cap) break;
    size_t i = 0;
    for (; i < k; i++) {
      idx[i] += 1;
      if (idx[i] < torsion[i].first) break;
      idx[i] = 0;
    }
    if (i == k) break;
  }
  // theta = 0 first when present
  for (size_t i = 0; i < out.size(); i++) {
    bool zero = true;
    for (const auto& x : out[i]) zero = zero && x == 0;
    if (zero) {
      std::swap(out[0], out[i]);
      break;
    }
  }
  std::sort(out.begin() + (out.empty() ? 0 : 1), out.end());
  return out;
}

ThetaSolutions solve_theta(const SympIntMatrix& a, long long bigN) {
  int d = a.dim();
  IntMatrix b = IntMatrix::identity(d) - a.mat();  // (I - A)
  auto phi = parity_vector(a);
  // rhs = N phi_A / 2
  std::vector<Rat> rhs(d);
  for (int i = 0; i < d; i++) rhs[i] = Rat(Int(bigN) * phi[i], 2);

  SmithForm s = smith_normal_form(b);
  // b = U^{-1} D V^{-1} ... we have U b V = D, so b theta = rhs mod Z^{2n}
  // iff D (V^{-1} theta) = U rhs mod Z^{2n} (U, V unimodular).
  std::vector<Rat> c(d, 0);
  for (int i = 0; i < d; i++)
    for (int j = 0; j < d; j++) c[i] += Rat(s.u(i, j)) * rhs[j];

  ThetaSolutions sol;
  std::vector<Rat> psi(d, 0);
  auto is_integer = [](const Rat& x) { return denominator(x) == 1; };
  for (int i = 0; i < d; i++) {
    Int di = s.d(i, i);
    if (di == 0) {
      if (!is_integer(c[i])) return sol;  // unsolvable, flag stays false
      psi[i] = 0;                          // free circle direction
    } else {
      psi[i] = c[i] / Rat(di);
    }
  }
  sol.solvable = true;
  // theta = V psi; torsion direction i has step V e_i / d_i of order d_i
  auto apply_v = [&](const std::vector<Rat>& x) {
    std::vector<Rat> y(d, 0);
    for (int i = 0; i < d; i++)
      for (int j = 0; j < d; j++) y[i] += Rat(s.v(i, j)) * x[j];
    return y;
  };
  auto frac = [](Rat x) {
    Int q = numerator(x) / denominator(x);
    Rat f = x - Rat(q);
    if (f < 0) f += 1;
    return f;
  };
  sol.particular = apply_v(psi);
  for (auto& x : sol.particular) x = frac(x);
  for (int i = 0; i < d; i++) {
    Int di = s.d(i, i);
    if (di == 0) {
      std::vector<Rat> e(d, 0);
      e[i] = 1;
      sol.free_dirs.push_back(apply_v(e));
    } else if (di > 1) {
      std::vector<Rat> e(d, 0);
      e[i] = Rat(1, di);
      sol.torsion.emplace_back(di, apply_v(e));
    }
  }
  // prefer the zero representative when it solves the congruence
  std::vector<Rat> zero(d, 0);
  if (theta_admissible(a, bigN, zero)) sol.particular = zero;
  return sol;
}

bool theta_admissible(const SympIntMatrix& a, long long bigN, const std::vector<Rat>& theta) {
  int d = a.dim();
  auto phi = parity_vector(a);
  for (int i = 0; i < d; i++) {
    Rat lhs = 0;
    for (int j = 0; j < d; j++) lhs += Rat(i == j ? 1 : 0) * theta[j];
    for (int j = 0; j < d; j++) lhs -= Rat(a.mat()(i, j)) * theta[j];
    lhs -= Rat(Int(bigN) * phi[i], 2);
    if (denominator(lhs) != 1) return false;
  }
  return true;
}

}  // namespace qcat
