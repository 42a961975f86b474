#include "qcat/exact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcat {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; i++) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(int(rows.size()), int(rows[0].size()));
  for (int i = 0; i < m.rows(); i++) {
    if (rows[i].size() != size_t(m.cols())) throw std::invalid_argument("ragged rows");
    for (int j = 0; j < m.cols(); j++) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; i++)
    for (int k = 0; k < cols_; k++) {
      const Int& aik = (*this)(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; j++) r(i, j) += aik * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  IntMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); i++) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  IntMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); i++) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

IntMatrix IntMatrix::operator*(const Int& c) const {
  IntMatrix r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); i++) r.a_[i] = a_[i] * c;
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; i++)
    for (int j = 0; j < cols_; j++) r(j, i) = (*this)(i, j);
  return r;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("shape mismatch");
  std::vector<Int> r(rows_, 0);
  for (int i = 0; i < rows_; i++)
    for (int j = 0; j < cols_; j++) r[i] += (*this)(i, j) * v[j];
  return r;
}

Int IntMatrix::trace() const {
  Int t = 0;
  for (int i = 0; i < std::min(rows_, cols_); i++) t += (*this)(i, i);
  return t;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; i++) {
    for (int j = 0; j < cols_; j++) os << (j ? " " : "") << (*this)(i, j);
    os << "\n";
  }
  return os.str();
}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (int i = 0; i < rows_; i++)
    for (int j = 0; j < cols_; j++) (*this)(i, j) = Rat(m(i, j));
}

int RatMatrix::rref() {
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; c++) {
    int piv = -1;
    for (int i = r; i < rows_; i++)
      if ((*this)(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; j++) std::swap((*this)(piv, j), (*this)(r, j));
    Rat inv = Rat(1) / (*this)(r, c);
    for (int j = 0; j < cols_; j++) (*this)(r, j) *= inv;
    for (int i = 0; i < rows_; i++) {
      if (i == r || (*this)(i, c) == 0) continue;
      Rat f = (*this)(i, c);
      for (int j = 0; j < cols_; j++) (*this)(i, j) -= f * (*this)(r, j);
    }
    r++;
  }
  return r;
}

RatMatrix rational_kernel(const RatMatrix& m) {
  RatMatrix e = m;
  int rank = e.rref();
  int n = m.cols();
  // pivot columns
  std::vector<int> pivcol(rank, -1);
  std::vector<bool> ispiv(n, false);
  for (int r = 0, c = 0; r < rank; r++) {
    while (c < n && e(r, c) == 0) c++;
    pivcol[r] = c;
    ispiv[c] = true;
  }
  RatMatrix k(n - rank, n);
  int kr = 0;
  for (int c = 0; c < n; c++) {
    if (ispiv[c]) continue;
    k(kr, c) = 1;
    for (int r = 0; r < rank; r++) k(kr, pivcol[r]) = -e(r, c);
    kr++;
  }
  k.rref();
  return k;
}

RatMatrix row_space(const RatMatrix& m) {
  RatMatrix e = m;
  int rank = e.rref();
  RatMatrix r(rank, m.cols());
  for (int i = 0; i < rank; i++)
    for (int j = 0; j < m.cols(); j++) r(i, j) = e(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

void snf_row_op(IntMatrix& m, IntMatrix& u, int i1, int i2, const Int& a, const Int& b,
                const Int& c, const Int& d) {
  // rows (i1,i2) <- (a*i1 + b*i2, c*i1 + d*i2), same on u
  for (auto* t : {&m, &u}) {
    IntMatrix& x = *t;
    for (int j = 0; j < x.cols(); j++) {
      Int r1 = a * x(i1, j) + b * x(i2, j);
      Int r2 = c * x(i1, j) + d * x(i2, j);
      x(i1, j) = r1;
      x(i2, j) = r2;
    }
  }
}

void snf_col_op(IntMatrix& m, IntMatrix& v, int j1, int j2, const Int& a, const Int& b,
                const Int& c, const Int& d) {
  for (auto* t : {&m, &v}) {
    IntMatrix& x = *t;
    for (int i = 0; i < x.rows(); i++) {
      Int c1 = a * x(i, j1) + b * x(i, j2);
      Int c2 = c * x(i, j1) + d * x(i, j2);
      x(i, j1) = c1;
      x(i, j2) = c2;
    }
  }
}

Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = a >= 0 ? 1 : -1;
    y = 0;
    return abs(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  int m = a.rows(), n = a.cols();
  SmithForm s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
  IntMatrix& d = s.d;
  int t = 0;
  while (t < std::min(m, n)) {
    // find a nonzero pivot in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < m && pi < 0; i++)
      for (int j = t; j < n; j++)
        if (d(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != t) snf_row_op(d, s.u, t, pi, 0, 1, 1, 0);
    if (pj != t) snf_col_op(d, s.v, t, pj, 0, 1, 1, 0);
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < m; i++) {
        if (d(i, t) == 0) continue;
        if (d(i, t) % d(t, t) == 0) {
          // plain elimination keeps row t fixed (no refill)
          snf_row_op(d, s.u, t, i, 1, 0, -(d(i, t) / d(t, t)), 1);
        } else {
          Int x, y;
          Int g = ext_gcd(d(t, t), d(i, t), x, y);
          Int p = d(t, t) / g, q = d(i, t) / g;
          snf_row_op(d, s.u, t, i, x, y, -q, p);
          again = true;  // |d(t,t)| strictly decreased; rescan
        }
      }
      for (int j = t + 1; j < n; j++) {
        if (d(t, j) == 0) continue;
        if (d(t, j) % d(t, t) == 0) {
          snf_col_op(d, s.v, t, j, 1, 0, -(d(t, j) / d(t, t)), 1);
        } else {
          Int x, y;
          Int g = ext_gcd(d(t, t), d(t, j), x, y);
          Int p = d(t, t) / g, q = d(t, j) / g;
          snf_col_op(d, s.v, t, j, x, y, -q, p);
          again = true;
        }
      }
      if (!again) {
        // column ops may have refilled column t; one more pass if so
        for (int i = t + 1; i < m && !again; i++) again = d(i, t) != 0;
      }
    }
    t++;
  }
  // enforce the divisibility chain d_i | d_{i+1}: each fold replaces the
  // pair by (gcd, lcm), so repeated adjacent sweeps terminate
  int k = std::min(m, n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < k; i++) {
      Int di = d(i, i), dj = d(i + 1, i + 1);
      if (dj == 0) continue;
      if (di != 0 && dj % di == 0) continue;
      snf_col_op(d, s.v, i, i + 1, 1, 1, 0, 1);  // col_i += col_{i+1}
      Int x, y;
      Int g = ext_gcd(d(i, i), d(i + 1, i), x, y);
      Int p = d(i, i) / g, q = d(i + 1, i) / g;
      snf_row_op(d, s.u, i, i + 1, x, y, -q, p);
      Int f = d(i, i + 1) / d(i, i);
      snf_col_op(d, s.v, i + 1, i, 1, -f, 0, 1);  // col_{i+1} -= f*col_i
      changed = true;
    }
  }
  for (int i = 0; i < k; i++)
    if (d(i, i) < 0)
      for (auto* t : {&d, &s.u})
        for (int j = 0; j < t->cols(); j++) (*t)(i, j) = -(*t)(i, j);
  return s;
}

// ---------------------------------------------------------------------------
// Integer polynomials

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::from_ll(std::initializer_list<long long> coeffs) {
  std::vector<Int> c;
  for (long long v : coeffs) c.emplace_back(v);
  return IntPolynomial(std::move(c));
}

Rat IntPolynomial::eval(const Rat& x) const {
  Rat r = 0;
  for (int k = degree(); k >= 0; k--) r = r * x + Rat(c_[k]);
  return r;
}

std::complex<double> IntPolynomial::eval(std::complex<double> x) const {
  std::complex<double> r = 0;
  for (int k = degree(); k >= 0; k--) r = r * x + double(c_[k]);
  return r;
}

IntPolynomial IntPolynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<Int> d(degree());
  for (int k = 1; k <= degree(); k++) d[k - 1] = c_[k] * k;
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Int> r(size_t(degree() + o.degree() + 1), 0);
  for (int i = 0; i <= degree(); i++)
    for (int j = 0; j <= o.degree(); j++) r[i + j] += c_[i] * o.c_[j];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Int> r = c_;
  for (auto& x : r) x = -x;
  return IntPolynomial(std::move(r));
}

std::optional<IntPolynomial> IntPolynomial::divide_exact(const IntPolynomial& o) const {
  if (o.is_zero()) return std::nullopt;
  if (is_zero()) return IntPolynomial{};
  if (degree() < o.degree()) return std::nullopt;
  std::vector<Int> rem = c_;
  std::vector<Int> q(size_t(degree() - o.degree() + 1), 0);
  for (int k = degree() - o.degree(); k >= 0; k--) {
    Int num = rem[k + o.degree()];
    if (num % o.c_.back() != 0) return std::nullopt;
    Int f = num / o.c_.back();
    q[k] = f;
    for (int j = 0; j <= o.degree(); j++) rem[k + j] -= f * o.c_[j];
  }
  for (const Int& x : rem)
    if (x != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

IntPolynomial IntPolynomial::reversal() const {
  std::vector<Int> r(c_.rbegin(), c_.rend());
  IntPolynomial p(std::move(r));
  if (!p.is_zero() && p.c_.back() < 0) return -p;
  return p;
}

bool IntPolynomial::palindromic_up_to_sign() const {
  if (is_zero()) return true;
  int d = degree();
  bool plus = true, minus = true;
  for (int k = 0; k <= d; k++) {
    plus = plus && c_[k] == c_[d - k];
    minus = minus && c_[k] == -c_[d - k];
  }
  return plus || minus;
}

std::string IntPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; k--) {
    if (c_[k] == 0) continue;
    Int a = c_[k];
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Int m = abs(a);
    if (m != 1 || k == 0) os << m.str();
    if (k > 0) {
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

IntPolynomial char_poly(const IntMatrix& a) {
  int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("char_poly: square matrix required");
  // Faddeev-LeVerrier; the divisions by k are exact over Z.
  std::vector<Int> c(size_t(n + 1), 0);
  c[n] = 1;
  IntMatrix m = IntMatrix::identity(n);
  for (int k = 1; k <= n; k++) {
    m = a * m;
    Int t = m.trace();
    if (t % k != 0) throw std::logic_error("Faddeev-LeVerrier: inexact division");
    c[n - k] = -t / k;
    for (int i = 0; i < n; i++) m(i, i) += c[n - k];
  }
  return IntPolynomial(std::move(c));
}

std::vector<std::complex<double>> poly_roots(const IntPolynomial& p) {
  int d = p.degree();
  if (d <= 0) return {};
  if (d > 8) throw DegreeTooLarge("poly_roots: degree > 8");
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  double lead = double(p[d]);
  for (int i = 0; i < d; i++) comp(i, d - 1) = -double(p[i]) / lead;
  for (int i = 1; i < d; i++) comp(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> roots(d);
  IntPolynomial dp = p.derivative();
  for (int i = 0; i < d; i++) {
    std::complex<double> z = es.eigenvalues()(i);
    for (int it = 0; it < 40; it++) {  // Newton polish
      std::complex<double> f = p.eval(z), df = dp.eval(z);
      if (std::abs(df) < 1e-300) break;
      std::complex<double> step = f / df;
      z -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    roots[i] = z;
  }
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

namespace {

// Integer polynomial with leading coefficient `lead` whose roots are the
// masked subset, or nullopt if the scaled symmetric functions are not near
// integers. Coefficients lowest-degree first.
std::optional<IntPolynomial> poly_from_root_subset(const std::vector<std::complex<double>>& roots,
                                                   unsigned mask, long long lead) {
  std::vector<std::complex<double>> c{1.0};
  for (size_t i = 0; i < roots.size(); i++) {
    if (!(mask >> i & 1u)) continue;
    c.push_back(0.0);
    for (size_t k = c.size() - 1; k >= 1; k--) c[k] = c[k - 1] - roots[i] * c[k];
    c[0] = -roots[i] * c[0];
  }
  std::vector<Int> ic(c.size());
  for (size_t k = 0; k < c.size(); k++) {
    double re = c[k].real() * double(lead);
    double rd = std::round(re);
    if (std::abs(c[k].imag() * double(lead)) > 0.3 || std::abs(re - rd) > 0.3) return std::nullopt;
    ic[k] = Int(static_cast<long long>(rd));
  }
  return IntPolynomial(std::move(ic));
}

std::vector<long long> positive_divisors(const Int& x) {
  long long v = std::abs(x.convert_to<long long>());
  std::vector<long long> ds;
  for (long long d = 1; d * d <= v; d++)
    if (v % d == 0) {
      ds.push_back(d);
      if (d != v / d) ds.push_back(v / d);
    }
  std::sort(ds.begin(), ds.end());
  return ds;
}

}  // namespace

IntFactorization factor_over_Z(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("factor_over_Z: zero polynomial");
  if (p.degree() > 8) throw DegreeTooLarge("factor_over_Z: degree > 8");
  Int content = 0;
  for (const Int& c : p.coeffs()) content = boost::multiprecision::gcd(content, c);
  if (p.coeffs().back() < 0) content = -content;
  std::vector<Int> prim(p.coeffs());
  for (Int& c : prim) c /= content;
  IntPolynomial rest(std::move(prim));

  IntFactorization out;
  out.content = content;
  while (rest.degree() >= 1) {
    auto roots = poly_roots(rest);
    int d = rest.degree();
    auto leads = positive_divisors(rest.coeffs().back());
    // Smallest proper factors first: guarantees the found factor is
    // irreducible (a proper factor of it would have been found earlier).
    bool found = false;
    for (int sz = 1; sz <= d / 2 && !found; sz++) {
      for (unsigned mask = 1; mask < (1u << d) && !found; mask++) {
        if (__builtin_popcount(mask) != sz) continue;
        for (long long lead : leads) {
          auto cand = poly_from_root_subset(roots, mask, lead);
          if (!cand || cand->degree() != sz) continue;
          auto q = rest.divide_exact(*cand);
          if (q) {
            out.factors.push_back(*cand);
            rest = *q;
            found = true;
            break;
          }
        }
      }
    }
    if (!found) {
      if (rest.coeffs().back() < 0) {
        rest = -rest;
        out.content = -out.content;
      }
      out.factors.push_back(rest);
      rest = IntPolynomial::from_ll({1});
      break;
    }
  }
  if (rest.degree() == 0) out.content *= rest.coeffs()[0];
  std::sort(out.factors.begin(), out.factors.end(), [](const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; k--)
      if (a[k] != b[k]) return a[k] < b[k];
    return false;
  });
  return out;
}

void AlgebraicReal::refine(const Rat& eps) {
  Rat flo = minpoly.eval(lo);
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / 2;
    Rat fm = minpoly.eval(mid);
    if (fm == 0) {
      lo = hi = mid;
      break;
    }
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  approx = to_double((lo + hi) / 2);
}

Rat rat_from_double_dyadic(double x, int bits) {
  double den = std::ldexp(1.0, bits);
  return Rat(Int(static_cast<long long>(std::floor(x * den))), Int(1) << bits);
}

AlgebraicReal make_algebraic_real(const IntPolynomial& minpoly, double guess, double sep) {
  double delta = std::max(1e-9, sep / 4);
  AlgebraicReal a;
  a.minpoly = minpoly;
  a.lo = rat_from_double_dyadic(guess - delta);
  a.hi = rat_from_double_dyadic(guess + delta);
  Rat flo = minpoly.eval(a.lo), fhi = minpoly.eval(a.hi);
  if (flo == 0 || fhi == 0 || (flo < 0) == (fhi < 0))
    throw std::runtime_error("make_algebraic_real: no sign change in bracket");
  a.refine(Rat(1, Int(1) << 60));
  return a;
}

double to_double(const Rat& x) { return x.convert_to<double>(); }

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    Int den = 1;
    for (size_t i = 0; i < fp.size(); i++) den *= 10;
    Int num = Int(ip.empty() || ip == "-" ? "0" : ip) * den;
    Int frac = fp.empty() ? Int(0) : Int(fp);
    num += neg ? -frac : frac;
    return Rat(num, den);
  }
  return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

}  // namespace qcat
