#include "qcat/quantize.hpp"

#include <cmath>

namespace qcat {

std::vector<long long> QuantizationParams::unrank(long long idx) const {
  std::vector<long long> j(n);
  for (int i = n - 1; i >= 0; i--) {
    j[i] = idx % N;
    idx /= N;
  }
  return j;
}

long long QuantizationParams::rank(const std::vector<long long>& j) const {
  long long idx = 0;
  for (int i = 0; i < n; i++) {
    long long r = ((j[i] % N) + N) % N;
    idx = idx * N + r;
  }
  return idx;
}

TrigSymbol TrigSymbol::constant(int n, cdouble c) {
  TrigSymbol a(n);
  a.add(std::vector<long long>(2 * n, 0), c);
  return a;
}

TrigSymbol TrigSymbol::cos_position(int n, const std::vector<long long>& k) {
  // cos(2 pi <k, x>) = (e^{2 pi i <k,x>} + c.c.)/2; <k,x> = sigma(w, z) for
  // w = (0, k).
  TrigSymbol a(n);
  std::vector<long long> w(2 * n, 0), wm(2 * n, 0);
  for (int i = 0; i < n; i++) {
    w[n + i] = k[i];
    wm[n + i] = -k[i];
  }
  a.add(w, 0.5);
  a.add(wm, 0.5);
  return a;
}

TrigSymbol TrigSymbol::cos_momentum(int n, const std::vector<long long>& k) {
  // cos(2 pi <k, xi>): <k, xi> = sigma(w, z) for w = (-k, 0).
  TrigSymbol a(n);
  std::vector<long long> w(2 * n, 0), wm(2 * n, 0);
  for (int i = 0; i < n; i++) {
    w[i] = -k[i];
    wm[i] = k[i];
  }
  a.add(w, 0.5);
  a.add(wm, 0.5);
  return a;
}

void TrigSymbol::add(const std::vector<long long>& w, cdouble c) {
  if (int(w.size()) != 2 * n_) throw std::invalid_argument("TrigSymbol::add: bad frequency size");
  auto it = c_.find(w);
  if (it == c_.end()) {
    if (c != 0.0) c_[w] = c;
  } else {
    it->second += c;
    if (std::abs(it->second) == 0.0) c_.erase(it);
  }
}

long long TrigSymbol::max_freq() const {
  long long m = 0;
  for (const auto& [w, c] : c_)
    for (long long wi : w) m = std::max(m, std::llabs(wi));
  return m;
}

double TrigSymbol::l1_norm() const {
  double s = 0;
  for (const auto& [w, c] : c_) s += std::abs(c);
  return s;
}

bool TrigSymbol::is_real(double tol) const {
  for (const auto& [w, c] : c_) {
    std::vector<long long> mw(w.size());
    for (size_t i = 0; i < w.size(); i++) mw[i] = -w[i];
    auto it = c_.find(mw);
    cdouble other = it == c_.end() ? cdouble(0) : it->second;
    if (std::abs(std::conj(other) - c) > tol) return false;
  }
  return true;
}

cdouble TrigSymbol::eval(const std::vector<double>& z) const {
  cdouble s = 0;
  for (const auto& [w, c] : c_) {
    double ph = 0;  // sigma(w, z) = <eta, x> - <y, xi>
    for (int i = 0; i < n_; i++) ph += double(w[n_ + i]) * z[i] - double(w[i]) * z[n_ + i];
    s += c * std::polar(1.0, 2 * M_PI * ph);
  }
  return s;
}

double TrigSymbol::sup_on_grid(long long g) const {
  // dense evaluation on a g^{2n} grid; desk scale keeps 2n <= 4 here unless
  // the symbol is low-dimensional in disguise
  double best = 0;
  std::vector<double> z(2 * n_, 0.0);
  std::function<void(int)> rec = [&](int coord) {
    if (coord == 2 * n_) {
      best = std::max(best, std::abs(eval(z)));
      return;
    }
    for (long long t = 0; t < g; t++) {
      z[coord] = double(t) / double(g);
      rec(coord + 1);
    }
  };
  rec(0);
  return best;
}

TrigSymbol TrigSymbol::operator+(const TrigSymbol& o) const {
  TrigSymbol r = *this;
  for (const auto& [w, c] : o.c_) r.add(w, c);
  return r;
}

TrigSymbol TrigSymbol::operator*(const TrigSymbol& o) const {
  TrigSymbol r(n_);
  for (const auto& [w1, c1] : c_)
    for (const auto& [w2, c2] : o.c_) {
      std::vector<long long> w(w1.size());
      for (size_t i = 0; i < w.size(); i++) w[i] = w1[i] + w2[i];
      r.add(w, c1 * c2);
    }
  return r;
}

TrigSymbol TrigSymbol::operator*(cdouble s) const {
  TrigSymbol r(n_);
  for (const auto& [w, c] : c_) r.add(w, c * s);
  return r;
}

TrigSymbol TrigSymbol::conj() const {
  TrigSymbol r(n_);
  for (const auto& [w, c] : c_) {
    std::vector<long long> mw(w.size());
    for (size_t i = 0; i < w.size(); i++) mw[i] = -w[i];
    r.add(mw, std::conj(c));
  }
  return r;
}

CMat TranslationOp::dense() const {
  long long dim = params.dim();
  CMat m = CMat::Zero(dim, dim);
  for (long long j = 0; j < dim; j++) m(perm[j], j) = phase(j);
  return m;
}

TranslationOp mode_translation(const std::vector<long long>& w, const QuantizationParams& p) {
  if (int(w.size()) != 2 * p.n) throw std::invalid_argument("mode frequency has wrong size");
  long long dim = p.dim();
  TranslationOp t{p, std::vector<long long>(dim), CVec(dim)};
  const long long N = p.N;
  if (p.theta_zero()) {
    // integer phase arithmetic mod 2N: exponent (in half-turns / N) is
    // 2 <eta, j> + <y, eta>
    std::vector<cdouble> roots(2 * N);
    for (long long r = 0; r < 2 * N; r++) roots[r] = std::polar(1.0, M_PI * double(r) / double(N));
    long long yeta = 0;
    for (int i = 0; i < p.n; i++) yeta += ((w[i] % (2 * N)) * (w[p.n + i] % (2 * N))) % (2 * N);
    std::vector<long long> j(p.n, 0), r(p.n);
    for (long long jf = 0; jf < dim; jf++) {
      long long e = yeta;
      for (int i = 0; i < p.n; i++) {
        e += 2 * ((w[p.n + i] % N) * j[i] % N);
        long long ji = j[i] + w[i];
        r[i] = ((ji % N) + N) % N;
      }
      t.perm[jf] = p.rank(r);
      t.phase(jf) = roots[((e % (2 * N)) + 2 * N) % (2 * N)];
      for (int i = p.n - 1; i >= 0; i--) {  // lexicographic increment
        if (++j[i] < N) break;
        j[i] = 0;
      }
    }
    return t;
  }
  // Phase exponent in units of one turn, as an exact rational:
  //   <eta, j - theta_x>/N + <y, eta>/(2N) + <theta_xi, l>
  Rat half_yeta(0);
  for (int i = 0; i < p.n; i++) half_yeta += Rat(Int(w[i]) * Int(w[p.n + i]), Int(2) * N);
  for (long long jf = 0; jf < dim; jf++) {
    auto j = p.unrank(jf);
    Rat ph = half_yeta;
    std::vector<long long> r(p.n);
    for (int i = 0; i < p.n; i++) {
      ph += Rat(Int(w[p.n + i])) * (Rat(Int(j[i])) - p.theta[i]) / Rat(Int(N));
      long long ji = j[i] + w[i];
      long long ri = ((ji % N) + N) % N;
      long long li = (ji - ri) / N;
      ph += p.theta[p.n + i] * Rat(Int(li));
      r[i] = ri;
    }
    // reduce mod 1 exactly, then one polar evaluation
    Int num = numerator(ph), den = denominator(ph);
    Int q = num / den;
    Rat frac = ph - Rat(q);
    if (frac < 0) frac += 1;
    t.perm[jf] = p.rank(r);
    t.phase(jf) = std::polar(1.0, 2 * M_PI * to_double(frac));
  }
  return t;
}

OperatorOnH mode_operator(const std::vector<long long>& w, const QuantizationParams& p) {
  return {p, mode_translation(w, p).dense()};
}

OperatorOnH quantize(const TrigSymbol& a, const QuantizationParams& p) {
  long long dim = p.dim();
  OperatorOnH op{p, CMat::Zero(dim, dim)};
  for (const auto& [w, c] : a.coeffs()) {
    TranslationOp t = mode_translation(w, p);
    for (long long j = 0; j < dim; j++) op.m(t.perm[j], j) += c * t.phase(j);
  }
  return op;
}

TranslationOp translation(const std::vector<Rat>& v, const QuantizationParams& p) {
  std::vector<long long> w(2 * p.n);
  for (int i = 0; i < 2 * p.n; i++) {
    Rat nv = v[i] * Rat(Int(p.N));
    if (denominator(nv) != 1)
      throw NotLatticeCompatible("translation: N*v is not an integer vector");
    w[i] = numerator(nv).convert_to<long long>();
  }
  return mode_translation(w, p);
}

cdouble grid_quadratic_form(const std::vector<cdouble>& a_values, const StateVector& f) {
  const QuantizationParams& p = f.params;
  if (!p.theta_zero()) throw std::invalid_argument("grid_quadratic_form requires theta = 0");
  const long long N = p.N;
  const int n = p.n;
  long long dim2 = 1;
  for (int i = 0; i < n; i++) dim2 *= 2 * N;
  if (static_cast<long long>(a_values.size()) != dim2 * dim2)
    throw GridShapeMismatch("expected (2N)^{2n} samples, got " + std::to_string(a_values.size()));

  auto unrank2 = [&](long long idx) {
    std::vector<long long> j(n);
    for (int i = n - 1; i >= 0; i--) {
      j[i] = idx % (2 * N);
      idx /= 2 * N;
    }
    return j;
  };
  cdouble total = 0;
  const long long dim = p.dim();
  for (long long jf = 0; jf < dim; jf++) {
    auto j = p.unrank(jf);
    for (long long kf = 0; kf < dim2; kf++) {
      auto k = unrank2(kf);
      // row index (2j + k) mod 2N and the pairing f_j conj(f_{j+k})
      std::vector<long long> row(n), jk(n);
      for (int i = 0; i < n; i++) {
        row[i] = (2 * j[i] + k[i]) % (2 * N);
        jk[i] = j[i] + k[i];
      }
      long long rowf = 0;
      for (int i = 0; i < n; i++) rowf = rowf * 2 * N + row[i];
      cdouble fpair = f.v(jf) * std::conj(f.v(p.rank(jk)));
      for (long long lf = 0; lf < dim2; lf++) {
        auto l = unrank2(lf);
        long long kl = 0;
        for (int i = 0; i < n; i++) kl += k[i] * l[i];
        cdouble ph = std::polar(1.0, M_PI * double(kl % (2 * N)) / double(N));
        total += ph * a_values[rowf * dim2 + lf] * fpair;
      }
    }
  }
  return total / std::pow(double(2 * N), n);
}

std::vector<cdouble> sample_symbol_2N(const TrigSymbol& a, const QuantizationParams& p) {
  long long dim2 = 1;
  for (int i = 0; i < p.n; i++) dim2 *= 2 * p.N;
  auto unrank2 = [&](long long idx) {
    std::vector<long long> j(p.n);
    for (int i = p.n - 1; i >= 0; i--) {
      j[i] = idx % (2 * p.N);
      idx /= 2 * p.N;
    }
    return j;
  };
  std::vector<cdouble> vals(dim2 * dim2);
  std::vector<double> z(2 * p.n);
  for (long long pf = 0; pf < dim2; pf++) {
    auto pp = unrank2(pf);
    for (int i = 0; i < p.n; i++) z[i] = double(pp[i]) / double(2 * p.N);
    for (long long qf = 0; qf < dim2; qf++) {
      auto qq = unrank2(qf);
      for (int i = 0; i < p.n; i++) z[p.n + i] = double(qq[i]) / double(2 * p.N);
      vals[pf * dim2 + qf] = a.eval(z);
    }
  }
  return vals;
}

WignerMatrix wigner(const StateVector& f) {
  const QuantizationParams& p = f.params;
  if (!p.theta_zero()) throw std::invalid_argument("wigner requires theta = 0");
  const long long N = p.N;
  const int n = p.n;
  long long dim2 = 1;
  for (int i = 0; i < n; i++) dim2 *= 2 * N;
  auto unrank2 = [&](long long idx) {
    std::vector<long long> j(n);
    for (int i = n - 1; i >= 0; i--) {
      j[i] = idx % (2 * N);
      idx /= 2 * N;
    }
    return j;
  };
  WignerMatrix w{p, CMat::Zero(dim2, dim2)};
  const long long dim = p.dim();
  double scale = std::pow(double(2 * N), n);
  std::vector<cdouble> roots(2 * N);
  for (long long t = 0; t < 2 * N; t++) roots[t] = std::polar(1.0, M_PI * double(t) / double(N));
  if (n == 1) {
    // W_pq = 2N e^{i pi p q / N} * sum_j e^{-2 pi i j q / N} f_j conj(f_{p-j})
    std::vector<cdouble> g(N), ghat(N);
    for (long long pp = 0; pp < 2 * N; pp++) {
      for (long long j = 0; j < N; j++) g[j] = f.v(j) * std::conj(f.v(((pp - j) % N + N) % N));
      for (long long q = 0; q < N; q++) {
        cdouble s = 0;
        for (long long j = 0; j < N; j++) s += roots[(2 * ((2 * N - j) * q % N)) % (2 * N)] * g[j];
        ghat[q] = s;
      }
      for (long long q = 0; q < 2 * N; q++)
        w.w(pp, q) = scale * roots[(pp * q) % (2 * N)] * ghat[q % N];
    }
    return w;
  }
  for (long long pf = 0; pf < dim2; pf++) {
    auto pp = unrank2(pf);
    // precompute the paired amplitudes f_j conj(f_{p-j}) for this p
    std::vector<cdouble> fpair(dim);
    std::vector<long long> e0(dim);
    for (long long jf = 0; jf < dim; jf++) {
      auto j = p.unrank(jf);
      std::vector<long long> pj(n);
      for (int i = 0; i < n; i++) pj[i] = pp[i] - j[i];
      fpair[jf] = f.v(jf) * std::conj(f.v(p.rank(pj)));
    }
    for (long long qf = 0; qf < dim2; qf++) {
      auto qq = unrank2(qf);
      cdouble s = 0;
      for (long long jf = 0; jf < dim; jf++) {
        auto j = p.unrank(jf);
        long long e = 0;
        for (int i = 0; i < n; i++) e += (pp[i] - 2 * j[i]) * qq[i];
        s += roots[((e % (2 * N)) + 2 * N) % (2 * N)] * fpair[jf];
      }
      w.w(pf, qf) = scale * s;
    }
  }
  return w;
}

cdouble wigner_pairing(const WignerMatrix& w, const TrigSymbol& a) {
  const QuantizationParams& p = w.params;
  long long dim2 = w.w.rows();
  auto unrank2 = [&](long long idx) {
    std::vector<long long> j(p.n);
    for (int i = p.n - 1; i >= 0; i--) {
      j[i] = idx % (2 * p.N);
      idx /= 2 * p.N;
    }
    return j;
  };
  cdouble tot = 0;
  std::vector<double> z(2 * p.n);
  for (long long pf = 0; pf < dim2; pf++) {
    auto pp = unrank2(pf);
    for (int i = 0; i < p.n; i++) z[i] = double(pp[i]) / double(2 * p.N);
    for (long long qf = 0; qf < dim2; qf++) {
      auto qq = unrank2(qf);
      for (int i = 0; i < p.n; i++) z[p.n + i] = double(qq[i]) / double(2 * p.N);
      tot += a.eval(z) * w.w(pf, qf);
    }
  }
  double dim2d = std::pow(double(2 * p.N), p.n);
  return tot / (dim2d * dim2d);
}

Eigen::MatrixXd wigner_heatmap(const WignerMatrix& w, double sigma_smooth) {
  if (w.params.n != 1) throw std::invalid_argument("wigner_heatmap: n = 1 only");
  const long long G = w.w.rows();  // 2N
  Eigen::MatrixXd re = w.w.real();
  // periodic separable Gaussian blur; kernel truncated at 5 sigma
  double sig = sigma_smooth * double(G);  // grid units
  Eigen::MatrixXd out = re;
  if (sig > 1e-9) {
    int rad = std::max<int>(1, int(std::ceil(5 * sig)));
    rad = std::min<int>(rad, int(G) - 1);
    Eigen::VectorXd ker(2 * rad + 1);
    for (int t = -rad; t <= rad; t++) ker(t + rad) = std::exp(-0.5 * double(t) * double(t) / (sig * sig));
    ker /= ker.sum();
    Eigen::MatrixXd tmp(G, G);
    for (long long i = 0; i < G; i++)
      for (long long j = 0; j < G; j++) {
        double s = 0;
        for (int t = -rad; t <= rad; t++) s += ker(t + rad) * re((i + t + G) % G, j);
        tmp(i, j) = s;
      }
    for (long long i = 0; i < G; i++)
      for (long long j = 0; j < G; j++) {
        double s = 0;
        for (int t = -rad; t <= rad; t++) s += ker(t + rad) * tmp(i, (j + t + G) % G);
        out(i, j) = s;
      }
  }
  double mx = out.maxCoeff();
  double floor_val = 1e-12 * std::max(mx, 1e-300);
  for (long long i = 0; i < G; i++)
    for (long long j = 0; j < G; j++) out(i, j) = std::log10(std::max(out(i, j), floor_val));
  return out;
}

Eigen::MatrixXd wigner_heatmap(const StateVector& f, double sigma_smooth) {
  return wigner_heatmap(wigner(f), sigma_smooth);
}

OperatorOnH operator_tensor(const OperatorOnH& a, const OperatorOnH& b) {
  if (a.params.N != b.params.N) throw std::invalid_argument("operator_tensor: N mismatch");
  if (!a.params.theta_zero() || !b.params.theta_zero())
    throw std::invalid_argument("operator_tensor: theta = 0 only");
  QuantizationParams p(a.params.n + b.params.n, a.params.N);
  long long da = a.params.dim(), db = b.params.dim();
  OperatorOnH out{p, CMat(da * db, da * db)};
  for (long long i = 0; i < da; i++)
    for (long long j = 0; j < da; j++) out.m.block(i * db, j * db, db, db) = a.m(i, j) * b.m;
  return out;
}

TrigSymbol symbol_tensor(const TrigSymbol& a1, const TrigSymbol& a2) {
  int n1 = a1.n(), n2 = a2.n(), n = n1 + n2;
  TrigSymbol out(n);
  for (const auto& [w1, c1] : a1.coeffs())
    for (const auto& [w2, c2] : a2.coeffs()) {
      std::vector<long long> w(2 * n, 0);
      for (int i = 0; i < n1; i++) {
        w[i] = w1[i];
        w[n + i] = w1[n1 + i];
      }
      for (int i = 0; i < n2; i++) {
        w[n1 + i] = w2[i];
        w[n + n1 + i] = w2[n2 + i];
      }
      out.add(w, c1 * c2);
    }
  return out;
}

}  // namespace qcat
