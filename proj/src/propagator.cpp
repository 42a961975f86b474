#include "qcat/propagator.hpp"

#include "qcat/lindense.hpp"

#include <cmath>
#include <random>

namespace qcat {

GeneratorToken GeneratorToken::S(const IntMatrix& b) {
  for (int i = 0; i < b.rows(); i++)
    for (int j = 0; j < b.cols(); j++)
      if (b(i, j) != b(j, i)) throw std::invalid_argument("S(B): B must be symmetric");
  return {Kind::S, b};
}

GeneratorToken GeneratorToken::L(const IntMatrix& e) {
  // |det E| = 1 iff E has an integer inverse; verify via adjugate-free route:
  // rational inverse must be integral and E * inv = I
  RatMatrix m(e);
  int n = e.rows();
  RatMatrix aug(n, 2 * n);
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  if (aug.rref() != n) throw std::invalid_argument("L(E): E is singular");
  for (int i = 0; i < n; i++)
    for (int j = 0; j < n; j++)
      if (denominator(aug(i, n + j)) != 1)
        throw std::invalid_argument("L(E): |det E| != 1 (inverse not integral)");
  return {Kind::L, e};
}

GeneratorToken GeneratorToken::F() { return {Kind::F, IntMatrix()}; }

IntMatrix GeneratorToken::symplectic(int n) const {
  IntMatrix m(2 * n, 2 * n);
  switch (kind) {
    case Kind::S:
      if (block.rows() != n) throw std::invalid_argument("S(B): size mismatch");
      for (int i = 0; i < n; i++) m(i, i) = 1;
      for (int i = 0; i < n; i++) {
        m(n + i, n + i) = 1;
        for (int j = 0; j < n; j++) m(n + i, j) = block(i, j);
      }
      return m;
    case Kind::L: {
      if (block.rows() != n) throw std::invalid_argument("L(E): size mismatch");
      // inverse-transpose block: solve exactly over Q, entries are integers
      RatMatrix aug(n, 2 * n);
      for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) aug(i, j) = Rat(block(i, j));
        aug(i, n + i) = 1;
      }
      aug.rref();
      for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) m(i, j) = block(i, j);
        for (int j = 0; j < n; j++) m(n + i, n + j) = numerator(aug(j, n + i));  // (E^{-1})^T
      }
      return m;
    }
    case Kind::F:
      for (int i = 0; i < n; i++) {
        m(i, n + i) = 1;
        m(n + i, i) = -1;
      }
      return m;
  }
  throw std::logic_error("unreachable");
}

std::string GeneratorToken::to_string() const {
  switch (kind) {
    case Kind::F:
      return "F";
    case Kind::S:
    case Kind::L: {
      std::string s = kind == Kind::S ? "S [" : "L [";
      for (int i = 0; i < block.rows(); i++) {
        if (i) s += "; ";
        for (int j = 0; j < block.cols(); j++) {
          if (j) s += " ";
          s += block(i, j).str();
        }
      }
      return s + "]";
    }
  }
  return "?";
}

GeneratorWord GeneratorWord::from_tokens(std::vector<GeneratorToken> tokens, int n) {
  IntMatrix prod = IntMatrix::identity(2 * n);
  for (const auto& t : tokens) prod = prod * t.symplectic(n);
  return {std::move(tokens), SympIntMatrix::verify(prod)};
}

OperatorOnH generator_matrix(const GeneratorToken& t, const QuantizationParams& p) {
  if (!p.theta_zero())
    throw std::invalid_argument("generator_matrix: explicit formulas require theta = 0");
  const long long N = p.N;
  const long long dim = p.dim();
  OperatorOnH op{p, CMat::Zero(dim, dim)};
  switch (t.kind) {
    case GeneratorToken::Kind::S: {
      if (N % 2 != 0) throw OddNForSB("S(B) quantization requires even N");
      std::vector<cdouble> roots(2 * N);
      for (long long r = 0; r < 2 * N; r++)
        roots[r] = std::polar(1.0, M_PI * double(r) / double(N));
      for (long long jf = 0; jf < dim; jf++) {
        auto j = p.unrank(jf);
        long long q = 0;  // <Bj, j> mod 2N
        for (int i = 0; i < p.n; i++)
          for (int k = 0; k < p.n; k++)
            q += t.block(i, k).convert_to<long long>() % (2 * N) * (j[i] * j[k] % (2 * N)) % (2 * N);
        q = ((q % (2 * N)) + 2 * N) % (2 * N);
        op.m(jf, jf) = roots[q];
      }
      return op;
    }
    case GeneratorToken::Kind::L: {
      // (M f)_j = f_{E^{-1} j}: column k has a 1 in row (E k mod N)
      IntMatrix e = t.block;
      for (long long kf = 0; kf < dim; kf++) {
        auto k = p.unrank(kf);
        std::vector<long long> j(p.n, 0);
        for (int i = 0; i < p.n; i++) {
          Int s = 0;
          for (int c = 0; c < p.n; c++) s += e(i, c) * k[c];
          Int r = s % N;
          if (r < 0) r += N;
          j[i] = r.convert_to<long long>();
        }
        op.m(p.rank(j), kf) = 1.0;
      }
      return op;
    }
    case GeneratorToken::Kind::F: {
      // tensor DFT: (M f)_j = N^{-n/2} sum_k e^{-2 pi i <j,k>/N} f_k
      CMat dft(N, N);
      double s = 1.0 / std::sqrt(double(N));
      for (long long j = 0; j < N; j++)
        for (long long k = 0; k < N; k++)
          dft(j, k) = s * std::polar(1.0, -2.0 * M_PI * double((j * k) % N) / double(N));
      op.m = dft;
      for (int i = 1; i < p.n; i++) {
        CMat prev = std::move(op.m);
        long long d = prev.rows();
        op.m = CMat(d * N, d * N);
        for (long long a = 0; a < d; a++)
          for (long long b = 0; b < d; b++) op.m.block(a * N, b * N, N, N) = prev(a, b) * dft;
      }
      return op;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// m <- m * generator, using the generator's structure: S is diagonal, L is a
// column permutation, F is a tensor DFT applied axis by axis.
void right_apply_token(CMat& m, const GeneratorToken& t, const QuantizationParams& p) {
  const long long N = p.N;
  const long long dim = p.dim();
  switch (t.kind) {
    case GeneratorToken::Kind::S: {
      if (N % 2 != 0) throw OddNForSB("S(B) quantization requires even N");
      std::vector<cdouble> roots(2 * N);
      for (long long r = 0; r < 2 * N; r++)
        roots[r] = std::polar(1.0, M_PI * double(r) / double(N));
      for (long long jf = 0; jf < dim; jf++) {
        auto j = p.unrank(jf);
        long long q = 0;
        for (int i = 0; i < p.n; i++)
          for (int k = 0; k < p.n; k++)
            q += t.block(i, k).convert_to<long long>() % (2 * N) * (j[i] * j[k] % (2 * N)) % (2 * N);
        q = ((q % (2 * N)) + 2 * N) % (2 * N);
        m.col(jf) *= roots[q];
      }
      return;
    }
    case GeneratorToken::Kind::L: {
      // (m L)[., c] = m[., E c mod N]
      CMat out(m.rows(), dim);
      for (long long cf = 0; cf < dim; cf++) {
        auto c = p.unrank(cf);
        std::vector<long long> ec(p.n);
        for (int i = 0; i < p.n; i++) {
          Int s = 0;
          for (int k = 0; k < p.n; k++) s += t.block(i, k) * c[k];
          Int r = s % N;
          if (r < 0) r += N;
          ec[i] = r.convert_to<long long>();
        }
        out.col(cf) = m.col(p.rank(ec));
      }
      m = std::move(out);
      return;
    }
    case GeneratorToken::Kind::F: {
      CMat dft(N, N);
      double s = 1.0 / std::sqrt(double(N));
      for (long long j = 0; j < N; j++)
        for (long long k = 0; k < N; k++)
          dft(j, k) = s * std::polar(1.0, -2.0 * M_PI * double((j * k) % N) / double(N));
      // column index = sum_i c_i N^{n-1-i}; transform each axis in turn
      for (int axis = p.n - 1; axis >= 0; axis--) {
        long long stride = 1;
        for (int i = axis + 1; i < p.n; i++) stride *= N;
        long long outer = dim / (stride * N);
        CMat tmp(m.rows(), N);
        for (long long o = 0; o < outer; o++)
          for (long long inner = 0; inner < stride; inner++) {
            long long base = o * stride * N + inner;
            for (long long k = 0; k < N; k++) tmp.col(k) = m.col(base + k * stride);
            tmp = tmp * dft;
            for (long long k = 0; k < N; k++) m.col(base + k * stride) = tmp.col(k);
          }
      }
      return;
    }
  }
}

}  // namespace

Propagator word_propagator(const GeneratorWord& word, const QuantizationParams& p) {
  if (!p.theta_zero())
    throw std::invalid_argument("word_propagator: explicit formulas require theta = 0");
  const long long dim = p.dim();
  CMat m = CMat::Identity(dim, dim);
  for (const auto& t : word.tokens) right_apply_token(m, t, p);
  return {p, std::move(m), word.target, "word"};
}

GeneratorWord factor_sl2(const SympIntMatrix& a) {
  if (a.n() != 1) throw std::invalid_argument("factor_sl2: n = 1 only");
  // Reduce W * A = I by Euclid on the first column with left-multiplications
  // by S_b (row2 += b row1) and F (row swap with sign), then invert the word.
  long long m00 = a.mat()(0, 0).convert_to<long long>();
  long long m01 = a.mat()(0, 1).convert_to<long long>();
  long long m10 = a.mat()(1, 0).convert_to<long long>();
  long long m11 = a.mat()(1, 1).convert_to<long long>();

  // inverse tokens accumulated in application order; A = product(reversed inverses)
  struct Step {
    bool is_f;
    long long b;  // for S_b
    int fpow;     // for F^k
  };
  std::vector<Step> steps;
  auto apply_S = [&](long long b) {  // row2 += b*row1
    m10 += b * m00;
    m11 += b * m01;
    steps.push_back({false, b, 0});
  };
  auto apply_F = [&]() {  // rows (r1, r2) <- (r2, -r1)
    std::swap(m00, m10);
    std::swap(m01, m11);
    m10 = -m10;
    m11 = -m11;
    steps.push_back({true, 0, 1});
  };
  int guard = 0;
  while (m10 != 0) {
    if (m00 == 0 || std::llabs(m10) < std::llabs(m00)) {
      apply_F();  // swap roles so the S-step below makes progress
    } else {
      long long q = m10 / m00;
      long long r = m10 - q * m00;
      if (std::llabs(2 * r) > std::llabs(m00)) q += (r > 0) == (m00 > 0) ? 1 : -1;
      apply_S(-q);
    }
    if (++guard > 200) throw std::logic_error("factor_sl2: reduction did not terminate");
  }
  // now lower-left is 0 and det = 1 so m00 = m11 = +-1
  if (m00 == -1) {
    apply_F();
    apply_F();  // F^2 = -I
  }
  if (m01 != 0) {
    // clear the upper-right: [[1, b], [0, 1]] = F S_b F^{-1} applied on the left
    long long b = m01;
    apply_F();
    apply_S(b);
    apply_F();
    apply_F();
    apply_F();
    m01 = 0;
  }
  // W A = I with W = P_k ... P_1 (P_i the i-th applied left factor), so
  // A = P_1^{-1} P_2^{-1} ... P_k^{-1}: inverses in forward order.
  // inv(S_b) = S_{-b}; inv(F) = F^3.
  std::vector<GeneratorToken> toks;
  IntMatrix b1(1, 1);
  for (const Step& st : steps) {
    if (st.is_f) {
      for (int r = 0; r < 3; r++) toks.push_back(GeneratorToken::F());
    } else {
      b1(0, 0) = -st.b;
      if (b1(0, 0) != 0) toks.push_back(GeneratorToken::S(b1));
    }
  }
  // compress runs of F mod 4
  std::vector<GeneratorToken> out;
  size_t i = 0;
  while (i < toks.size()) {
    if (toks[i].kind != GeneratorToken::Kind::F) {
      out.push_back(toks[i++]);
      continue;
    }
    size_t j = i;
    while (j < toks.size() && toks[j].kind == GeneratorToken::Kind::F) j++;
    size_t run = (j - i) % 4;
    for (size_t r = 0; r < run; r++) out.push_back(GeneratorToken::F());
    i = j;
  }
  GeneratorWord w = GeneratorWord::from_tokens(std::move(out), 1);
  if (!(w.target.mat() == a.mat())) throw std::logic_error("factor_sl2: product check failed");
  return w;
}

IntMatrix symplectic_direct_sum(const IntMatrix& a, const IntMatrix& b) {
  int na = a.rows() / 2, nb = b.rows() / 2, n = na + nb;
  IntMatrix m(2 * n, 2 * n);
  auto put = [&](const IntMatrix& s, int nblk, int off) {
    for (int i = 0; i < nblk; i++)
      for (int j = 0; j < nblk; j++) {
        m(off + i, off + j) = s(i, j);                  // x <- x
        m(off + i, n + off + j) = s(i, nblk + j);       // x <- xi
        m(n + off + i, off + j) = s(nblk + i, j);       // xi <- x
        m(n + off + i, n + off + j) = s(nblk + i, nblk + j);
      }
  };
  put(a, na, 0);
  put(b, nb, na);
  return m;
}

Propagator propagator_tensor(const Propagator& pa, const Propagator& pb) {
  if (pa.params.N != pb.params.N) throw std::invalid_argument("tensor: N mismatch");
  if (!pa.params.theta_zero() || !pb.params.theta_zero())
    throw std::invalid_argument("tensor: theta = 0 only");
  int n = pa.params.n + pb.params.n;
  QuantizationParams p(n, pa.params.N);
  long long da = pa.params.dim(), db = pb.params.dim();
  CMat m(da * db, da * db);
  for (long long i = 0; i < da; i++)
    for (long long j = 0; j < da; j++) m.block(i * db, j * db, db, db) = pa.m(i, j) * pb.m;
  IntMatrix target = symplectic_direct_sum(pa.a.mat(), pb.a.mat());
  return {p, std::move(m), SympIntMatrix::verify(target), "tensor"};
}

namespace {

// apply X -> V^* X U in place using a scratch buffer (permutation + phases)
void conj_translate(const TranslationOp& v, const TranslationOp& u, const CMat& x, CMat& out) {
  const long long dim = x.rows();
  // (V^* X U)[r, c] = conj(vphase[r]) * uphase[c] * X[vperm[r], uperm[c]]
  for (long long c = 0; c < dim; c++) {
    const long long uc = u.perm[c];
    const cdouble up = u.phase(c);
    auto src = x.col(uc);
    auto dst = out.col(c);
    for (long long r = 0; r < dim; r++) dst(r) = std::conj(v.phase(r)) * up * src(v.perm[r]);
  }
}

}  // namespace

Propagator intertwiner_solve(const SympIntMatrix& a, const QuantizationParams& p, double tol) {
  const int twon = a.dim();
  if (twon != 2 * p.n) throw std::invalid_argument("intertwiner_solve: dimension mismatch");
  if (!theta_admissible(a, p.N, p.theta))
    throw std::invalid_argument("intertwiner_solve: theta violates the quantization condition");
  const long long dim = p.dim();

  std::vector<TranslationOp> us, vs;
  for (int k = 0; k < twon; k++) {
    std::vector<long long> e(twon, 0), ae(twon);
    e[k] = 1;
    std::vector<Int> aei = a.mat().apply(std::vector<Int>(e.begin(), e.end()));
    for (int i = 0; i < twon; i++) ae[i] = aei[i].convert_to<long long>();
    us.push_back(mode_translation(e, p));
    vs.push_back(mode_translation(ae, p));
  }

  // Cyclic averages P_k = (1/N) sum_m Phi_k^m with Phi_k(X) = V_k^* X U_k
  // commute and their product projects onto the intertwiner line.
  auto project = [&](CMat x) {
    CMat y(dim, dim), acc(dim, dim);
    for (int k = 0; k < twon; k++) {
      acc = x;
      y = x;
      CMat tmp(dim, dim);
      for (long long m = 1; m < p.N; m++) {
        conj_translate(vs[k], us[k], y, tmp);
        std::swap(y, tmp);
        acc += y;
      }
      x = acc / double(p.N);
    }
    return x;
  };

  // deterministic pseudo-random start (mt19937_64 bit stream)
  auto fill_random = [&](CMat& x, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    for (long long c = 0; c < dim; c++)
      for (long long r = 0; r < dim; r++) {
        double a = double(rng() >> 11) * 0x1p-53;
        double b2 = double(rng() >> 11) * 0x1p-53;
        x(r, c) = cdouble(a - 0.5, b2 - 0.5);
      }
  };
  CMat x0(dim, dim);
  fill_random(x0, 0x1777ul);
  CMat m = project(std::move(x0));
  double nm = m.norm();
  if (nm < 1e-8) throw NonConvergence("intertwiner projector: start orthogonal to solution line");
  m /= nm;

  // residual of the intertwining relations
  double res = 0;
  {
    CMat tmp(dim, dim);
    for (int k = 0; k < twon; k++) {
      conj_translate(vs[k], us[k], m, tmp);
      res = std::max(res, (tmp - m).norm());
    }
  }
  if (res > tol) throw NonConvergence("intertwiner residual " + std::to_string(res) + " > tol");

  // dimension-1 check: a second independent start must project onto the same
  // line (rank-1 projector)
  {
    CMat x1(dim, dim);
    fill_random(x1, 0x2889ul);
    CMat m2 = project(std::move(x1));
    cdouble ip = (m.adjoint() * m2).trace();
    double ortho = (m2 - ip * m).norm();
    if (ortho > 1e-6 * std::max(1.0, m2.norm()))
      throw DegenerateIntertwiner("projector rank exceeds 1: orthogonal component " +
                                  std::to_string(ortho));
  }

  // scale to unitary (the projector output is unitary up to a constant)
  double c0 = std::sqrt(double(dim)) / m.norm();
  m *= c0;
  normalize_phase(m);
  return {p, std::move(m), a, "intertwiner"};
}

TrigSymbol symbol_pullback(const TrigSymbol& a, const SympIntMatrix& A) {
  TrigSymbol out(a.n());
  for (const auto& [w, c] : a.coeffs()) {
    std::vector<Int> wi(w.begin(), w.end());
    std::vector<Int> u = A.apply_inv(wi);
    std::vector<long long> ul(u.size());
    for (size_t i = 0; i < u.size(); i++) ul[i] = u[i].convert_to<long long>();
    out.add(ul, c);
  }
  return out;
}

double egorov_residual(const Propagator& m, const TrigSymbol& a) {
  OperatorOnH opa = quantize(a, m.params);
  OperatorOnH opb = quantize(symbol_pullback(a, m.a), m.params);
  CMat d = m.m.adjoint() * opa.m * m.m - opb.m;
  return operator_norm_est(d);
}

double egorov_mode_residual_fro(const Propagator& m, const std::vector<long long>& w) {
  // || U_{w/N} M - M U_{A^{-1}w/N} ||_F, one pass over M
  std::vector<Int> wi(w.begin(), w.end());
  std::vector<Int> awi = m.a.apply_inv(wi);
  std::vector<long long> aw(awi.size());
  for (size_t i = 0; i < awi.size(); i++) aw[i] = awi[i].convert_to<long long>();
  TranslationOp ua = mode_translation(w, m.params);
  TranslationOp ub = mode_translation(aw, m.params);
  const long long dim = m.params.dim();
  // (U_a M)[r, c] = ua.phase[j] M[j, c] with r = ua.perm[j];
  // iterate source rows j so both reads stream down columns.
  std::vector<long long> inv(dim);
  for (long long j = 0; j < dim; j++) inv[ua.perm[j]] = j;
  double acc = 0;
  for (long long c = 0; c < dim; c++) {
    auto colm = m.m.col(c);
    auto colb = m.m.col(ub.perm[c]);
    const cdouble ubp = ub.phase(c);
    for (long long r = 0; r < dim; r++) {
      long long j = inv[r];
      cdouble d = ua.phase(j) * colm(j) - ubp * colb(r);
      acc += std::norm(d);
    }
  }
  return std::sqrt(acc);
}

double egorov_residual_box(const Propagator& m, long long wmax) {
  // the defect norms for w and -w coincide, so scan half the box
  const int d = 2 * m.params.n;
  std::vector<long long> w(d, -wmax);
  double worst = 0;
  while (true) {
    // lexicographic sign: first nonzero coordinate > 0 (plus w = 0 skipped)
    int firstnz = -1;
    for (int i = 0; i < d; i++)
      if (w[i] != 0) {
        firstnz = i;
        break;
      }
    if (firstnz >= 0 && w[firstnz] > 0)
      worst = std::max(worst, egorov_mode_residual_fro(m, w));
    int i = d - 1;
    for (; i >= 0; i--) {
      if (w[i] < wmax) {
        w[i]++;
        break;
      }
      w[i] = -wmax;
    }
    if (i < 0) break;
  }
  return worst;
}

void normalize_phase(CMat& m) {
  long long br = 0, bc = 0;
  double best = -1;
  for (long long c = 0; c < m.cols(); c++)
    for (long long r = 0; r < m.rows(); r++) {
      double v = std::abs(m(r, c));
      if (v > best * (1 + 1e-12)) {
        best = v;
        br = r;
        bc = c;
      }
    }
  cdouble z = m(br, bc);
  if (std::abs(z) > 0) m *= std::conj(z) / std::abs(z);
}

double phase_distance(const CMat& m1, const CMat& m2) {
  // minimizer phi = arg <m1, m2>_F; form the rotated difference directly to
  // avoid the cancellation in |m1|^2 + |m2|^2 - 2|<m1,m2>|
  cdouble ip = (m2.adjoint() * m1).trace();
  cdouble ph = std::abs(ip) > 0 ? ip / std::abs(ip) : cdouble(1.0);
  return (m1 - ph * m2).norm();
}

}  // namespace qcat
