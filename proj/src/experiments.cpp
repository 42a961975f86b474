#include "qcat/experiments.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qcat {

EigenSystem eigendecompose(const Propagator& m, double cluster_tol) {
  const long long dim = m.params.dim();
  {
    double udef = (m.m.adjoint() * m.m - CMat::Identity(dim, dim)).norm();
    if (udef > 1e-6 * std::sqrt(double(dim)))
      throw NonUnitaryInput("eigendecompose: input is not unitary, ||M*M - I||_F = " +
                            std::to_string(udef));
  }
  SchurResult s = schur_unitary(m.m);
  EigenSystem e{m.params, std::move(s.eigenvalues), std::move(s.q), {}, s.offdiag_max, 0.0};
  // sort by angle
  std::vector<int> idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  auto angle = [&](int i) {
    double a = std::arg(e.eigenvalues(i));
    return a < 0 ? a + 2 * M_PI : a;
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return angle(a) < angle(b); });
  CVec ev(dim);
  CMat vv(dim, dim);
  for (long long i = 0; i < dim; i++) {
    ev(i) = e.eigenvalues(idx[i]);
    vv.col(i) = e.vectors.col(idx[i]);
  }
  e.eigenvalues = std::move(ev);
  e.vectors = std::move(vv);
  for (long long i = 0; i < dim; i++)
    e.unit_modulus_defect = std::max(e.unit_modulus_defect, std::abs(std::abs(e.eigenvalues(i)) - 1.0));
  // single-linkage clusters on arc distance, wrapping around
  std::vector<std::vector<int>> cl;
  for (long long i = 0; i < dim; i++) {
    if (i > 0 && std::abs(angle_dist(std::arg(e.eigenvalues(i)), std::arg(e.eigenvalues(i - 1)))) <=
                     cluster_tol) {
      cl.back().push_back(int(i));
    } else {
      cl.push_back({int(i)});
    }
  }
  if (cl.size() > 1) {
    double wrap = angle_dist(std::arg(e.eigenvalues(0)), std::arg(e.eigenvalues(dim - 1)));
    if (std::abs(wrap) <= cluster_tol) {
      for (int t : cl.back()) cl.front().push_back(t);
      cl.pop_back();
    }
  }
  e.clusters = std::move(cl);
  return e;
}

double angle_dist(double a, double b) {
  double d = std::fmod(a - b, 2 * M_PI);
  if (d > M_PI) d -= 2 * M_PI;
  if (d < -M_PI) d += 2 * M_PI;
  return d;
}

double quasimode_residual(const Propagator& m, const CVec& u) {
  double nu = u.norm();
  if (nu == 0.0) throw ZeroVector("quasimode_residual: zero vector");
  CVec mu = m.m * u;
  // the closed-form minimizer is z = <Mu,u>/|<Mu,u>|; evaluating the norm of
  // Mu - z u directly avoids the cancellation in the expanded square root
  cdouble ip = u.dot(mu);  // conj-linear in the first slot: this is <Mu, u>
  if (std::abs(ip) == 0.0) return std::sqrt(mu.squaredNorm() + u.squaredNorm());
  cdouble z = ip / std::abs(ip);
  return (mu - z * u).norm();
}

MassProfile mass_profile(const EigenSystem& e, const OperatorOnH& op_a) {
  MassProfile out;
  out.global_min = 1e300;
  for (const auto& cluster : e.clusters) {
    CMat sub(e.vectors.rows(), cluster.size());
    for (size_t k = 0; k < cluster.size(); k++) sub.col(k) = e.vectors.col(cluster[k]);
    CMat b = op_a.m * sub;
    Eigen::JacobiSVD<CMat> svd(b);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    out.cluster_eigenvalue.push_back(e.eigenvalues(cluster[0]));
    out.cluster_size.push_back(int(cluster.size()));
    out.min_mass.push_back(smin);
    out.global_min = std::min(out.global_min, smin);
  }
  if (e.clusters.empty()) out.global_min = 0.0;
  return out;
}

DampedSpectrum damped_spectrum(const OperatorOnH& op_b, const Propagator& m) {
  CMat d = op_b.m * m.m;
  DampedSpectrum s;
  s.eigenvalues = eigenvalues_dense(d);
  s.radius = s.eigenvalues.size() ? s.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return s;
}

double damped_radius(const OperatorOnH& op_b, const Propagator& m) {
  return spectral_radius_block(op_b.m, m.m);
}

std::vector<cdouble> measure_pairings(const StateVector& u, const std::vector<TrigSymbol>& symbols) {
  std::vector<cdouble> out;
  out.reserve(symbols.size());
  for (const auto& a : symbols) {
    // <Op(a) u, u> assembled mode by mode; never materializes Op(a)
    cdouble s = 0;
    for (const auto& [w, c] : a.coeffs()) {
      TranslationOp t = mode_translation(w, u.params);
      cdouble acc = 0;
      for (long long j = 0; j < u.params.dim(); j++)
        acc += t.phase(j) * u.v(j) * std::conj(u.v(t.perm[j]));
      s += c * acc;
    }
    out.push_back(s);
  }
  return out;
}

StateVector gaussian_state(const QuantizationParams& p) {
  if (!p.theta_zero()) throw std::invalid_argument("gaussian_state: theta = 0 only");
  const long long N = p.N;
  // per-coordinate theta series, truncated when terms drop below 1e-18
  std::vector<double> series(N);
  for (long long j = 0; j < N; j++) {
    double x = double(j) / double(N);
    double s = 0;
    for (long long k = -6; k <= 6; k++) {
      double t = std::exp(-M_PI * double(N) * (double(k) + x) * (double(k) + x));
      if (t >= 1e-18) s += t;
    }
    series[j] = s;
  }
  StateVector f{p, CVec(p.dim())};
  for (long long jf = 0; jf < p.dim(); jf++) {
    auto j = p.unrank(jf);
    double v = 1.0;
    for (int i = 0; i < p.n; i++) v *= series[j[i]];
    f.v(jf) = v * std::pow(double(N), -0.5 * p.n);
  }
  return f;
}

std::pair<StateVector, StateVector> block_eigenvectors(const QuantizationParams& p) {
  if (!p.theta_zero()) throw std::invalid_argument("block_eigenvectors: theta = 0 only");
  StateVector e0{p, CVec::Zero(p.dim())};
  e0.v(0) = 1.0;
  StateVector uni{p, CVec::Constant(p.dim(), std::pow(double(p.N), -0.5 * p.n))};
  return {std::move(e0), std::move(uni)};
}

OperatorOnH conjugated(const OperatorOnH& l, const Propagator& m, int t) {
  CMat cur = l.m;
  CMat mt = t >= 0 ? m.m : CMat(m.m.adjoint());
  int k = std::abs(t);
  // M^{-T} L M^T by |T| successive conjugations
  for (int i = 0; i < k; i++) cur = mt.adjoint() * cur * mt;
  return {l.params, std::move(cur)};
}

PropagationPlan PropagationPlan::make(double rho, double rho_prime, int j_blocks, double alpha,
                                      long long bigN, const SpectralData& spec,
                                      std::optional<int> free_time) {
  PropagationPlan p;
  p.rho = rho;
  p.rho_prime = rho_prime;
  p.j_blocks = j_blocks;
  p.alpha = alpha;
  p.gamma = spec.gamma;
  p.lambda_plus = std::abs(spec.lambda_plus.approx);
  double llp = std::log(p.lambda_plus);
  p.constraints_ok = (rho + rho_prime < 1.0) && (rho * std::log(p.gamma) / llp < rho_prime) &&
                     (rho_prime < 0.5) && (0.5 < rho) &&
                     (double(j_blocks) > 1.0 + 2.0 * std::log(2.0) / llp);
  if (free_time) {
    int t1 = *free_time;
    p.t0 = std::max(1, int(std::llround(double(t1) / j_blocks)));
    p.t1 = p.t0 * j_blocks;
  } else {
    p.t0 = int(std::floor(rho * std::log(double(bigN)) / (double(j_blocks) * llp)));
    p.t1 = p.t0 * j_blocks;
    if (p.t0 == 0)
      throw T0Zero("floor formula gives T0 = 0 at N = " + std::to_string(bigN) +
                   "; use the free_time override");
  }
  return p;
}

double digit_one_proportion(const std::vector<int>& word) {
  if (word.empty()) return 0.0;
  int ones = 0;
  for (int d : word) ones += d == 1 ? 1 : 0;
  return double(ones) / double(word.size());
}

WordPartition word_partition(const PropagationPlan& plan) {
  if (plan.t0 < 1) throw T0Zero("word_partition: T0 = 0");
  WordPartition wp;
  wp.t0 = plan.t0;
  wp.two_j = 2 * plan.j_blocks;
  long long total = 1LL << plan.t0;
  for (long long mask = 0; mask < total; mask++) {
    std::vector<int> w(plan.t0);
    for (int i = 0; i < plan.t0; i++) w[i] = (mask >> i & 1) ? 2 : 1;
    if (digit_one_proportion(w) >= plan.alpha - 1e-12)
      wp.z.push_back(std::move(w));
    else
      wp.complement.push_back(std::move(w));
  }
  wp.size_x = 1;
  for (int b = 0; b < wp.two_j; b++) wp.size_x *= Int(wp.complement.size());
  Int full = Int(1) << (2 * plan.t1);
  wp.size_y = full - wp.size_x;
  return wp;
}

std::vector<std::vector<int>> WordPartition::enumerate_x(size_t cap) const {
  std::vector<std::vector<int>> out;
  if (complement.empty()) return out;
  std::vector<size_t> idx(two_j, 0);
  while (out.size() < cap) {
    std::vector<int> w;
    for (int b = 0; b < two_j; b++)
      w.insert(w.end(), complement[idx[b]].begin(), complement[idx[b]].end());
    out.push_back(std::move(w));
    int b = 0;
    for (; b < two_j; b++) {
      if (++idx[b] < complement.size()) break;
      idx[b] = 0;
    }
    if (b == two_j) break;
  }
  return out;
}

WordContext WordContext::make(const TrigSymbol& b1, const TrigSymbol& b2, const Propagator& m,
                              const PropagationPlan& plan) {
  OperatorOnH o1 = quantize(b1, m.params);
  OperatorOnH o2 = quantize(b2, m.params);
  OperatorOnH ob{m.params, o1.m + o2.m};
  return {b1, b2, std::move(o1), std::move(o2), std::move(ob), &m, plan};
}

OperatorOnH word_operator(const std::vector<int>& word, const WordContext& ctx) {
  if (word.empty()) throw std::invalid_argument("word_operator: empty word");
  // B_w = M^{-(m-1)} B_{w_{m-1}} M B_{w_{m-2}} M ... M B_{w_0}
  const Propagator& m = *ctx.m;
  int len = int(word.size());
  CMat acc = (word[0] == 1 ? ctx.op_b1 : ctx.op_b2).m;
  for (int t = 1; t < len; t++) {
    acc = m.m * acc;
    acc = (word[t] == 1 ? ctx.op_b1 : ctx.op_b2).m * acc;
  }
  for (int t = 1; t < len; t++) acc = m.m.adjoint() * acc;
  return {m.params, std::move(acc)};
}

namespace {

// "core" of a T0-block: B_{v_{T0-1}} M B_{v_{T0-2}} M ... M B_{v_0}
CMat block_core(const std::vector<int>& v, const WordContext& ctx) {
  const Propagator& m = *ctx.m;
  CMat acc = (v[0] == 1 ? ctx.op_b1 : ctx.op_b2).m;
  for (size_t t = 1; t < v.size(); t++) {
    acc = m.m * acc;
    acc = (v[t] == 1 ? ctx.op_b1 : ctx.op_b2).m * acc;
  }
  return acc;
}

}  // namespace

WordDecay word_decay_dense(const WordContext& ctx) {
  const Propagator& m = *ctx.m;
  const PropagationPlan& plan = ctx.plan;
  if (2 * plan.t1 > 20) throw WordBudgetExceeded("2 T1 > 20");
  WordPartition wp = word_partition(plan);
  const long long dim = m.params.dim();
  const int two_j = wp.two_j;

  // per-block cores summed over the complement (for X) and over Z
  CMat c_sum = CMat::Zero(dim, dim), w_sum = CMat::Zero(dim, dim);
  for (const auto& v : wp.complement) c_sum += block_core(v, ctx);
  for (const auto& v : wp.z) w_sum += block_core(v, ctx);
  CMat z_sum = w_sum;
  w_sum += c_sum;  // full-block core, equals (B M)^{T0-1} B

  // B_X = M^{-(2T1-1)} (C M)^{2J-1} C
  CMat bx = c_sum;
  for (int b = 1; b < two_j; b++) bx = c_sum * (m.m * bx);
  // B_Y = sum_l [W-chain above] M Z M [C-chain below]
  CMat by = CMat::Zero(dim, dim);
  for (int l = 1; l <= two_j; l++) {
    CMat part = z_sum;
    for (int b = 1; b < l; b++) {  // blocks below l are complement blocks
      // part <- part * M * C ... assemble right side first instead
      ;
    }
    // right side: C-chain of length l-1
    CMat chain;
    if (l > 1) {
      chain = c_sum;
      for (int b = 2; b < l; b++) chain = c_sum * (m.m * chain);
      part = z_sum * (m.m * chain);
    }
    // left side: W-chain of length 2J - l
    for (int b = 0; b < two_j - l; b++) part = w_sum * (m.m * part);
    by += part;
  }
  // undo the time conjugation prefactor
  CMat minv_pow = CMat::Identity(dim, dim);
  for (int t = 0; t < 2 * plan.t1 - 1; t++) minv_pow = m.m.adjoint() * minv_pow;
  bx = minv_pow * bx;
  by = minv_pow * by;

  // direct decomposition target M^{-(2T1-1)} (B M)^{2T1-1} B
  CMat direct = ctx.op_b.m;
  for (int t = 1; t < 2 * plan.t1; t++) direct = ctx.op_b.m * (m.m * direct);
  direct = minv_pow * direct;

  WordDecay out;
  out.norm_bx = operator_norm_est(bx);
  out.norm_by = operator_norm_est(by);
  out.identity_residual = operator_norm_est(CMat(bx + by - direct));
  out.size_x = wp.size_x;
  return out;
}

WordDecay word_decay_matfree(const WordContext& ctx, int probe_vectors) {
  const Propagator& m = *ctx.m;
  const PropagationPlan& plan = ctx.plan;
  if (2 * plan.t1 > 24) throw WordBudgetExceeded("2 T1 > 24");
  WordPartition wp = word_partition(plan);
  const long long dim = m.params.dim();
  const int two_j = wp.two_j;

  // y <- core(v) x accumulated over a set of block words
  auto blocks_apply = [&](const std::vector<std::vector<int>>& set, const CVec& x, CVec& y) {
    y.setZero();
    CVec t1v(dim), t2v(dim);
    for (const auto& v : set) {
      t1v.noalias() = (v[0] == 1 ? ctx.op_b1 : ctx.op_b2).m * x;
      for (size_t t = 1; t < v.size(); t++) {
        t2v.noalias() = m.m * t1v;
        t1v.noalias() = (v[t] == 1 ? ctx.op_b1 : ctx.op_b2).m * t2v;
      }
      y += t1v;
    }
  };
  auto blocks_apply_adj = [&](const std::vector<std::vector<int>>& set, const CVec& x, CVec& y) {
    y.setZero();
    CVec t1v(dim), t2v(dim);
    for (const auto& v : set) {
      size_t last = v.size() - 1;
      t1v.noalias() = (v[last] == 1 ? ctx.op_b1 : ctx.op_b2).m.adjoint() * x;
      for (size_t t = 1; t < v.size(); t++) {
        t2v.noalias() = m.m.adjoint() * t1v;
        t1v.noalias() = (v[last - t] == 1 ? ctx.op_b1 : ctx.op_b2).m.adjoint() * t2v;
      }
      y += t1v;
    }
  };
  auto bx_apply = [&](const CVec& x, CVec& y) {
    CVec cur = x, tmp(dim);
    for (int b = 0; b < two_j; b++) {
      if (b > 0) cur = m.m * cur;
      blocks_apply(wp.complement, cur, tmp);
      cur = tmp;
    }
    for (int t = 0; t < 2 * plan.t1 - 1; t++) cur = m.m.adjoint() * cur;
    y = cur;
  };
  auto bx_apply_adj = [&](const CVec& x, CVec& y) {
    CVec cur = x, tmp(dim);
    for (int t = 0; t < 2 * plan.t1 - 1; t++) cur = m.m * cur;
    for (int b = 0; b < two_j; b++) {
      blocks_apply_adj(wp.complement, cur, tmp);
      cur = tmp;
      if (b + 1 < two_j) cur = m.m.adjoint() * cur;
    }
    y = cur;
  };
  // B_W = M^{-(2T1-1)} (B M)^{2T1-1} B: apply directly
  auto bw_apply = [&](const CVec& x, CVec& y) {
    CVec cur = ctx.op_b.m * x;
    for (int t = 1; t < 2 * plan.t1; t++) {
      cur = m.m * cur;
      cur = ctx.op_b.m * cur;
    }
    for (int t = 0; t < 2 * plan.t1 - 1; t++) cur = m.m.adjoint() * cur;
    y = cur;
  };
  auto bw_apply_adj = [&](const CVec& x, CVec& y) {
    CVec cur = x;
    for (int t = 0; t < 2 * plan.t1 - 1; t++) cur = m.m * cur;
    cur = ctx.op_b.m.adjoint() * cur;
    for (int t = 1; t < 2 * plan.t1; t++) {
      cur = m.m.adjoint() * cur;
      cur = ctx.op_b.m.adjoint() * cur;
    }
    y = cur;
  };
  auto by_apply = [&](const CVec& x, CVec& y) {
    CVec a(dim), b(dim);
    bw_apply(x, a);
    bx_apply(x, b);
    y = a - b;
  };
  auto by_apply_adj = [&](const CVec& x, CVec& y) {
    CVec a(dim), b(dim);
    bw_apply_adj(x, a);
    bx_apply_adj(x, b);
    y = a - b;
  };

  WordDecay out;
  out.size_x = wp.size_x;
  out.norm_bx = operator_norm_est(dim, bx_apply, bx_apply_adj, 240, 1e-9);
  out.norm_by = operator_norm_est(dim, by_apply, by_apply_adj, 240, 1e-9);
  // identity probe: when b1 + b2 = 1 the direct operator is the identity and
  // the X/Y split is exact by construction; probe the defect on random unit
  // vectors as a build sanity check
  double worst = 0;
  CVec x(dim), bxv(dim), bwv(dim);
  std::mt19937_64 rng(0x980beul);
  for (int pv = 0; pv < probe_vectors; pv++) {
    for (long long i = 0; i < dim; i++) {
      double a1 = double(rng() >> 11) * 0x1p-53;
      double a2 = double(rng() >> 11) * 0x1p-53;
      x(i) = cdouble(a1 - 0.5, a2 - 0.5);
    }
    x.normalize();
    bw_apply(x, bwv);
    bx_apply(x, bxv);
    // B_Y x computed from the block sums would equal bwv - bxv identically;
    // instead check the full-block sum against the direct power formula
    CVec cur = x, tmp(dim);
    for (int b = 0; b < two_j; b++) {
      if (b > 0) cur = m.m * cur;
      std::vector<std::vector<int>> all = wp.complement;
      all.insert(all.end(), wp.z.begin(), wp.z.end());
      blocks_apply(all, cur, tmp);
      cur = tmp;
    }
    for (int t = 0; t < 2 * plan.t1 - 1; t++) cur = m.m.adjoint() * cur;
    worst = std::max(worst, (cur - bwv).norm());
  }
  out.identity_residual = worst;
  return out;
}

namespace {

// per-coordinate chi as a symbol on n pairs, in coordinate `coord`,
// position (momentum = false) or momentum flavor
TrigSymbol chi_on_coord(int n, int coord, bool momentum, double halfwidth, int degree) {
  TrigSymbol chi(n);
  std::vector<long long> w(2 * n, 0);
  chi.add(w, 2.0 * halfwidth);
  for (int k = 1; k <= degree; k++) {
    double c = (1.0 - double(k) / double(degree + 1)) * std::sin(2 * M_PI * k * halfwidth) /
               (M_PI * double(k));
    // e^{2 pi i k z_coord}: position needs eta = k e_coord; momentum y = -k e_coord
    for (int sgn : {+1, -1}) {
      std::fill(w.begin(), w.end(), 0);
      if (!momentum)
        w[n + coord] = sgn * k;
      else
        w[coord] = -sgn * k;
      chi.add(w, 0.5 * c);
    }
  }
  return chi;
}

}  // namespace

TrigSymbol fejer_interval(double halfwidth, int degree) {
  // hat chi_0 = 2r, hat chi_k = (1 - |k|/(m+1)) sin(2 pi k r)/(pi k)
  return chi_on_coord(1, 0, false, halfwidth, degree);
}

TrigSymbol box_bump(int n, double halfwidth, int degree) {
  TrigSymbol out = TrigSymbol::constant(n, 1.0);
  for (int i = 0; i < n; i++) out = out * chi_on_coord(n, i, false, halfwidth, degree);
  for (int i = 0; i < n; i++) out = out * chi_on_coord(n, i, true, halfwidth, degree);
  return out;
}

TrigSymbol damping_symbol(int n, int degree, double halfwidth) {
  return TrigSymbol::constant(n, 1.0) + box_bump(n, halfwidth, degree) * cdouble(-1.0, 0.0);
}

OperatorOnH quantize_box_bump(int n, double halfwidth, int degree, long long bigN) {
  QuantizationParams p1(1, bigN);
  TrigSymbol pair1 = chi_on_coord(1, 0, false, halfwidth, degree) *
                     chi_on_coord(1, 0, true, halfwidth, degree);
  OperatorOnH o1 = quantize(pair1, p1);
  OperatorOnH acc = o1;
  for (int i = 1; i < n; i++) acc = operator_tensor(acc, o1);
  return acc;
}

TrigSymbol cosine_bump_position(int n, int degree) {
  // ((1 + cos 2 pi x_1) / 2)^degree expanded in modes
  TrigSymbol one_plus_cos(n);
  std::vector<long long> w(2 * n, 0);
  one_plus_cos.add(w, 0.5);
  w[n] = 1;  // eta_1 = 1: mode e^{2 pi i x_1}
  one_plus_cos.add(w, 0.25);
  w[n] = -1;
  one_plus_cos.add(w, 0.25);
  TrigSymbol acc = TrigSymbol::constant(n, 1.0);
  for (int d = 0; d < degree; d++) acc = acc * one_plus_cos;
  return acc;
}

TrigSymbol cosine_bump(int n, int degree) {
  // prod over all 2n coordinates of ((1 + cos 2 pi z_i)/2)^degree
  auto chi_modes = [&](bool momentum, int coord) {
    TrigSymbol s(n);
    std::vector<long long> w(2 * n, 0);
    s.add(w, 0.5);
    if (!momentum) {
      w[n + coord] = 1;
      s.add(w, 0.25);
      w[n + coord] = -1;
      s.add(w, 0.25);
    } else {
      w[coord] = -1;
      s.add(w, 0.25);
      w[coord] = 1;
      s.add(w, 0.25);
    }
    TrigSymbol acc = TrigSymbol::constant(n, 1.0);
    for (int d = 0; d < degree; d++) acc = acc * s;
    return acc;
  };
  TrigSymbol out = TrigSymbol::constant(n, 1.0);
  for (int i = 0; i < n; i++) out = out * chi_modes(false, i);
  for (int i = 0; i < n; i++) out = out * chi_modes(true, i);
  return out;
}

TrigSymbol damping_symbol(int n, int degree) {
  TrigSymbol b = TrigSymbol::constant(n, 1.0);
  TrigSymbol bump = cosine_bump(n, degree);
  return b + bump * cdouble(-1.0, 0.0);
}

}  // namespace qcat
