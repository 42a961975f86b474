#include "qcat/fup.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qcat/lindense.hpp"
#include "qcat/quantize.hpp"

namespace qcat {

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> parts) {
  for (auto& [a, b] : parts)
    if (b < a) std::swap(a, b);
  std::sort(parts.begin(), parts.end());
  for (const auto& iv : parts) {
    if (!p_.empty() && iv.first <= p_.back().second) {
      p_.back().second = std::max(p_.back().second, iv.second);
    } else {
      p_.push_back(iv);
    }
  }
}

IntervalSet IntervalSet::cantor_middle_thirds(int level) {
  std::vector<std::pair<double, double>> cur{{0.0, 1.0}};
  for (int l = 0; l < level; l++) {
    std::vector<std::pair<double, double>> next;
    next.reserve(cur.size() * 2);
    for (auto [a, b] : cur) {
      double t = (b - a) / 3.0;
      next.push_back({a, a + t});
      next.push_back({b - t, b});
    }
    cur = std::move(next);
  }
  return IntervalSet(std::move(cur));
}

bool IntervalSet::contains(double x, double tol) const {
  for (const auto& [a, b] : p_)
    if (x >= a - tol && x <= b + tol) return true;
  return false;
}

IntervalSet IntervalSet::union_with(const IntervalSet& o) const {
  auto parts = p_;
  parts.insert(parts.end(), o.p_.begin(), o.p_.end());
  return IntervalSet(std::move(parts));
}

namespace {

// maximal open gaps of X, padded with large flanking gaps so windows that
// stick out of the hull are served
std::vector<std::pair<double, double>> gaps_padded(const IntervalSet& x, double length) {
  std::vector<std::pair<double, double>> g;
  const auto& p = x.parts();
  double lo = x.min(), hi = x.max();
  g.push_back({lo - 10 * length - 1, lo});
  for (size_t i = 0; i + 1 < p.size(); i++) g.push_back({p[i].second, p[i + 1].first});
  g.push_back({hi, hi + 10 * length + 1});
  return g;
}

}  // namespace

double porosity_worst_ratio(const IntervalSet& x, double length,
                            std::pair<double, double>* witness) {
  if (x.empty()) return 1.0;
  const double L = length;
  auto gaps = gaps_padded(x, L);
  // Events where some gap changes regime; between events the largest-overlap
  // function g(p) = max over gaps of |G cap [p, p+L]| is a max of affine
  // pieces: value = max(plateaus, p + L - min_u(rising), max_v(falling) - p).
  struct Ev {
    double p;
    int gap;
    int what;  // 0: start rising, 1: rising->plateau, 2: plateau->falling, 3: end
  };
  std::vector<Ev> evs;
  for (int i = 0; i < int(gaps.size()); i++) {
    auto [u, v] = gaps[i];
    if (v - u <= 0) continue;
    evs.push_back({u - L, i, 0});
    evs.push_back({std::min(u, v - L), i, 1});
    evs.push_back({std::max(u, v - L), i, 2});
    evs.push_back({v, i, 3});
  }
  std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) { return a.p < b.p; });

  // sweep with multisets of active contributions; between consecutive events
  // g is the max of affine pieces (convex), so the segment minimum is at an
  // endpoint or at the crossing of the extreme rising and falling pieces
  std::multiset<double> rising_u, falling_v, plateau;
  double pmin = x.min() - L, pmax = x.max();
  double best = 1e300;
  double best_p = pmin;
  auto value_at = [&](double p) {
    double val = 0;
    if (!plateau.empty()) val = std::max(val, *plateau.rbegin());
    if (!rising_u.empty()) val = std::max(val, p + L - *rising_u.begin());
    if (!falling_v.empty()) val = std::max(val, *falling_v.rbegin() - p);
    return val;
  };
  auto consider = [&](double p) {
    double v = value_at(p);
    if (v < best) {
      best = v;
      best_p = p;
    }
  };
  size_t k = 0;
  double prev = -1e300;
  while (k < evs.size()) {
    double pcur = evs[k].p;
    double lo = std::max(prev, pmin), hi = std::min(pcur, pmax);
    if (lo <= hi) {
      consider(lo);
      consider(hi);
      if (!rising_u.empty() && !falling_v.empty()) {
        double pstar = (*falling_v.rbegin() + *rising_u.begin() - L) / 2.0;
        if (pstar > lo && pstar < hi) consider(pstar);
      }
    }
    while (k < evs.size() && evs[k].p == pcur) {
      const Ev& e = evs[k];
      auto [u, v] = gaps[e.gap];
      double plat = std::min(v - u, L);
      switch (e.what) {
        case 0:
          rising_u.insert(u);
          break;
        case 1:
          rising_u.erase(rising_u.find(u));
          plateau.insert(plat);
          break;
        case 2:
          plateau.erase(plateau.find(plat));
          falling_v.insert(v);
          break;
        case 3:
          falling_v.erase(falling_v.find(v));
          break;
      }
      k++;
    }
    prev = pcur;
  }
  if (witness) *witness = {best_p, best_p + L};
  return best / L;
}

PorosityResult porosity_check(const IntervalSet& x, const PorosityQuery& q) {
  PorosityResult r;
  if (x.empty()) {
    r.porous = true;
    r.worst_ratio = 1.0;
    return r;
  }
  if (q.tau0 <= 0) throw std::invalid_argument("porosity_check: tau0 must be positive");
  r.porous = true;
  r.worst_ratio = 1e300;
  const double slack = 1e-12;
  for (double len = q.tau0;; len *= 2) {
    bool last = len >= q.tau1;
    if (last) len = q.tau1;
    std::pair<double, double> w;
    double ratio = porosity_worst_ratio(x, len, &w);
    r.ladder.push_back({len, ratio});
    r.worst_ratio = std::min(r.worst_ratio, ratio);
    if (ratio < q.nu - slack && r.porous) {
      r.porous = false;
      r.witness = w;
    }
    if (last) break;
  }
  return r;
}

std::pair<long long, long long> fup_index_counts(const IntervalSet& x, const IntervalSet& y,
                                                 long long bigN) {
  long long cx = 0, cy = 0;
  for (long long j = 0; j < bigN; j++) {
    double t = double(j) / double(bigN);
    if (x.contains(t, 1e-12)) cx++;
    if (y.contains(t, 1e-12)) cy++;
  }
  return {cx, cy};
}

double discrete_fup_norm(const IntervalSet& x, const IntervalSet& y, long long bigN) {
  if (bigN < 2) throw std::invalid_argument("discrete_fup_norm: N >= 2 required");
  std::vector<long long> xs, ys;
  for (long long j = 0; j < bigN; j++) {
    double t = double(j) / double(bigN);
    if (x.contains(t, 1e-12)) xs.push_back(j);
    if (y.contains(t, 1e-12)) ys.push_back(j);
  }
  if (xs.empty() || ys.empty()) return 0.0;
  const double s = 1.0 / std::sqrt(double(bigN));
  std::vector<cdouble> roots(bigN);
  for (long long r = 0; r < bigN; r++) roots[r] = std::polar(1.0, -2.0 * M_PI * double(r) / double(bigN));
  auto apply = [&](const CVecL& in, CVecL& out) {
    out.resize(long(xs.size()));
    for (size_t r = 0; r < xs.size(); r++) {
      cdouble acc = 0;
      for (size_t c = 0; c < ys.size(); c++) acc += roots[(xs[r] * ys[c]) % bigN] * in(long(c));
      out(long(r)) = s * acc;
    }
  };
  auto apply_adj = [&](const CVecL& in, CVecL& out) {
    out.resize(long(ys.size()));
    for (size_t c = 0; c < ys.size(); c++) {
      cdouble acc = 0;
      for (size_t r = 0; r < xs.size(); r++)
        acc += std::conj(roots[(xs[r] * ys[c]) % bigN]) * in(long(r));
      out(long(c)) = s * acc;
    }
  };
  // power iteration on B^* B over the column space
  CVecL v = CVecL::Zero(long(ys.size())), bv, btbv;
  double t = 0.41;
  for (long i = 0; i < long(ys.size()); i++) {
    t = std::fmod(t * 883.0 + 0.37, 1.0);
    v(i) = cdouble(t - 0.5, std::fmod(t * 7.0, 1.0) - 0.5);
  }
  v.normalize();
  double est = 0, prevest = -1;
  for (int it = 0; it < 200 && std::abs(est - prevest) > 1e-12 * std::max(1.0, est); it++) {
    prevest = est;
    apply(v, bv);
    apply_adj(bv, btbv);
    est = bv.norm();
    double nn = btbv.norm();
    if (nn == 0) return 0.0;
    v = btbv / nn;
  }
  return std::min(est, 1.0 + 1e-12);
}

FupFit fup_exponent_fit(const std::vector<std::pair<long long, double>>& series) {
  if (series.size() < 3) throw DegenerateSeries("need >= 3 points");
  std::vector<double> xs, ys;
  for (auto [n, v] : series) {
    if (v <= 0) throw DegenerateSeries("norms must be positive");
    xs.push_back(std::log(1.0 / double(n)));
    ys.push_back(std::log(v));
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); i++) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(xs.size());
  my /= double(ys.size());
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); i++) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw DegenerateSeries("all N equal");
  FupFit f;
  f.beta = sxy / sxx;
  f.intercept = my - f.beta * mx;
  double ss = 0;
  for (size_t i = 0; i < xs.size(); i++) {
    double r = ys[i] - (f.intercept + f.beta * xs[i]);
    ss += r * r;
  }
  size_t dof = xs.size() - 2;
  f.band = dof > 0 ? 2.0 * std::sqrt(ss / double(dof) / sxx) : 0.0;
  return f;
}

bool TorusBox::contains(const std::vector<double>& z, double margin) const {
  for (size_t i = 0; i < side.size(); i++) {
    double lo = side[i].first + margin, hi = side[i].second - margin;
    double t = z[i] - std::floor(z[i]);
    // compare on the circle: shift t by integers into [lo, hi] if possible
    bool in = false;
    for (int s = -1; s <= 1 && !in; s++) in = (t + s > lo) && (t + s < hi);
    if (!in) return false;
  }
  return true;
}

IntervalSet omega_set(const OmegaQuery& q, long long bigN) {
  if (q.a.n() != 1) throw std::invalid_argument("omega_set: n = 1 only");
  SpectralData spec = spectral_analysis(q.a);
  const double h = 1.0 / (2.0 * M_PI * double(bigN));
  const double step = std::pow(h, q.rho) / 16.0;
  const double vrad = q.c0 * std::pow(h, q.rho_prime);
  const int t1 = int(q.word.size());

  // flow direction e_sign, transverse direction e_{-sign} spanning L_{-sign}
  Eigen::Vector2d eflow, etrans;
  if (q.sign > 0) {
    eflow = spec.e_plus;
    etrans = spec.e_minus;  // L_- = E_- when n = 1
  } else {
    eflow = spec.e_minus;
    etrans = spec.e_plus;
  }
  etrans.normalize();

  // powers A^{sign * j} as double 2x2
  Eigen::Matrix2d ad = q.a.dmat();
  if (q.sign < 0) ad = ad.inverse().eval();
  std::vector<Eigen::Matrix2d> pw(t1);
  Eigen::Matrix2d acc = Eigen::Matrix2d::Identity();
  for (int j = 0; j < t1; j++) {
    pw[j] = acc;
    acc = ad * acc;
  }

  const int vsamples = 65;
  const double vstep = 2.0 * vrad / double(vsamples - 1);
  // supp b_{-sign} membership: the word indexes b_{w_j} with the convention
  // of the +- split; hole margins cover the v-sampling gap under A^j
  std::vector<double> growth(t1);
  for (int j = 0; j < t1; j++) growth[j] = (pw[j] * etrans).norm();

  std::vector<std::pair<double, double>> hits;
  long long tsteps = std::llround(std::ceil(q.window / step));
  Eigen::Vector2d base(q.z[0], q.z[1]);
  for (long long ti = 0; ti <= tsteps; ti++) {
    double t = std::min(double(ti) * step, q.window);
    Eigen::Vector2d zt = base + t * eflow;
    bool excluded = true;  // t excluded iff every v lands outside supp
    for (int vi = 0; vi < vsamples && excluded; vi++) {
      double s = -vrad + vstep * double(vi);
      Eigen::Vector2d p = zt + s * etrans;
      bool outside_supp = false;  // exists j with A^j p strictly inside hole
      for (int j = 0; j < t1 && !outside_supp; j++) {
        Eigen::Vector2d pj = pw[j] * p;
        double margin = growth[j] * vstep * 0.5;
        const auto& holes = q.word[j] == 1 ? q.holes_b1 : q.holes_b2;
        for (const auto& hole : holes)
          if (hole.contains({pj(0), pj(1)}, margin)) {
            outside_supp = true;
            break;
          }
      }
      if (!outside_supp) excluded = false;  // this v stays in supp at all times
    }
    if (!excluded) hits.push_back({std::max(0.0, t - step), std::min(q.window, t + step)});
  }
  return IntervalSet(std::move(hits));
}

SafeVerdict safe_check(const std::vector<TorusBox>& u, const SympIntMatrix& a,
                       const InvariantSpaces& spaces, bool char_poly_irreducible) {
  SafeVerdict v;
  if (u.empty()) {
    v.safe = false;
    v.heuristic = false;
    return v;
  }
  if (char_poly_irreducible) {
    // T_+- is the full torus; every translate meets any nonempty open set
    v.safe = true;
    v.heuristic = false;
    return v;
  }
  v.heuristic = true;
  int d = a.dim();
  // integer spanning directions of T_+-: scale the reduced basis rows
  auto integer_dirs = [&](const RationalSubspace& vs) {
    std::vector<std::vector<double>> dirs;
    for (int r = 0; r < vs.basis.rows(); r++) {
      Int lcm = 1;
      for (int c = 0; c < d; c++) {
        Int den = denominator(vs.basis(r, c));
        lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
      }
      std::vector<double> dir(d);
      for (int c = 0; c < d; c++) dir[c] = to_double(vs.basis(r, c) * Rat(lcm));
      dirs.push_back(std::move(dir));
    }
    return dirs;
  };
  auto check_subtorus = [&](const RationalSubspace& vs) {
    auto dirs = integer_dirs(vs);
    int dim_t = int(dirs.size());
    const int xg = 6;    // base-point grid per coordinate
    const int sg = 16;   // samples per subtorus direction
    std::vector<int> xi(d, 0);
    while (true) {
      std::vector<double> x(d);
      for (int i = 0; i < d; i++) x[i] = double(xi[i]) / double(xg);
      // does (x + T) fail to meet U for this translate?
      bool hit = false;
      std::vector<int> si(dim_t, 0);
      while (!hit) {
        std::vector<double> z = x;
        for (int t = 0; t < dim_t; t++)
          for (int c = 0; c < d; c++) z[c] += double(si[t]) / double(sg) * dirs[t][c];
        for (const auto& box : u)
          if (box.contains(z)) {
            hit = true;
            break;
          }
        int t = 0;
        for (; t < dim_t; t++) {
          if (++si[t] < sg) break;
          si[t] = 0;
        }
        if (t == dim_t) break;
      }
      if (!hit) return false;  // found a translate missing U
      int i = 0;
      for (; i < d; i++) {
        if (++xi[i] < xg) break;
        xi[i] = 0;
      }
      if (i == d) break;
    }
    return true;
  };
  v.safe = check_subtorus(spaces.v_plus) && check_subtorus(spaces.v_minus);
  return v;
}

}  // namespace qcat
