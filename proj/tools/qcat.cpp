// qcat: batch front-end for the quantum cat map laboratory.
//
// Subcommands: analyze, propagator, eigen, wigner, mass, damped, words, fup,
// porosity, figure1, figure2, sweep. Every run writes a manifest with the
// resolved parameters and checksums of its outputs; re-running a command
// from its manifest reproduces the CSV artifacts byte for byte.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qcat/experiments.hpp"
#include "qcat/fup.hpp"
#include "qcat/io.hpp"

using namespace qcat;
namespace fs = std::filesystem;
using nlohmann::json;

extern "C" void openblas_set_num_threads(int);

namespace {

struct CommonOpts {
  std::string out;
  int threads = 1;
  long long seed = 0;
};

fs::path ensure_outdir(const CommonOpts& c, const std::string& tag, const std::string& key) {
  fs::path dir = c.out.empty() ? fs::path("runs") / (tag + "-" + fnv1a_hex(key).substr(0, 12))
                               : fs::path(c.out);
  fs::create_directories(dir);
  return dir;
}

SympIntMatrix matrix_from_opts(const std::string& inline_m, const std::string& file_m) {
  IntMatrix m;
  if (!file_m.empty())
    m = read_int_matrix_file(file_m);
  else
    m = parse_int_matrix(inline_m);
  return SympIntMatrix::verify(m);
}

std::string fmt_rat(const Rat& r) {
  return numerator(r).str() + (denominator(r) == 1 ? "" : "/" + denominator(r).str());
}

std::vector<Rat> pick_theta(const SympIntMatrix& a, long long bigN) {
  auto sol = solve_theta(a, bigN);
  if (!sol.solvable) throw std::runtime_error("quantization condition unsolvable for this (A, N)");
  auto th = sol.enumerate(1);
  return th.at(0);
}

Propagator build_propagator(const SympIntMatrix& a, const QuantizationParams& p,
                            const std::string& path) {
  if (path == "intertwiner") return intertwiner_solve(a, p);
  if (a.n() == 1 && p.theta_zero()) return word_propagator(factor_sl2(a), p);
  if (path == "word") throw std::runtime_error("word path needs n = 1 and theta = 0");
  return intertwiner_solve(a, p);
}

int cmd_analyze(const std::string& minline, const std::string& mfile, long long bigN,
                const CommonOpts& c) {
  SympIntMatrix a = matrix_from_opts(minline, mfile);
  std::cout << "symplectic: yes (A^T J A = J exact), n = " << a.n() << "\n";
  IntPolynomial p = char_poly(a.mat());
  std::cout << "char poly: " << p.to_string("x") << "\n";
  auto fac = factor_over_Z(p);
  std::cout << "factors:";
  for (const auto& f : fac.factors) std::cout << "  (" << f.to_string("x") << ")";
  std::cout << "\nirreducible: " << (fac.factors.size() == 1 ? "yes" : "no") << "\n";
  auto phi = parity_vector(a);
  std::cout << "phi_A = (";
  for (int i = 0; i < a.dim(); i++) std::cout << (i ? "," : "") << phi[i];
  std::cout << ")\n";

  Manifest man;
  man.set("command", "analyze");
  man.set("char_poly", p.to_string("x"));

  try {
    SpectralData s = spectral_analysis(a);
    std::cout << "spectral gap: yes; lambda_+ = " << fmt_double(s.lambda_plus.approx)
              << " (minpoly " << s.lambda_plus.minpoly.to_string("x") << "), lambda_- = "
              << fmt_double(s.lambda_minus.approx) << ", gamma = " << fmt_double(s.gamma) << "\n";
    auto [pp, pm] = minimal_polys(a, s);
    auto inv = invariant_spaces(a, pp, pm);
    std::cout << "dim V+ = " << inv.v_plus.dim() << ", dim V- = " << inv.v_minus.dim()
              << ", V+ == V-: " << (inv.plus_equals_minus ? "yes" : "no")
              << (inv.v_pm_symplectic ? " (symplectic)" : inv.v_pm_isotropic ? " (isotropic)" : "")
              << ", dim V0 = " << inv.v0.dim() << ", dim V1 = " << inv.v1.dim() << "\n";
    man.set("lambda_plus", s.lambda_plus.approx);
    man.set("gamma", s.gamma);
    man.set("dim_v_plus", (long long)inv.v_plus.dim());
  } catch (const NoSpectralGap& e) {
    std::cout << "spectral gap: no (" << e.what() << ")\n";
    man.set("spectral_gap", "no");
  }
  if (bigN > 0) {
    auto sol = solve_theta(a, bigN);
    if (!sol.solvable) {
      std::cout << "theta solutions at N = " << bigN << ": none (congruence unsolvable)\n";
    } else {
      auto th = sol.enumerate(4);
      std::cout << "theta solutions at N = " << bigN << " (" << sol.count_finite().str()
                << " torsion";
      if (!sol.free_dirs.empty()) std::cout << ", " << sol.free_dirs.size() << " free circles";
      std::cout << "); first:";
      for (const auto& t : th) {
        std::cout << " (";
        for (size_t i = 0; i < t.size(); i++) std::cout << (i ? "," : "") << fmt_rat(t[i]);
        std::cout << ")";
      }
      std::cout << "\n";
    }
  }
  if (!c.out.empty()) {
    fs::path dir = ensure_outdir(c, "analyze", a.mat().to_string());
    man.save(dir / "manifest.txt");
  }
  return 0;
}

int cmd_eigen(const std::string& minline, const std::string& mfile, long long bigN,
              double cluster_tol, const CommonOpts& c) {
  SympIntMatrix a = matrix_from_opts(minline, mfile);
  QuantizationParams p(a.n(), bigN, pick_theta(a, bigN));
  Propagator m = build_propagator(a, p, "auto");
  EigenSystem e = eigendecompose(m, cluster_tol);
  fs::path dir = ensure_outdir(c, "eigen", a.mat().to_string() + std::to_string(bigN));
  CsvWriter csv({"re", "im", "cluster"});
  for (size_t cl = 0; cl < e.clusters.size(); cl++)
    for (int idx : e.clusters[cl])
      csv.row({fmt_double(e.eigenvalues(idx).real()), fmt_double(e.eigenvalues(idx).imag()),
               std::to_string(cl)});
  csv.save(dir / "eigenvalues.csv");
  Manifest man;
  man.set("command", "eigen");
  man.set("N", bigN);
  man.set("cluster_tol", cluster_tol);
  man.set("clusters", (long long)e.clusters.size());
  man.set("schur_offdiag", e.residual);
  man.add_output(dir / "eigenvalues.csv");
  man.save(dir / "manifest.txt");
  std::cout << "wrote " << (dir / "eigenvalues.csv").string() << " (" << e.clusters.size()
            << " clusters)\n";
  return 0;
}

int cmd_propagator(const std::string& minline, const std::string& mfile, long long bigN,
                   const std::string& path, const CommonOpts& c) {
  SympIntMatrix a = matrix_from_opts(minline, mfile);
  QuantizationParams p(a.n(), bigN, pick_theta(a, bigN));
  Propagator m = build_propagator(a, p, path);
  fs::path dir = ensure_outdir(c, "prop", a.mat().to_string() + std::to_string(bigN) + path);
  std::ofstream f(dir / "propagator.qop", std::ios::binary);
  f << "qcat-operator provenance=" << m.provenance << " n=" << p.n << " N=" << p.N << "\n";
  for (long long j = 0; j < m.m.cols(); j++)
    for (long long i = 0; i < m.m.rows(); i++) {
      double re = m.m(i, j).real(), im = m.m(i, j).imag();
      f.write(reinterpret_cast<const char*>(&re), 8);
      f.write(reinterpret_cast<const char*>(&im), 8);
    }
  f.close();
  double res = egorov_residual_box(m, 3);
  Manifest man;
  man.set("command", "propagator");
  man.set("N", bigN);
  man.set("path", m.provenance);
  man.set("egorov_residual_box3", res);
  man.add_output(dir / "propagator.qop");
  man.save(dir / "manifest.txt");
  std::cout << "provenance=" << m.provenance << " egorov_residual(|w|<=3) = " << fmt_double(res)
            << "\n";
  return res < 1e-9 ? 0 : 1;
}

int cmd_wigner(const std::string& minline, const std::string& mfile, long long bigN, double sigma,
               const std::string& which, const CommonOpts& c) {
  SympIntMatrix a = matrix_from_opts(minline, mfile);
  if (a.n() != 1) throw std::runtime_error("wigner heatmaps are n = 1 only");
  QuantizationParams p(1, bigN);
  Propagator m = build_propagator(a, p, "auto");
  EigenSystem e = eigendecompose(m);
  // scar detection: score eigenfunctions by mass near the origin
  OperatorOnH bump = quantize(box_bump(1, 0.125, 8), p);
  long long pick = 0;
  double best = which == "scar" ? -1 : 2;
  for (long long k = 0; k < p.dim(); k++) {
    CVec u = e.vectors.col(k);
    double s = std::real(u.dot(bump.m * u));
    if ((which == "scar" && s > best) || (which != "scar" && s < best)) {
      best = s;
      pick = k;
    }
  }
  StateVector u{p, e.vectors.col(pick)};
  Eigen::MatrixXd h = wigner_heatmap(u, sigma);
  fs::path dir = ensure_outdir(c, "wigner", a.mat().to_string() + std::to_string(bigN) + which);
  write_pgm16(dir / ("wigner_" + which + ".pgm"), h, h.minCoeff(), h.maxCoeff());
  CsvWriter csv({"p", "q", "log10"});
  for (long long i = 0; i < h.rows(); i++)
    for (long long j = 0; j < h.cols(); j++)
      csv.row({std::to_string(i), std::to_string(j), fmt_double(h(i, j))});
  csv.save(dir / ("wigner_" + which + ".csv"));
  Manifest man;
  man.set("command", "wigner");
  man.set("N", bigN);
  man.set("sigma", sigma);
  man.set("eigenfunction_index", pick);
  man.set("bump_pairing", best);
  man.add_output(dir / ("wigner_" + which + ".pgm"));
  man.add_output(dir / ("wigner_" + which + ".csv"));
  man.save(dir / "manifest.txt");
  std::cout << "eigenfunction " << pick << " bump pairing " << fmt_double(best) << " -> "
            << (dir / ("wigner_" + which + ".pgm")).string() << "\n";
  return 0;
}

int cmd_mass(const std::string& minline, const std::string& mfile,
             const std::vector<long long>& ns, double radius, const CommonOpts& c) {
  SympIntMatrix a = matrix_from_opts(minline, mfile);
  fs::path dir = ensure_outdir(c, "mass", a.mat().to_string() + std::to_string(ns.size()));
  CsvWriter csv({"N", "cluster_re", "cluster_im", "cluster_size", "min_mass"});
  CsvWriter summary({"N", "global_min"});
  for (long long n : ns) {
    QuantizationParams p(a.n(), n, pick_theta(a, n));
    Propagator m = build_propagator(a, p, "auto");
    EigenSystem e = eigendecompose(m);
    OperatorOnH op = quantize(box_bump(a.n(), radius, 8), p);
    MassProfile mp = mass_profile(e, op);
    for (size_t k = 0; k < mp.min_mass.size(); k++)
      csv.row({std::to_string(n), fmt_double(mp.cluster_eigenvalue[k].real()),
               fmt_double(mp.cluster_eigenvalue[k].imag()), std::to_string(mp.cluster_size[k]),
               fmt_double(mp.min_mass[k])});
    summary.row({std::to_string(n), fmt_double(mp.global_min)});
    std::cout << "N=" << n << " clusters=" << mp.min_mass.size()
              << " global_min=" << fmt_double(mp.global_min) << std::endl;
  }
  csv.save(dir / "mass_profile.csv");
  summary.save(dir / "mass_summary.csv");
  Manifest man;
  man.set("command", "mass");
  man.set("radius", radius);
  man.add_output(dir / "mass_profile.csv");
  man.add_output(dir / "mass_summary.csv");
  man.save(dir / "manifest.txt");
  return 0;
}

int cmd_damped(const std::string& minline, const std::string& mfile,
               const std::vector<long long>& ns, double halfwidth, bool full,
               const CommonOpts& c) {
  SympIntMatrix a = matrix_from_opts(minline, mfile);
  fs::path dir = ensure_outdir(c, "damped", a.mat().to_string() + std::to_string(halfwidth));
  CsvWriter radii({"N", "radius"});
  Manifest man;
  man.set("command", "damped");
  man.set("halfwidth", halfwidth);
  for (long long n : ns) {
    QuantizationParams p(a.n(), n, pick_theta(a, n));
    Propagator m = build_propagator(a, p, "auto");
    OperatorOnH bump = quantize_box_bump(a.n(), halfwidth, 8, n);
    OperatorOnH opb{p, CMat::Identity(p.dim(), p.dim()) - bump.m};
    if (full) {
      DampedSpectrum d = damped_spectrum(opb, m);
      CsvWriter csv({"re", "im"});
      for (long long i = 0; i < d.eigenvalues.size(); i++)
        csv.row({fmt_double(d.eigenvalues(i).real()), fmt_double(d.eigenvalues(i).imag())});
      fs::path fcsv = dir / ("damped_N" + std::to_string(n) + ".csv");
      csv.save(fcsv);
      man.add_output(fcsv);
      radii.row({std::to_string(n), fmt_double(d.radius)});
      std::cout << "N=" << n << " radius=" << fmt_double(d.radius) << std::endl;
    } else {
      double r = damped_radius(opb, m);
      radii.row({std::to_string(n), fmt_double(r)});
      std::cout << "N=" << n << " radius=" << fmt_double(r) << std::endl;
    }
  }
  radii.save(dir / "damped.csv");
  man.add_output(dir / "damped.csv");
  man.save(dir / "manifest.txt");
  return 0;
}

int cmd_words(const std::string& minline, const std::string& mfile,
              const std::vector<long long>& ns, int t1, int jblocks, double alpha,
              double halfwidth, const CommonOpts& c) {
  SympIntMatrix a = matrix_from_opts(minline, mfile);
  if (a.n() != 1) throw std::runtime_error("word experiments are wired for n = 1");
  SpectralData spec = spectral_analysis(a);
  fs::path dir = ensure_outdir(c, "words", a.mat().to_string() + std::to_string(t1));
  CsvWriter csv({"N", "T0", "T1", "normBX", "normBY", "residual"});
  Manifest man;
  man.set("command", "words");
  man.set("alpha", alpha);
  man.set("halfwidth", halfwidth);
  long long n0 = ns.front();
  for (long long n : ns) {
    // scale T1 logarithmically with N from the first grid point
    int t1n =
        std::max(1, int(std::llround(double(t1) * std::log(double(n)) / std::log(double(n0)))));
    auto plan = PropagationPlan::make(0.55, 0.3, jblocks, alpha, n, spec, t1n);
    QuantizationParams p(1, n);
    Propagator m = word_propagator(factor_sl2(a), p);
    TrigSymbol b1 = box_bump(1, halfwidth, 8);
    TrigSymbol b2 = TrigSymbol::constant(1, 1.0) + b1 * cdouble(-1.0, 0.0);
    WordContext ctx = WordContext::make(b1, b2, m, plan);
    WordDecay d = n <= 512 ? word_decay_dense(ctx) : word_decay_matfree(ctx);
    csv.row({std::to_string(n), std::to_string(plan.t0), std::to_string(plan.t1),
             fmt_double(d.norm_bx), fmt_double(d.norm_by), fmt_double(d.identity_residual)});
    std::cout << "N=" << n << " T0=" << plan.t0 << " T1=" << plan.t1
              << " |B_X|=" << fmt_double(d.norm_bx) << " |B_Y|=" << fmt_double(d.norm_by)
              << " residual=" << fmt_double(d.identity_residual) << std::endl;
  }
  csv.save(dir / "word_decay.csv");
  man.add_output(dir / "word_decay.csv");
  man.save(dir / "manifest.txt");
  return 0;
}

int cmd_fup(const std::vector<long long>& levels, const CommonOpts& c) {
  fs::path dir = ensure_outdir(c, "fup", std::to_string(levels.size()) + "cantor");
  CsvWriter csv({"N", "sizeX", "sizeY", "norm"});
  std::vector<std::pair<long long, double>> series;
  for (long long lvl : levels) {
    long long n = 1;
    for (int i = 0; i < lvl; i++) n *= 3;
    IntervalSet ck = IntervalSet::cantor_middle_thirds(int(lvl));
    double norm = discrete_fup_norm(ck, ck, n);
    auto [cx, cy] = fup_index_counts(ck, ck, n);
    csv.row({std::to_string(n), std::to_string(cx), std::to_string(cy), fmt_double(norm)});
    series.push_back({n, norm});
    std::cout << "N=" << n << " |X|=" << cx << " norm=" << fmt_double(norm) << std::endl;
  }
  csv.save(dir / "fup.csv");
  Manifest man;
  man.set("command", "fup");
  if (series.size() >= 3) {
    FupFit fit = fup_exponent_fit(series);
    man.set("beta", fit.beta);
    man.set("beta_band", fit.band);
    std::cout << "fitted beta = " << fmt_double(fit.beta) << " +- " << fmt_double(fit.band)
              << std::endl;
  }
  man.add_output(dir / "fup.csv");
  man.save(dir / "manifest.txt");
  return 0;
}

int cmd_porosity(const std::string& setfile, double nu, double tau0, double tau1,
                 const CommonOpts& c) {
  IntervalSet x(read_intervals(setfile));
  PorosityResult r = porosity_check(x, {nu, tau0, tau1});
  std::cout << (r.porous ? "POROUS" : "NOT POROUS") << " worst_ratio=" << fmt_double(r.worst_ratio)
            << "\n";
  if (!r.porous && r.witness)
    std::cout << "witness interval [" << fmt_double(r.witness->first) << ", "
              << fmt_double(r.witness->second) << "]\n";
  if (!c.out.empty()) {
    fs::path dir = ensure_outdir(c, "porosity", setfile + fmt_double(nu));
    CsvWriter csv({"length", "worst_ratio"});
    for (auto [len, ratio] : r.ladder) csv.row({fmt_double(len), fmt_double(ratio)});
    csv.save(dir / "porosity_ladder.csv");
    Manifest man;
    man.set("command", "porosity");
    man.set("nu", nu);
    man.set("porous", r.porous ? "yes" : "no");
    man.add_output(dir / "porosity_ladder.csv");
    man.save(dir / "manifest.txt");
  }
  return r.porous ? 0 : 1;
}

int cmd_figure1(long long bigN, double sigma, const CommonOpts& c) {
  fs::path base = c.out.empty() ? fs::path("runs") / ("figure1-N" + std::to_string(bigN))
                                : fs::path(c.out);
  CommonOpts c2 = c;
  int rc = 0;
  c2.out = (base / "typical").string();
  rc |= cmd_wigner("[[2,3],[1,2]]", "", bigN, sigma, "typical", c2);
  c2.out = (base / "scar").string();
  rc |= cmd_wigner("[[2,3],[1,2]]", "", bigN, sigma, "scar", c2);
  return rc;
}

int cmd_figure2(long long bigN, double halfwidth, bool full, const CommonOpts& c) {
  fs::path base = c.out.empty() ? fs::path("runs") / ("figure2-N" + std::to_string(bigN))
                                : fs::path(c.out);
  CommonOpts cleft = c, cright = c;
  cleft.out = (base / "left").string();
  cright.out = (base / "right").string();
  int rc = 0;
  rc |= cmd_damped("[[0,0,1,0],[0,0,0,1],[-1,0,0,1],[0,-1,1,2]]", "", {bigN}, halfwidth, full,
                   cleft);
  rc |= cmd_damped("[[2,0,3,0],[0,0,0,1],[1,0,2,0],[0,-1,0,0]]", "", {bigN}, halfwidth, full,
                   cright);
  return rc;
}

int cmd_sweep(const std::string& config_path, const CommonOpts& c) {
  std::ifstream f(config_path);
  if (!f) throw std::runtime_error("cannot open config " + config_path);
  json cfg = json::parse(f);
  CommonOpts c2 = c;
  if (c2.out.empty() && cfg.contains("out")) c2.out = cfg["out"].get<std::string>();
  std::string kind = cfg.at("experiment").get<std::string>();
  std::vector<long long> ns;
  for (auto& v : cfg.value("N", json::array())) ns.push_back(v.get<long long>());
  std::string matrix = cfg.value("matrix", "[[2,3],[1,2]]");
  int failures = 0;
  auto guard = [&](auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::cerr << "sweep point failed: " << e.what() << "\n";
      failures++;
    }
  };
  if (kind == "mass") {
    guard([&] { cmd_mass(matrix, "", ns, cfg.value("radius", 0.25), c2); });
  } else if (kind == "damped") {
    guard([&] {
      cmd_damped(matrix, "", ns, cfg.value("halfwidth", 0.22), cfg.value("full", false), c2);
    });
  } else if (kind == "words") {
    guard([&] {
      cmd_words(matrix, "", ns, cfg.value("T1", 6), cfg.value("J", 3), cfg.value("alpha", 0.34),
                cfg.value("halfwidth", 0.22), c2);
    });
  } else if (kind == "fup") {
    std::vector<long long> levels;
    for (auto& v : cfg.value("levels", json::array())) levels.push_back(v.get<long long>());
    guard([&] { cmd_fup(levels, c2); });
  } else {
    throw std::runtime_error("unknown experiment kind: " + kind);
  }
  return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum cat map laboratory"};
  app.require_subcommand(1);
  CommonOpts common;
  app.add_option("--out", common.out, "output directory (default: runs/<hash>)");
  app.add_option("--threads", common.threads, "BLAS thread count")->default_val(1);
  app.add_option("--seed", common.seed, "seed for randomized experiment inputs")->default_val(0);

  std::string minline = "[[2,3],[1,2]]", mfile;
  long long bigN = 0;
  std::vector<long long> ns;
  double cluster_tol = 1e-7, sigma = 1.0 / 64, radius = 0.25, halfwidth = 0.22;
  double nu = 0.1, tau0 = 0.01, tau1 = 1.0;
  bool full = false;
  std::string path = "auto", which = "typical", setfile, config;
  int t1 = 6, jb = 3;
  double alpha = 0.34;
  std::vector<long long> levels{4, 5, 6, 7, 8};

  auto add_matrix = [&](CLI::App* s) {
    s->add_option("--matrix", minline, "inline integer matrix [[..],[..]]");
    s->add_option("--matrix-file", mfile, "whitespace/CSV matrix file");
  };

  auto* an = app.add_subcommand("analyze", "exact analysis of the symplectic matrix");
  add_matrix(an);
  an->add_option("--N", bigN, "also solve the theta congruence at this N");

  auto* pr = app.add_subcommand("propagator", "build and cache a propagator");
  add_matrix(pr);
  pr->add_option("--N", bigN)->required();
  pr->add_option("--path", path, "word | intertwiner | auto");

  auto* ei = app.add_subcommand("eigen", "eigenvalues and clusters of the propagator");
  add_matrix(ei);
  ei->add_option("--N", bigN)->required();
  ei->add_option("--cluster-tol", cluster_tol);

  auto* wg = app.add_subcommand("wigner", "wigner heatmap of a selected eigenfunction");
  add_matrix(wg);
  wg->add_option("--N", bigN)->required();
  wg->add_option("--sigma", sigma, "gaussian smoothing width in torus units");
  wg->add_option("--which", which, "typical | scar");

  auto* ma = app.add_subcommand("mass", "per-cluster mass lower bounds over an N grid");
  add_matrix(ma);
  ma->add_option("--N", ns, "N grid")->required();
  ma->add_option("--radius", radius, "bump halfwidth");

  auto* da = app.add_subcommand("damped", "damped spectra / spectral radii");
  add_matrix(da);
  da->add_option("--N", ns)->required();
  da->add_option("--halfwidth", halfwidth, "damping box halfwidth");
  da->add_flag("--full", full, "dense eigenvalues (CSV per N) instead of radius only");

  auto* wo = app.add_subcommand("words", "word-operator decay norms");
  add_matrix(wo);
  wo->add_option("--N", ns)->required();
  wo->add_option("--T1", t1);
  wo->add_option("--J", jb);
  wo->add_option("--alpha", alpha);
  wo->add_option("--halfwidth", halfwidth);

  auto* fu = app.add_subcommand("fup", "discrete FUP norms on Cantor iterates");
  fu->add_option("--levels", levels, "Cantor levels (N = 3^level)");

  auto* po = app.add_subcommand("porosity", "certify nu-porosity of an interval set");
  po->add_option("--set", setfile, "file with 'a b' per line")->required();
  po->add_option("--nu", nu)->required();
  po->add_option("--tau0", tau0)->required();
  po->add_option("--tau1", tau1)->required();

  auto* f1 = app.add_subcommand("figure1", "two eigenfunction heatmaps, A = [[2,3],[1,2]]");
  f1->add_option("--N", bigN)->default_val(780);
  f1->add_option("--sigma", sigma);

  auto* f2 = app.add_subcommand("figure2", "damped spectra for the two 4x4 examples");
  f2->add_option("--N", bigN)->default_val(60);
  f2->add_option("--halfwidth", halfwidth);
  f2->add_flag("--full", full, "dense eigenvalues (slow single-core)");

  auto* sw = app.add_subcommand("sweep", "run an experiment grid from a JSON config");
  sw->add_option("--config", config)->required();

  CLI11_PARSE(app, argc, argv);
  openblas_set_num_threads(common.threads);

  try {
    if (an->parsed()) return cmd_analyze(minline, mfile, bigN, common);
    if (pr->parsed()) return cmd_propagator(minline, mfile, bigN, path, common);
    if (ei->parsed()) return cmd_eigen(minline, mfile, bigN, cluster_tol, common);
    if (wg->parsed()) return cmd_wigner(minline, mfile, bigN, sigma, which, common);
    if (ma->parsed()) return cmd_mass(minline, mfile, ns, radius, common);
    if (da->parsed()) return cmd_damped(minline, mfile, ns, halfwidth, full, common);
    if (wo->parsed()) return cmd_words(minline, mfile, ns, t1, jb, alpha, halfwidth, common);
    if (fu->parsed()) return cmd_fup(levels, common);
    if (po->parsed()) return cmd_porosity(setfile, nu, tau0, tau1, common);
    if (f1->parsed()) return cmd_figure1(bigN, sigma, common);
    if (f2->parsed()) return cmd_figure2(bigN, halfwidth, full, common);
    if (sw->parsed()) return cmd_sweep(config, common);
  } catch (const NotSymplectic& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NotSquareEven& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
