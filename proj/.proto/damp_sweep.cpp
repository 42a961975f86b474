#include "qcat/experiments.hpp"
#include <chrono>
#include <iostream>
using namespace qcat;
using clk = std::chrono::steady_clock;

int main(int argc, char** argv) {
  double r = argc > 1 ? std::atof(argv[1]) : 0.22;
  IntMatrix d(2, 2);
  d(0, 1) = 1; d(1, 0) = 1; d(1, 1) = 2;
  GeneratorWord w1 = GeneratorWord::from_tokens({GeneratorToken::S(d), GeneratorToken::F()}, 2);
  auto cat = SympIntMatrix::verify({{2, 3}, {1, 2}});
  for (long long N : {40, 50, 60, 70, 80}) {
    auto t0 = clk::now();
    QuantizationParams p1(1, N);
    OperatorOnH bump = quantize_box_bump(2, r, 8, N);
    OperatorOnH opb{bump.params, CMat::Identity(N*N, N*N) - bump.m};
    QuantizationParams p2(2, N);
    Propagator m1 = word_propagator(w1, p2);
    Propagator mc = word_propagator(factor_sl2(cat), p1);
    Propagator mf = word_propagator(GeneratorWord::from_tokens({GeneratorToken::F()}, 1), p1);
    Propagator m2 = propagator_tensor(mc, mf);
    double ra1 = damped_radius(opb, m1);
    double ra2 = damped_radius(opb, m2);
    double secs = std::chrono::duration<double>(clk::now() - t0).count();
    std::cout << "N=" << N << " r=" << r << " radiusA1=" << ra1 << " radiusA2=" << ra2
              << " g1=" << 1 - ra1 << "  (" << secs << "s)" << std::endl;
    if (N == 40) {
      DampedSpectrum full = damped_spectrum(opb, m1);
      std::cout << "   zgeev check A1: radius=" << full.radius
                << " arnoldi err=" << std::abs(full.radius - ra1) << std::endl;
    }
  }
  return 0;
}
