#include "shiftwave/dualtree.hpp"
#include "shiftwave/fht.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace shiftwave;
using namespace testutil;

namespace {

Grid1D random_grid(std::mt19937& rng, int min_log = 4, int max_log = 9) {
  std::size_t n = std::size_t{1} << uniform_int(rng, min_log, max_log);
  double dx = std::ldexp(1.0, -uniform_int(rng, 0, 4)) * uniform(rng, 0.5, 1.5);
  return Grid1D(n, uniform(rng, -5, 5), dx);
}

SampledSignal1D random_complex(const Grid1D& g, std::mt19937& rng) {
  SampledSignal1D f(g);
  for (auto& v : f.values) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  return f;
}

Genus random_genus(std::mt19937& rng) {
  const Genus all[] = {Genus::BSplineSemiOrthogonal, Genus::Orthonormal, Genus::DualBSpline, Genus::Shannon};
  return all[uniform_int(rng, 0, 3)];
}

}  // namespace

TEST(Property, FhtIsLinearAndItsAdjointIsTheInverseShift) {
  std::mt19937 rng(101);
  for (int t = 0; t < 100; ++t) {
    Grid1D g = random_grid(rng);
    SampledSignal1D f = random_complex(g, rng), h = random_complex(g, rng);
    FhtShift s(uniform(rng, -3, 3));
    cplx a(uniform(rng, -2, 2), uniform(rng, -2, 2));
    SampledSignal1D lhs = fht_apply(linear_combination(a, f, 1.0, h), s);
    SampledSignal1D rhs = linear_combination(a, fht_apply(f, s), 1.0, fht_apply(h, s));
    ASSERT_LT(relative_l2_distance(lhs, rhs), 1e-13);
    // DC and Nyquist carry the real factor cos(pi tau), so the adjoint is the
    // inverse shift on every bin.
    cplx x = inner_product(fht_apply(f, s), h), y = inner_product(f, fht_apply(h, fht_inverse(s)));
    ASSERT_LT(std::abs(x - y), 1e-12 * l2_norm(f) * l2_norm(h));
  }
}

TEST(Property, ParsevalOnRandomGrids) {
  std::mt19937 rng(102);
  for (int t = 0; t < 100; ++t) {
    Grid1D g = random_grid(rng);
    SampledSignal1D f = random_complex(g, rng);
    std::vector<cplx> F = ft_samples(f);
    double spec = 0.0;
    for (const auto& v : F) spec += std::norm(v);
    spec /= g.length();
    double norm2 = l2_norm(f) * l2_norm(f);
    ASSERT_NEAR(spec, norm2, 1e-12 * norm2);
  }
}

TEST(Property, AnalysisCommutesWithCoarseTranslations) {
  std::mt19937 rng(103);
  for (int t = 0; t < 20; ++t) {
    Grid1D g = Grid1D::centered(std::size_t{1} << uniform_int(rng, 7, 9), 0.5);
    const int M = uniform_int(rng, 1, 4);
    WaveletBank1D bank = build_bank({random_genus(rng), uniform(rng, 1, 5), uniform(rng, -0.5, 0.5)}, M, g);
    SampledSignal1D f = random_trig(g, rng, 0, int(g.n / 2) - 1);
    const long s = uniform_int(rng, 1, int(bank.count(M)) - 1);
    DualTreeCoeffs1D a = analyze(f, bank);
    DualTreeCoeffs1D b = analyze(translate(f, s << M), bank);
    for (int j = 1; j <= M; ++j) {
      const std::size_t q = bank.count(j);
      const std::size_t off = static_cast<std::size_t>(s) << (M - j);
      for (std::size_t k = 0; k < q; ++k) ASSERT_LT(std::abs(b.c[j - 1][(k + off) % q] - a.c[j - 1][k]), 1e-10);
    }
  }
}

TEST(Property, RandomBanksReconstructPerfectly) {
  std::mt19937 rng(104);
  for (int t = 0; t < 30; ++t) {
    Grid1D g = Grid1D::centered(std::size_t{1} << uniform_int(rng, 6, 10), std::ldexp(1.0, -uniform_int(rng, 0, 3)));
    const int M = uniform_int(rng, 1, 5);
    SplineSpec spec{random_genus(rng), uniform(rng, 0.5, 6), uniform(rng, -1, 1)};
    WaveletBank1D bank = build_bank(spec, M, g);
    SampledSignal1D f = random_trig(g, rng, 0, int(g.n / 2) - 1);
    DualTreeCoeffs1D c = analyze(f, bank);
    ASSERT_LT(relative_l2_distance(reconstruct(c, bank), f), 1e-9) << spec.label() << " M=" << M << " n=" << g.n;
    ASSERT_LT(relative_l2_distance(reconstruct_two_branch(c, bank), f), 1e-9) << spec.label();
  }
}

TEST(Property, RandomFhtOfSplineWavelets) {
  std::mt19937 rng(105);
  Grid1D g = Grid1D::centered(4096, 1.0 / 32.0);
  for (int t = 0; t < 12; ++t) {
    Genus genus = uniform_int(rng, 0, 1) ? Genus::Orthonormal : Genus::BSplineSemiOrthogonal;
    SplineSpec spec{genus, uniform(rng, 1, 6), uniform(rng, -1, 1)};
    double tb = uniform(rng, -1, 1);
    ASSERT_LT(prop3_residual(spec, tb, g), 1e-6) << spec.label() << " tau_bar=" << tb;
  }
}

TEST(Property, DirectionalGroupLawOffTheZeroLine) {
  std::mt19937 rng(106);
  Grid1D g(16, 0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    Direction2D d(uniform(rng, 0, kPi - 1e-3));
    // Sum of plane waves with u . w != 0 and no Nyquist component.
    SampledSignal2D f(g, g);
    for (int w = 0; w < 4; ++w) {
      int kx, ky;
      do {
        kx = uniform_int(rng, -7, 7);
        ky = uniform_int(rng, -7, 7);
      } while (std::abs(kx * d.ux() + ky * d.uy()) < 1e-6);
      double a = uniform(rng, -1, 1), ph = uniform(rng, -kPi, kPi);
      for (std::size_t iy = 0; iy < 16; ++iy)
        for (std::size_t ix = 0; ix < 16; ++ix) f.at(ix, iy) += a * std::cos(2 * kPi * (kx * double(ix) + ky * double(iy)) / 16.0 + ph);
    }
    double t1 = uniform(rng, -2, 2), t2 = uniform(rng, -2, 2);
    SampledSignal2D two = fdht_apply(fdht_apply(f, d, FhtShift(t1)), d, FhtShift(t2));
    ASSERT_LT(relative_l2_distance(two, fdht_apply(f, d, FhtShift(t1 + t2))), 1e-12);
    ASSERT_LT(relative_l2_distance(fdht_apply(two, d, FhtShift(-t1 - t2)), f), 1e-12);
  }
}
