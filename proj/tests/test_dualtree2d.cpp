#include "shiftwave/coeff_io.hpp"
#include "shiftwave/dualtree2d.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace shiftwave;
using namespace testutil;

namespace {

SampledSignal2D real_of(const SampledSignal2D& f) {
  SampledSignal2D r = f;
  for (auto& v : r.values) v = v.real();
  return r;
}

SampledSignal2D imag_of(const SampledSignal2D& f) {
  SampledSignal2D r = f;
  for (auto& v : r.values) v = v.imag();
  return r;
}

// Drops the Nyquist row and column, which the level-1 generators do not carry.
SampledSignal2D nyquist_free(const SampledSignal2D& f) {
  std::vector<cplx> F = ft_samples(f);
  const std::size_t nx = f.grid_x.n, ny = f.grid_y.n;
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      if (ix == nx / 2 || iy == ny / 2) F[iy * nx + ix] = 0.0;
  return real_of(from_ft_samples(f.grid_x, f.grid_y, std::move(F)));
}

}  // namespace

TEST(DirectionalBank, ImaginaryPartIsDirectionalHilbert) {
  Grid1D g = Grid1D::centered(32, 1.0);
  for (Genus genus : {Genus::Orthonormal, Genus::DualBSpline, Genus::Shannon}) {
    DirectionalBank2D bank = build_directional_bank({genus, 3.0, 0.0}, 2, g, g);
    for (int level = 1; level <= 2; ++level) {
      for (int ell = 1; ell <= kOrientations; ++ell) {
        SampledSignal2D W = bank.wavelet(ell, level);
        SampledSignal2D h = dht_apply(real_of(W), Direction2D(bank.theta[ell - 1]));
        EXPECT_LT(relative_l2_distance(h, imag_of(W)), 1e-10) << genus_name(genus) << " l=" << ell;
      }
    }
  }
}

TEST(DirectionalBank, OrthonormalDiagonalWavelet) {
  Grid1D g = Grid1D::centered(64, 1.0);
  DirectionalBank2D bank = build_directional_bank({Genus::Orthonormal, 3.0, 0.0}, 3, g, g);
  SampledSignal2D f = real_of(bank.wavelet(5, 2));
  const std::size_t kx = 3, ky = 5;
  f = translate(f, long(kx * 4), long(ky * 4));
  DualTreeCoeffs2D c = analyze2d(f, bank);
  const std::size_t idx = ky * bank.count_x(2) + kx;
  EXPECT_NEAR(std::abs(c.c[4][1][idx]), 0.25, 1e-10);
  EXPECT_NEAR(c.phase(5, 2, idx), 0.0, 1e-10);
  SampledSignal2D back = reconstruct2d(c, bank);
  EXPECT_LT(relative_l2_distance(back, f), 1e-10);
  // The mirrored diagonal is orthogonal to it; orientations 1..4 are not,
  // through the cross-tree terms.
  for (const auto& v : c.c[5][1]) EXPECT_LT(std::abs(v), 1e-10);
}

TEST(DirectionalBank, DiagonalWaveletOccupiesOneQuadrantPair) {
  Grid1D g = Grid1D::centered(64, 1.0);
  for (Genus genus : {Genus::Shannon, Genus::BSplineSemiOrthogonal, Genus::Orthonormal}) {
    DirectionalBank2D bank = build_directional_bank({genus, 3.0, 0.0}, 3, g, g);
    for (int level = 1; level <= 3; ++level) {
      const auto& S5 = bank.psi[level - 1][4];
      const auto& S6 = bank.psi[level - 1][5];
      double in5 = 0, out5 = 0, in6 = 0, out6 = 0;
      for (std::size_t iy = 0; iy < 64; ++iy) {
        for (std::size_t ix = 0; ix < 64; ++ix) {
          long kx = g.signed_bin(ix), ky = g.signed_bin(iy);
          bool same = (kx > 0 && ky > 0) || (kx < 0 && ky < 0);
          bool mixed = (kx < 0 && ky > 0) || (kx > 0 && ky < 0);
          (same ? in5 : out5) += std::norm(S5[iy * 64 + ix]);
          (mixed ? in6 : out6) += std::norm(S6[iy * 64 + ix]);
        }
      }
      EXPECT_LE(out5, 1e-10 * in5) << genus_name(genus);
      EXPECT_LE(out6, 1e-10 * in6) << genus_name(genus);
    }
  }
}

TEST(Reconstruction2D, SingleDiagonalCoefficientIsShiftedWavelet) {
  Grid1D g = Grid1D::centered(32, 1.0);
  DirectionalBank2D bank = build_directional_bank({Genus::Orthonormal, 3.0, 0.0}, 2, g, g);
  DualTreeCoeffs2D c = analyze2d(SampledSignal2D(g, g), bank);
  const double mag = 1.5, phase = -0.7;
  c.c[4][0][3 * bank.count_x(1) + 2] = std::polar(mag, phase);
  SampledSignal2D psi = real_of(bank.wavelet(5, 1));
  SampledSignal2D expect = translate(fdht_apply(psi, Direction2D(bank.theta[4]), FhtShift(phase / kPi)), 4, 6);
  for (auto& v : expect.values) v *= mag;
  EXPECT_LT(relative_l2_distance(reconstruct2d(c, bank), expect), 1e-10);
}

TEST(Analysis2D, FftMatchesDirectInnerProducts) {
  std::mt19937 rng(31);
  Grid1D gx = Grid1D::centered(32, 0.5), gy = Grid1D::centered(16, 1.0);
  DirectionalBank2D bank = build_directional_bank({Genus::BSplineSemiOrthogonal, 3.0, 0.0}, 2, gx, gy);
  SampledSignal2D f = random_image(gx, gy, rng, 7);
  DualTreeCoeffs2D c = analyze2d(f, bank);
  for (int level = 1; level <= 2; ++level) {
    for (int ell = 1; ell <= kOrientations; ++ell) {
      SampledSignal2D d = bank.dual_wavelet(ell, level);
      for (std::size_t ky = 0; ky < bank.count_y(level); ky += 3) {
        for (std::size_t kx = 0; kx < bank.count_x(level); kx += 5) {
          cplx direct = 0.25 * inner_product(f, translate(d, long(kx << level), long(ky << level)));
          EXPECT_LT(std::abs(direct - c.c[ell - 1][level - 1][ky * bank.count_x(level) + kx]), 1e-10 * l2_norm(f));
        }
      }
    }
  }
}

TEST(Reconstruction2D, PerfectAndRegrouped) {
  std::mt19937 rng(32);
  Grid1D g = Grid1D::centered(64, 1.0);
  for (Genus genus : {Genus::BSplineSemiOrthogonal, Genus::Orthonormal, Genus::DualBSpline, Genus::Shannon}) {
    DirectionalBank2D bank = build_directional_bank({genus, 3.0, 0.0}, 3, g, g);
    SampledSignal2D f = random_image(g, g, rng, 31);
    DualTreeCoeffs2D c = analyze2d(f, bank);
    SampledSignal2D r = reconstruct2d(c, bank);
    EXPECT_LT(relative_l2_distance(r, f), 1e-10) << genus_name(genus);
    EXPECT_LT(relative_l2_distance(reconstruct2d_separable(c, bank), r), 1e-12) << genus_name(genus);
  }
}

TEST(Reconstruction2D, NyquistLinesAreDropped) {
  std::mt19937 rng(33);
  Grid1D g = Grid1D::centered(32, 1.0);
  DirectionalBank2D bank = build_directional_bank({Genus::Orthonormal, 3.0, 0.0}, 2, g, g);
  SampledSignal2D f(g, g);
  for (auto& v : f.values) v = uniform(rng, -1, 1);
  SampledSignal2D r = reconstruct2d(analyze2d(f, bank), bank);
  EXPECT_LT(relative_l2_distance(r, nyquist_free(f)), 1e-10);
  EXPECT_GT(relative_l2_distance(r, f), 1e-3);
}

TEST(Reconstruction2D, SeparableCoefficientsAreInnerProducts) {
  std::mt19937 rng(34);
  Grid1D g = Grid1D::centered(32, 1.0);
  DirectionalBank2D bank = build_directional_bank({Genus::Orthonormal, 3.0, 0.0}, 2, g, g);
  SampledSignal2D f = random_image(g, g, rng, 15);
  auto a = separable_coefficients(analyze2d(f, bank), 2);
  for (int q = 1; q <= 12; ++q) {
    // Orthonormal: the dual separable wavelet equals the primal one.
    SampledSignal2D w = separable_wavelet(bank, q, 2);
    for (std::size_t k : {0ul, 7ul, 40ul}) {
      std::size_t kx = k % bank.count_x(2), ky = k / bank.count_x(2);
      double direct = inner_product(f, translate(w, long(kx * 4), long(ky * 4))).real();
      EXPECT_NEAR(a[q - 1][k], direct, 1e-10 * l2_norm(f)) << q;
    }
  }
}

TEST(DirectionalShift, PerAxisFactorization) {
  Grid1D g = Grid1D::centered(64, 1.0);
  for (Genus genus : {Genus::BSplineSemiOrthogonal, Genus::Orthonormal}) {
    DirectionalBank2D bank = build_directional_bank({genus, 3.0, 0.0}, 2, g, g);
    for (int ell = 1; ell <= kOrientations; ++ell)
      for (double tb : {0.25, -0.5}) EXPECT_LT(prop4_residual(bank, ell, tb, 2), 1e-6) << ell;
  }
  DirectionalBank2D shannon = build_directional_bank({Genus::Shannon, 0.0, 0.0}, 2, g, g);
  EXPECT_THROW(prop4_residual(shannon, 1, 0.25), UnsupportedGenus);
  EXPECT_THROW(prop4_residual(shannon, 7, 0.25), Error);
}

TEST(CoeffIo2D, JsonRoundTripAndMismatch) {
  std::mt19937 rng(35);
  Grid1D g = Grid1D::centered(16, 1.0);
  DirectionalBank2D bank = build_directional_bank({Genus::BSplineSemiOrthogonal, 3.0, 0.0}, 2, g, g);
  DualTreeCoeffs2D c = analyze2d(random_image(g, g, rng, 5), bank);
  std::stringstream ss;
  io::write_coeffs2d_json(ss, c);
  DualTreeCoeffs2D r = io::read_coeffs2d_json(ss);
  EXPECT_TRUE(r.spec == c.spec);
  EXPECT_EQ(r.c, c.c);
  EXPECT_EQ(r.coarse, c.coarse);
  EXPECT_LT(relative_l2_distance(reconstruct2d(r, bank), reconstruct2d(c, bank)), 1e-15);
  DirectionalBank2D other = build_directional_bank({Genus::Orthonormal, 3.0, 0.0}, 2, g, g);
  EXPECT_THROW(reconstruct2d(c, other), BankMismatch);
  EXPECT_THROW(analyze2d(SampledSignal2D(g, Grid1D::centered(32, 1.0)), bank), GridMismatch);
}
