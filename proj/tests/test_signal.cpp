#include "shiftwave/signal.hpp"
#include "shiftwave/signal_io.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace shiftwave;
using namespace testutil;

TEST(Grid, RejectsBadSizesAndSpacing) {
  EXPECT_THROW(Grid1D(12, 0.0, 1.0), GridError);
  EXPECT_THROW(Grid1D(4, 0.0, 1.0), GridError);
  EXPECT_THROW(Grid1D(16, 0.0, 0.0), GridError);
  EXPECT_THROW(Grid1D(16, 0.0, -1.0), GridError);
  EXPECT_NO_THROW(Grid1D(16, 0.0, 0.25));
}

TEST(Grid, CenteredAndBins) {
  Grid1D g = Grid1D::centered(16, 0.5);
  EXPECT_DOUBLE_EQ(g.x(0), -4.0);
  EXPECT_DOUBLE_EQ(g.x(8), 0.0);
  EXPECT_DOUBLE_EQ(g.length(), 8.0);
  EXPECT_EQ(g.signed_bin(0), 0);
  EXPECT_EQ(g.signed_bin(7), 7);
  EXPECT_EQ(g.signed_bin(8), -8);
  EXPECT_EQ(g.signed_bin(15), -1);
  EXPECT_NEAR(g.omega(1), 2.0 * kPi / 8.0, 1e-15);
}

TEST(Spectrum, FtSamplesMatchDirectDft) {
  std::mt19937 rng(1);
  Grid1D g(64, -3.25, 0.125);
  SampledSignal1D f(g);
  for (auto& v : f.values) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  std::vector<cplx> X = naive_dft(f.values);
  for (std::size_t m = 0; m < g.n; ++m) X[m] *= g.dx * std::polar(1.0, -g.omega(g.signed_bin(m)) * g.x0);
  EXPECT_LT(max_abs_diff(ft_samples(f), X), 1e-12);
}

TEST(Spectrum, ParsevalAndRoundTrip) {
  std::mt19937 rng(2);
  Grid1D g = Grid1D::centered(128, 0.3);
  SampledSignal1D f(g), h(g);
  for (auto& v : f.values) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  for (auto& v : h.values) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  std::vector<cplx> F = ft_samples(f), H = ft_samples(h);
  cplx spec = 0.0;
  for (std::size_t m = 0; m < g.n; ++m) spec += F[m] * std::conj(H[m]);
  spec /= g.length();
  EXPECT_LT(std::abs(spec - inner_product(f, h)), 1e-12);
  EXPECT_LT(relative_l2_distance(from_ft_samples(g, F), f), 1e-14);

  Spectrum1D S = to_spectrum(f);
  EXPECT_EQ(S.values.size(), g.n);
  EXPECT_NEAR(S.omega(0), g.omega(-64), 1e-12);
  EXPECT_LT(relative_l2_distance(from_spectrum(S), f), 1e-14);
}

TEST(Spectrum, TwoDimensionalMatchesSeparableDft) {
  std::mt19937 rng(3);
  Grid1D gx(8, 0.0, 1.0), gy(16, -2.0, 0.5);
  SampledSignal2D f(gx, gy);
  for (auto& v : f.values) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  std::vector<cplx> F = ft_samples(f);
  for (std::size_t ky = 0; ky < gy.n; ++ky) {
    for (std::size_t kx = 0; kx < gx.n; ++kx) {
      cplx acc = 0.0;
      for (std::size_t iy = 0; iy < gy.n; ++iy)
        for (std::size_t ix = 0; ix < gx.n; ++ix)
          acc += f.at(ix, iy) * std::polar(1.0, -2.0 * kPi * (double(kx * ix) / gx.n + double(ky * iy) / gy.n));
      acc *= gx.dx * gy.dx * std::polar(1.0, -gx.omega(gx.signed_bin(kx)) * gx.x0 - gy.omega(gy.signed_bin(ky)) * gy.x0);
      EXPECT_LT(std::abs(acc - F[ky * gx.n + kx]), 1e-12);
    }
  }
  EXPECT_LT(relative_l2_distance(from_ft_samples(gx, gy, F), f), 1e-14);
}

TEST(Translate, CircularShiftConvention) {
  Grid1D g(8, 0.0, 1.0);
  SampledSignal1D f(g);
  for (std::size_t p = 0; p < 8; ++p) f.values[p] = double(p);
  SampledSignal1D t = translate(f, 3);
  for (std::size_t p = 0; p < 8; ++p) EXPECT_DOUBLE_EQ(t.values[p].real(), double((p + 8 - 3) % 8));
  EXPECT_EQ(translate(f, -13).values, translate(f, 3).values);
}

TEST(DilateTranslate, PreservesNormAndMovesGrid) {
  std::mt19937 rng(4);
  Grid1D g = Grid1D::centered(64, 0.5);
  SampledSignal1D f = random_trig(g, rng, 0, 20);
  SampledSignal1D d = dilate_translate(f, 2, 3.0);
  EXPECT_NEAR(l2_norm(d), l2_norm(f), 1e-12 * l2_norm(f));
  EXPECT_DOUBLE_EQ(d.grid.dx, 0.125);
  EXPECT_DOUBLE_EQ(d.grid.x0, (g.x0 + 3.0) / 4.0);
  // Xi f(x) = 2 f(4x - 3) at a sample of the new grid.
  EXPECT_NEAR(d.values[5].real(), 2.0 * f.values[5].real(), 1e-15);
}

TEST(DilateTranslate, ReindexesOntoTarget) {
  std::mt19937 rng(5);
  Grid1D g(32, 0.0, 1.0);
  SampledSignal1D f = random_trig(g, rng, 0, 10);
  Grid1D target(32, 0.0, 0.5);
  SampledSignal1D d = dilate_translate(f, 1, 2.0, target);  // origin moves to x = 1 = 2 samples
  for (std::size_t p = 0; p < 32; ++p)
    EXPECT_NEAR(d.values[(p + 2) % 32].real(), std::sqrt(2.0) * f.values[p].real(), 1e-14);
  EXPECT_THROW(dilate_translate(f, 1, 0.3, target), IncompatibleLevel);
  EXPECT_THROW(dilate_translate(f, 2, 0.0, target), IncompatibleLevel);
}

TEST(Helpers, RequireSameGridAndDistances) {
  Grid1D a(16, 0.0, 1.0), b(16, 0.5, 1.0);
  SampledSignal1D f(a), h(b);
  EXPECT_THROW(require_same_grid(f, h, "test"), GridMismatch);
  EXPECT_THROW(relative_l2_distance(f, h), GridMismatch);
  f.values[0] = 3.0;
  SampledSignal1D z(a);
  EXPECT_DOUBLE_EQ(relative_l2_distance(z, f), 1.0);
  SampledSignal1D r = real_part(linear_combination(cplx(0, 1), f, 2.0, f));
  EXPECT_DOUBLE_EQ(r.values[0].real(), 6.0);
  EXPECT_DOUBLE_EQ(r.values[0].imag(), 0.0);
}

TEST(SignalIo, CsvRoundTripIsExact) {
  std::mt19937 rng(6);
  Grid1D g(32, -1.5, 0.1);
  SampledSignal1D f(g);
  for (auto& v : f.values) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  std::stringstream ss;
  io::write_signal_csv(ss, f, "genus=bspline\nn=32");
  EXPECT_EQ(ss.str().rfind("# genus=bspline\n# n=32\nx,re,im\n", 0), 0u);
  SampledSignal1D r = io::read_signal_csv(ss);
  EXPECT_EQ(r.grid.n, 32u);
  EXPECT_NEAR(r.grid.dx, 0.1, 1e-14);
  EXPECT_EQ(r.values, f.values);
}

TEST(SignalIo, BinaryRoundTripIsExact) {
  std::mt19937 rng(7);
  Grid1D g(16, 0.25, 0.75);
  SampledSignal1D f(g);
  for (auto& v : f.values) v = cplx(uniform(rng, -1, 1), uniform(rng, -1, 1));
  std::stringstream ss;
  io::write_signal_swv1(ss, f);
  EXPECT_EQ(ss.str().size(), 4u + 24u + 16u * 16u);
  SampledSignal1D r = io::read_signal_swv1(ss);
  EXPECT_EQ(r.values, f.values);
  EXPECT_EQ(r.grid.x0, 0.25);
  EXPECT_EQ(r.grid.dx, 0.75);
}

TEST(SignalIo, ErrorsCarryLocation) {
  std::stringstream empty;
  try {
    io::read_signal_csv(empty);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("no samples"), std::string::npos);
  }
  std::stringstream bad("x,re,im\n0,1,0\n1,oops,0\n");
  try {
    io::read_signal_csv(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  std::stringstream odd("x,re,im\n0,1,0\n1,1,0\n2,1,0\n");
  EXPECT_THROW(io::read_signal_csv(odd), ParseError);
  std::stringstream nomagic("SWV2xxxx");
  EXPECT_THROW(io::read_signal_swv1(nomagic), ParseError);
}

TEST(SignalIo, ImageFilesRoundTrip) {
  Grid1D gx(8, 0.0, 1.0), gy(16, 0.0, 1.0);
  SampledSignal2D f(gx, gy);
  for (std::size_t iy = 0; iy < 16; ++iy)
    for (std::size_t ix = 0; ix < 8; ++ix) f.at(ix, iy) = double(ix * 16 + iy);
  std::string csv = ::testing::TempDir() + "img_rt.csv";
  std::string pgm = ::testing::TempDir() + "img_rt.pgm";
  io::write_image_file(csv, f, "note=test");
  SampledSignal2D r = io::read_image_file(csv);
  ASSERT_EQ(r.grid_x.n, 8u);
  ASSERT_EQ(r.grid_y.n, 16u);
  EXPECT_EQ(r.values, f.values);
  io::write_image_file(pgm, f);
  SampledSignal2D p = io::read_image_file(pgm);
  ASSERT_EQ(p.values.size(), f.values.size());
  // Data range 0..127 maps linearly onto 0..maxval.
  double scale = p.max_abs() / 127.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) EXPECT_NEAR(p.values[i].real(), f.values[i].real() * scale, 1.0);
  std::remove(csv.c_str());
  std::remove(pgm.c_str());
}
