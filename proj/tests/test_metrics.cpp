#include "shiftwave/fht.hpp"
#include "shiftwave/metrics.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace shiftwave;
using namespace testutil;

namespace {

SampledSignal1D gabor(const Grid1D& g, double s, double w0) {
  SampledSignal1D f(g);
  for (std::size_t p = 0; p < g.n; ++p) {
    double x = g.x(p);
    f.values[p] = std::exp(-x * x / (2 * s * s)) * std::cos(w0 * x);
  }
  return f;
}

}  // namespace

TEST(Rho, HilbertPairAndDegenerateCases) {
  Grid1D g = Grid1D::centered(1024, 1.0 / 16.0);
  SampledSignal1D psi = gabor(g, 1.0, 6.0);
  EXPECT_NEAR(rho(psi, hilbert(psi)), 1.0, 1e-12);
  EXPECT_NEAR(rho(psi, psi), 0.0, 1e-12);
  EXPECT_EQ(rho(psi, linear_combination(-1.0, hilbert(psi), 0.0, psi)), 0.0);
  // Half-way rotation: rho = cos(pi/4).
  SampledSignal1D mid = linear_combination(std::sqrt(0.5), psi, std::sqrt(0.5), hilbert(psi));
  EXPECT_NEAR(rho(psi, mid), std::sqrt(0.5), 1e-12);
}

TEST(Kappa, TriangleHasKnownValue) {
  // |S|(w) = w on [0, 1]: centroid 2/3, kappa 1/3.
  SpectrumS S;
  const int m = 20001;
  for (int i = -m; i <= m; ++i) {
    double w = 2.0 * i / (m - 1);
    S.omega.push_back(w);
    S.S.push_back(w > 0 && w <= 1 ? cplx(w) : cplx(0.0));
  }
  S.W = 2.0;
  // The jump at w = 1 costs O(bin spacing) = 1e-4.
  EXPECT_NEAR(centroid(S), 2.0 / 3.0, 1e-4);
  EXPECT_NEAR(kappa(S), 1.0 / 3.0, 1e-4);
}

TEST(Kappa, SymmetricBandsVanish) {
  Grid1D g = Grid1D::centered(2048, 1.0 / 16.0);
  SampledSignal1D psi = gabor(g, 2.0, 8.0);
  SpectrumS S = spectrum_S(psi, hilbert(psi));
  EXPECT_LT(kappa(S), 1e-5);
  EXPECT_NEAR(centroid(S), 8.0, 1e-6);
  EXPECT_LT(S.negative_leak, 1e-12);
  EXPECT_LE(S.tail_mass, 1e-10);
  // Effective support of this Gabor atom is below 30, so the padding reaches 2 pi / 240.
  EXPECT_LE(S.spacing(), 2 * kPi / 240.0);
  SpectrumS wide = spectrum_S(psi, hilbert(psi), 0.0, 100000);
  EXPECT_GE(2 * wide.W / wide.spacing(), 100000.0);
}

TEST(Table, HilbertPairsAndShannonRow) {
  std::vector<MetricsRow> rows = metrics_table(default_table_entries());
  ASSERT_EQ(rows.size(), 7u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.error.empty()) << r.label << ": " << r.error;
    EXPECT_GE(r.rho, 0.999999) << r.label;
  }
  EXPECT_LE(rows[0].kappa, 1e-3);
  // Asymmetry decays with the degree.
  EXPECT_GT(rows[1].kappa, rows[2].kappa);
  EXPECT_GT(rows[2].kappa, rows[3].kappa);
  EXPECT_GT(rows[4].kappa, rows[5].kappa);
  EXPECT_GT(rows[5].kappa, rows[6].kappa);
}

TEST(Table, InvariantUnderDilationAndShift) {
  std::vector<TableEntry> entries = default_table_entries();
  entries.resize(3);
  std::vector<MetricsRow> base = metrics_table(entries);
  TableConfig cfg;
  cfg.dilation = 2;
  cfg.shift_samples = 7;
  std::vector<MetricsRow> moved = metrics_table(entries, cfg);
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_NEAR(moved[i].rho, base[i].rho, 1e-9) << base[i].label;
    EXPECT_NEAR(moved[i].kappa, base[i].kappa, 1e-6) << base[i].label;
  }
  cfg.dilation = 0;
  EXPECT_FALSE(metrics_table(entries, cfg)[1].error.empty());
}

TEST(FilterPair, ParseAndCascade) {
  std::stringstream ok("# Haar pair\nk,h1,h2\n0,0.7071067811865476,0.7071067811865476\n1,0.7071067811865476,0.7071067811865476\n");
  FilterPair p = read_filter_pair_csv(ok, "haar");
  EXPECT_EQ(p.offset, 0);
  ASSERT_EQ(p.h1.size(), 2u);
  std::vector<MetricsRow> rows = metrics_table({TableEntry{"same", std::nullopt, p}});
  EXPECT_TRUE(rows[0].error.empty()) << rows[0].error;
  EXPECT_NEAR(rows[0].rho, 0.0, 1e-9);

  std::stringstream noheader("0,1,1\n");
  EXPECT_THROW(read_filter_pair_csv(noheader, "x"), ParseError);
  std::stringstream gap("k,h1,h2\n0,1,1\n2,1,1\n");
  EXPECT_THROW(read_filter_pair_csv(gap, "x"), ParseError);
  std::stringstream junk("k,h1,h2\n0,1,zz\n");
  EXPECT_THROW(read_filter_pair_csv(junk, "x"), ParseError);
  std::stringstream empty("k,h1,h2\n");
  EXPECT_THROW(read_filter_pair_csv(empty, "x"), ParseError);
  EXPECT_THROW(read_filter_pair_file("/nonexistent/pair.csv"), ParseError);
}

TEST(Table, Writers) {
  std::vector<MetricsRow> rows{{"a,b", 0.5, 0.25, 10.0, 1e-12, ""}, {"bad", 0.0, 0.0, 0.0, 0.0, "boom"}};
  std::ostringstream csv, json;
  write_table_csv(csv, rows);
  write_table_json(json, rows, TableConfig{});
  EXPECT_NE(csv.str().find("\"a,b\""), std::string::npos) << csv.str();
  EXPECT_NE(json.str().find("boom"), std::string::npos);
  EXPECT_NE(json.str().find("\"rho\""), std::string::npos);
}
