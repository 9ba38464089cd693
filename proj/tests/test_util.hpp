#pragma once

#include "shiftwave/signal.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace testutil {

using shiftwave::cplx;
using shiftwave::Grid1D;
using shiftwave::SampledSignal1D;
using shiftwave::SampledSignal2D;

constexpr double kPi = 3.14159265358979323846;

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline int uniform_int(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Real trigonometric sum with random coefficients on bins kmin <= k <= kmax
// (k < n/2), written out sample by sample.
inline SampledSignal1D random_trig(const Grid1D& g, std::mt19937& rng, int kmin, int kmax) {
  std::normal_distribution<double> N(0.0, 1.0);
  SampledSignal1D f(g);
  const int half = static_cast<int>(g.n / 2);
  for (int k = std::max(kmin, 0); k <= kmax && k < half; ++k) {
    double a = N(rng), b = k == 0 ? 0.0 : N(rng);
    double w = 2.0 * kPi * k / static_cast<double>(g.n);
    for (std::size_t p = 0; p < g.n; ++p) {
      double t = w * static_cast<double>(p);
      f.values[p] += (k == 0 ? 1.0 : 2.0) * (a * std::cos(t) - b * std::sin(t));
    }
  }
  return f;
}

inline SampledSignal2D random_image(const Grid1D& gx, const Grid1D& gy, std::mt19937& rng, int kmax) {
  std::normal_distribution<double> N(0.0, 1.0);
  SampledSignal2D f(gx, gy);
  for (int ky = -kmax; ky <= kmax; ++ky) {
    for (int kx = 0; kx <= kmax; ++kx) {
      if (kx == 0 && ky < 0) continue;
      double a = N(rng), b = (kx == 0 && ky == 0) ? 0.0 : N(rng);
      for (std::size_t iy = 0; iy < gy.n; ++iy)
        for (std::size_t ix = 0; ix < gx.n; ++ix) {
          double t = 2.0 * kPi * (kx * static_cast<double>(ix) / gx.n + ky * static_cast<double>(iy) / gy.n);
          f.at(ix, iy) += a * std::cos(t) - b * std::sin(t);
        }
    }
  }
  return f;
}

// Direct O(n^2) DFT: X_k = sum_p x_p exp(-2 pi j k p / n), k in FFT order.
inline std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign = -1) {
  const std::size_t n = x.size();
  std::vector<cplx> X(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t p = 0; p < n; ++p)
      X[k] += x[p] * std::polar(1.0, sign * 2.0 * kPi * static_cast<double>((k * p) % n) / static_cast<double>(n));
  return X;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace testutil
