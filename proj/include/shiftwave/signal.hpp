#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftwave {

using cplx = std::complex<double>;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class GridError : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

class IncompatibleLevel : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

// One period of a periodic uniform grid: samples at x0 + p*dx, p = 0..n-1.
struct Grid1D {
  std::size_t n = 0;
  double x0 = 0.0;
  double dx = 1.0;

  Grid1D() = default;
  Grid1D(std::size_t n_, double x0_, double dx_);

  // Grid of n samples with spacing dx whose period is centered on x = 0.
  static Grid1D centered(std::size_t n, double dx);

  double x(std::size_t p) const { return x0 + static_cast<double>(p) * dx; }
  double length() const { return static_cast<double>(n) * dx; }
  // Continuous frequency of signed bin k in [-n/2, n/2).
  double omega(long k) const;
  // Signed bin of storage index m in FFT order (0..n-1).
  long signed_bin(std::size_t m) const;
  void validate() const;
  bool same_as(const Grid1D& o) const;
};

bool is_power_of_two(std::size_t n);

struct SampledSignal1D {
  Grid1D grid;
  std::vector<cplx> values;

  SampledSignal1D() = default;
  explicit SampledSignal1D(const Grid1D& g);
  SampledSignal1D(const Grid1D& g, std::vector<cplx> v);

  std::size_t size() const { return values.size(); }
  bool is_real(double rel_tol = 1e-12) const;
  double max_abs() const;
};

struct SampledSignal2D {
  Grid1D grid_x;
  Grid1D grid_y;
  // Row-major: values[iy * grid_x.n + ix].
  std::vector<cplx> values;

  SampledSignal2D() = default;
  SampledSignal2D(const Grid1D& gx, const Grid1D& gy);
  SampledSignal2D(const Grid1D& gx, const Grid1D& gy, std::vector<cplx> v);

  cplx& at(std::size_t ix, std::size_t iy) { return values[iy * grid_x.n + ix]; }
  const cplx& at(std::size_t ix, std::size_t iy) const { return values[iy * grid_x.n + ix]; }
  double max_abs() const;
};

// Centered frequency-domain samples: values[i] belongs to signed bin
// k = i - n/2, at omega_k = 2*pi*k / (n*dx). Values approximate the
// continuous Fourier transform F(w) = int f(x) exp(-j w x) dx, i.e.
// values = dx * exp(-j w_k x0) * DFT_k. With this scaling Parseval reads
// sum |f|^2 dx = (1/2pi) sum |F|^2 dw with dw = 2pi/(n dx).
struct Spectrum1D {
  Grid1D grid;
  std::vector<cplx> values;

  double omega(std::size_t i) const;
  double bin_spacing() const { return 2.0 * 3.14159265358979323846 / grid.length(); }
};

struct Spectrum2D {
  Grid1D grid_x;
  Grid1D grid_y;
  // Row-major centered bins: values[iy * nx + ix], bins kx = ix - nx/2, ky = iy - ny/2.
  std::vector<cplx> values;
};

Spectrum1D to_spectrum(const SampledSignal1D& f);
SampledSignal1D from_spectrum(const Spectrum1D& F);
Spectrum2D to_spectrum(const SampledSignal2D& f);
SampledSignal2D from_spectrum(const Spectrum2D& F);

// Continuous-FT samples in FFT storage order (index m <-> signed bin).
std::vector<cplx> ft_samples(const SampledSignal1D& f);
SampledSignal1D from_ft_samples(const Grid1D& g, std::vector<cplx> F);
std::vector<cplx> ft_samples(const SampledSignal2D& f);
SampledSignal2D from_ft_samples(const Grid1D& gx, const Grid1D& gy, std::vector<cplx> F);

cplx inner_product(const SampledSignal1D& f, const SampledSignal1D& g);
cplx inner_product(const SampledSignal2D& f, const SampledSignal2D& g);
double l2_norm(const SampledSignal1D& f);
double l2_norm(const SampledSignal2D& f);

// Circular shift by whole samples: result[p] = f[p - m].
SampledSignal1D translate(const SampledSignal1D& f, long shift_samples);
SampledSignal2D translate(const SampledSignal2D& f, long shift_x, long shift_y);

// Xi_{i,k} f(x) = 2^{i/2} f(2^i x - k). The samples are carried to the
// transformed grid x' = (x + k) / 2^i, so the operator is exact and
// norm-preserving; the period becomes L / 2^i.
SampledSignal1D dilate_translate(const SampledSignal1D& f, int i, double k);
// Same operator, re-indexed onto `target`. The transformed grid must share
// n and spacing with `target` and be offset from it by a whole number of
// samples (periodic wrap-around); otherwise IncompatibleLevel is thrown.
SampledSignal1D dilate_translate(const SampledSignal1D& f, int i, double k, const Grid1D& target);

SampledSignal1D real_part(const SampledSignal1D& f);
SampledSignal1D linear_combination(cplx a, const SampledSignal1D& f, cplx b, const SampledSignal1D& g);
double relative_l2_distance(const SampledSignal1D& f, const SampledSignal1D& ref);
double relative_l2_distance(const SampledSignal2D& f, const SampledSignal2D& ref);

void require_same_grid(const SampledSignal1D& f, const SampledSignal1D& g, const char* what);
void require_same_grid(const SampledSignal2D& f, const SampledSignal2D& g, const char* what);

}  // namespace shiftwave
