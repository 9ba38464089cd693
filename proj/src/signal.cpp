#include "shiftwave/signal.hpp"

#include "shiftwave/fft.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace shiftwave {
namespace {

constexpr double kPi = 3.14159265358979323846;

// exp(-j * omega_k * x0) for signed bin k, reduced exactly in units of periods.
cplx shift_phase(long k, double x0_over_length) {
  double turns = std::fmod(static_cast<double>(k) * x0_over_length, 1.0);
  return std::polar(1.0, -2.0 * kPi * turns);
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Grid1D::Grid1D(std::size_t n_, double x0_, double dx_) : n(n_), x0(x0_), dx(dx_) { validate(); }

Grid1D Grid1D::centered(std::size_t n, double dx) {
  return Grid1D(n, -0.5 * static_cast<double>(n) * dx, dx);
}

double Grid1D::omega(long k) const { return 2.0 * kPi * static_cast<double>(k) / length(); }

long Grid1D::signed_bin(std::size_t m) const {
  long ln = static_cast<long>(n);
  long lm = static_cast<long>(m);
  return lm < ln / 2 ? lm : lm - ln;
}

void Grid1D::validate() const {
  if (n < 8 || !is_power_of_two(n)) {
    throw GridError("grid size n=" + std::to_string(n) + " must be a power of two >= 8");
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw GridError("grid spacing dx must be positive");
  if (!std::isfinite(x0)) throw GridError("grid origin x0 must be finite");
}

bool Grid1D::same_as(const Grid1D& o) const {
  double tol = 1e-12 * std::max(1.0, std::abs(x0) + std::abs(o.x0));
  return n == o.n && std::abs(dx - o.dx) <= 1e-12 * dx && std::abs(x0 - o.x0) <= tol;
}

SampledSignal1D::SampledSignal1D(const Grid1D& g) : grid(g), values(g.n) {}

SampledSignal1D::SampledSignal1D(const Grid1D& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.n) throw GridError("sample count does not match grid size");
}

double SampledSignal1D::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

bool SampledSignal1D::is_real(double rel_tol) const {
  double m = max_abs();
  for (const auto& v : values) {
    if (std::abs(v.imag()) > rel_tol * m) return false;
  }
  return true;
}

SampledSignal2D::SampledSignal2D(const Grid1D& gx, const Grid1D& gy)
    : grid_x(gx), grid_y(gy), values(gx.n * gy.n) {}

SampledSignal2D::SampledSignal2D(const Grid1D& gx, const Grid1D& gy, std::vector<cplx> v)
    : grid_x(gx), grid_y(gy), values(std::move(v)) {
  if (values.size() != gx.n * gy.n) throw GridError("sample count does not match grid size");
}

double SampledSignal2D::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double Spectrum1D::omega(std::size_t i) const {
  return grid.omega(static_cast<long>(i) - static_cast<long>(grid.n / 2));
}

std::vector<cplx> ft_samples(const SampledSignal1D& f) {
  const Grid1D& g = f.grid;
  std::vector<cplx> F = f.values;
  fft::forward(F);
  double r = g.x0 / g.length();
  for (std::size_t m = 0; m < g.n; ++m) F[m] *= g.dx * shift_phase(g.signed_bin(m), r);
  return F;
}

SampledSignal1D from_ft_samples(const Grid1D& g, std::vector<cplx> F) {
  if (F.size() != g.n) throw GridError("spectrum size does not match grid size");
  double r = g.x0 / g.length();
  double scale = 1.0 / g.length();
  for (std::size_t m = 0; m < g.n; ++m) F[m] *= scale * std::conj(shift_phase(g.signed_bin(m), r));
  fft::inverse(F);
  return SampledSignal1D(g, std::move(F));
}

std::vector<cplx> ft_samples(const SampledSignal2D& f) {
  const Grid1D& gx = f.grid_x;
  const Grid1D& gy = f.grid_y;
  std::vector<cplx> F = f.values;
  fft::forward2(F, gx.n, gy.n);
  double rx = gx.x0 / gx.length(), ry = gy.x0 / gy.length();
  for (std::size_t iy = 0; iy < gy.n; ++iy) {
    cplx py = gy.dx * shift_phase(gy.signed_bin(iy), ry);
    for (std::size_t ix = 0; ix < gx.n; ++ix) {
      F[iy * gx.n + ix] *= py * gx.dx * shift_phase(gx.signed_bin(ix), rx);
    }
  }
  return F;
}

SampledSignal2D from_ft_samples(const Grid1D& gx, const Grid1D& gy, std::vector<cplx> F) {
  if (F.size() != gx.n * gy.n) throw GridError("spectrum size does not match grid size");
  double rx = gx.x0 / gx.length(), ry = gy.x0 / gy.length();
  double scale = 1.0 / (gx.length() * gy.length());
  for (std::size_t iy = 0; iy < gy.n; ++iy) {
    cplx py = scale * std::conj(shift_phase(gy.signed_bin(iy), ry));
    for (std::size_t ix = 0; ix < gx.n; ++ix) {
      F[iy * gx.n + ix] *= py * std::conj(shift_phase(gx.signed_bin(ix), rx));
    }
  }
  fft::inverse2(F, gx.n, gy.n);
  return SampledSignal2D(gx, gy, std::move(F));
}

Spectrum1D to_spectrum(const SampledSignal1D& f) {
  auto F = ft_samples(f);
  const std::size_t n = f.grid.n;
  Spectrum1D S{f.grid, std::vector<cplx>(n)};
  for (std::size_t i = 0; i < n; ++i) S.values[i] = F[(i + n / 2) % n];
  return S;
}

SampledSignal1D from_spectrum(const Spectrum1D& S) {
  const std::size_t n = S.grid.n;
  if (S.values.size() != n) throw GridError("spectrum size does not match grid size");
  std::vector<cplx> F(n);
  for (std::size_t i = 0; i < n; ++i) F[(i + n / 2) % n] = S.values[i];
  return from_ft_samples(S.grid, std::move(F));
}

Spectrum2D to_spectrum(const SampledSignal2D& f) {
  auto F = ft_samples(f);
  const std::size_t nx = f.grid_x.n, ny = f.grid_y.n;
  Spectrum2D S{f.grid_x, f.grid_y, std::vector<cplx>(nx * ny)};
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      S.values[iy * nx + ix] = F[((iy + ny / 2) % ny) * nx + (ix + nx / 2) % nx];
  return S;
}

SampledSignal2D from_spectrum(const Spectrum2D& S) {
  const std::size_t nx = S.grid_x.n, ny = S.grid_y.n;
  if (S.values.size() != nx * ny) throw GridError("spectrum size does not match grid size");
  std::vector<cplx> F(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      F[((iy + ny / 2) % ny) * nx + (ix + nx / 2) % nx] = S.values[iy * nx + ix];
  return from_ft_samples(S.grid_x, S.grid_y, std::move(F));
}

void require_same_grid(const SampledSignal1D& f, const SampledSignal1D& g, const char* what) {
  if (!f.grid.same_as(g.grid)) throw GridMismatch(std::string(what) + ": signals live on different grids");
}

void require_same_grid(const SampledSignal2D& f, const SampledSignal2D& g, const char* what) {
  if (!f.grid_x.same_as(g.grid_x) || !f.grid_y.same_as(g.grid_y))
    throw GridMismatch(std::string(what) + ": images live on different grids");
}

cplx inner_product(const SampledSignal1D& f, const SampledSignal1D& g) {
  require_same_grid(f, g, "inner_product");
  cplx s = 0.0;
  for (std::size_t p = 0; p < f.values.size(); ++p) s += f.values[p] * std::conj(g.values[p]);
  return s * f.grid.dx;
}

cplx inner_product(const SampledSignal2D& f, const SampledSignal2D& g) {
  require_same_grid(f, g, "inner_product");
  cplx s = 0.0;
  for (std::size_t p = 0; p < f.values.size(); ++p) s += f.values[p] * std::conj(g.values[p]);
  return s * f.grid_x.dx * f.grid_y.dx;
}

double l2_norm(const SampledSignal1D& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.grid.dx);
}

double l2_norm(const SampledSignal2D& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.grid_x.dx * f.grid_y.dx);
}

SampledSignal1D translate(const SampledSignal1D& f, long m) {
  const long n = static_cast<long>(f.grid.n);
  SampledSignal1D out(f.grid);
  long s = ((m % n) + n) % n;
  for (long p = 0; p < n; ++p) out.values[static_cast<std::size_t>((p + s) % n)] = f.values[static_cast<std::size_t>(p)];
  return out;
}

SampledSignal2D translate(const SampledSignal2D& f, long mx, long my) {
  const long nx = static_cast<long>(f.grid_x.n), ny = static_cast<long>(f.grid_y.n);
  SampledSignal2D out(f.grid_x, f.grid_y);
  long sx = ((mx % nx) + nx) % nx, sy = ((my % ny) + ny) % ny;
  for (long iy = 0; iy < ny; ++iy)
    for (long ix = 0; ix < nx; ++ix)
      out.values[static_cast<std::size_t>(((iy + sy) % ny) * nx + (ix + sx) % nx)] =
          f.values[static_cast<std::size_t>(iy * nx + ix)];
  return out;
}

SampledSignal1D dilate_translate(const SampledSignal1D& f, int i, double k) {
  double scale = std::ldexp(1.0, i);
  Grid1D g(f.grid.n, (f.grid.x0 + k) / scale, f.grid.dx / scale);
  SampledSignal1D out(g, f.values);
  double amp = std::sqrt(scale);
  for (auto& v : out.values) v *= amp;
  return out;
}

SampledSignal1D dilate_translate(const SampledSignal1D& f, int i, double k, const Grid1D& target) {
  SampledSignal1D moved = dilate_translate(f, i, k);
  const Grid1D& g = moved.grid;
  if (g.n != target.n || std::abs(g.dx - target.dx) > 1e-12 * target.dx) {
    std::ostringstream msg;
    msg << "dilate_translate: level " << i << " maps spacing " << f.grid.dx << " to " << g.dx
        << ", which does not match the target spacing " << target.dx;
    throw IncompatibleLevel(msg.str());
  }
  double offset = (g.x0 - target.x0) / target.dx;
  double whole = std::round(offset);
  if (std::abs(offset - whole) > 1e-9) {
    std::ostringstream msg;
    msg << "dilate_translate: translation k=" << k << " at level " << i
        << " is not a whole number of target samples (offset " << offset << ")";
    throw IncompatibleLevel(msg.str());
  }
  SampledSignal1D placed(target, moved.values);
  return translate(placed, static_cast<long>(whole));
}

SampledSignal1D real_part(const SampledSignal1D& f) {
  SampledSignal1D out(f.grid);
  for (std::size_t p = 0; p < f.values.size(); ++p) out.values[p] = f.values[p].real();
  return out;
}

SampledSignal1D linear_combination(cplx a, const SampledSignal1D& f, cplx b, const SampledSignal1D& g) {
  require_same_grid(f, g, "linear_combination");
  SampledSignal1D out(f.grid);
  for (std::size_t p = 0; p < f.values.size(); ++p) out.values[p] = a * f.values[p] + b * g.values[p];
  return out;
}

double relative_l2_distance(const SampledSignal1D& f, const SampledSignal1D& ref) {
  require_same_grid(f, ref, "relative_l2_distance");
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < f.values.size(); ++p) {
    num += std::norm(f.values[p] - ref.values[p]);
    den += std::norm(ref.values[p]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

double relative_l2_distance(const SampledSignal2D& f, const SampledSignal2D& ref) {
  require_same_grid(f, ref, "relative_l2_distance");
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < f.values.size(); ++p) {
    num += std::norm(f.values[p] - ref.values[p]);
    den += std::norm(ref.values[p]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace shiftwave
