#include "shiftwave/fht.hpp"

#include "shiftwave/fft.hpp"

#include <cmath>
#include <sstream>

namespace shiftwave {
namespace {

constexpr double kPi = 3.14159265358979323846;

double canonical_tau(double tau) {
  if (!std::isfinite(tau)) throw Error("fHT shift must be finite");
  double r = std::fmod(tau, 2.0);
  if (r <= -1.0) r += 2.0;
  if (r > 1.0) r -= 2.0;
  return r;
}

long signed_bin(std::size_t m, std::size_t n) {
  long lm = static_cast<long>(m), ln = static_cast<long>(n);
  return lm < ln / 2 ? lm : lm - ln;
}

}  // namespace

FhtShift::FhtShift(double tau) : tau_(canonical_tau(tau)) {}

FhtShift fht_compose(FhtShift t1, FhtShift t2) { return FhtShift(t1.tau() + t2.tau()); }
FhtShift fht_inverse(FhtShift t) { return FhtShift(-t.tau()); }

Direction2D::Direction2D(double theta_) : theta(theta_) {
  if (!(theta >= 0.0 && theta < kPi)) throw Error("direction theta must lie in [0, pi)");
}

double Direction2D::ux() const { return cospi(theta / kPi); }
double Direction2D::uy() const { return sinpi(theta / kPi); }

double cospi(double x) {
  double r = std::fmod(std::abs(x), 2.0);
  if (r == 0.5 || r == 1.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0) return -1.0;
  return std::cos(kPi * r);
}

double sinpi(double x) {
  double s = x < 0 ? -1.0 : 1.0;
  double r = std::fmod(std::abs(x), 2.0);
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return s;
  if (r == 1.5) return -s;
  return s * std::sin(kPi * r);
}

cplx fht_multiplier(long k, std::size_t n, FhtShift tau) {
  double c = cospi(tau.tau());
  if (k == 0 || k == -static_cast<long>(n / 2) || k == static_cast<long>(n / 2)) return c;
  double s = sinpi(tau.tau());
  return k > 0 ? cplx(c, s) : cplx(c, -s);
}

SampledSignal1D fht_apply(const SampledSignal1D& f, FhtShift tau) {
  if (tau.tau() == 0.0) return f;
  std::vector<cplx> F = f.values;
  fft::forward(F);
  const std::size_t n = f.grid.n;
  for (std::size_t m = 0; m < n; ++m) F[m] *= fht_multiplier(signed_bin(m, n), n, tau) / static_cast<double>(n);
  fft::inverse(F);
  return SampledSignal1D(f.grid, std::move(F));
}

SampledSignal1D hilbert(const SampledSignal1D& f) { return fht_apply(f, FhtShift(-0.5)); }

int direction_sign(long kx, std::size_t nx, double dx, long ky, std::size_t ny, double dy, Direction2D theta) {
  double wx = (kx == -static_cast<long>(nx / 2)) ? 0.0 : 2.0 * kPi * static_cast<double>(kx) / (static_cast<double>(nx) * dx);
  double wy = (ky == -static_cast<long>(ny / 2)) ? 0.0 : 2.0 * kPi * static_cast<double>(ky) / (static_cast<double>(ny) * dy);
  double a = theta.ux() * wx, b = theta.uy() * wy;
  double d = a + b;
  if (std::abs(d) <= 1e-12 * (std::abs(a) + std::abs(b))) return 0;
  return d > 0 ? 1 : -1;
}

namespace {

SampledSignal2D apply_direction_multiplier(const SampledSignal2D& f, Direction2D theta, cplx on_zero, cplx on_pos,
                                           cplx on_neg) {
  const std::size_t nx = f.grid_x.n, ny = f.grid_y.n;
  std::vector<cplx> F = f.values;
  fft::forward2(F, nx, ny);
  double norm = 1.0 / static_cast<double>(nx * ny);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    long ky = signed_bin(iy, ny);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      int s = direction_sign(signed_bin(ix, nx), nx, f.grid_x.dx, ky, ny, f.grid_y.dx, theta);
      cplx m = s == 0 ? on_zero : (s > 0 ? on_pos : on_neg);
      F[iy * nx + ix] *= m * norm;
    }
  }
  fft::inverse2(F, nx, ny);
  return SampledSignal2D(f.grid_x, f.grid_y, std::move(F));
}

}  // namespace

SampledSignal2D dht_apply(const SampledSignal2D& f, Direction2D theta) {
  return apply_direction_multiplier(f, theta, 0.0, cplx(0, -1), cplx(0, 1));
}

SampledSignal2D fdht_apply(const SampledSignal2D& f, Direction2D theta, FhtShift tau) {
  if (tau.tau() == 0.0) return f;
  double c = cospi(tau.tau()), s = sinpi(tau.tau());
  // cos I - sin (-j sign) = cos + j sin sign
  return apply_direction_multiplier(f, theta, c, cplx(c, s), cplx(c, -s));
}

namespace {

struct BandEnergy {
  double inside = 0.0;   // |w| < Omega
  double outside = 0.0;  // |w| >= Omega
  long max_bin = 0;      // largest |k| carrying more than 1e-10 of the energy
};

BandEnergy band_energy(const SampledSignal1D& f, double Omega) {
  std::vector<cplx> F = f.values;
  fft::forward(F);
  const std::size_t n = f.grid.n;
  BandEnergy e;
  double total = 0.0;
  for (const auto& v : F) total += std::norm(v);
  for (std::size_t m = 0; m < n; ++m) {
    long k = signed_bin(m, n);
    double w = std::abs(f.grid.omega(k));
    double p = std::norm(F[m]);
    (w < Omega ? e.inside : e.outside) += p;
    if (p > 1e-10 * total) e.max_bin = std::max(e.max_bin, std::labs(k));
  }
  return e;
}

}  // namespace

double bedrosian_residual_unchecked(const SampledSignal1D& f_low, const SampledSignal1D& g_high, FhtShift tau) {
  require_same_grid(f_low, g_high, "bedrosian_residual");
  SampledSignal1D prod(f_low.grid);
  for (std::size_t p = 0; p < prod.values.size(); ++p) prod.values[p] = f_low.values[p] * g_high.values[p];
  SampledSignal1D lhs = fht_apply(prod, tau);
  SampledSignal1D hg = fht_apply(g_high, tau);
  for (std::size_t p = 0; p < hg.values.size(); ++p) hg.values[p] *= f_low.values[p];
  double den = l2_norm(prod);
  if (den == 0.0) return 0.0;
  double num = 0.0;
  for (std::size_t p = 0; p < lhs.values.size(); ++p) num += std::norm(lhs.values[p] - hg.values[p]);
  return std::sqrt(num * prod.grid.dx) / den;
}

double bedrosian_residual(const SampledSignal1D& f_low, const SampledSignal1D& g_high, FhtShift tau, double Omega) {
  require_same_grid(f_low, g_high, "bedrosian_residual");
  if (!(Omega > 0.0)) throw SupportPreconditionError("bedrosian_residual: Omega must be positive");
  BandEnergy ef = band_energy(f_low, Omega);
  BandEnergy eg = band_energy(g_high, Omega);
  double tf = ef.inside + ef.outside, tg = eg.inside + eg.outside;
  std::ostringstream msg;
  if (tf > 0.0 && ef.outside > 1e-10 * tf) {
    msg << "bedrosian_residual: lowpass factor has " << ef.outside / tf << " of its energy at |w| >= Omega=" << Omega;
    throw SupportPreconditionError(msg.str());
  }
  if (tg > 0.0 && eg.inside > 1e-10 * tg) {
    msg << "bedrosian_residual: highpass factor has " << eg.inside / tg << " of its energy at |w| < Omega=" << Omega;
    throw SupportPreconditionError(msg.str());
  }
  if (ef.max_bin + eg.max_bin >= static_cast<long>(f_low.grid.n / 2)) {
    msg << "bedrosian_residual: product bandwidth reaches the grid Nyquist bin (bins " << ef.max_bin << " + "
        << eg.max_bin << ")";
    throw SupportPreconditionError(msg.str());
  }
  return bedrosian_residual_unchecked(f_low, g_high, tau);
}

}  // namespace shiftwave
