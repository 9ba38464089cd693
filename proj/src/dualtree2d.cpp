#include "shiftwave/dualtree2d.hpp"

#include "shiftwave/fft.hpp"
#include "shiftwave/parallel.hpp"

#include <cmath>
#include <sstream>

namespace shiftwave {
namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx kJ(0.0, 1.0);

std::vector<cplx> outer(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  std::vector<cplx> out(x.size() * y.size());
  for (std::size_t iy = 0; iy < y.size(); ++iy)
    for (std::size_t ix = 0; ix < x.size(); ++ix) out[iy * x.size() + ix] = x[ix] * y[iy];
  return out;
}

std::vector<cplx> combine(const std::vector<cplx>& a, cplx ca, const std::vector<cplx>& b, cplx cb) {
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

struct AxisFactors {
  const std::vector<cplx>& phi;
  const std::vector<cplx>& phi_p;
  const std::vector<cplx>& psi;
  const std::vector<cplx>& psi_p;
};

AxisFactors factors(const LevelSpectra& t, const LevelSpectra& tp, bool dual) {
  if (dual) return {t.dual_phi, tp.dual_phi, t.dual_psi, tp.dual_psi};
  return {t.phi, tp.phi, t.psi, tp.psi};
}

std::array<std::vector<cplx>, kOrientations> complex_wavelets(const AxisFactors& x, const AxisFactors& y) {
  const double r = std::sqrt(0.5);
  std::vector<cplx> ax = combine(x.psi, 1.0, x.psi_p, kJ);        // psi_a(x)
  std::vector<cplx> ax_conj = combine(x.psi, 1.0, x.psi_p, -kJ);  // psi_a*(x)
  std::vector<cplx> ay = combine(y.psi, 1.0, y.psi_p, kJ);
  std::array<std::vector<cplx>, kOrientations> out;
  out[0] = outer(ax, y.phi);
  out[1] = outer(ax, y.phi_p);
  out[2] = outer(x.phi, ay);
  out[3] = outer(x.phi_p, ay);
  out[4] = outer(ax, ay);
  out[5] = outer(ax_conj, ay);
  for (auto& v : out[4]) v *= r;
  for (auto& v : out[5]) v *= r;
  return out;
}

std::vector<cplx> correlate2(const std::vector<cplx>& F, const std::vector<cplx>& H, std::size_t nx, std::size_t ny,
                             std::size_t qx, std::size_t qy, double area) {
  std::vector<cplx> Y(qx * qy);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix)
      Y[(iy % qy) * qx + ix % qx] += F[iy * nx + ix] * std::conj(H[iy * nx + ix]);
  fft::inverse2(Y, qx, qy);
  for (auto& v : Y) v /= area;
  return Y;
}

void accumulate2(std::vector<cplx>& acc, const std::vector<cplx>& H, std::vector<cplx> w, std::size_t nx,
                 std::size_t ny, std::size_t qx, std::size_t qy) {
  fft::forward2(w, qx, qy);
  for (std::size_t iy = 0; iy < ny; ++iy)
    for (std::size_t ix = 0; ix < nx; ++ix) acc[iy * nx + ix] += H[iy * nx + ix] * w[(iy % qy) * qx + ix % qx];
}

std::vector<cplx> coarse_spectrum(const DirectionalBank2D& bank, int which, bool dual) {
  AxisFactors x = factors(bank.x_tree.back(), bank.x_tree_prime.back(), dual);
  AxisFactors y = factors(bank.y_tree.back(), bank.y_tree_prime.back(), dual);
  switch (which) {
    case 0: return outer(x.phi, y.phi);
    case 1: return outer(x.phi, y.phi_p);
    case 2: return outer(x.phi_p, y.phi);
    default: return outer(x.phi_p, y.phi_p);
  }
}

std::vector<cplx> coarse_part(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank) {
  const std::size_t nx = bank.grid_x.n, ny = bank.grid_y.n;
  const int M = bank.levels;
  std::vector<cplx> acc(nx * ny);
  for (int q = 0; q < 4; ++q) {
    std::vector<cplx> w(coeffs.coarse[q].begin(), coeffs.coarse[q].end());
    for (auto& v : w) v *= 0.25;
    accumulate2(acc, coarse_spectrum(bank, q, false), std::move(w), nx, ny, bank.count_x(M), bank.count_y(M));
  }
  return acc;
}

SampledSignal2D real_image(const Grid1D& gx, const Grid1D& gy, std::vector<cplx> F) {
  SampledSignal2D s = from_ft_samples(gx, gy, std::move(F));
  for (auto& v : s.values) v = v.real();
  return s;
}

template <class LevelFn>
SampledSignal2D synthesize2(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank, LevelFn term) {
  require_matching_bank(coeffs, bank);
  const std::size_t nx = bank.grid_x.n, ny = bank.grid_y.n;
  const int M = bank.levels;
  std::vector<std::vector<cplx>> parts(static_cast<std::size_t>(M) + 1);
  parallel_for(parts.size(), [&](std::size_t i) {
    if (i == static_cast<std::size_t>(M)) parts[i] = coarse_part(coeffs, bank);
    else parts[i] = term(static_cast<int>(i) + 1);
  });
  std::vector<cplx> acc(nx * ny);
  for (const auto& p : parts)
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += p[m];
  return real_image(bank.grid_x, bank.grid_y, std::move(acc));
}

void check_level(const DirectionalBank2D& bank, int level) {
  if (level < 1 || level > bank.levels) {
    std::ostringstream msg;
    msg << "level " << level << " outside 1.." << bank.levels;
    throw IncompatibleLevel(msg.str());
  }
}

void check_orientation(int ell) {
  if (ell < 1 || ell > kOrientations) throw Error("orientation index must be 1..6");
}

}  // namespace

DirectionalBank2D build_directional_bank(const SplineSpec& spec, int levels, const Grid1D& grid_x,
                                         const Grid1D& grid_y) {
  WaveletBank1D bx = build_bank(spec, levels, grid_x);
  WaveletBank1D by = build_bank(spec, levels, grid_y);
  DirectionalBank2D bank;
  bank.spec = spec;
  bank.levels = levels;
  bank.grid_x = grid_x;
  bank.grid_y = grid_y;
  bank.x_tree = std::move(bx.tree);
  bank.x_tree_prime = std::move(bx.tree_prime);
  bank.y_tree = std::move(by.tree);
  bank.y_tree_prime = std::move(by.tree_prime);
  bank.theta = {0.0, 0.0, kPi / 2, kPi / 2, kPi / 4, 3 * kPi / 4};
  const double r = std::sqrt(0.5);
  bank.mu = {1.0, 1.0, 1.0, 1.0, r, r};
  for (int j = 1; j <= levels; ++j) {
    bank.psi.push_back(complex_wavelets(factors(bank.x_tree[j - 1], bank.x_tree_prime[j - 1], false),
                                        factors(bank.y_tree[j - 1], bank.y_tree_prime[j - 1], false)));
    bank.dual_psi.push_back(complex_wavelets(factors(bank.x_tree[j - 1], bank.x_tree_prime[j - 1], true),
                                             factors(bank.y_tree[j - 1], bank.y_tree_prime[j - 1], true)));
  }
  return bank;
}

SampledSignal2D DirectionalBank2D::wavelet(int ell, int level) const {
  check_orientation(ell);
  check_level(*this, level);
  return from_ft_samples(grid_x, grid_y, psi[level - 1][ell - 1]);
}

SampledSignal2D DirectionalBank2D::dual_wavelet(int ell, int level) const {
  check_orientation(ell);
  check_level(*this, level);
  return from_ft_samples(grid_x, grid_y, dual_psi[level - 1][ell - 1]);
}

std::vector<cplx> separable_spectrum(const DirectionalBank2D& bank, int q, int level, bool dual) {
  check_level(bank, level);
  AxisFactors x = factors(bank.x_tree[level - 1], bank.x_tree_prime[level - 1], dual);
  AxisFactors y = factors(bank.y_tree[level - 1], bank.y_tree_prime[level - 1], dual);
  switch (q) {
    case 1: return outer(x.phi, y.psi);
    case 2: return outer(x.psi, y.phi);
    case 3: return outer(x.psi, y.psi);
    case 4: return outer(x.phi, y.psi_p);
    case 5: return outer(x.psi, y.phi_p);
    case 6: return outer(x.psi, y.psi_p);
    case 7: return outer(x.phi_p, y.psi);
    case 8: return outer(x.psi_p, y.phi);
    case 9: return outer(x.psi_p, y.psi);
    case 10: return outer(x.phi_p, y.psi_p);
    case 11: return outer(x.psi_p, y.phi_p);
    case 12: return outer(x.psi_p, y.psi_p);
    default: throw Error("separable wavelet index must be 1..12");
  }
}

SampledSignal2D separable_wavelet(const DirectionalBank2D& bank, int q, int level) {
  return real_image(bank.grid_x, bank.grid_y, separable_spectrum(bank, q, level, false));
}

double DualTreeCoeffs2D::phase(int ell, int level, std::size_t idx) const {
  double p = std::arg(c.at(ell - 1).at(level - 1).at(idx));
  return p == -kPi ? kPi : p;
}

double DualTreeCoeffs2D::tau(int ell, int level, std::size_t idx) const { return phase(ell, level, idx) / kPi; }

void require_matching_bank(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank) {
  if (!(coeffs.spec == bank.spec) || coeffs.levels != bank.levels || !coeffs.grid_x.same_as(bank.grid_x) ||
      !coeffs.grid_y.same_as(bank.grid_y)) {
    std::ostringstream msg;
    msg << "coefficients were computed with " << coeffs.spec.label() << ", levels=" << coeffs.levels << ", "
        << coeffs.grid_x.n << "x" << coeffs.grid_y.n << " but the bank is " << bank.spec.label()
        << ", levels=" << bank.levels << ", " << bank.grid_x.n << "x" << bank.grid_y.n;
    throw BankMismatch(msg.str());
  }
  for (int ell = 0; ell < kOrientations; ++ell) {
    if (coeffs.c[ell].size() != static_cast<std::size_t>(bank.levels))
      throw BankMismatch("coefficient array sizes do not match the bank");
    for (int j = 1; j <= bank.levels; ++j)
      if (coeffs.c[ell][j - 1].size() != bank.count_x(j) * bank.count_y(j))
        throw BankMismatch("coefficient array sizes do not match the bank");
  }
  for (const auto& p : coeffs.coarse)
    if (p.size() != bank.count_x(bank.levels) * bank.count_y(bank.levels))
      throw BankMismatch("coarse coefficient sizes do not match the bank");
}

DualTreeCoeffs2D analyze2d(const SampledSignal2D& f, const DirectionalBank2D& bank) {
  if (!f.grid_x.same_as(bank.grid_x) || !f.grid_y.same_as(bank.grid_y))
    throw GridMismatch("analyze2d: image grid differs from the bank grid");
  for (const auto& v : f.values)
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, f.max_abs())) throw Error("analyze2d: image must be real");
  const std::size_t nx = bank.grid_x.n, ny = bank.grid_y.n;
  const double area = bank.grid_x.length() * bank.grid_y.length();
  const int M = bank.levels;
  std::vector<cplx> F = ft_samples(f);
  DualTreeCoeffs2D out;
  out.spec = bank.spec;
  out.levels = M;
  out.grid_x = bank.grid_x;
  out.grid_y = bank.grid_y;
  for (auto& v : out.c) v.resize(M);
  const std::size_t jobs = static_cast<std::size_t>(M) * kOrientations;
  std::array<std::vector<cplx>, 4> coarse;
  parallel_for(jobs + 4, [&](std::size_t i) {
    if (i < jobs) {
      int j = static_cast<int>(i / kOrientations) + 1;
      int ell = static_cast<int>(i % kOrientations);
      auto c = correlate2(F, bank.dual_psi[j - 1][ell], nx, ny, bank.count_x(j), bank.count_y(j), area);
      for (auto& v : c) v *= 0.25;
      out.c[ell][j - 1] = std::move(c);
    } else {
      int q = static_cast<int>(i - jobs);
      coarse[q] = correlate2(F, coarse_spectrum(bank, q, true), nx, ny, bank.count_x(M), bank.count_y(M), area);
    }
  });
  for (int q = 0; q < 4; ++q)
    for (const auto& v : coarse[q]) out.coarse[q].push_back(v.real());
  return out;
}

SampledSignal2D reconstruct2d(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank) {
  const std::size_t nx = bank.grid_x.n, ny = bank.grid_y.n;
  return synthesize2(coeffs, bank, [&](int j) {
    std::vector<cplx> acc(nx * ny);
    for (int ell = 1; ell <= kOrientations; ++ell) {
      SampledSignal2D psi = bank.wavelet(ell, j);
      for (auto& v : psi.values) v = v.real();
      SampledSignal2D hpsi = dht_apply(psi, Direction2D(bank.theta[ell - 1]));
      const auto& c = coeffs.c[ell - 1][j - 1];
      std::vector<cplx> wr(c.size()), wi(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) {
        wr[k] = c[k].real();
        wi[k] = -c[k].imag();
      }
      accumulate2(acc, ft_samples(psi), std::move(wr), nx, ny, bank.count_x(j), bank.count_y(j));
      accumulate2(acc, ft_samples(hpsi), std::move(wi), nx, ny, bank.count_x(j), bank.count_y(j));
    }
    return acc;
  });
}

std::array<std::vector<double>, 12> separable_coefficients(const DualTreeCoeffs2D& coeffs, int level) {
  if (level < 1 || level > coeffs.levels) throw IncompatibleLevel("separable_coefficients: level out of range");
  const std::size_t count = coeffs.c[0][level - 1].size();
  const double r2 = 2.0 * std::sqrt(2.0);
  std::array<std::vector<double>, 12> a;
  for (auto& v : a) v.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    cplx c1 = coeffs.c[0][level - 1][k], c2 = coeffs.c[1][level - 1][k], c3 = coeffs.c[2][level - 1][k];
    cplx c4 = coeffs.c[3][level - 1][k], c5 = coeffs.c[4][level - 1][k], c6 = coeffs.c[5][level - 1][k];
    a[1][k] = 4.0 * c1.real();
    a[7][k] = -4.0 * c1.imag();
    a[4][k] = 4.0 * c2.real();
    a[10][k] = -4.0 * c2.imag();
    a[0][k] = 4.0 * c3.real();
    a[3][k] = -4.0 * c3.imag();
    a[6][k] = 4.0 * c4.real();
    a[9][k] = -4.0 * c4.imag();
    // a3 - a12 = 4 sqrt2 Re c5, a3 + a12 = 4 sqrt2 Re c6,
    // a6 + a9 = -4 sqrt2 Im c5, a6 - a9 = -4 sqrt2 Im c6.
    a[2][k] = r2 * (c5.real() + c6.real());
    a[11][k] = r2 * (c6.real() - c5.real());
    a[5][k] = -r2 * (c5.imag() + c6.imag());
    a[8][k] = -r2 * (c5.imag() - c6.imag());
  }
  return a;
}

SampledSignal2D reconstruct2d_separable(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank) {
  const std::size_t nx = bank.grid_x.n, ny = bank.grid_y.n;
  return synthesize2(coeffs, bank, [&](int j) {
    std::vector<cplx> acc(nx * ny);
    auto a = separable_coefficients(coeffs, j);
    for (int q = 1; q <= 12; ++q) {
      std::vector<cplx> w(a[q - 1].begin(), a[q - 1].end());
      for (auto& v : w) v *= 0.25;
      accumulate2(acc, separable_spectrum(bank, q, j, false), std::move(w), nx, ny, bank.count_x(j), bank.count_y(j));
    }
    return acc;
  });
}

double prop4_residual(const DirectionalBank2D& bank, int ell, double tau_bar, int level) {
  check_orientation(ell);
  check_level(bank, level);
  if (!is_spline_genus(bank.spec.genus)) throw UnsupportedGenus("prop4_residual requires a spline genus");
  SampledSignal2D psi = bank.wavelet(ell, level);
  for (auto& v : psi.values) v = v.real();
  const double theta = bank.theta[ell - 1];
  Direction2D dir(theta);
  SampledSignal2D lhs = fdht_apply(psi, dir, FhtShift(tau_bar));

  const double tau = bank.spec.shift_tau;
  const double tx = tau - tau_bar * bank.mu[ell - 1] * dir.ux();
  const double ty = tau - tau_bar * bank.mu[ell - 1] * dir.uy();
  auto axis = [&](const Grid1D& g, double t) { return build_tree_spectra(bank.spec, t, g, level)[level - 1]; };
  LevelSpectra x0 = axis(bank.grid_x, tx), x1 = axis(bank.grid_x, tx + 0.5);
  LevelSpectra y0 = axis(bank.grid_y, ty), y1 = axis(bank.grid_y, ty + 0.5);
  std::vector<cplx> rhs;
  const double r = std::sqrt(0.5);
  switch (ell) {
    case 1: rhs = outer(x0.psi, y0.phi); break;
    case 2: rhs = outer(x0.psi, y1.phi); break;
    case 3: rhs = outer(x0.phi, y0.psi); break;
    case 4: rhs = outer(x1.phi, y0.psi); break;
    case 5: rhs = combine(outer(x0.psi, y0.psi), r, outer(x1.psi, y1.psi), -r); break;
    default: rhs = combine(outer(x0.psi, y0.psi), r, outer(x1.psi, y1.psi), r); break;
  }
  SampledSignal2D rebuilt = real_image(bank.grid_x, bank.grid_y, std::move(rhs));
  double num = 0.0;
  for (std::size_t i = 0; i < lhs.values.size(); ++i) num += std::norm(lhs.values[i] - rebuilt.values[i]);
  return std::sqrt(num * bank.grid_x.dx * bank.grid_y.dx) / l2_norm(psi);
}

}  // namespace shiftwave
