#include "shiftwave/dualtree.hpp"

#include "shiftwave/fft.hpp"
#include "shiftwave/fht.hpp"
#include "shiftwave/parallel.hpp"

#include <cmath>
#include <sstream>

namespace shiftwave {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> class_sums(const std::vector<cplx>& X, std::size_t q) {
  std::vector<double> g(q, 0.0);
  for (std::size_t m = 0; m < X.size(); ++m) g[m % q] += std::norm(X[m]);
  return g;
}

// Multiplies X by scale * f(class sum) per bin; classes with a vanishing sum
// (relative to the largest) are mapped to zero.
template <class Fn>
std::vector<cplx> class_normalize(const std::vector<cplx>& X, std::size_t q, double scale, Fn f) {
  std::vector<double> g = class_sums(X, q);
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, v);
  std::vector<cplx> out(X.size());
  for (std::size_t m = 0; m < X.size(); ++m) {
    double v = g[m % q];
    out[m] = v > 1e-13 * gmax ? X[m] * f(scale, v) : cplx(0.0);
  }
  return out;
}

std::vector<cplx> semi_dual(const std::vector<cplx>& X, std::size_t q, double unit) {
  return class_normalize(X, q, unit, [](double s, double v) { return s / v; });
}

std::vector<cplx> orthonormalize(const std::vector<cplx>& X, std::size_t q, double unit) {
  return class_normalize(X, q, unit, [](double s, double v) { return std::sqrt(s / v); });
}

struct RawLevel {
  std::vector<cplx> phi, psi;
};

// Unnormalized semi-orthogonal generators of one tree.
std::vector<RawLevel> raw_spline_levels(double alpha, double tau, const Grid1D& grid, int levels) {
  const std::size_t n = grid.n;
  SpectralFilter H = refinement_filter(alpha, tau);
  std::vector<std::vector<cplx>> phi(levels + 1, std::vector<cplx>(n));
  for (int j = 0; j <= levels; ++j) {
    double unit = std::ldexp(grid.dx, j);
    double root = std::sqrt(unit);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == n / 2) continue;
      phi[j][m] = root * bspline_fourier(alpha, tau, unit * grid.omega(grid.signed_bin(m)));
    }
  }
  std::vector<RawLevel> out(levels);
  for (int j = 1; j <= levels; ++j) {
    const std::size_t q_prev = n >> (j - 1), q = n >> j;
    const double unit_prev = std::ldexp(grid.dx, j - 1);
    std::vector<double> g = class_sums(phi[j - 1], q_prev);
    std::vector<cplx> psi(n);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == n / 2) continue;
      double nu = unit_prev * grid.omega(grid.signed_bin(m));
      double a = g[(m + q) % q_prev] / unit_prev;  // A at nu + pi
      psi[m] = std::sqrt(0.5) * std::polar(1.0, nu) * a * H(kPi - nu) * phi[j - 1][m];
    }
    out[j - 1] = RawLevel{phi[j], std::move(psi)};
  }
  return out;
}

std::vector<RawLevel> raw_shannon_levels(double tau, const Grid1D& grid, int levels, bool prime) {
  const std::size_t n = grid.n;
  const long ln = static_cast<long>(n);
  FhtShift shift(-tau);
  std::vector<RawLevel> out(levels);
  for (int j = 1; j <= levels; ++j) {
    const long half_band = ln >> (j + 1);  // |k| below this: scaling passband
    const long band = ln >> j;
    double unit = std::ldexp(grid.dx, j);
    double root = std::sqrt(unit);
    RawLevel lv{std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t m = 0; m < n; ++m) {
      if (m == n / 2) continue;
      long k = grid.signed_bin(m);
      long ak = std::labs(k);
      double w = grid.omega(k);
      if (ak < half_band) lv.phi[m] = root;
      else if (ak == half_band) lv.phi[m] = root * std::sqrt(0.5);
      // The second tree's scaling function is in quadrature with the first
      // away from DC, so the shared band-edge bins stay covered.
      if (prime && k != 0) lv.phi[m] *= (k > 0 ? cplx(0, -1) : cplx(0, 1));
      double amp = (ak > half_band && ak < band) ? 1.0 : ((ak == half_band || ak == band) ? std::sqrt(0.5) : 0.0);
      if (amp == 0.0) continue;
      cplx v = root * amp * std::polar(1.0, -0.5 * unit * w) * fht_multiplier(k, n, shift);
      if (prime) v *= (k > 0 ? cplx(0, -1) : cplx(0, 1));
      lv.psi[m] = v;
    }
    out[j - 1] = std::move(lv);
  }
  return out;
}

std::vector<LevelSpectra> finish_levels(const std::vector<RawLevel>& raw, Genus genus, const Grid1D& grid) {
  std::vector<LevelSpectra> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    int j = static_cast<int>(i) + 1;
    const std::size_t q = grid.n >> j;
    const double unit = std::ldexp(grid.dx, j);
    const RawLevel& r = raw[i];
    LevelSpectra& s = out[i];
    switch (genus) {
      case Genus::BSplineSemiOrthogonal:
        s.phi = r.phi;
        s.psi = r.psi;
        s.dual_phi = semi_dual(r.phi, q, unit);
        s.dual_psi = semi_dual(r.psi, q, unit);
        break;
      case Genus::DualBSpline:
        s.phi = semi_dual(r.phi, q, unit);
        s.psi = semi_dual(r.psi, q, unit);
        s.dual_phi = r.phi;
        s.dual_psi = r.psi;
        break;
      default:
        s.phi = orthonormalize(r.phi, q, unit);
        s.psi = orthonormalize(r.psi, q, unit);
        s.dual_phi = s.phi;
        s.dual_psi = s.psi;
        break;
    }
  }
  return out;
}

void check_levels(const Grid1D& grid, int levels) {
  grid.validate();
  if (levels < 1) throw IncompatibleLevel("dual-tree transform needs at least one level");
  if (levels > 30 || (grid.n >> levels) == 0 || ((grid.n >> levels) << levels) != grid.n) {
    std::ostringstream msg;
    msg << "grid of " << grid.n << " samples does not support " << levels << " dyadic levels";
    throw IncompatibleLevel(msg.str());
  }
}

SampledSignal1D real_samples(const Grid1D& grid, const std::vector<cplx>& F) {
  return real_part(from_ft_samples(grid, F));
}

double hilbert_mismatch(const std::vector<cplx>& psi, const std::vector<cplx>& psi_prime, const Grid1D& grid) {
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < psi.size(); ++m) {
    long k = grid.signed_bin(m);
    cplx h = k == 0 || m == grid.n / 2 ? cplx(0.0) : (k > 0 ? cplx(0, -1) : cplx(0, 1)) * psi[m];
    num += std::norm(psi_prime[m] - h);
    den += std::norm(psi[m]);
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

// c[k] = <f, h(. - k*step*dx)>, from continuous-FT samples.
std::vector<cplx> correlate(const std::vector<cplx>& F, const std::vector<cplx>& H, std::size_t q, double L) {
  std::vector<cplx> Y(q);
  for (std::size_t m = 0; m < F.size(); ++m) Y[m % q] += F[m] * std::conj(H[m]);
  fft::inverse(Y);
  for (auto& y : Y) y /= L;
  return Y;
}

// Adds the spectrum of sum_k w[k] h(. - k*step*dx) to acc.
void accumulate(std::vector<cplx>& acc, const std::vector<cplx>& H, std::vector<cplx> w) {
  const std::size_t q = w.size();
  fft::forward(w);
  for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += H[m] * w[m % q];
}

std::vector<cplx> to_complex(const std::vector<double>& v) { return std::vector<cplx>(v.begin(), v.end()); }

std::vector<cplx> coarse_part(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank) {
  std::vector<cplx> acc(bank.grid.n);
  const LevelSpectra& t = bank.tree.back();
  const LevelSpectra& tp = bank.tree_prime.back();
  std::vector<cplx> p = to_complex(coeffs.coarse), pp = to_complex(coeffs.coarse_prime);
  for (auto& v : p) v *= 0.5;
  for (auto& v : pp) v *= 0.5;
  accumulate(acc, t.phi, std::move(p));
  accumulate(acc, tp.phi, std::move(pp));
  return acc;
}

template <class LevelFn>
SampledSignal1D synthesize(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank, LevelFn level_term) {
  require_matching_bank(coeffs, bank);
  const int M = bank.levels;
  std::vector<std::vector<cplx>> parts(M + 1);
  parallel_for(static_cast<std::size_t>(M) + 1, [&](std::size_t i) {
    if (i == static_cast<std::size_t>(M)) parts[i] = coarse_part(coeffs, bank);
    else parts[i] = level_term(static_cast<int>(i) + 1);
  });
  std::vector<cplx> acc(bank.grid.n);
  for (const auto& p : parts)
    for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += p[m];
  return real_samples(bank.grid, acc);
}

}  // namespace

std::vector<LevelSpectra> build_tree_spectra(const SplineSpec& spec, double tau, const Grid1D& grid, int levels) {
  spec.validate();
  check_levels(grid, levels);
  if (spec.genus == Genus::GaborReference) throw UnsupportedGenus("genus gabor has no dual-tree bank");
  if (spec.genus == Genus::Shannon) return finish_levels(raw_shannon_levels(tau, grid, levels, false), spec.genus, grid);
  return finish_levels(raw_spline_levels(spec.degree_alpha, tau, grid, levels), spec.genus, grid);
}

WaveletBank1D build_bank(const SplineSpec& spec, int levels, const Grid1D& grid) {
  spec.validate();
  check_levels(grid, levels);
  if (spec.genus == Genus::GaborReference)
    throw UnsupportedGenus("genus gabor has no biorthogonal partner; use bspline, orthonormal, dual or shannon");
  WaveletBank1D bank;
  bank.spec = spec;
  bank.levels = levels;
  bank.grid = grid;
  if (spec.genus == Genus::Shannon) {
    bank.tree = finish_levels(raw_shannon_levels(spec.shift_tau, grid, levels, false), spec.genus, grid);
    bank.tree_prime = finish_levels(raw_shannon_levels(spec.shift_tau, grid, levels, true), spec.genus, grid);
  } else {
    bank.tree = build_tree_spectra(spec, spec.shift_tau, grid, levels);
    bank.tree_prime = build_tree_spectra(spec, spec.shift_tau + 0.5, grid, levels);
  }
  for (int j = 1; j <= levels; ++j) {
    const LevelSpectra& t = bank.tree[j - 1];
    const LevelSpectra& tp = bank.tree_prime[j - 1];
    double e1 = hilbert_mismatch(t.psi, tp.psi, grid);
    double e2 = hilbert_mismatch(t.dual_psi, tp.dual_psi, grid);
    if (e1 > 1e-6 || e2 > 1e-6) {
      std::ostringstream msg;
      msg << "build_bank: second-tree wavelet at level " << j << " is not the Hilbert transform of the first (mismatch "
          << std::max(e1, e2) << ")";
      throw Error(msg.str());
    }
    bank.primal_psi.push_back(real_samples(grid, t.psi));
    bank.primal_psi_prime.push_back(real_samples(grid, tp.psi));
    bank.dual_psi.push_back(real_samples(grid, t.dual_psi));
    bank.dual_psi_prime.push_back(real_samples(grid, tp.dual_psi));
  }
  bank.scaling = real_samples(grid, bank.tree.back().phi);
  bank.scaling_prime = real_samples(grid, bank.tree_prime.back().phi);
  bank.dual_scaling = real_samples(grid, bank.tree.back().dual_phi);
  bank.dual_scaling_prime = real_samples(grid, bank.tree_prime.back().dual_phi);
  return bank;
}

double DualTreeCoeffs1D::phase(int level, std::size_t k) const {
  double p = std::arg(c.at(level - 1).at(k));
  return p == -kPi ? kPi : p;
}
double DualTreeCoeffs1D::tau(int level, std::size_t k) const { return phase(level, k) / kPi; }
double DualTreeCoeffs1D::a(int level, std::size_t k) const { return 2.0 * c.at(level - 1).at(k).real(); }
double DualTreeCoeffs1D::b(int level, std::size_t k) const { return -2.0 * c.at(level - 1).at(k).imag(); }

void require_matching_bank(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank) {
  if (!(coeffs.spec == bank.spec) || coeffs.levels != bank.levels || !coeffs.grid.same_as(bank.grid)) {
    std::ostringstream msg;
    msg << "coefficients were computed with " << coeffs.spec.label() << ", levels=" << coeffs.levels
        << ", n=" << coeffs.grid.n << " but the bank is " << bank.spec.label() << ", levels=" << bank.levels
        << ", n=" << bank.grid.n;
    throw BankMismatch(msg.str());
  }
  if (coeffs.c.size() != static_cast<std::size_t>(bank.levels) || coeffs.coarse.size() != bank.count(bank.levels) ||
      coeffs.coarse_prime.size() != bank.count(bank.levels))
    throw BankMismatch("coefficient array sizes do not match the bank");
  for (int j = 1; j <= bank.levels; ++j)
    if (coeffs.c[j - 1].size() != bank.count(j)) throw BankMismatch("coefficient array sizes do not match the bank");
}

namespace {

void require_analysis_input(const SampledSignal1D& f, const WaveletBank1D& bank) {
  if (!f.grid.same_as(bank.grid)) throw GridMismatch("analyze: signal grid differs from the bank grid");
  if (!f.is_real(1e-12)) throw Error("analyze: signal must be real");
}

std::vector<cplx> analysis_spectrum(const LevelSpectra& t, const LevelSpectra& tp) {
  std::vector<cplx> h(t.dual_psi.size());
  for (std::size_t m = 0; m < h.size(); ++m) h[m] = 0.5 * (t.dual_psi[m] + cplx(0, 1) * tp.dual_psi[m]);
  return h;
}

}  // namespace

std::vector<cplx> analyze_level(const SampledSignal1D& f, const WaveletBank1D& bank, int level) {
  require_analysis_input(f, bank);
  if (level < 1 || level > bank.levels) throw IncompatibleLevel("analyze_level: level out of range");
  std::vector<cplx> F = ft_samples(f);
  return correlate(F, analysis_spectrum(bank.tree[level - 1], bank.tree_prime[level - 1]), bank.count(level),
                   bank.grid.length());
}

DualTreeCoeffs1D analyze(const SampledSignal1D& f, const WaveletBank1D& bank) {
  require_analysis_input(f, bank);
  const int M = bank.levels;
  const double L = bank.grid.length();
  std::vector<cplx> F = ft_samples(f);
  DualTreeCoeffs1D out;
  out.spec = bank.spec;
  out.levels = M;
  out.grid = bank.grid;
  out.c.resize(M);
  std::vector<std::vector<cplx>> coarse(2);
  parallel_for(static_cast<std::size_t>(M) + 2, [&](std::size_t i) {
    if (i < static_cast<std::size_t>(M)) {
      int j = static_cast<int>(i) + 1;
      out.c[i] = correlate(F, analysis_spectrum(bank.tree[i], bank.tree_prime[i]), bank.count(j), L);
    } else {
      const LevelSpectra& t = i == static_cast<std::size_t>(M) ? bank.tree.back() : bank.tree_prime.back();
      coarse[i - M] = correlate(F, t.dual_phi, bank.count(M), L);
    }
  });
  for (const auto& v : coarse[0]) out.coarse.push_back(v.real());
  for (const auto& v : coarse[1]) out.coarse_prime.push_back(v.real());
  return out;
}

SampledSignal1D reconstruct(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank) {
  return synthesize(coeffs, bank, [&](int j) {
    const SampledSignal1D& psi = bank.primal_psi[j - 1];
    std::vector<cplx> Hpsi = ft_samples(hilbert(psi));
    std::vector<cplx> acc(bank.grid.n);
    const auto& c = coeffs.c[j - 1];
    std::vector<cplx> wr(c.size()), wi(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      // |c| (cos(phi) psi - sin(phi) H psi)
      wr[k] = c[k].real();
      wi[k] = -c[k].imag();
    }
    accumulate(acc, bank.tree[j - 1].psi, std::move(wr));
    accumulate(acc, Hpsi, std::move(wi));
    return acc;
  });
}

SampledSignal1D reconstruct_two_branch(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank) {
  return synthesize(coeffs, bank, [&](int j) {
    std::vector<cplx> acc(bank.grid.n);
    const auto& c = coeffs.c[j - 1];
    std::vector<cplx> wa(c.size()), wb(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      wa[k] = 0.5 * coeffs.a(j, k);
      wb[k] = 0.5 * coeffs.b(j, k);
    }
    accumulate(acc, bank.tree[j - 1].psi, std::move(wa));
    accumulate(acc, bank.tree_prime[j - 1].psi, std::move(wb));
    return acc;
  });
}

SampledSignal1D shifted_wavelet(const WaveletBank1D& bank, int level, long k, double tau) {
  if (level < 1 || level > bank.levels) throw IncompatibleLevel("shifted_wavelet: level out of range");
  const long q = static_cast<long>(bank.count(level));
  if (k < 0 || k >= q) {
    std::ostringstream msg;
    msg << "shifted_wavelet: translation " << k << " outside 0.." << q - 1 << " at level " << level;
    throw Error(msg.str());
  }
  SampledSignal1D w = fht_apply(bank.primal_psi[level - 1], FhtShift(tau));
  return translate(w, k * static_cast<long>(bank.step(level)));
}

double wavelet_center(const WaveletBank1D& bank, int level) {
  if (level < 1 || level > bank.levels) throw IncompatibleLevel("wavelet_center: level out of range");
  const SampledSignal1D& a = bank.primal_psi[level - 1];
  const SampledSignal1D& b = bank.primal_psi_prime[level - 1];
  const double L = bank.grid.length();
  cplx acc = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    double w = std::norm(a.values[p]) + std::norm(b.values[p]);
    acc += w * std::polar(1.0, 2.0 * kPi * bank.grid.x(p) / L);
  }
  return std::arg(acc) * L / (2.0 * kPi);
}

StepDemoReport step_demo(double x0, const WaveletBank1D& bank, int level) {
  const Grid1D& g = bank.grid;
  if (!(x0 > g.x0 && x0 < g.x0 + g.length() - g.dx)) {
    std::ostringstream msg;
    msg << "step_demo: x0=" << x0 << " is outside the grid interior (" << g.x0 << ", " << g.x0 + g.length() - g.dx
        << ")";
    throw GridError(msg.str());
  }
  StepDemoReport r;
  r.x0 = x0;
  r.level = level;
  r.step = SampledSignal1D(g);
  for (std::size_t p = 0; p < g.n; ++p) {
    double x = g.x(p);
    r.step.values[p] = x > x0 ? 1.0 : (x < x0 ? -1.0 : 0.0);
  }
  std::vector<cplx> c = analyze_level(r.step, bank, level);
  const long q = static_cast<long>(c.size());
  const double unit = static_cast<double>(bank.step(level)) * g.dx;
  long k = std::lround((x0 - wavelet_center(bank, level)) / unit);
  k = ((k % q) + q) % q;
  r.k = k;
  double phase = std::arg(c[k]);
  if (phase == -kPi) phase = kPi;
  r.tau_at_singularity = phase / kPi;
  r.reference = shifted_wavelet(bank, level, k, 0.0);
  r.shifted = shifted_wavelet(bank, level, k, r.tau_at_singularity);
  r.corr_reference = std::abs(inner_product(r.step, r.reference));
  r.corr_shifted = std::abs(inner_product(r.step, r.shifted));
  const long m = k * static_cast<long>(bank.step(level));
  const SampledSignal1D& d = bank.dual_psi[level - 1];
  r.corr_reference_dual = std::abs(inner_product(r.step, translate(d, m)));
  r.corr_shifted_dual = std::abs(inner_product(r.step, translate(fht_apply(d, FhtShift(r.tau_at_singularity)), m)));
  SampledSignal1D h = hilbert(r.reference);
  r.envelope = SampledSignal1D(g);
  for (std::size_t p = 0; p < g.n; ++p) r.envelope.values[p] = std::hypot(r.reference.values[p].real(), h.values[p].real());
  return r;
}

}  // namespace shiftwave
