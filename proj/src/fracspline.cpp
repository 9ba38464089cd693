#include "shiftwave/fracspline.hpp"

#include "shiftwave/fft.hpp"
#include "shiftwave/fht.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace shiftwave {
namespace {

constexpr double kPi = 3.14159265358979323846;

// exp(j*(p*arg(z) + q*arg(conj z))) * |z|^(p+q) with principal arguments.
cplx power_pair(cplx z, double p, double q) {
  double r = std::abs(z);
  if (r == 0.0) return (p + q) > 0.0 ? 0.0 : 1.0;
  double phase = p * std::arg(z) + q * std::arg(std::conj(z));
  return std::pow(r, p + q) * std::polar(1.0, phase);
}

// (1 - e^{-jw}) / (jw) = e^{-jw/2} sin(w/2) / (w/2)
cplx causal_box_ft(double w) {
  double h = 0.5 * w;
  double s = std::abs(h) < 1e-8 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return s * std::polar(1.0, -h);
}

double wrap_to_pi(double w) {
  double r = std::remainder(w, 2.0 * kPi);
  return r;
}

// Sum_{m>=0} (a + m)^{-s} for a >= ~20 by Euler-Maclaurin.
double hurwitz_tail(double s, double a) {
  static const double bern[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0};
  double sum = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;  // s (s+1) ... (s + 2j - 2)
  double fact = 2.0;  // (2j)!
  for (int j = 1; j <= 6; ++j) {
    sum += bern[j - 1] / fact * rising * std::pow(a, -s - 2.0 * j + 1.0);
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return sum;
}

constexpr int kDirectTerms = 40;

double autocorrelation_impl(double alpha, double omega) {
  double x = std::remainder(omega / (2.0 * kPi), 1.0);
  if (x == 0.0) return 1.0;
  double s = 2.0 * alpha + 2.0;
  if (alpha == 0.0) return 1.0;
  double sum = 0.0;
  for (int k = -kDirectTerms; k <= kDirectTerms; ++k) {
    if (k == 0) continue;
    sum += std::pow(std::abs(x + k), -s);
  }
  sum += hurwitz_tail(s, kDirectTerms + 1 + x) + hurwitz_tail(s, kDirectTerms + 1 - x);
  double sx = std::sin(kPi * x);
  double central = std::pow(std::abs(sx / (kPi * x)), s);
  return central + std::pow(std::abs(sx) / kPi, s) * sum;
}

struct GaborParams {
  double omega0;
  double sigma;
};

GaborParams gabor_params(double alpha) {
  static std::mutex mu;
  static std::map<double, GaborParams> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(alpha);
  if (it != cache.end()) return it->second;
  // Moment match |psi_hat|^2 of the semi-orthogonal B-spline wavelet on w > 0.
  SplineSpec ref{Genus::BSplineSemiOrthogonal, alpha, 0.0};
  const int N = 20000;
  const double W = 2.0 * kPi * 16.0;
  double m0 = 0, m1 = 0, m2 = 0;
  for (int i = 1; i <= N; ++i) {
    double w = W * i / N;
    double p = std::norm(wavelet_fourier(ref, w));
    m0 += p;
    m1 += p * w;
    m2 += p * w * w;
  }
  double mean = m1 / m0;
  double var = m2 / m0 - mean * mean;
  GaborParams g{mean, 1.0 / std::sqrt(2.0 * var)};
  cache.emplace(alpha, g);
  return g;
}

}  // namespace

std::string genus_name(Genus g) {
  switch (g) {
    case Genus::BSplineSemiOrthogonal: return "bspline";
    case Genus::Orthonormal: return "orthonormal";
    case Genus::DualBSpline: return "dual";
    case Genus::Shannon: return "shannon";
    case Genus::GaborReference: return "gabor";
  }
  return "unknown";
}

Genus parse_genus(const std::string& name) {
  if (name == "bspline" || name == "semi-orthogonal" || name == "b-spline") return Genus::BSplineSemiOrthogonal;
  if (name == "orthonormal" || name == "orth") return Genus::Orthonormal;
  if (name == "dual" || name == "dual-bspline") return Genus::DualBSpline;
  if (name == "shannon") return Genus::Shannon;
  if (name == "gabor") return Genus::GaborReference;
  throw UnsupportedGenus("unknown genus '" + name + "'");
}

bool is_spline_genus(Genus g) {
  return g == Genus::BSplineSemiOrthogonal || g == Genus::Orthonormal || g == Genus::DualBSpline;
}

void SplineSpec::validate() const {
  if (!(degree_alpha >= 0.0) || !std::isfinite(degree_alpha)) throw Error("degree alpha must be >= 0");
  if (!std::isfinite(shift_tau)) throw Error("shift tau must be finite");
}

std::string SplineSpec::label() const {
  std::ostringstream os;
  os << genus_name(genus);
  if (genus != Genus::Shannon) os << "(alpha=" << degree_alpha << ",tau=" << shift_tau << ")";
  else if (shift_tau != 0.0) os << "(tau=" << shift_tau << ")";
  return os.str();
}

SplineSpec SplineSpec::with_tau(double tau) const {
  SplineSpec s = *this;
  s.shift_tau = tau;
  return s;
}

SpectralFilter::SpectralFilter(std::function<cplx(double)> evaluator, std::string label)
    : eval_(std::move(evaluator)), label_(std::move(label)) {}

cplx bspline_fourier(double alpha, double tau, double omega) {
  if (alpha < 0.0) throw Error("bspline_fourier: alpha must be >= 0");
  if (omega == 0.0) return 1.0;
  double e = 0.5 * (alpha + 1.0);
  return power_pair(causal_box_ft(omega), e + tau, e - tau);
}

SpectralFilter refinement_filter(double alpha, double tau) {
  if (alpha < 0.0) throw Error("refinement_filter: alpha must be >= 0");
  double e = 0.5 * (alpha + 1.0);
  double norm = std::pow(2.0, -(alpha + 1.0));
  std::ostringstream label;
  label << "H(alpha=" << alpha << ",tau=" << tau << ")";
  return SpectralFilter(
      [=](double w) {
        double h = 0.5 * wrap_to_pi(w);
        // 1 + e^{-jw} = 2 cos(w/2) e^{-jw/2}
        cplx z = 2.0 * std::cos(h) * std::polar(1.0, -h);
        return norm * power_pair(z, e + tau, e - tau);
      },
      label.str());
}

double autocorrelation(double alpha, double omega) { return autocorrelation_impl(alpha, omega); }

SpectralFilter autocorrelation_filter(double alpha) {
  if (alpha < 0.0) throw Error("autocorrelation_filter: alpha must be >= 0");
  std::ostringstream label;
  label << "A(alpha=" << alpha << ")";
  return SpectralFilter([=](double w) { return cplx(autocorrelation_impl(alpha, w), 0.0); }, label.str());
}

SpectralFilter lowpass_constraint_filter(const SplineSpec& spec) {
  spec.validate();
  const double a = spec.degree_alpha;
  const double api = autocorrelation_impl(a, kPi);
  switch (spec.genus) {
    case Genus::BSplineSemiOrthogonal:
      return SpectralFilter([=](double m) { return cplx(autocorrelation_impl(a, m), 0.0); }, "Q(semi-orthogonal)");
    case Genus::Orthonormal:
      return SpectralFilter(
          [=](double m) {
            double v = api * autocorrelation_impl(a, m) /
                       (autocorrelation_impl(a, 2.0 * m) * autocorrelation_impl(a, m + kPi));
            return cplx(std::sqrt(v), 0.0);
          },
          "Q(orthonormal)");
    case Genus::DualBSpline:
      return SpectralFilter(
          [=](double m) {
            return cplx(api / (autocorrelation_impl(a, m + kPi) * autocorrelation_impl(a, 2.0 * m)), 0.0);
          },
          "Q(dual)");
    default:
      throw UnsupportedGenus("no wavelet filter for genus " + genus_name(spec.genus));
  }
}

double wavelet_gain(const SplineSpec& spec) {
  double api = autocorrelation_impl(spec.degree_alpha, kPi);
  switch (spec.genus) {
    case Genus::BSplineSemiOrthogonal: return 1.0;
    case Genus::Orthonormal: return 2.0 / std::sqrt(api);
    case Genus::DualBSpline: return 4.0 / api;
    default: throw UnsupportedGenus("no wavelet filter for genus " + genus_name(spec.genus));
  }
}

SpectralFilter wavelet_filter(const SplineSpec& spec) {
  SpectralFilter Q = lowpass_constraint_filter(spec);
  SpectralFilter H = refinement_filter(spec.degree_alpha, spec.shift_tau);
  return SpectralFilter(
      [=](double w) {
        // -e^{-jw} = e^{j(pi - w)}
        double r = kPi - w;
        return std::polar(1.0, w) * Q(r) * H(r);
      },
      "G(" + spec.label() + ")");
}

SpectralFilter fd_filter(double tau) {
  std::ostringstream label;
  label << "D(tau=" << tau << ")";
  return SpectralFilter(
      [=](double w) -> cplx {
        double h = 0.5 * wrap_to_pi(w);
        // At w = 0 the two one-sided limits are exp(+-j pi tau); take their mean,
        // the same convention the fHT uses for the DC bin.
        if (h == 0.0) return cospi(tau);
        // 1 - e^{-jw} = 2j sin(w/2) e^{-jw/2}
        cplx v = 2.0 * std::sin(h) * cplx(0.0, 1.0) * std::polar(1.0, -h);
        return std::polar(1.0, tau * (std::arg(v) - std::arg(std::conj(v))));
      },
      label.str());
}

cplx wavelet_fourier(const SplineSpec& spec, double omega) {
  spec.validate();
  const double a = spec.degree_alpha;
  switch (spec.genus) {
    case Genus::Shannon: {
      double m = std::abs(omega);
      double amp = (m > kPi && m < 2.0 * kPi) ? 1.0 : ((m == kPi || m == 2.0 * kPi) ? std::sqrt(0.5) : 0.0);
      if (amp == 0.0) return 0.0;
      return amp * std::polar(1.0, -0.5 * omega) * fht_multiplier(omega > 0 ? 1 : -1, 4, FhtShift(-spec.shift_tau));
    }
    case Genus::GaborReference: {
      GaborParams g = gabor_params(a);
      double c = g.sigma * std::sqrt(2.0 * kPi) * 0.5;
      double lobes = std::exp(-0.5 * g.sigma * g.sigma * (omega - g.omega0) * (omega - g.omega0)) +
                     std::exp(-0.5 * g.sigma * g.sigma * (omega + g.omega0) * (omega + g.omega0));
      cplx base = c * lobes * std::polar(1.0, 0.5 * omega);
      if (omega == 0.0) return base * cospi(spec.shift_tau);
      return base * fht_multiplier(omega > 0 ? 1 : -1, 4, FhtShift(-spec.shift_tau));
    }
    default: {
      if (omega == 0.0) return 0.0;
      double half = 0.5 * omega;
      double r = kPi - half;
      SpectralFilter H = refinement_filter(a, spec.shift_tau);
      double Q;
      double api = autocorrelation_impl(a, kPi);
      switch (spec.genus) {
        case Genus::BSplineSemiOrthogonal: Q = autocorrelation_impl(a, r); break;
        case Genus::Orthonormal:
          Q = std::sqrt(api * autocorrelation_impl(a, r) /
                        (autocorrelation_impl(a, 2.0 * r) * autocorrelation_impl(a, r + kPi)));
          break;
        default:
          Q = api / (autocorrelation_impl(a, r + kPi) * autocorrelation_impl(a, 2.0 * r));
          break;
      }
      cplx G = std::polar(1.0, half) * Q * H(r);
      return 0.5 * wavelet_gain(spec) * G * bspline_fourier(a, spec.shift_tau, half);
    }
  }
}

cplx scaling_fourier(const SplineSpec& spec, double omega) {
  spec.validate();
  const double a = spec.degree_alpha;
  switch (spec.genus) {
    case Genus::BSplineSemiOrthogonal: return bspline_fourier(a, spec.shift_tau, omega);
    case Genus::Orthonormal:
      return bspline_fourier(a, spec.shift_tau, omega) / std::sqrt(autocorrelation_impl(a, omega));
    case Genus::DualBSpline: return bspline_fourier(a, spec.shift_tau, omega) / autocorrelation_impl(a, omega);
    case Genus::Shannon: {
      double m = std::abs(omega);
      return m < kPi ? 1.0 : (m == kPi ? std::sqrt(0.5) : 0.0);
    }
    default: throw UnsupportedGenus("no scaling function for genus " + genus_name(spec.genus));
  }
}

SampledSignal1D sample_from_fourier(const std::function<cplx(double)>& ft, const Grid1D& grid) {
  grid.validate();
  std::vector<cplx> F(grid.n);
  for (std::size_t m = 0; m < grid.n; ++m) {
    if (m == grid.n / 2) continue;
    F[m] = ft(grid.omega(grid.signed_bin(m)));
  }
  return from_ft_samples(grid, std::move(F));
}

double boundary_energy_fraction(const SampledSignal1D& f) {
  const Grid1D& g = f.grid;
  double L = g.length();
  double total = 0.0, edge = 0.0;
  for (std::size_t p = 0; p < g.n; ++p) {
    double d = std::abs(std::remainder(g.x(p), L));
    double e = std::norm(f.values[p]);
    total += e;
    if (d > 0.375 * L) edge += e;
  }
  return total > 0.0 ? edge / total : 0.0;
}

namespace {

void check_boundary(const SampledSignal1D& f, const std::string& what) {
  double frac = boundary_energy_fraction(f);
  if (frac > 1e-8) {
    std::ostringstream msg;
    msg << what << ": boundary energy fraction " << frac << " exceeds 1e-8 on grid n=" << f.grid.n
        << ", dx=" << f.grid.dx << " (period " << f.grid.length()
        << "); enlarge the period at least twofold, e.g. n=" << 2 * f.grid.n << " at the same dx";
    throw BoundaryEnergyError(msg.str());
  }
}

double shannon_sinc(double t) {
  if (t == 0.0) return 1.0;
  return std::sin(kPi * t) / (kPi * t);
}

}  // namespace

SampledSignal1D synthesize_wavelet(const SplineSpec& spec, const Grid1D& grid) {
  spec.validate();
  grid.validate();
  if (spec.genus == Genus::Shannon) {
    SampledSignal1D out(grid);
    double c = cospi(spec.shift_tau), s = sinpi(spec.shift_tau);
    for (std::size_t p = 0; p < grid.n; ++p) {
      double t = grid.x(p) - 0.5;
      double env = shannon_sinc(0.5 * t);
      out.values[p] = env * (c * std::cos(1.5 * kPi * t) + s * std::sin(1.5 * kPi * t));
    }
    return out;
  }
  SampledSignal1D out = sample_from_fourier([&](double w) { return wavelet_fourier(spec, w); }, grid);
  check_boundary(out, "synthesize_wavelet(" + spec.label() + ")");
  return out;
}

SampledSignal1D synthesize_wavelet_periodic(const SplineSpec& spec, const Grid1D& grid) {
  spec.validate();
  return sample_from_fourier([&](double w) { return wavelet_fourier(spec, w); }, grid);
}

SampledSignal1D synthesize_scaling(const SplineSpec& spec, const Grid1D& grid) {
  spec.validate();
  grid.validate();
  if (spec.genus == Genus::Shannon) {
    SampledSignal1D out(grid);
    for (std::size_t p = 0; p < grid.n; ++p) out.values[p] = shannon_sinc(grid.x(p));
    return out;
  }
  SampledSignal1D out = sample_from_fourier([&](double w) { return scaling_fourier(spec, w); }, grid);
  check_boundary(out, "synthesize_scaling(" + spec.label() + ")");
  return out;
}

double fht_bspline_identity_residual(double alpha, double tau, double tau_bar, const Grid1D& grid) {
  SampledSignal1D beta = synthesize_scaling({Genus::BSplineSemiOrthogonal, alpha, tau}, grid);
  SampledSignal1D lhs = fht_apply(beta, FhtShift(tau_bar));
  SpectralFilter D = fd_filter(tau_bar);
  SampledSignal1D rhs = sample_from_fourier(
      [&](double w) { return D(w) * bspline_fourier(alpha, tau - tau_bar, w); }, grid);
  return relative_l2_distance(rhs, lhs);
}

double prop3_residual(const SplineSpec& spec, double tau_bar, const Grid1D& grid) {
  if (!is_spline_genus(spec.genus)) throw UnsupportedGenus("prop3_residual requires a spline genus");
  SampledSignal1D psi = synthesize_wavelet(spec, grid);
  SampledSignal1D lhs = fht_apply(psi, FhtShift(tau_bar));
  SampledSignal1D rhs = synthesize_wavelet(spec.with_tau(spec.shift_tau - tau_bar), grid);
  double num = 0.0;
  for (std::size_t p = 0; p < grid.n; ++p) num += std::norm(lhs.values[p] - rhs.values[p]);
  return std::sqrt(num * grid.dx) / l2_norm(psi);
}

std::vector<cplx> filter_taps(const SpectralFilter& filter, std::size_t n) {
  if (n == 0) throw Error("filter_taps: need at least one tap");
  std::vector<cplx> F(n);
  for (std::size_t m = 0; m < n; ++m) F[m] = filter(2.0 * kPi * static_cast<double>(m) / static_cast<double>(n));
  fft::inverse(F);
  std::vector<cplx> taps(n);
  long half = static_cast<long>(n / 2);
  for (long k = -half; k < static_cast<long>(n) - half; ++k) {
    std::size_t idx = static_cast<std::size_t>((k % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n));
    taps[static_cast<std::size_t>(k + half)] = F[idx] / static_cast<double>(n);
  }
  return taps;
}

void write_filter_csv(std::ostream& os, const SpectralFilter& filter, std::size_t n) {
  auto taps = filter_taps(filter, n);
  long half = static_cast<long>(n / 2);
  os << "# " << filter.label() << "\n" << "k,re,im\n" << std::setprecision(17);
  for (std::size_t i = 0; i < taps.size(); ++i)
    os << static_cast<long>(i) - half << ',' << taps[i].real() << ',' << taps[i].imag() << '\n';
}

}  // namespace shiftwave
