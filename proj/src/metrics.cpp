#include "shiftwave/metrics.hpp"

#include "shiftwave/fft.hpp"
#include "shiftwave/fht.hpp"
#include "shiftwave/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace shiftwave {
namespace {

constexpr double kPi = 3.14159265358979323846;

double trapz(const std::vector<double>& y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

// Sample index closest to the periodic energy centroid of |a|^2 + |b|^2.
std::size_t energy_center_index(const SampledSignal1D& a, const SampledSignal1D& b) {
  const std::size_t n = a.size();
  cplx acc = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    double w = std::norm(a.values[p]) + std::norm(b.values[p]);
    acc += w * std::polar(1.0, 2.0 * kPi * static_cast<double>(p) / static_cast<double>(n));
  }
  double t = std::arg(acc) / (2.0 * kPi);
  if (t < 0.0) t += 1.0;
  return static_cast<std::size_t>(std::lround(t * static_cast<double>(n))) % n;
}

struct Magnitude {
  double w0, h;  // omega of first bin, spacing
  const std::vector<double>* a;
  double at(double w) const {
    double t = (w - w0) / h;
    if (t < 0.0 || t > static_cast<double>(a->size() - 1)) return 0.0;
    std::size_t i = static_cast<std::size_t>(t);
    if (i + 1 >= a->size()) return (*a)[a->size() - 1];
    double f = t - static_cast<double>(i);
    return (1.0 - f) * (*a)[i] + f * (*a)[i + 1];
  }
};

std::vector<double> band_magnitude(const SpectrumS& S) {
  std::vector<double> a(S.S.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(S.omega[i]) <= S.W ? std::abs(S.S[i]) : 0.0;
  return a;
}

}  // namespace

double rho(const SampledSignal1D& psi1, const SampledSignal1D& psi2) {
  require_same_grid(psi1, psi2, "rho");
  double n1 = l2_norm(psi1), n2 = l2_norm(psi2);
  if (n1 == 0.0 || n2 == 0.0) throw Error("rho: wavelets must have nonzero norm");
  double r = inner_product(psi2, hilbert(psi1)).real() / (n1 * n2);
  return std::clamp(r, 0.0, 1.0);
}

SpectrumS spectrum_S(const SampledSignal1D& psi1, const SampledSignal1D& psi2, double W, std::size_t min_bins) {
  require_same_grid(psi1, psi2, "spectrum_S");
  const std::size_t n = psi1.size();
  const double dx = psi1.grid.dx;
  std::size_t center = energy_center_index(psi1, psi2);
  std::vector<cplx> one(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t src = (i + center + n - n / 2) % n;
    one[i] = psi1.values[src] + cplx(0.0, 1.0) * psi2.values[src];
  }
  // Contained wavelets are zero-padded to a bin spacing of at most
  // 2 pi / (8 * support); a wavelet that fills the period (slow decay) is a
  // periodic function and keeps its line spectrum.
  std::vector<double> energy(n / 2 + 1, 0.0);
  double total_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t d = i >= n / 2 ? i - n / 2 : n / 2 - i;
    double e = std::norm(one[i]);
    energy[std::min(d, n / 2)] += e;
    total_energy += e;
  }
  if (total_energy == 0.0) throw Error("spectrum_S: zero spectrum");
  double outer = 0.0;
  std::size_t reach = n / 2;
  for (std::size_t d = n / 2; d > 0; --d) {
    if (outer + energy[d] > 1e-10 * total_energy) break;
    outer += energy[d];
    reach = d - 1;
  }
  double edge = 0.0;
  for (std::size_t d = (3 * n) / 8 + 1; d <= n / 2; ++d) edge += energy[d];
  std::size_t pad = 1;
  if (edge <= 1e-8 * total_energy) {
    double support = 2.0 * static_cast<double>(reach + 1) * dx;
    while (static_cast<double>(n * pad) * dx < 8.0 * support) pad *= 2;
  }
  for (;;) {
    const std::size_t N = n * pad;
    std::vector<cplx> F(N);
    std::copy(one.begin(), one.end(), F.begin());
    fft::forward(F);
    SpectrumS out;
    out.omega.resize(N);
    out.S.resize(N);
    const double h = 2.0 * kPi / (static_cast<double>(N) * dx);
    const long half = static_cast<long>(N / 2);
    for (long k = -half; k < half; ++k) {
      std::size_t i = static_cast<std::size_t>(k + half);
      out.omega[i] = h * static_cast<double>(k);
      out.S[i] = dx * F[static_cast<std::size_t>((k + static_cast<long>(N)) % static_cast<long>(N))];
    }
    double total = 0.0, peak = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double a = std::abs(out.S[i]);
      total += a;
      peak = std::max(peak, a);
      if (out.omega[i] <= 0.0) neg = std::max(neg, a);
    }
    if (total == 0.0) throw Error("spectrum_S: zero spectrum");
    out.negative_leak = neg / peak;
    const double nyquist = h * static_cast<double>(half);
    if (W > 0.0) {
      out.W = std::min(W, nyquist);
    } else {
      // Grow |k| until the mass outside [-K, K] drops below 1e-10.
      std::vector<double> outside(static_cast<std::size_t>(half) + 1, 0.0);
      for (std::size_t i = 0; i < N; ++i) {
        long ak = std::labs(static_cast<long>(i) - half);
        outside[static_cast<std::size_t>(ak)] += std::abs(out.S[i]);
      }
      double beyond = 0.0;
      long K = half;
      for (long k = half; k >= 0; --k) {
        if (beyond + outside[static_cast<std::size_t>(k)] > 1e-10 * total) break;
        beyond += outside[static_cast<std::size_t>(k)];
        K = k - 1;
      }
      out.W = h * static_cast<double>(std::max<long>(K, 0));
      if (K >= half) out.W = nyquist;
    }
    double beyond = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      if (std::abs(out.omega[i]) > out.W) beyond += std::abs(out.S[i]);
    out.tail_mass = beyond / total;
    std::size_t bins = static_cast<std::size_t>(2.0 * out.W / h) + 1;
    if (min_bins == 0 || bins >= min_bins || pad >= (std::size_t{1} << 12)) return out;
    pad *= 2;
  }
}

double centroid(const SpectrumS& S) {
  std::vector<double> a = band_magnitude(S);
  std::vector<double> wa(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) wa[i] = S.omega[i] * a[i];
  double den = trapz(a, S.spacing());
  if (den <= 0.0) throw Error("centroid: zero spectrum");
  return trapz(wa, S.spacing()) / den;
}

double kappa(const SpectrumS& S) {
  std::vector<double> a = band_magnitude(S);
  const double h = S.spacing();
  double den = trapz(a, h);
  if (den <= 0.0) throw Error("kappa: zero spectrum");
  const double c = centroid(S);
  Magnitude m{S.omega.front(), h, &a};
  double reach = std::max(S.omega.back() - c, c - S.omega.front());
  std::size_t steps = static_cast<std::size_t>(std::ceil(reach / h)) + 1;
  std::vector<double> diff(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    double t = h * static_cast<double>(i);
    diff[i] = std::abs(m.at(c + t) - m.at(c - t));
  }
  return std::clamp(trapz(diff, h) / den, 0.0, 1.0);
}

FilterPair read_filter_pair_csv(std::istream& is, const std::string& label) {
  FilterPair fp;
  fp.label = label;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::vector<long> ks;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "k,h1,h2") throw ParseError("filter file line " + std::to_string(lineno) + ": expected header k,h1,h2");
      header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string a, b, c;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
      throw ParseError("filter file line " + std::to_string(lineno) + ": expected three columns");
    try {
      std::size_t used = 0;
      long k = std::stol(a, &used);
      if (used != a.size()) throw std::invalid_argument("k");
      ks.push_back(k);
      fp.h1.push_back(std::stod(b));
      fp.h2.push_back(std::stod(c));
    } catch (const std::exception&) {
      throw ParseError("filter file line " + std::to_string(lineno) + ": malformed number");
    }
  }
  if (ks.empty()) throw ParseError("filter file: no taps");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] != ks[i - 1] + 1) throw ParseError("filter file: tap indices must be consecutive");
  fp.offset = ks.front();
  return fp;
}

FilterPair read_filter_pair_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open filter file " + path);
  std::string label = path;
  auto slash = label.find_last_of('/');
  if (slash != std::string::npos) label = label.substr(slash + 1);
  return read_filter_pair_csv(in, label);
}

namespace {

cplx dtft(const std::vector<double>& h, long offset, double w) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) s += h[i] * std::polar(1.0, -w * static_cast<double>(offset + static_cast<long>(i)));
  return s;
}

// Wavelet FT of an 8-level cascade of lowpass h (normalized to H(1) = sqrt 2).
cplx cascade_fourier(const std::vector<double>& h_in, long offset, double w) {
  double sum = 0.0;
  for (double v : h_in) sum += v;
  if (sum == 0.0) throw Error("cascade: lowpass filter has zero DC gain");
  std::vector<double> h(h_in);
  for (auto& v : h) v *= std::sqrt(2.0) / sum;
  // g[k] = (-1)^k h[1-k] for k = 1 - (offset + size - 1) .. 1 - offset.
  const long gsize = static_cast<long>(h.size());
  const long goff = 1 - (offset + gsize - 1);
  std::vector<double> g(h.size());
  for (long i = 0; i < gsize; ++i) {
    long k = goff + i;
    long src = 1 - k - offset;
    g[static_cast<std::size_t>(i)] = ((k % 2 == 0) ? 1.0 : -1.0) * h[static_cast<std::size_t>(src)];
  }
  cplx v = dtft(g, goff, 0.5 * w) / std::sqrt(2.0);
  double scale = 0.25;
  for (int level = 2; level <= 8; ++level, scale *= 0.5) v *= dtft(h, offset, scale * w) / std::sqrt(2.0);
  return v;
}

SampledSignal1D synth_on_config(const std::function<cplx(double)>& ft, const TableConfig& cfg, bool check,
                                const std::string& what) {
  if (cfg.dilation < 1) throw Error("table dilation must be >= 1");
  const double d = static_cast<double>(cfg.dilation);
  Grid1D g = Grid1D::centered(cfg.n, cfg.dx * d);
  SampledSignal1D s = sample_from_fourier([&](double w) { return std::sqrt(d) * ft(d * w); }, g);
  s = real_part(s);
  if (check) {
    double frac = boundary_energy_fraction(s);
    if (frac > 1e-8) {
      std::ostringstream msg;
      msg << what << ": boundary energy fraction " << frac << " exceeds 1e-8; use n=" << 2 * cfg.n;
      throw BoundaryEnergyError(msg.str());
    }
  }
  return translate(s, cfg.shift_samples);
}

}  // namespace

std::pair<SampledSignal1D, SampledSignal1D> cascade_wavelets(const FilterPair& pair, const TableConfig& cfg) {
  if (pair.h1.empty() || pair.h1.size() != pair.h2.size()) throw Error("filter pair needs two equal-length tap lists");
  auto a = synth_on_config([&](double w) { return cascade_fourier(pair.h1, pair.offset, w); }, cfg, false, pair.label);
  auto b = synth_on_config([&](double w) { return cascade_fourier(pair.h2, pair.offset, w); }, cfg, false, pair.label);
  return {a, b};
}

std::vector<TableEntry> default_table_entries() {
  std::vector<TableEntry> rows;
  rows.push_back({"Shannon wavelets (ideal)", SplineSpec{Genus::Shannon, 0.0, 0.0}, std::nullopt});
  for (double a : {1.0, 3.0, 6.0}) {
    std::ostringstream l;
    l << "B-spline wavelets, degree=" << a;
    rows.push_back({l.str(), SplineSpec{Genus::BSplineSemiOrthogonal, a, 0.0}, std::nullopt});
  }
  for (double a : {1.0, 3.0, 6.0}) {
    std::ostringstream l;
    l << "Orthonormal spline wavelets, degree=" << a;
    rows.push_back({l.str(), SplineSpec{Genus::Orthonormal, a, 0.0}, std::nullopt});
  }
  return rows;
}

std::vector<MetricsRow> metrics_table(const std::vector<TableEntry>& entries, const TableConfig& cfg) {
  std::vector<MetricsRow> rows(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) {
    const TableEntry& e = entries[i];
    MetricsRow& r = rows[i];
    r.label = e.label;
    try {
      SampledSignal1D p1, p2;
      if (e.spec) {
        SplineSpec s1 = *e.spec, s2 = e.spec->with_tau(e.spec->shift_tau + 0.5);
        bool check = s1.genus != Genus::Shannon;
        p1 = synth_on_config([&](double w) { return wavelet_fourier(s1, w); }, cfg, check, s1.label());
        p2 = synth_on_config([&](double w) { return wavelet_fourier(s2, w); }, cfg, check, s2.label());
      } else if (e.filters) {
        std::tie(p1, p2) = cascade_wavelets(*e.filters, cfg);
      } else {
        throw Error("table entry has neither a spline spec nor a filter pair");
      }
      r.rho = rho(p1, p2);
      SpectrumS S = spectrum_S(p1, p2);
      r.kappa = kappa(S);
      r.W = S.W * static_cast<double>(cfg.dilation);
      r.tail_mass = S.tail_mass;
    } catch (const std::exception& ex) {
      r.error = ex.what();
    }
  });
  return rows;
}

void write_table_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  os << "label,rho,kappa\n" << std::setprecision(6) << std::fixed;
  for (const auto& r : rows) {
    std::string label = r.label;
    if (label.find(',') != std::string::npos) label = "\"" + label + "\"";
    if (!r.error.empty()) {
      os << label << ",nan,nan\n";
      continue;
    }
    os << label << ',' << r.rho << ',' << r.kappa << '\n';
  }
  os.unsetf(std::ios::fixed);
}

void write_table_json(std::ostream& os, const std::vector<MetricsRow>& rows, const TableConfig& cfg) {
  nlohmann::ordered_json j;
  j["grid"] = {{"n", cfg.n}, {"dx", cfg.dx}, {"dilation", cfg.dilation}, {"shift_samples", cfg.shift_samples}};
  j["quadrature"] = "trapezoid, linear interpolation";
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["label"] = r.label;
    if (r.error.empty()) {
      row["rho"] = r.rho;
      row["kappa"] = r.kappa;
      row["cutoff_W"] = r.W;
      row["tail_mass"] = r.tail_mass;
    } else {
      row["error"] = r.error;
    }
    j["rows"].push_back(row);
  }
  os << j.dump(2) << '\n';
}

}  // namespace shiftwave
