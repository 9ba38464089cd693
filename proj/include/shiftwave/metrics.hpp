#pragma once

#include "shiftwave/fracspline.hpp"
#include "shiftwave/signal.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace shiftwave {

// rho = max(<psi2, H psi1> / (||psi1|| ||psi2||), 0).
double rho(const SampledSignal1D& psi1, const SampledSignal1D& psi2);

struct SpectrumS {
  std::vector<double> omega;  // uniform, ascending, symmetric about 0
  std::vector<cplx> S;        // psi1_hat + j psi2_hat
  double W = 0.0;             // integration cutoff
  double tail_mass = 0.0;     // fraction of the |S| mass beyond W
  double negative_leak = 0.0; // max |S| at w <= 0 over max |S|

  double spacing() const { return omega.size() > 1 ? omega[1] - omega[0] : 0.0; }
};

// Continuous spectrum of psi1 + j psi2. A wavelet that decays inside the
// period is zero-padded so that the bin spacing is at most 2 pi / (8 * support),
// support being the centered width holding all but 1e-10 of the energy. W <= 0 selects the smallest cutoff whose
// tail carries at most 1e-10 of the |S| mass (the full band if none does).
// min_bins > 0 increases the padding until [-W, W] holds that many bins.
SpectrumS spectrum_S(const SampledSignal1D& psi1, const SampledSignal1D& psi2, double W = 0.0,
                     std::size_t min_bins = 0);

double centroid(const SpectrumS& S);
// int_0^inf | |S|(c + w) - |S|(c - w) | dw / int |S| dw, c the centroid;
// trapezoid rule with linear interpolation between bins.
double kappa(const SpectrumS& S);

struct TableConfig {
  std::size_t n = 4096;
  double dx = 1.0 / 32.0;
  // Synthesis scale: the wavelet psi(x / dilation) on a grid of spacing
  // dx * dilation, translated by shift_samples.
  int dilation = 1;
  long shift_samples = 0;
};

// Two lowpass filters (one per tree), taps h[k] for k = offset .. offset+size-1.
struct FilterPair {
  std::string label;
  long offset = 0;
  std::vector<double> h1, h2;
};

// Reads CSV `k,h1,h2` (header required, '#' comments allowed).
FilterPair read_filter_pair_csv(std::istream& is, const std::string& label);
FilterPair read_filter_pair_file(const std::string& path);

// Wavelets of a filter pair by an 8-level frequency-domain cascade; the
// highpass filter is the alternating flip g[k] = (-1)^k h[1-k].
std::pair<SampledSignal1D, SampledSignal1D> cascade_wavelets(const FilterPair& pair, const TableConfig& cfg);

struct TableEntry {
  std::string label;
  std::optional<SplineSpec> spec;  // pair (psi_tau, psi_{tau+1/2})
  std::optional<FilterPair> filters;
};

struct MetricsRow {
  std::string label;
  double rho = 0.0;
  double kappa = 0.0;
  double W = 0.0;
  double tail_mass = 0.0;
  std::string error;  // non-empty if the row could not be computed
};

std::vector<TableEntry> default_table_entries();
std::vector<MetricsRow> metrics_table(const std::vector<TableEntry>& entries, const TableConfig& cfg = {});

void write_table_csv(std::ostream& os, const std::vector<MetricsRow>& rows);
void write_table_json(std::ostream& os, const std::vector<MetricsRow>& rows, const TableConfig& cfg);

}  // namespace shiftwave
