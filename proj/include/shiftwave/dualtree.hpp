#pragma once

#include "shiftwave/fracspline.hpp"
#include "shiftwave/signal.hpp"

#include <vector>

namespace shiftwave {

class BankMismatch : public Error {
public:
  using Error::Error;
};

// Continuous-FT samples (FFT storage order) of the generators of one level
// of one tree. Level j uses translation step 2^j samples; the spline unit
// at level 0 is the grid spacing.
struct LevelSpectra {
  std::vector<cplx> phi, psi;            // primal scaling function and wavelet
  std::vector<cplx> dual_phi, dual_psi;  // biorthogonal partners
};

// Per-level generators for one tree with spline shift `tau`, levels 1..M
// (index 0 of the result is level 1). For the Shannon genus the shift is
// ignored and the wavelet is the ideal band-pass one.
std::vector<LevelSpectra> build_tree_spectra(const SplineSpec& spec, double tau, const Grid1D& grid, int levels);

struct WaveletBank1D {
  SplineSpec spec;
  int levels = 0;
  Grid1D grid;
  // Index j-1 holds level j; generators sit at translation 0.
  std::vector<SampledSignal1D> primal_psi, primal_psi_prime, dual_psi, dual_psi_prime;
  // Coarse level M.
  SampledSignal1D scaling, scaling_prime, dual_scaling, dual_scaling_prime;
  // Spectra of both trees at every level (index j-1).
  std::vector<LevelSpectra> tree, tree_prime;

  std::size_t step(int level) const { return std::size_t{1} << level; }
  std::size_t count(int level) const { return grid.n >> level; }
};

WaveletBank1D build_bank(const SplineSpec& spec, int levels, const Grid1D& grid);

struct DualTreeCoeffs1D {
  SplineSpec spec;
  int levels = 0;
  Grid1D grid;
  // c[j-1][k] for level j, k = 0..n/2^j - 1.
  std::vector<std::vector<cplx>> c;
  std::vector<double> coarse, coarse_prime;

  double phase(int level, std::size_t k) const;  // in (-pi, pi]
  double tau(int level, std::size_t k) const;    // phase / pi
  double a(int level, std::size_t k) const;      // 2 Re c
  double b(int level, std::size_t k) const;      // -2 Im c
};

DualTreeCoeffs1D analyze(const SampledSignal1D& f, const WaveletBank1D& bank);
// Coefficients of a single level (no coarse part).
std::vector<cplx> analyze_level(const SampledSignal1D& f, const WaveletBank1D& bank, int level);

// Amplitude-phase synthesis: sum |c| Xi{H_{phase/pi} psi} plus
// (1/2)(sum p phi_M + sum p' phi'_M).
SampledSignal1D reconstruct(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank);
// Two-branch form: sum (a psi + b psi') / 2 plus the same coarse part.
SampledSignal1D reconstruct_two_branch(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank);

// Xi{H_tau psi} at `level` (1..M), translated by k * 2^level samples.
SampledSignal1D shifted_wavelet(const WaveletBank1D& bank, int level, long k, double tau);

// Periodic energy centroid of |psi|^2 + |psi'|^2 for the level generator.
double wavelet_center(const WaveletBank1D& bank, int level);

struct StepDemoReport {
  double x0 = 0.0;
  int level = 0;
  long k = 0;
  double tau_at_singularity = 0.0;
  double corr_reference = 0.0;
  double corr_shifted = 0.0;
  // Same pair of correlations against the analysis (dual) wavelets, whose
  // phase defines tau; equal to the above for the orthonormal genus.
  double corr_reference_dual = 0.0;
  double corr_shifted_dual = 0.0;
  SampledSignal1D step, reference, shifted, envelope;
};

// Analyzes sign(x - x0) and compares the reference wavelet nearest the
// singularity with its fHT-shifted version at the coefficient phase.
StepDemoReport step_demo(double x0, const WaveletBank1D& bank, int level);

void require_matching_bank(const DualTreeCoeffs1D& coeffs, const WaveletBank1D& bank);

}  // namespace shiftwave
