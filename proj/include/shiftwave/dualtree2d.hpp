#pragma once

#include "shiftwave/dualtree.hpp"
#include "shiftwave/fht.hpp"

#include <array>
#include <vector>

namespace shiftwave {

constexpr int kOrientations = 6;

struct DirectionalBank2D {
  SplineSpec spec;
  int levels = 0;
  Grid1D grid_x, grid_y;
  // 1D generators for each axis (first tree and second tree).
  std::vector<LevelSpectra> x_tree, x_tree_prime, y_tree, y_tree_prime;
  // Spectra (row-major, FFT order) of the complex wavelets, [level-1][l-1].
  std::vector<std::array<std::vector<cplx>, kOrientations>> psi, dual_psi;
  std::array<double, kOrientations> theta{};
  std::array<double, kOrientations> mu{};

  std::size_t step(int level) const { return std::size_t{1} << level; }
  std::size_t count_x(int level) const { return grid_x.n >> level; }
  std::size_t count_y(int level) const { return grid_y.n >> level; }

  // Complex wavelet Psi_l at translation 0; real part psi_l, imaginary part
  // its directional Hilbert transform.
  SampledSignal2D wavelet(int ell, int level) const;
  SampledSignal2D dual_wavelet(int ell, int level) const;
};

DirectionalBank2D build_directional_bank(const SplineSpec& spec, int levels, const Grid1D& grid_x,
                                         const Grid1D& grid_y);

// Separable wavelet q = 1..12 at `level` (first factor along x):
//  1 phi psi     2 psi phi     3 psi psi
//  4 phi psi'    5 psi phi'    6 psi psi'
//  7 phi' psi    8 psi' phi    9 psi' psi
// 10 phi' psi'  11 psi' phi'  12 psi' psi'
std::vector<cplx> separable_spectrum(const DirectionalBank2D& bank, int q, int level, bool dual);
SampledSignal2D separable_wavelet(const DirectionalBank2D& bank, int q, int level);

struct DualTreeCoeffs2D {
  SplineSpec spec;
  int levels = 0;
  Grid1D grid_x, grid_y;
  // c[l-1][level-1], row-major (count_y rows of count_x).
  std::array<std::vector<std::vector<cplx>>, kOrientations> c;
  // Coarse coefficients of phi phi, phi phi', phi' phi, phi' phi' at level M.
  std::array<std::vector<double>, 4> coarse;

  double phase(int ell, int level, std::size_t idx) const;
  double tau(int ell, int level, std::size_t idx) const;
};

DualTreeCoeffs2D analyze2d(const SampledSignal2D& f, const DirectionalBank2D& bank);

// sum |c| Xi{H_{theta_l, phase/pi} psi_l} plus 1/4 of the four separable
// approximations.
SampledSignal2D reconstruct2d(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank);

// Separable-basis coefficients a_q (q = 1..12) recovered from c, per level.
std::array<std::vector<double>, 12> separable_coefficients(const DualTreeCoeffs2D& coeffs, int level);

// (1/4) of the four separable dual-tree expansions, using the regrouped a_q.
SampledSignal2D reconstruct2d_separable(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank);

// ||H_{theta_l, tau_bar} psi_l - psi_l rebuilt with per-axis shifts|| / ||psi_l||.
double prop4_residual(const DirectionalBank2D& bank, int ell, double tau_bar, int level = 1);

void require_matching_bank(const DualTreeCoeffs2D& coeffs, const DirectionalBank2D& bank);

}  // namespace shiftwave
