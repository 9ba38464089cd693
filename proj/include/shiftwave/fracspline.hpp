#pragma once

#include "shiftwave/signal.hpp"

#include <functional>
#include <iosfwd>
#include <string>

namespace shiftwave {

class UnsupportedGenus : public Error {
public:
  using Error::Error;
};

class BoundaryEnergyError : public Error {
public:
  using Error::Error;
};

enum class Genus { BSplineSemiOrthogonal, Orthonormal, DualBSpline, Shannon, GaborReference };

std::string genus_name(Genus g);
// Accepts bspline, semi-orthogonal, orthonormal, dual, shannon, gabor.
Genus parse_genus(const std::string& name);
bool is_spline_genus(Genus g);

struct SplineSpec {
  Genus genus = Genus::BSplineSemiOrthogonal;
  double degree_alpha = 3.0;
  double shift_tau = 0.0;

  void validate() const;
  std::string label() const;
  SplineSpec with_tau(double tau) const;
  bool operator==(const SplineSpec& o) const = default;
};

// A 2pi-periodic transfer function F(e^{jw}) evaluated at real w.
class SpectralFilter {
public:
  SpectralFilter(std::function<cplx(double)> evaluator, std::string label);
  cplx operator()(double omega) const { return eval_(omega); }
  const std::string& label() const { return label_; }

private:
  std::function<cplx(double)> eval_;
  std::string label_;
};

// Principal-branch fractional powers; 1 at w = 0.
cplx bspline_fourier(double alpha, double tau, double omega);
// 2^{-(alpha+1)} (1+e^{-jw})^{(alpha+1)/2+tau} (1+e^{jw})^{(alpha+1)/2-tau}
SpectralFilter refinement_filter(double alpha, double tau);
// A(w) = sum_k |bspline(w + 2 pi k)|^2.
SpectralFilter autocorrelation_filter(double alpha);
double autocorrelation(double alpha, double omega);
// Genus-dependent Q with Q(1) = 1.
SpectralFilter lowpass_constraint_filter(const SplineSpec& spec);
// G(e^{jw}) = e^{jw} Q(-e^{-jw}) H(-e^{-jw}).
SpectralFilter wavelet_filter(const SplineSpec& spec);
// Scalar placed in front of the two-scale relation so that Q keeps Q(1) = 1:
// psi_hat(w) = gain/2 * G(e^{jw/2}) * bspline(w/2).
double wavelet_gain(const SplineSpec& spec);
// D(e^{jw}) = (1 - e^{-jw})^tau (1 - e^{jw})^{-tau}; 1 at w = 0.
SpectralFilter fd_filter(double tau);

// Continuous Fourier transforms of the wavelet and scaling function.
cplx wavelet_fourier(const SplineSpec& spec, double omega);
cplx scaling_fourier(const SplineSpec& spec, double omega);

// Samples of the function whose Fourier transform is `ft`, placed on the
// grid's frequency bins (Nyquist bin set to zero).
SampledSignal1D sample_from_fourier(const std::function<cplx(double)>& ft, const Grid1D& grid);

// Fraction of energy in the part of the period farthest from x = 0
// (periodic distance above 3/8 of the period).
double boundary_energy_fraction(const SampledSignal1D& f);

// Spectral synthesis with a boundary-energy check (<= 1e-8). The Shannon
// genus returns its closed form sinc((x-1/2)/2) cos(3 pi (x-1/2)/2) sampled
// directly; it decays like 1/|x| so no boundary check applies to it.
SampledSignal1D synthesize_wavelet(const SplineSpec& spec, const Grid1D& grid);
SampledSignal1D synthesize_scaling(const SplineSpec& spec, const Grid1D& grid);
// Periodized synthesis from the Fourier transform for every genus, with no
// boundary check (Shannon included: band edges carry weight 1/sqrt 2).
SampledSignal1D synthesize_wavelet_periodic(const SplineSpec& spec, const Grid1D& grid);

double fht_bspline_identity_residual(double alpha, double tau, double tau_bar, const Grid1D& grid);
double prop3_residual(const SplineSpec& spec, double tau_bar, const Grid1D& grid);

// Impulse response of a sampled transfer function: n taps k = -n/2..n/2-1,
// CSV header `k,re,im`.
std::vector<cplx> filter_taps(const SpectralFilter& filter, std::size_t n);
void write_filter_csv(std::ostream& os, const SpectralFilter& filter, std::size_t n);

}  // namespace shiftwave
