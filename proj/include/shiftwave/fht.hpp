#pragma once

#include "shiftwave/signal.hpp"

namespace shiftwave {

class SupportPreconditionError : public Error {
public:
  using Error::Error;
};

// Shift parameter of the fractional Hilbert transform, stored as the
// canonical representative in (-1, 1]. Shifts that differ by an even
// integer give the same operator.
class FhtShift {
public:
  FhtShift() = default;
  explicit FhtShift(double tau);
  double tau() const { return tau_; }
  bool operator==(const FhtShift& o) const { return tau_ == o.tau_; }

private:
  double tau_ = 0.0;
};

FhtShift fht_compose(FhtShift t1, FhtShift t2);
FhtShift fht_inverse(FhtShift t);

struct Direction2D {
  double theta = 0.0;
  Direction2D() = default;
  explicit Direction2D(double theta_);
  double ux() const;
  double uy() const;
};

// cos(pi x) and sin(pi x), exact at integers and half-integers.
double cospi(double x);
double sinpi(double x);

// Per-bin multiplier exp(j pi tau sign(w)); DC and Nyquist bins use cos(pi tau).
cplx fht_multiplier(long signed_bin, std::size_t n, FhtShift tau);

SampledSignal1D fht_apply(const SampledSignal1D& f, FhtShift tau);
SampledSignal1D hilbert(const SampledSignal1D& f);

// Directional HT: multiplier -j sign(u_theta . w), zero where u_theta . w = 0.
// A Nyquist bin contributes frequency 0 along its axis (the mean of its two
// aliases) so that real images stay real.
SampledSignal2D dht_apply(const SampledSignal2D& f, Direction2D theta);
// cos(pi tau) f - sin(pi tau) dht_apply(f, theta), as one multiplier.
SampledSignal2D fdht_apply(const SampledSignal2D& f, Direction2D theta, FhtShift tau);
// Sign of u_theta . w at a bin, with the tie tolerance used by dht_apply.
int direction_sign(long kx, std::size_t nx, double dx, long ky, std::size_t ny, double dy, Direction2D theta);

// ||H_tau(f g) - f H_tau g|| / ||f g||. Checks that f_low has at most 1e-10
// of its energy at |w| >= Omega, that g_high has at most 1e-10 of its energy
// at |w| < Omega and that the product stays below the grid Nyquist
// frequency; any violation throws SupportPreconditionError.
double bedrosian_residual(const SampledSignal1D& f_low, const SampledSignal1D& g_high, FhtShift tau, double Omega);
// The same residual without the support checks, for negative controls.
double bedrosian_residual_unchecked(const SampledSignal1D& f_low, const SampledSignal1D& g_high, FhtShift tau);

}  // namespace shiftwave
