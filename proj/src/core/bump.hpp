// Smooth compactly supported radial profiles: the bump used for smoothing
// and interpolation, and the plateau mollifier behind the Bohr-mean
// estimator.
#pragma once

#include <functional>

#include "core/error.hpp"

namespace qc {

// Radial profile exp(1 - 1/(1 - (t/radius)^2)) on [0, radius), zero beyond.
// profile(0) = 1; infinitely smooth.
class BumpFunction {
 public:
  explicit BumpFunction(double radius);

  double radius() const { return radius_; }
  double value(double t) const;          // profile at radial distance t >= 0
  double mass(int dim) const;            // integral over R^dim of value(|x|)

  // Radial Fourier transform at |gamma| = rho (convention e^{-2 pi i <x,y>}),
  // for dim in {1,2,3}.  Exact up to quadrature on oscillation-resolving
  // panels.
  double fourier(int dim, double rho) const;

 private:
  double radius_;
};

// C-infinity step: 0 at u<=0, 1 at u>=1, strictly increasing in between.
double smooth_step(double u);

// The Bohr-mean window: psi(t) = 1/omega_d for t < 1-eps, 0 for t > 1+eps,
// smooth in between, then scaled so that its integral over R^d is exactly 1.
class PlateauMollifier {
 public:
  PlateauMollifier(int dim, double eps = 0.5);
  double value(double t) const;  // already normalized
  double eps() const { return eps_; }

 private:
  int dim_;
  double eps_;
  double scale_;
};

double unit_ball_volume(int dim);

// Integrate fn over [a,b] with Gauss-Legendre panels sized to resolve an
// oscillation frequency of `osc` cycles per unit length.
double integrate_radial(const std::function<double(double)>& fn, double a, double b,
                        double osc);

}  // namespace qc
