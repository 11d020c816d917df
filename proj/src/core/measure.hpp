// Atomic measures on R^d represented by a complete finite window of weighted
// Dirac atoms, and the comb / Poisson / smoothing / Bohr-mean operations on
// them.
#pragma once

#include <functional>
#include <vector>

#include "core/bump.hpp"
#include "core/exp_sum.hpp"
#include "core/lattice.hpp"

namespace qc {

struct MeasureAtom {
  Vec pos;
  Complex weight;
};

class AtomicMeasure {
 public:
  static constexpr double default_pos_tol = 1e-9;

  AtomicMeasure() = default;

  // Merges atoms within pos_tol (max-norm), drops zero weights, sorts
  // positions lexicographically.  `window` is the radius within which the
  // atom list is complete.
  static AtomicMeasure make(int dim, double window, std::vector<MeasureAtom> atoms,
                            double pos_tol = default_pos_tol);

  int dim() const { return dim_; }
  double window() const { return window_; }
  double pos_tol() const { return pos_tol_; }
  const std::vector<MeasureAtom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  size_t size() const { return atoms_.size(); }

  // total |weight| mass in the closed ball of radius r
  double variation(double r) const;
  std::vector<Vec> positions() const;

 private:
  int dim_ = 1;
  double window_ = 0;
  double pos_tol_ = default_pos_tol;
  std::vector<MeasureAtom> atoms_;
};

// Sum over shifts of weight_j * delta on (L + shift_j), restricted to the
// window ball.
AtomicMeasure lattice_comb(const Lattice& lat, const std::vector<Vec>& shifts,
                           const std::vector<Complex>& weights, double window);

// Exact Fourier transform of the comb above:
// |det B|^{-1} sum over the dual lattice of the finite character sum.
AtomicMeasure poisson_transform(const Lattice& lat, const std::vector<Vec>& shifts,
                                const std::vector<Complex>& weights,
                                double spectrum_window);

// f(s) = sum_gamma b_gamma psi_hat(|gamma|) e^{2 pi i <s,gamma>} built from a
// spectrum window; psi_hat is a radial transform evaluated per atom.
ExponentialSum smooth_with(const AtomicMeasure& spectrum,
                           const std::function<double(double)>& psi_hat,
                           double coeff_floor = 0.0, double* dropped_mass = nullptr);

struct QuasicrystalPair {
  AtomicMeasure direct;
  AtomicMeasure spectrum;
  bool large_flag = false;
  double min_modulus = 0;  // inf |a_lambda| over the direct window

  static QuasicrystalPair make(AtomicMeasure direct, AtomicMeasure spectrum);
};

struct InterpolantResult {
  ExponentialSum f;
  double max_deviation = 0;  // max |f(lambda) - a_lambda| over direct atoms
  double bump_radius = 0;
};

// Lagrange-style interpolant through the direct atoms: smooths the spectrum
// with a bump of support radius eta normalized to peak 1.  Requires
// eta < half the minimal gap of the direct support.
InterpolantResult interpolant(const QuasicrystalPair& pair, double eta,
                              double interp_tol = 1e-6, bool enforce_tol = true);

// Mollified ball average R^{-d} sum psi(|pos|/R) w e^{-2 pi i <pos,lambda>};
// estimator of the spectral point mass at lambda.  Needs (1+eps) R within the
// window.
Complex bohr_mass(const AtomicMeasure& mu, std::span<const double> lambda, double R,
                  double mollifier_eps = 0.5);

// max over sliding unit balls (centers at atoms and pair midpoints) of the
// total |weight| inside
double translation_bound(const AtomicMeasure& mu);

// least-squares slope of log |mu|(B(r)) against log r
double growth_exponent(const AtomicMeasure& mu, const std::vector<double>& radii);

// sum_n c_n * (spectrum translated by tau_n), the spectral side of
// multiplication by g = sum c_n e^{2 pi i <x, tau_n>}
AtomicMeasure modulate(const AtomicMeasure& spectrum, const ExponentialSum& g);

// atoms (gamma_n, c_n) of f_hat; complete at every radius
AtomicMeasure spectrum_measure(const ExponentialSum& f);

}  // namespace qc
