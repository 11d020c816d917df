// Local composition engine: given f in W, a compact K sampled as a point
// cloud with a guard radius, and h holomorphic near K, build g in W with
// g(x) = h(f(x)) wherever f(x) lies in K, carrying an explicit error budget.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "core/exp_sum.hpp"
#include "core/rational.hpp"

namespace qc {

class CompactRegion {
 public:
  // `guard` is a radius rho such that h stays holomorphic and bounded on
  // U = { z : dist(z, K) < guard }.
  CompactRegion(std::vector<Complex> points, double guard);

  double guard() const { return guard_; }
  double eta() const { return guard_ / 4.0; }
  const std::vector<Complex>& points() const { return points_; }
  double dist(Complex z) const;
  double min_abs() const;  // min |k| over the cloud

 private:
  std::vector<Complex> points_;  // deduplicated to guard/32 resolution
  double guard_;
};

struct HolomorphicFn {
  std::function<Complex(Complex)> eval;
  double bound = 0;  // sup |h| on U; 0 means "estimate by sampling"
  std::string name;
};

HolomorphicFn h_inverse();
HolomorphicFn h_exp();
HolomorphicFn h_poly(std::vector<Complex> coeffs);  // c0 + c1 z + ...
// "inv" | "exp" | "poly:c0,c1,..."
HolomorphicFn parse_h(const std::string& spec);

// H(z) = integral of h(z - zeta) phi(|zeta|) dm2(zeta) over the eta-disk,
// with h tapered smoothly to zero at the guard boundary of U.  Coincides
// with h on dist(z,K) <= 2.75 eta (mean-value property), vanishes for
// dist(z,K) >= 5 eta.
class MollifiedFn {
 public:
  MollifiedFn(HolomorphicFn h, CompactRegion k, int radial_nodes = 16,
              int angular_nodes = 64);
  Complex operator()(Complex z) const;
  double eta() const;
  double bound() const { return bound_; }
  const CompactRegion& region() const { return k_; }

 private:
  HolomorphicFn h_;
  CompactRegion k_;
  int nr_, na_;
  double bump_norm_;  // makes the radial bump integrate to 1 on the disk
  double bound_;
};

// Integer-combination structure of a finite frequency set: a short list of
// Z-independent generators together with integer coordinates for each input
// frequency.  Rationally related frequencies collapse onto few generators;
// frequencies without a detected relation become their own generator.
struct FrequencyBasis {
  std::vector<Vec> generators;
  std::vector<std::vector<i64>> coords;  // coords[i] has one entry per generator
};
FrequencyBasis frequency_basis(const std::vector<Vec>& freqs, double tol,
                               i64 den_max = 64);

// Multidimensional Fourier coefficients of a smooth periodic function on
// [0,1]^rank, tabulated at tau_grid uniform tau nodes.
struct TorusSeries {
  int rank = 0;
  int grid = 0;      // per-axis size, power of two
  int tau_grid = 0;
  // coeffs[t][flat index]; index n_j in [-grid/2, grid/2) maps to
  // (n_j + grid) % grid along each axis, row-major
  std::vector<std::vector<Complex>> coeffs;
  double decay_constant = 0;  // max |c_n| * prod max(1, n_j^2)

  Complex coeff(int tau_index, const std::vector<int>& n) const;
};

TorusSeries torus_series(
    const std::function<Complex(std::span<const double> theta, double tau)>& fn,
    int rank, int grid, int tau_grid, int rank_max = 6);

struct ResolventSeries {
  ExponentialSum sum;      // sum_{k<=k_geo} r^k / (2 eta e^{2 pi i tau})^{k+1}
  double tail_bound = 0;   // W-norm of the discarded geometric tail
};
ResolventSeries resolvent_series(const ExponentialSum& r, double eta, int k_geo,
                                 double tau);

struct ComposeOptions {
  int torus_grid = 64;    // starting grid; doubled until the estimate converges
  int tau_grid = 64;
  int rank_max = 6;
  int max_k_geo = 400;
  double snap_tol = 1e-9;
  bool alias_check = true;          // run the grid-doubling refinement
  size_t max_cells = size_t(1) << 22;  // cap on grid^rank * tau_grid
  bool enforce_budget = true;       // throw when the certified bound misses eps
};

struct ComposeReport {
  double epsilon = 0;
  double eta = 0;
  double tail = 0;           // ||f - S||_W
  int terms_kept = 0;        // N
  int rank = 0;              // torus dimension actually used
  int torus_grid = 0;
  int tau_grid = 0;
  int k_geo = 0;
  double geo_tail = 0;       // resolvent tail in W-norm, scaled by the H part
  double alias_estimate = 0; // ||g - g_half_grid||_W
  double floor_dropped = 0;  // coefficient-floor mass charged to the budget
  double total_bound = 0;    // sum of the three budget parts
  double torus_norm = 0;     // max_tau W-norm of the torus factor
  double decay_constant = 0;
};

struct ComposeResult {
  ExponentialSum g;
  ComposeReport report;
};

ComposeResult compose(const ExponentialSum& f, const HolomorphicFn& h,
                      const CompactRegion& k, double epsilon,
                      const ComposeOptions& opts = {});

// compose with h(z) = 1/z; requires 0 outside U, i.e. min|K| > guard
ComposeResult invert(const ExponentialSum& f, const CompactRegion& k, double epsilon,
                     const ComposeOptions& opts = {});

// K sampled from values of f on a deterministic fundamental grid
CompactRegion sample_region(const ExponentialSum& f, double guard, int ksamples);

// max |g(x) - h(f(x))| over deterministic samples with f(x) close to K
double composition_residual(const ExponentialSum& g, const ExponentialSum& f,
                            const HolomorphicFn& h, const CompactRegion& k,
                            int nsamples = 200);

}  // namespace qc
