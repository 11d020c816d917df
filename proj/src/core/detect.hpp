// Diagnostics and structure detection for finite windows of point sets:
// gap statistics, covering radius, recovery of "finite union of translates
// of one full-rank lattice" structure, and the almost-period scanner.
#pragma once

#include <string>
#include <vector>

#include "core/lattice.hpp"
#include "core/measure.hpp"

namespace qc {

double min_gap(const std::vector<Vec>& points);

// Minimal distance between distinct tol-clusters of the difference set
// within the window; positive values certify discreteness at window scale.
double difference_gap(const std::vector<Vec>& points, double window,
                      double pos_tol = 1e-9);

// covering radius estimate over the bounding box of the points
double relative_density(const std::vector<Vec>& points);

struct DetectOptions {
  i64 den_max = 64;       // rational snap cap for period vectors
  size_t max_points = 20000;
  double density_slack = 0.6;  // observed per-coset count must reach this share
};

struct DetectResult {
  bool ok = false;
  Lattice lattice;
  std::vector<Vec> translates;              // one representative per coset
  std::vector<std::vector<int>> partition;  // point indices per translate
  std::string reason;                       // set on failure
};

// Periods of the window point set generate the candidate lattice; residues
// give the translates; a full verification pass (membership + per-coset
// density against exact lattice point counts) is the actual guarantee.
DetectResult detect_lattice(const std::vector<Vec>& points, double window, double tol,
                            const DetectOptions& opts = {});

struct AlmostPeriodResult {
  std::vector<Vec> periods;   // accepted shifts, canonical order
  double density_radius = 0;  // largest axis gap between accepted periods
};

// tau is accepted when shifting the interior atoms by tau lands on atoms
// within rho with weights within epsilon.
AlmostPeriodResult almost_periods(const AtomicMeasure& mu, double epsilon, double rho,
                                  double window);

}  // namespace qc
