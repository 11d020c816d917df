// The quasicrystal map: push a pair (mu, mu_hat) through a holomorphic
// function of the atom weights, nu = sum a h(a) delta, with the spectral side
// produced by modulating mu_hat with the composed inverse-interpolant.
#pragma once

#include "core/measure.hpp"
#include "core/wiener.hpp"

namespace qc {

struct QuasicrystalMapOptions {
  double interp_eta_ratio = 0.9;  // bump radius = ratio * (min gap / 2)
  double interp_tol = 1e-6;
  double g_tol = 1e-5;            // measured |g(lambda) - h(a_lambda)| cap
  ComposeOptions compose = {};
  double crosscheck_tol = 0.05;
};

struct QuasicrystalMapResult {
  QuasicrystalPair nu;
  ExponentialSum g;             // g(lambda) = h(a_lambda) certificate
  ComposeReport compose_report;
  double interp_deviation = 0;  // |f(lambda) - a_lambda| worst case
  double g_deviation = 0;       // |g(lambda) - h(a_lambda)| worst case
  double crosscheck_deviation = 0;  // Bohr mass of nu vs spectral weights
};

QuasicrystalMapResult quasicrystal_map(const QuasicrystalPair& pair,
                                       const HolomorphicFn& h, double guard,
                                       double epsilon,
                                       const QuasicrystalMapOptions& opts = {});

}  // namespace qc
