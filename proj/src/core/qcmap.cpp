#include "core/qcmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qc {

namespace {

double min_gap_positions(const AtomicMeasure& mu) {
  const auto& atoms = mu.atoms();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j) {
      double s = 0;
      for (size_t k = 0; k < atoms[i].pos.size(); ++k) {
        double d = atoms[i].pos[k] - atoms[j].pos[k];
        s += d * d;
      }
      best = std::min(best, std::sqrt(s));
    }
  return best;
}

}  // namespace

QuasicrystalMapResult quasicrystal_map(const QuasicrystalPair& pair, const HolomorphicFn& h,
                                       double guard, double epsilon,
                                       const QuasicrystalMapOptions& opts) {
  if (pair.direct.size() < 2) fail(Err::input, "quasicrystal_map: direct window too small");
  if (!(guard > 0)) fail(Err::input, "quasicrystal_map: guard must be positive");

  double gap = min_gap_positions(pair.direct);
  double eta = opts.interp_eta_ratio * 0.5 * gap;
  InterpolantResult interp = interpolant(pair, eta, opts.interp_tol, true);

  // K = closure of the weight values, given here by the window
  std::vector<Complex> values;
  for (const auto& a : pair.direct.atoms()) values.push_back(a.weight);
  CompactRegion k(std::move(values), guard);
  if (h.name == "inv" && !(k.min_abs() > guard))
    fail(Err::domain, "quasicrystal_map: 1/z is not holomorphic on the guard neighborhood");

  // the W-norm budget of the composition is advisory here: the operative
  // guarantees are the measured deviations at the atoms below
  ComposeOptions copts = opts.compose;
  copts.enforce_budget = false;
  copts.max_cells = std::min(copts.max_cells, size_t(1) << 18);
  ComposeResult comp = compose(interp.f, h, k, epsilon, copts);

  QuasicrystalMapResult out;
  out.g = comp.g;
  out.compose_report = comp.report;
  out.interp_deviation = interp.max_deviation;

  double gdev = 0;
  std::vector<MeasureAtom> direct_atoms;
  for (const auto& a : pair.direct.atoms()) {
    Complex ha = h.eval(a.weight);
    if (!std::isfinite(ha.real()) || !std::isfinite(ha.imag()))
      fail(Err::domain, "quasicrystal_map: h not finite at a weight value");
    Complex gl = out.g.evaluate(std::span<const double>(a.pos.data(), a.pos.size()));
    gdev = std::max(gdev, std::abs(gl - ha));
    direct_atoms.push_back({a.pos, a.weight * ha});
  }
  out.g_deviation = gdev;
  if (gdev > opts.g_tol)
    fail(Err::precision,
         "quasicrystal_map: g deviates from h at the atoms by " + std::to_string(gdev));

  AtomicMeasure nu_direct =
      AtomicMeasure::make(pair.direct.dim(), pair.direct.window(), std::move(direct_atoms),
                          pair.direct.pos_tol());
  AtomicMeasure nu_spectrum = modulate(pair.spectrum, out.g);
  out.nu = QuasicrystalPair::make(std::move(nu_direct), std::move(nu_spectrum));

  // cross-check: the Bohr mean of the direct side should reproduce the
  // modulated spectral weights.  Only interior atoms qualify: near the
  // spectrum window edge the modulation sums are incomplete by construction.
  double eps_moll = 0.5;
  double r = 0.6 * out.nu.direct.window() / (1 + eps_moll);
  double interior = 0.4 * pair.spectrum.window();
  if (r > 4.0) {
    std::vector<const MeasureAtom*> strongest;
    for (const auto& a : out.nu.spectrum.atoms()) {
      double rr = 0;
      for (double x : a.pos) rr += x * x;
      if (std::sqrt(rr) <= interior) strongest.push_back(&a);
    }
    std::sort(strongest.begin(), strongest.end(), [](const MeasureAtom* x, const MeasureAtom* y) {
      return std::abs(x->weight) > std::abs(y->weight);
    });
    double dev = 0;
    for (size_t i = 0; i < strongest.size() && i < 6; ++i) {
      const auto& a = *strongest[i];
      Complex est = bohr_mass(out.nu.direct,
                              std::span<const double>(a.pos.data(), a.pos.size()), r, eps_moll);
      dev = std::max(dev, std::abs(est - a.weight));
    }
    out.crosscheck_deviation = dev;
    if (dev > opts.crosscheck_tol)
      fail(Err::precision, "quasicrystal_map: Bohr cross-check deviates by " +
                               std::to_string(dev));
  }
  return out;
}

}  // namespace qc
