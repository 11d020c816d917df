#include "core/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool lex_less(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

double norm2(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// integer coordinate boxes covering the ball of radius `window` around
// -shift, for the lattice num/den
struct CoordBox {
  std::vector<i64> lo, hi;
};

CoordBox coord_box(const Lattice& lat, const Vec& shift, double window) {
  int d = lat.dim();
  // k = B^{-1}(x - shift), |x| <= window  =>  |k_i| <= ||row_i(B^{-1})|| * window + |row_i(B^{-1}) shift|
  IMat adj = adjugate(lat.num());
  i64 det = det_bareiss(lat.num());
  CoordBox box;
  box.lo.resize(d);
  box.hi.resize(d);
  for (int i = 0; i < d; ++i) {
    double rnorm = 0, roff = 0;
    for (int j = 0; j < d; ++j) {
      double inv = double(adj.at(i, j)) * double(lat.den()) / double(det);
      rnorm += inv * inv;
      roff += inv * shift[j];
    }
    rnorm = std::sqrt(rnorm);
    double c = -roff;
    double r = rnorm * window + 1.0;
    box.lo[i] = i64(std::floor(c - r));
    box.hi[i] = i64(std::ceil(c + r));
    if (double(box.hi[i]) - double(box.lo[i]) > 4e6) fail(Err::capacity, "window too large for comb enumeration");
  }
  return box;
}

}  // namespace

AtomicMeasure AtomicMeasure::make(int dim, double window, std::vector<MeasureAtom> atoms,
                                  double pos_tol) {
  if (dim < 1) fail(Err::input, "measure dim must be >= 1");
  if (!(window >= 0)) fail(Err::input, "measure window must be nonnegative");
  for (const auto& a : atoms) {
    if (int(a.pos.size()) != dim) fail(Err::dimension, "atom of wrong dimension");
    for (double v : a.pos)
      if (!std::isfinite(v)) fail(Err::input, "non-finite atom position");
    if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag()))
      fail(Err::input, "non-finite atom weight");
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const MeasureAtom& a, const MeasureAtom& b) { return lex_less(a.pos, b.pos); });
  std::vector<MeasureAtom> merged;
  merged.reserve(atoms.size());
  for (auto& a : atoms) {
    bool hit = false;
    // scan back while the leading coordinate is within tolerance
    for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
      if (a.pos[0] - it->pos[0] > pos_tol) break;
      bool close = true;
      for (int i = 0; i < dim; ++i)
        if (std::abs(a.pos[i] - it->pos[i]) > pos_tol) { close = false; break; }
      if (close) {
        it->weight += a.weight;
        hit = true;
        break;
      }
    }
    if (!hit) merged.push_back(std::move(a));
  }
  std::erase_if(merged, [](const MeasureAtom& a) { return a.weight == Complex(0, 0); });
  AtomicMeasure m;
  m.dim_ = dim;
  m.window_ = window;
  m.pos_tol_ = pos_tol;
  m.atoms_ = std::move(merged);
  return m;
}

double AtomicMeasure::variation(double r) const {
  double s = 0;
  for (const auto& a : atoms_)
    if (norm2(a.pos) <= r) s += std::abs(a.weight);
  return s;
}

std::vector<Vec> AtomicMeasure::positions() const {
  std::vector<Vec> p;
  p.reserve(atoms_.size());
  for (const auto& a : atoms_) p.push_back(a.pos);
  return p;
}

AtomicMeasure lattice_comb(const Lattice& lat, const std::vector<Vec>& shifts,
                           const std::vector<Complex>& weights, double window) {
  if (!lat.full_rank()) fail(Err::input, "comb needs a full-rank lattice");
  if (shifts.size() != weights.size()) fail(Err::input, "shifts/weights length mismatch");
  int d = lat.dim();
  std::vector<MeasureAtom> atoms;
  for (size_t s = 0; s < shifts.size(); ++s) {
    if (int(shifts[s].size()) != d) fail(Err::dimension, "shift of wrong dimension");
    CoordBox box = coord_box(lat, shifts[s], window);
    std::vector<i64> k = box.lo;
    for (;;) {
      Vec pos(d, 0.0);
      for (int i = 0; i < d; ++i) {
        double x = shifts[s][i];
        for (int j = 0; j < d; ++j) x += double(lat.num().at(i, j)) * double(k[j]) / double(lat.den());
        pos[i] = x;
      }
      if (norm2(pos) <= window) atoms.push_back({pos, weights[s]});
      int p = 0;
      while (p < d) {
        if (++k[p] <= box.hi[p]) break;
        k[p] = box.lo[p];
        ++p;
      }
      if (p == d) break;
    }
  }
  return AtomicMeasure::make(d, window, std::move(atoms));
}

AtomicMeasure poisson_transform(const Lattice& lat, const std::vector<Vec>& shifts,
                                const std::vector<Complex>& weights,
                                double spectrum_window) {
  if (!lat.full_rank()) fail(Err::input, "poisson transform needs a full-rank lattice");
  if (shifts.size() != weights.size()) fail(Err::input, "shifts/weights length mismatch");
  int d = lat.dim();
  Lattice dual = lat.dual();
  double covol = lat.covolume().to_double();
  CoordBox box = coord_box(dual, Vec(d, 0.0), spectrum_window);
  std::vector<MeasureAtom> atoms;
  std::vector<i64> k = box.lo;
  for (;;) {
    Vec gamma(d, 0.0);
    for (int i = 0; i < d; ++i) {
      double x = 0;
      for (int j = 0; j < d; ++j) x += double(dual.num().at(i, j)) * double(k[j]) / double(dual.den());
      gamma[i] = x;
    }
    if (norm2(gamma) <= spectrum_window) {
      Complex w(0, 0);
      for (size_t s = 0; s < shifts.size(); ++s) {
        double phase = 0;
        for (int i = 0; i < d; ++i) phase += shifts[s][i] * gamma[i];
        w += weights[s] * std::polar(1.0, -two_pi * phase);
      }
      w /= covol;
      if (std::abs(w) > 1e-14) atoms.push_back({gamma, w});
    }
    int p = 0;
    while (p < d) {
      if (++k[p] <= box.hi[p]) break;
      k[p] = box.lo[p];
      ++p;
    }
    if (p == d) break;
  }
  return AtomicMeasure::make(d, spectrum_window, std::move(atoms));
}

ExponentialSum smooth_with(const AtomicMeasure& spectrum,
                           const std::function<double(double)>& psi_hat,
                           double coeff_floor, double* dropped_mass) {
  std::vector<SumTerm> terms;
  double dropped = 0;
  for (const auto& a : spectrum.atoms()) {
    Complex c = a.weight * psi_hat(norm2(a.pos));
    if (std::abs(c) < coeff_floor) {
      dropped += std::abs(c);
      continue;
    }
    terms.push_back({a.pos, c});
  }
  if (dropped_mass) *dropped_mass = dropped;
  return ExponentialSum::make(spectrum.dim(), std::move(terms));
}

QuasicrystalPair QuasicrystalPair::make(AtomicMeasure direct, AtomicMeasure spectrum) {
  if (direct.dim() != spectrum.dim()) fail(Err::dimension, "pair dimensions differ");
  QuasicrystalPair p;
  p.direct = std::move(direct);
  p.spectrum = std::move(spectrum);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : p.direct.atoms()) m = std::min(m, std::abs(a.weight));
  p.min_modulus = p.direct.empty() ? 0.0 : m;
  p.large_flag = p.min_modulus > 0;
  return p;
}

namespace {

double min_gap_of(const std::vector<MeasureAtom>& atoms) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j) {
      double s = 0;
      for (size_t k = 0; k < atoms[i].pos.size(); ++k) {
        double dd = atoms[i].pos[k] - atoms[j].pos[k];
        s += dd * dd;
      }
      best = std::min(best, std::sqrt(s));
    }
  return best;
}

}  // namespace

InterpolantResult interpolant(const QuasicrystalPair& pair, double eta,
                              double interp_tol, bool enforce_tol) {
  if (pair.direct.size() >= 2) {
    double gap = min_gap_of(pair.direct.atoms());
    if (!(eta < 0.5 * gap))
      fail(Err::input, "interpolant: eta must be below half the minimal gap");
  }
  int d = pair.direct.dim();
  BumpFunction bump(eta);
  // normalize so that psi(0) = 1: psi = bump/bump(0), psi_hat = bump_hat/bump(0)
  double peak = bump.value(0.0);
  InterpolantResult out;
  out.bump_radius = eta;
  out.f = smooth_with(pair.spectrum,
                      [&](double rho) { return bump.fourier(d, rho) / peak; });
  double dev = 0;
  for (const auto& a : pair.direct.atoms()) {
    Complex v = out.f.evaluate(std::span<const double>(a.pos.data(), a.pos.size()));
    dev = std::max(dev, std::abs(v - a.weight));
  }
  out.max_deviation = dev;
  if (enforce_tol && dev > interp_tol)
    fail(Err::precision, "interpolant deviation " + std::to_string(dev) +
                             " exceeds tolerance (spectrum window too small)");
  return out;
}

Complex bohr_mass(const AtomicMeasure& mu, std::span<const double> lambda, double R,
                  double mollifier_eps) {
  if (int(lambda.size()) != mu.dim()) fail(Err::dimension, "bohr_mass: wrong dimension");
  if (!(R > 0)) fail(Err::input, "bohr_mass: R must be positive");
  if ((1.0 + mollifier_eps) * R > mu.window() + 1e-9)
    fail(Err::window, "bohr_mass: window must cover (1+eps)R");
  PlateauMollifier psi(mu.dim(), mollifier_eps);
  Complex acc(0, 0);
  for (const auto& a : mu.atoms()) {
    double r = 0;
    for (double x : a.pos) r += x * x;
    r = std::sqrt(r);
    double w = psi.value(r / R);
    if (w == 0) continue;
    double phase = 0;
    for (int i = 0; i < mu.dim(); ++i) phase += a.pos[i] * lambda[i];
    acc += a.weight * w * std::polar(1.0, -two_pi * phase);
  }
  return acc / std::pow(R, mu.dim());
}

double translation_bound(const AtomicMeasure& mu) {
  const auto& atoms = mu.atoms();
  std::vector<Vec> centers;
  for (const auto& a : atoms) centers.push_back(a.pos);
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = i + 1; j < atoms.size(); ++j) {
      double s = 0;
      for (size_t k = 0; k < atoms[i].pos.size(); ++k) {
        double dd = atoms[i].pos[k] - atoms[j].pos[k];
        s += dd * dd;
      }
      if (s < 4.0) {
        Vec mid(atoms[i].pos.size());
        for (size_t k = 0; k < mid.size(); ++k) mid[k] = 0.5 * (atoms[i].pos[k] + atoms[j].pos[k]);
        centers.push_back(std::move(mid));
      }
    }
  double best = 0;
  for (const auto& c : centers) {
    if (norm2(c) > mu.window() - 1.0) continue;  // keep the ball inside the window
    double s = 0;
    for (const auto& a : atoms) {
      double r = 0;
      for (size_t k = 0; k < c.size(); ++k) {
        double dd = a.pos[k] - c[k];
        r += dd * dd;
      }
      if (r < 1.0 - 1e-12) s += std::abs(a.weight);
    }
    best = std::max(best, s);
  }
  return best;
}

double growth_exponent(const AtomicMeasure& mu, const std::vector<double>& radii) {
  if (radii.size() < 2) fail(Err::input, "growth_exponent needs at least two radii");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double r : radii) {
    if (r > mu.window() + 1e-9) fail(Err::window, "growth_exponent: radius exceeds window");
    double v = mu.variation(r);
    if (v <= 0) continue;
    double x = std::log(r), y = std::log(v);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) fail(Err::input, "growth_exponent: too few nonempty radii");
  double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

AtomicMeasure spectrum_measure(const ExponentialSum& f) {
  std::vector<MeasureAtom> atoms;
  for (const auto& t : f.terms()) atoms.push_back({t.freq, t.coeff});
  return AtomicMeasure::make(f.dim(), std::numeric_limits<double>::infinity(),
                             std::move(atoms));
}

AtomicMeasure modulate(const AtomicMeasure& spectrum, const ExponentialSum& g) {
  if (spectrum.dim() != g.dim()) fail(Err::dimension, "modulate: dimension mismatch");
  double reach = 0;
  for (const auto& t : g.terms()) reach = std::max(reach, norm2(t.freq));
  double window = std::max(0.0, spectrum.window() - reach);
  std::vector<MeasureAtom> atoms;
  for (const auto& t : g.terms())
    for (const auto& a : spectrum.atoms()) {
      Vec pos(spectrum.dim());
      for (int i = 0; i < spectrum.dim(); ++i) pos[i] = a.pos[i] + t.freq[i];
      atoms.push_back({std::move(pos), t.coeff * a.weight});
    }
  return AtomicMeasure::make(spectrum.dim(), window, std::move(atoms), spectrum.pos_tol());
}

}  // namespace qc
