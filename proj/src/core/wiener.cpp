#include "core/wiener.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "core/bump.hpp"
#include "core/int_matrix.hpp"
#include "core/parallel.hpp"

namespace qc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

int pow2_ceil(int x) {
  int p = 1;
  while (p < x) p <<= 1;
  return p;
}

}  // namespace

CompactRegion::CompactRegion(std::vector<Complex> points, double guard) : guard_(guard) {
  if (points.empty()) fail(Err::input, "compact region needs at least one sample");
  if (!(guard > 0)) fail(Err::input, "guard radius must be positive");
  for (Complex p : points)
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      fail(Err::input, "non-finite region sample");
  // thin the cloud to guard/32 resolution; dist() changes by at most that
  double cell = guard / 32.0;
  std::sort(points.begin(), points.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  for (Complex p : points) {
    bool dup = false;
    for (auto it = points_.rbegin(); it != points_.rend(); ++it) {
      if (p.real() - it->real() > cell) break;
      if (std::abs(p.imag() - it->imag()) <= cell && std::abs(p.real() - it->real()) <= cell) {
        dup = true;
        break;
      }
    }
    if (!dup) points_.push_back(p);
  }
}

double CompactRegion::dist(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  for (Complex p : points_) best = std::min(best, std::abs(z - p));
  return best;
}

double CompactRegion::min_abs() const {
  double best = std::numeric_limits<double>::infinity();
  for (Complex p : points_) best = std::min(best, std::abs(p));
  return best;
}

HolomorphicFn h_inverse() {
  return {[](Complex z) { return 1.0 / z; }, 0.0, "inv"};
}

HolomorphicFn h_exp() {
  return {[](Complex z) { return std::exp(z); }, 0.0, "exp"};
}

HolomorphicFn h_poly(std::vector<Complex> coeffs) {
  return {[c = std::move(coeffs)](Complex z) {
            Complex acc(0, 0);
            for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
            return acc;
          },
          0.0, "poly"};
}

HolomorphicFn parse_h(const std::string& spec) {
  if (spec == "inv") return h_inverse();
  if (spec == "exp") return h_exp();
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<Complex> coeffs;
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        coeffs.push_back(Complex(std::stod(item), 0.0));
      } catch (const std::exception&) {
        fail(Err::parse, "bad polynomial coefficient '" + item + "'");
      }
    }
    if (coeffs.empty()) fail(Err::parse, "poly: needs at least one coefficient");
    return h_poly(std::move(coeffs));
  }
  fail(Err::parse, "unknown function spec '" + spec + "' (want inv|exp|poly:c0,c1,...)");
}

MollifiedFn::MollifiedFn(HolomorphicFn h, CompactRegion k, int radial_nodes, int angular_nodes)
    : h_(std::move(h)), k_(std::move(k)), nr_(radial_nodes), na_(angular_nodes) {
  double eta = k_.eta();
  BumpFunction bump(eta);
  bump_norm_ = 1.0 / bump.mass(2);
  // bound: supplied, or sampled over the cloud and a ring inside U
  if (h_.bound > 0) {
    bound_ = h_.bound;
  } else {
    double m = 0;
    for (Complex p : k_.points()) {
      for (int a = 0; a < 16; ++a) {
        Complex z = p + std::polar(0.95 * k_.guard(), two_pi * a / 16.0);
        Complex v = h_.eval(z);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          fail(Err::domain, "function not finite inside the guard neighborhood");
        m = std::max(m, std::abs(v));
      }
      Complex v = h_.eval(p);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(Err::domain, "function not finite on the region");
      m = std::max(m, std::abs(v));
    }
    bound_ = m;
  }
}

double MollifiedFn::eta() const { return k_.eta(); }

Complex MollifiedFn::operator()(Complex z) const {
  double eta = k_.eta();
  double d = k_.dist(z);
  if (d <= 2.5 * eta) {
    // mean-value property: the bump average of a holomorphic h is h itself
    Complex v = h_.eval(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(Err::domain, "function not finite inside the guard neighborhood");
    return v;
  }
  if (d >= 5.0 * eta) return {0, 0};
  // h tapered to zero at the guard boundary; the taper starts at 3.5 eta, so
  // the average still reproduces h exactly for dist(z, K) <= 2.5 eta and the
  // integrand stays smooth (no hard cutoff jump)
  BumpFunction bump(eta);
  Complex acc(0, 0);
  for (int i = 0; i < nr_; ++i) {
    // midpoint radial nodes; the integrand vanishes smoothly at r = eta
    double r = eta * (i + 0.5) / nr_;
    double w_r = bump.value(r) * r * (eta / nr_);
    Complex ring(0, 0);
    for (int a = 0; a < na_; ++a) {
      Complex w = z - std::polar(r, two_pi * a / na_);
      double dw = k_.dist(w);
      if (dw < k_.guard()) {
        double taper = smooth_step((4.0 * eta - dw) / (0.5 * eta));
        if (taper > 0) {
          Complex v = h_.eval(w);
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            fail(Err::domain, "function not finite inside the guard neighborhood");
          ring += v * taper;
        }
      }
    }
    acc += ring * (w_r * two_pi / na_);
  }
  return acc * bump_norm_;
}

FrequencyBasis frequency_basis(const std::vector<Vec>& freqs, double tol, i64 den_max) {
  FrequencyBasis fb;
  if (freqs.empty()) return fb;
  int d = int(freqs[0].size());

  // Path 1: every coordinate snaps to a small rational -> exact HNF of the
  // scaled integer columns.
  bool all_rational = true;
  std::vector<std::vector<Rat>> snapped(freqs.size());
  i64 q = 1;
  for (size_t i = 0; i < freqs.size() && all_rational; ++i) {
    snapped[i].resize(d);
    for (int j = 0; j < d; ++j) {
      Rat r;
      double scale = std::max(1.0, std::abs(freqs[i][j]));
      if (!snap_rational(freqs[i][j], den_max, tol * scale, &r)) {
        all_rational = false;
        break;
      }
      snapped[i][j] = r;
      q = lcm64(q, r.den);
      if (q > 1000000) { all_rational = false; break; }
    }
  }
  if (all_rational) {
    IMat m(d, int(freqs.size()));
    for (size_t i = 0; i < freqs.size(); ++i)
      for (int j = 0; j < d; ++j)
        m.at(j, int(i)) = mul64(snapped[i][j].num, q / snapped[i][j].den);
    HnfResult f = hnf(m);
    fb.generators.resize(f.rank, Vec(d, 0.0));
    for (int g = 0; g < f.rank; ++g)
      for (int j = 0; j < d; ++j) fb.generators[g][j] = double(f.h.at(j, g)) / double(q);
    for (size_t i = 0; i < freqs.size(); ++i) {
      IntSolve sol = solve_integer(f.h, m.col(int(i)));
      if (!sol.solvable) fail(Err::internal, "frequency basis: unsolvable coordinates");
      fb.coords.push_back(std::vector<i64>(sol.particular.begin(),
                                           sol.particular.begin() + f.rank));
    }
    return fb;
  }

  // Path 2: greedy fallback for irrational frequencies.  A new frequency is
  // matched against small integer combinations of the current generators;
  // otherwise it becomes a generator itself.  Correctness does not depend on
  // minimality of the generator count.
  const int search_bound = 16;
  for (const auto& f : freqs) {
    int r = int(fb.generators.size());
    bool matched = false;
    if (r >= 1 && r <= 3) {
      std::vector<i64> m(r, -search_bound);
      for (;;) {
        double worst = 0;
        for (int j = 0; j < d; ++j) {
          double res = f[j];
          for (int g = 0; g < r; ++g) res -= double(m[g]) * fb.generators[g][j];
          worst = std::max(worst, std::abs(res));
        }
        double slack = 1.0;
        for (int g = 0; g < r; ++g) slack += std::abs(double(m[g]));
        if (worst <= tol * slack) {
          fb.coords.push_back(m);
          matched = true;
          break;
        }
        int pos = 0;
        while (pos < r) {
          if (++m[pos] <= search_bound) break;
          m[pos] = -search_bound;
          ++pos;
        }
        if (pos == r) break;
      }
    }
    if (!matched) {
      fb.generators.push_back(f);
      for (auto& c : fb.coords) c.push_back(0);
      std::vector<i64> own(fb.generators.size(), 0);
      own.back() = 1;
      fb.coords.push_back(std::move(own));
    }
  }
  return fb;
}

Complex TorusSeries::coeff(int tau_index, const std::vector<int>& n) const {
  size_t flat = 0;
  for (int a = 0; a < rank; ++a) {
    int idx = n[a] < 0 ? n[a] + grid : n[a];
    if (idx < 0 || idx >= grid) return {0, 0};
    flat = flat * grid + size_t(idx);
  }
  return coeffs[tau_index][flat];
}

TorusSeries torus_series(
    const std::function<Complex(std::span<const double> theta, double tau)>& fn,
    int rank, int grid, int tau_grid, int rank_max) {
  if (rank < 0) fail(Err::input, "torus rank must be nonnegative");
  if (rank > rank_max) fail(Err::capacity, "torus rank exceeds the configured maximum");
  if (!is_pow2(grid)) fail(Err::input, "torus grid must be a power of two");
  if (tau_grid < 1) fail(Err::input, "tau grid must be positive");
  TorusSeries ts;
  ts.rank = rank;
  ts.grid = grid;
  ts.tau_grid = tau_grid;
  if (rank == 0) {
    ts.coeffs.resize(tau_grid);
    double c = 0;
    for (int l = 0; l < tau_grid; ++l) {
      Complex v = fn({}, double(l) / tau_grid);
      ts.coeffs[l] = {v};
      c = std::max(c, std::abs(v));
    }
    ts.decay_constant = c;
    return ts;
  }
  size_t total = 1;
  for (int a = 0; a < rank; ++a) {
    total *= size_t(grid);
    if (total > (size_t(1) << 24)) fail(Err::capacity, "torus grid too large");
  }
  std::vector<Complex> buf(total);
  std::vector<int> dims(rank, grid);
  fftw_plan plan = fftw_plan_dft(rank, dims.data(),
                                 reinterpret_cast<fftw_complex*>(buf.data()),
                                 reinterpret_cast<fftw_complex*>(buf.data()),
                                 FFTW_FORWARD, FFTW_ESTIMATE);
  if (!plan) fail(Err::internal, "fftw plan creation failed");
  ts.coeffs.resize(tau_grid);
  double cfit = 0;
  for (int l = 0; l < tau_grid; ++l) {
    double tau = double(l) / tau_grid;
    parallel_for(total, [&](size_t idx) {
      double theta[8];
      size_t rem = idx;
      for (int a = rank - 1; a >= 0; --a) {
        theta[a] = double(rem % grid) / grid;
        rem /= grid;
      }
      buf[idx] = fn(std::span<const double>(theta, size_t(rank)), tau);
    });
    fftw_execute(plan);
    ts.coeffs[l].resize(total);
    for (size_t idx = 0; idx < total; ++idx) {
      Complex c = buf[idx] / double(total);
      ts.coeffs[l][idx] = c;
      double weight = 1.0;
      size_t rem = idx;
      for (int a = rank - 1; a >= 0; --a) {
        int ia = int(rem % grid);
        rem /= grid;
        int n = ia < grid / 2 ? ia : ia - grid;
        weight *= std::max(1.0, double(n) * double(n));
      }
      cfit = std::max(cfit, std::abs(c) * weight);
    }
  }
  fftw_destroy_plan(plan);
  ts.decay_constant = cfit;
  return ts;
}

ResolventSeries resolvent_series(const ExponentialSum& r, double eta, int k_geo, double tau) {
  if (!(eta > 0)) fail(Err::input, "resolvent: eta must be positive");
  if (k_geo < 0) fail(Err::input, "resolvent: k_geo must be nonnegative");
  double rho = r.norm_w();
  if (rho >= eta)
    fail(Err::divergence, "resolvent: ||r||_W must stay below eta");
  double e2 = 2.0 * eta;
  std::vector<SumTerm> raw;
  ExponentialSum power = ExponentialSum::constant(r.dim(), Complex(1, 0), r.freq_tol());
  for (int k = 0; k <= k_geo; ++k) {
    Complex c = std::polar(std::pow(e2, -double(k + 1)), -two_pi * (k + 1) * tau);
    for (const auto& t : power.terms()) raw.push_back({t.freq, t.coeff * c});
    if (k < k_geo) power = multiply(power, r);
  }
  ResolventSeries out;
  out.sum = ExponentialSum::make(r.dim(), std::move(raw), r.freq_tol());
  out.tail_bound = std::pow(rho / e2, double(k_geo + 1)) / (e2 - rho);
  return out;
}

namespace {

Vec torus_index_frequency(size_t idx, int rank, int grid, int dim,
                          const std::vector<Vec>& gens) {
  Vec freq(dim, 0.0);
  size_t rem = idx;
  for (int a = rank - 1; a >= 0; --a) {
    int ia = int(rem % grid);
    rem /= grid;
    int n = ia < grid / 2 ? ia : ia - grid;
    if (n != 0)
      for (int j = 0; j < dim; ++j) freq[j] += double(n) * gens[a][j];
  }
  return freq;
}

}  // namespace

ComposeResult compose(const ExponentialSum& f, const HolomorphicFn& h,
                      const CompactRegion& k, double epsilon, const ComposeOptions& opts) {
  if (!(epsilon > 0)) fail(Err::input, "compose: epsilon must be positive");
  int dim = f.dim();
  double eta = k.eta();
  MollifiedFn H(h, k);

  // tail < 0.45 eta keeps the Cauchy circle B(S(x), 2 eta) inside the region
  // where H coincides with h whenever dist(f(x), K) < 0.5 eta - tail
  Truncation tr = truncate(f, 0.45 * eta);
  const ExponentialSum& s = tr.head;
  double tail = tr.tail;

  Vec zero(dim, 0.0);
  Complex c0 = s.fourier_coefficient(zero);
  std::vector<Vec> active_freqs;
  std::vector<Complex> active_coeffs;
  for (const auto& t : s.terms()) {
    bool is_zero = true;
    for (double v : t.freq)
      if (std::abs(v) > s.freq_tol()) { is_zero = false; break; }
    if (is_zero) continue;
    active_freqs.push_back(t.freq);
    active_coeffs.push_back(t.coeff);
  }

  FrequencyBasis fb = frequency_basis(active_freqs, std::max(opts.snap_tol, s.freq_tol()));
  int rank = int(fb.generators.size());
  if (rank > opts.rank_max)
    fail(Err::capacity, "compose: torus rank " + std::to_string(rank) +
                            " exceeds the maximum " + std::to_string(opts.rank_max));

  int grid = opts.torus_grid;
  if (!is_pow2(grid)) fail(Err::input, "compose: torus grid must be a power of two");
  if (rank == 1) {
    i64 maxmult = 0;
    for (const auto& c : fb.coords) maxmult = std::max<i64>(maxmult, std::llabs(c[0]));
    grid = std::max(grid, std::min(1024, pow2_ceil(int(8 * maxmult))));
  }
  int tau_grid = opts.tau_grid;

  auto integrand = [&](std::span<const double> theta, double tau) -> Complex {
    Complex z = c0 + std::polar(2.0 * eta, two_pi * tau);
    for (size_t t = 0; t < active_coeffs.size(); ++t) {
      double phase = 0;
      for (int a = 0; a < rank; ++a) phase += double(fb.coords[t][a]) * theta[a];
      z += active_coeffs[t] * std::polar(1.0, two_pi * phase);
    }
    return H(z);
  };

  TorusSeries ts_main = torus_series(integrand, rank, grid, tau_grid, opts.rank_max);

  double torus_norm = 0;
  for (const auto& tab : ts_main.coeffs) {
    double s_norm = 0;
    for (Complex c : tab) s_norm += std::abs(c);
    torus_norm = std::max(torus_norm, s_norm);
  }

  // geometric tail: 2 eta * C_H * (rho / 2 eta)^{K+1} / (2 eta - rho) <= eps/3
  ExponentialSum r_sum = sub(f, s);
  double rho = r_sum.norm_w();
  double e2 = 2.0 * eta;
  if (rho >= eta) fail(Err::internal, "compose: truncation tail not below eta");
  int k_geo = 0;
  double geo_tail = 0;
  if (rho > 0) {
    double q = rho / e2;
    for (k_geo = 0; k_geo <= opts.max_k_geo; ++k_geo) {
      geo_tail = e2 * torus_norm * std::pow(q, double(k_geo + 1)) / (e2 - rho);
      if (geo_tail <= epsilon / 3.0) break;
    }
    if (k_geo > opts.max_k_geo)
      fail(Err::precision, "compose: geometric tail cannot meet the budget");
  }

  // powers of the remainder, shared by both grid passes; per-power pruning
  // keeps the term lists short and charges the exact dropped mass (scaled by
  // its resolvent weight and the torus norm) to the coefficient budget
  std::vector<ExponentialSum> powers;
  powers.push_back(ExponentialSum::constant(dim, Complex(1, 0), f.freq_tol()));
  double power_prune_damage = 0;
  for (int p = 1; p <= k_geo; ++p) {
    ExponentialSum next = multiply(powers.back(), r_sum);
    double mass_cap = epsilon * std::pow(e2, double(p)) /
                      (40.0 * double(k_geo + 1) * std::max(1.0, torus_norm));
    double per_term = mass_cap / double(std::max<size_t>(1, next.size()));
    std::vector<SumTerm> kept;
    double dropped_mass = 0;
    for (const auto& t : next.terms()) {
      if (std::abs(t.coeff) < per_term)
        dropped_mass += std::abs(t.coeff);
      else
        kept.push_back(t);
    }
    power_prune_damage +=
        dropped_mass * std::pow(e2, -double(p)) * std::max(1.0, torus_norm);
    powers.push_back(ExponentialSum::make(dim, std::move(kept), f.freq_tol()));
  }
  std::vector<double> power_norms(k_geo + 1);
  for (int p = 0; p <= k_geo; ++p) power_norms[p] = powers[p].norm_w();

  double resolvent_norm_bound = (rho > 0) ? e2 / (e2 - rho) : 1.0;
  double floor_dropped = power_prune_damage;

  // tau average done analytically: with R'(tau) = sum_k r^k (2 eta)^{-k}
  // e^{-2 pi i k tau} (the 2 eta e^{2 pi i tau} numerator already folded in),
  // avg_l a_n(tau_l) R'(tau_l) = sum_k [avg_l a_n(tau_l) e^{-2 pi i k tau_l}]
  // (2 eta)^{-k} r^k
  auto assemble = [&](const TorusSeries& ts, double* drop_out) -> ExponentialSum {
    size_t grid_total = ts.coeffs.empty() ? 0 : ts.coeffs[0].size();
    int mtau = ts.tau_grid;
    double pre_floor = epsilon / (12.0 * resolvent_norm_bound * double(grid_total));
    double skip_unit = epsilon / (24.0 * double(grid_total) * double(k_geo + 1));
    std::vector<SumTerm> pool;
    double dropped = 0;
    for (size_t idx = 0; idx < grid_total; ++idx) {
      double peak = 0;
      for (int l = 0; l < mtau; ++l) peak = std::max(peak, std::abs(ts.coeffs[l][idx]));
      if (peak < pre_floor) {
        dropped += peak * resolvent_norm_bound;
        continue;
      }
      Vec base = torus_index_frequency(idx, ts.rank, ts.grid, dim, fb.generators);
      for (int k = 0; k <= k_geo; ++k) {
        Complex b(0, 0);
        for (int l = 0; l < mtau; ++l)
          b += ts.coeffs[l][idx] * std::polar(1.0, -two_pi * k * l / double(mtau));
        b /= double(mtau);
        double scale = std::pow(e2, -double(k));
        double weight = std::abs(b) * scale * power_norms[k];
        if (weight < skip_unit) {
          dropped += weight;
          continue;
        }
        for (const auto& t : powers[k].terms()) {
          Vec freq(dim);
          for (int j = 0; j < dim; ++j) freq[j] = base[j] + t.freq[j];
          pool.push_back({std::move(freq), b * scale * t.coeff});
        }
      }
    }
    if (drop_out) *drop_out = dropped;
    return ExponentialSum::make(dim, std::move(pool), f.freq_tol());
  };

  // empirical grid-doubling: refine until the step change meets eps/3 or the
  // cell cap stops us; the finest result is the one returned
  double main_drop = 0;
  ExponentialSum g_pre = assemble(ts_main, &main_drop);
  double alias = 0;
  if (opts.alias_check) {
    alias = std::numeric_limits<double>::infinity();
    while (true) {
      // the tau direction has bandwidth ~ k_geo + the mollifier scale and
      // saturates early; the theta grid carries the steep content
      int next_tau = ts_main.tau_grid < 256 ? 2 * ts_main.tau_grid : ts_main.tau_grid;
      if (next_tau <= k_geo) next_tau = 2 * ts_main.tau_grid;
      size_t next_cells = size_t(next_tau);
      for (int a = 0; a < rank; ++a) next_cells *= size_t(2 * ts_main.grid);
      if (next_cells > opts.max_cells) break;
      TorusSeries finer =
          torus_series(integrand, rank, 2 * ts_main.grid, next_tau, opts.rank_max);
      double finer_drop = 0;
      ExponentialSum g_finer = assemble(finer, &finer_drop);
      alias = sub(g_finer, g_pre).norm_w();
      ts_main = std::move(finer);
      g_pre = std::move(g_finer);
      main_drop = finer_drop;
      if (alias <= epsilon / 3.0) break;
    }
    if (!std::isfinite(alias)) alias = 0;  // cap too tight for even one probe
  }
  floor_dropped += main_drop;

  // final coefficient floor
  double floor = epsilon / (3.0 * std::max<size_t>(1, g_pre.size()));
  std::vector<SumTerm> final_terms;
  for (const auto& t : g_pre.terms()) {
    if (std::abs(t.coeff) < floor)
      floor_dropped += std::abs(t.coeff);
    else
      final_terms.push_back(t);
  }
  ExponentialSum g = ExponentialSum::make(dim, std::move(final_terms), f.freq_tol());

  ComposeResult out;
  out.g = std::move(g);
  out.report.epsilon = epsilon;
  out.report.eta = eta;
  out.report.tail = tail;
  out.report.terms_kept = int(s.size());
  out.report.rank = rank;
  out.report.torus_grid = ts_main.grid;
  out.report.tau_grid = ts_main.tau_grid;
  out.report.k_geo = k_geo;
  out.report.geo_tail = geo_tail;
  out.report.alias_estimate = alias;
  out.report.floor_dropped = floor_dropped;
  out.report.total_bound = geo_tail + alias + floor_dropped;
  out.report.torus_norm = torus_norm;
  out.report.decay_constant = ts_main.decay_constant;
  if (opts.enforce_budget && out.report.total_bound > epsilon) {
    std::ostringstream os;
    os << "compose: error budget infeasible at the configured grids (achieved bound "
       << out.report.total_bound << ")";
    fail(Err::precision, os.str());
  }
  return out;
}

ComposeResult invert(const ExponentialSum& f, const CompactRegion& k, double epsilon,
                     const ComposeOptions& opts) {
  if (!(k.min_abs() > k.guard()))
    fail(Err::domain, "invert: the guard neighborhood of K must avoid 0");
  return compose(f, h_inverse(), k, epsilon, opts);
}

namespace {

// deterministic quasi-random direction steps, one per coordinate
Vec sample_point(int dim, int i) {
  static const double alphas[8] = {0.6180339887498949, 0.7548776662466927,
                                   0.5698402909980532, 0.8191725133961645,
                                   0.3247179572447460, 0.2653940932871321,
                                   0.9749081184945093, 0.1403755297707313};
  Vec x(dim);
  for (int j = 0; j < dim; ++j) x[j] = double(i) * alphas[j % 8] * 7.0;
  return x;
}

}  // namespace

CompactRegion sample_region(const ExponentialSum& f, double guard, int ksamples) {
  if (ksamples < 1) fail(Err::input, "sample_region: ksamples must be >= 1");
  std::vector<Complex> values;
  values.reserve(ksamples);
  for (int i = 0; i < ksamples; ++i) {
    Vec x = sample_point(f.dim(), i);
    values.push_back(f.evaluate(std::span<const double>(x.data(), x.size())));
  }
  return CompactRegion(std::move(values), guard);
}

double composition_residual(const ExponentialSum& g, const ExponentialSum& f,
                            const HolomorphicFn& h, const CompactRegion& k, int nsamples) {
  double eta = k.eta();
  double tail = truncate(f, 0.45 * eta).tail;
  double zone = 0.75 * std::max(0.5 * eta - tail, 0.05 * eta);
  double worst = 0;
  int used = 0;
  for (int i = 0; i < 8 * nsamples && used < nsamples; ++i) {
    Vec x = sample_point(f.dim(), i);
    Complex fx = f.evaluate(std::span<const double>(x.data(), x.size()));
    if (k.dist(fx) > zone) continue;
    Complex gx = g.evaluate(std::span<const double>(x.data(), x.size()));
    worst = std::max(worst, std::abs(gx - h.eval(fx)));
    ++used;
  }
  if (used == 0) fail(Err::domain, "no residual sample landed near K");
  return worst;
}

}  // namespace qc
