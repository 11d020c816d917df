#include "core/exp_sum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <unordered_map>

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

bool within_tol(const Vec& a, const Vec& b, double tol) {
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// Spatial hash over tol-sized cells; neighbors checked so pairs straddling a
// cell boundary still merge.
struct FreqIndex {
  double cell;
  std::unordered_map<uint64_t, std::vector<int>> buckets;

  explicit FreqIndex(double tol) : cell(tol > 0 ? tol : 1.0) {}

  static uint64_t mix(uint64_t h, int64_t v) {
    h ^= uint64_t(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
  uint64_t key_cells(const std::vector<int64_t>& cells) const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (int64_t v : cells) h = mix(h, v);
    return h;
  }

  // index of an existing representative within tol, else -1; scans the
  // 3^dim neighbor cells so boundary pairs still merge
  int find(const std::vector<SumTerm>& reps, const Vec& f, double tol) const {
    int dim = int(f.size());
    std::vector<int64_t> base(dim), cells(dim);
    for (int i = 0; i < dim; ++i) base[i] = int64_t(std::floor(f[i] / cell));
    int combos = 1;
    for (int i = 0; i < dim && combos <= (1 << 20); ++i) combos *= 3;
    for (int c = 0; c < combos; ++c) {
      int rem = c;
      for (int i = 0; i < dim; ++i) {
        cells[i] = base[i] + (rem % 3) - 1;
        rem /= 3;
      }
      auto it = buckets.find(key_cells(cells));
      if (it == buckets.end()) continue;
      for (int idx : it->second)
        if (within_tol(reps[idx].freq, f, tol)) return idx;
    }
    return -1;
  }
  void insert(const Vec& f, int idx, int dim) {
    std::vector<int64_t> cells(dim);
    for (int i = 0; i < dim; ++i) cells[i] = int64_t(std::floor(f[i] / cell));
    buckets[key_cells(cells)].push_back(idx);
  }
};

}  // namespace

ExponentialSum ExponentialSum::make(int dim, std::vector<SumTerm> raw, double freq_tol) {
  if (dim < 1) fail(Err::input, "exponential sum needs dim >= 1");
  if (freq_tol < 0) fail(Err::input, "freq_tol must be nonnegative");
  for (const auto& t : raw) {
    if (int(t.freq.size()) != dim) fail(Err::dimension, "frequency of wrong dimension");
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
      fail(Err::input, "non-finite coefficient");
    for (double v : t.freq)
      if (!std::isfinite(v)) fail(Err::input, "non-finite frequency");
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const SumTerm& a, const SumTerm& b) { return lex_less(a.freq, b.freq); });

  std::vector<SumTerm> reps;
  reps.reserve(raw.size());
  if (freq_tol == 0) {
    for (auto& t : raw) {
      if (!reps.empty() && reps.back().freq == t.freq)
        reps.back().coeff += t.coeff;
      else
        reps.push_back(std::move(t));
    }
  } else {
    FreqIndex index(freq_tol);
    for (auto& t : raw) {
      int hit = index.find(reps, t.freq, freq_tol);
      if (hit >= 0) {
        reps[hit].coeff += t.coeff;
      } else {
        index.insert(t.freq, int(reps.size()), dim);
        reps.push_back(std::move(t));
      }
    }
  }

  std::vector<SumTerm> kept;
  kept.reserve(reps.size());
  for (auto& t : reps)
    if (t.coeff != Complex(0.0, 0.0)) kept.push_back(std::move(t));
  std::stable_sort(kept.begin(), kept.end(),
                   [](const SumTerm& a, const SumTerm& b) { return lex_less(a.freq, b.freq); });

  ExponentialSum f;
  f.dim_ = dim;
  f.freq_tol_ = freq_tol;
  f.terms_ = std::move(kept);
  return f;
}

ExponentialSum ExponentialSum::constant(int dim, Complex c, double freq_tol) {
  return make(dim, {{Vec(dim, 0.0), c}}, freq_tol);
}

double ExponentialSum::norm_w() const {
  double s = 0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

Complex ExponentialSum::evaluate(std::span<const double> x) const {
  if (int(x.size()) != dim_) fail(Err::dimension, "evaluate: point of wrong dimension");
  Complex acc(0, 0);
  for (const auto& t : terms_) {
    double phase = 0;
    for (int i = 0; i < dim_; ++i) phase += x[i] * t.freq[i];
    acc += t.coeff * std::polar(1.0, two_pi * phase);
  }
  return acc;
}

Complex ExponentialSum::evaluate(double x) const {
  return evaluate(std::span<const double>(&x, 1));
}

Complex ExponentialSum::fourier_coefficient(std::span<const double> gamma) const {
  if (int(gamma.size()) != dim_) fail(Err::dimension, "fourier_coefficient: wrong dimension");
  double tol = std::max(freq_tol_, 0.0);
  for (const auto& t : terms_) {
    bool hit = true;
    for (int i = 0; i < dim_; ++i)
      if (std::abs(t.freq[i] - gamma[i]) > tol) { hit = false; break; }
    if (hit) return t.coeff;
  }
  return {0, 0};
}

Complex ExponentialSum::mean() const {
  Vec zero(dim_, 0.0);
  return fourier_coefficient(zero);
}

ExponentialSum add(const ExponentialSum& f, const ExponentialSum& g) {
  if (f.dim() != g.dim()) fail(Err::dimension, "add: dimension mismatch");
  std::vector<SumTerm> raw = f.terms();
  raw.insert(raw.end(), g.terms().begin(), g.terms().end());
  return ExponentialSum::make(f.dim(), std::move(raw), std::max(f.freq_tol(), g.freq_tol()));
}

ExponentialSum scale(const ExponentialSum& f, Complex a) {
  std::vector<SumTerm> raw = f.terms();
  for (auto& t : raw) t.coeff *= a;
  return ExponentialSum::make(f.dim(), std::move(raw), f.freq_tol());
}

ExponentialSum sub(const ExponentialSum& f, const ExponentialSum& g) {
  return add(f, scale(g, Complex(-1, 0)));
}

ExponentialSum multiply(const ExponentialSum& f, const ExponentialSum& g) {
  if (f.dim() != g.dim()) fail(Err::dimension, "multiply: dimension mismatch");
  std::vector<SumTerm> raw;
  raw.reserve(f.size() * g.size());
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      Vec freq(f.dim());
      for (int i = 0; i < f.dim(); ++i) freq[i] = a.freq[i] + b.freq[i];
      raw.push_back({std::move(freq), a.coeff * b.coeff});
    }
  return ExponentialSum::make(f.dim(), std::move(raw), std::max(f.freq_tol(), g.freq_tol()));
}

Truncation truncate(const ExponentialSum& f, double eta) {
  if (eta <= 0) fail(Err::input, "truncate: eta must be positive");
  const auto& terms = f.terms();
  std::vector<int> order(terms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(terms[a].coeff) > std::abs(terms[b].coeff);
  });
  double total = f.norm_w();
  double kept_mass = 0;
  std::vector<SumTerm> kept;
  size_t k = 0;
  while (total - kept_mass >= eta && k < order.size()) {
    kept.push_back(terms[order[k]]);
    kept_mass += std::abs(terms[order[k]].coeff);
    ++k;
  }
  Truncation out;
  out.head = ExponentialSum::make(f.dim(), std::move(kept), f.freq_tol());
  out.tail = std::max(0.0, total - kept_mass);
  return out;
}

Complex numeric_mean(const ExponentialSum& f, std::span<const double> gamma,
                     double R, int samples) {
  if (R <= 0) fail(Err::input, "numeric_mean: R must be positive");
  if (samples < 1) fail(Err::input, "numeric_mean: samples must be >= 1");
  if (int(gamma.size()) != f.dim()) fail(Err::dimension, "numeric_mean: wrong dimension");
  int d = f.dim();
  // Kronecker sequence on [-R,R]^d, restricted to the ball.  Fixed seed 0.5.
  static const double alphas[8] = {0.6180339887498949, 0.7548776662466927,
                                   0.5698402909980532, 0.8191725133961645,
                                   0.3247179572447460, 0.2653940932871321,
                                   0.9749081184945093, 0.1403755297707313};
  Complex acc(0, 0);
  long used = 0;
  Vec x(d);
  for (int s = 0; s < samples; ++s) {
    double r2 = 0;
    for (int i = 0; i < d; ++i) {
      double u = std::fmod(0.5 + (s + 1) * alphas[i % 8], 1.0);
      x[i] = (2 * u - 1) * R;
      r2 += x[i] * x[i];
    }
    if (r2 > R * R) continue;
    double phase = 0;
    for (int i = 0; i < d; ++i) phase += x[i] * gamma[i];
    acc += f.evaluate(x) * std::polar(1.0, -two_pi * phase);
    ++used;
  }
  if (used == 0) fail(Err::internal, "numeric_mean: no sample landed in the ball");
  return acc / double(used);
}

}  // namespace qc
