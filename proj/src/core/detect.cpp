#include "core/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace qc {

namespace {

double dist2(const Vec& a, const Vec& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double norm2(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

bool lex_less(const Vec& a, const Vec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

// hash grid over points for near-neighbor lookup
class PointIndex {
 public:
  PointIndex(const std::vector<Vec>& pts, double cell) : pts_(pts), cell_(cell) {
    for (size_t i = 0; i < pts.size(); ++i) grid_[key(pts[i])].push_back(int(i));
  }

  // index of a point within tol (max-norm) of q, else -1
  int find(const Vec& q, double tol) const {
    int d = int(q.size());
    std::vector<i64> base(d);
    for (int i = 0; i < d; ++i) base[i] = i64(std::floor(q[i] / cell_));
    int combos = 1;
    for (int i = 0; i < d; ++i) combos *= 3;
    for (int c = 0; c < combos; ++c) {
      std::vector<i64> cellv(d);
      int rem = c;
      for (int i = 0; i < d; ++i) {
        cellv[i] = base[i] + (rem % 3) - 1;
        rem /= 3;
      }
      auto it = grid_.find(key_cells(cellv));
      if (it == grid_.end()) continue;
      for (int idx : it->second) {
        bool ok = true;
        for (int i = 0; i < d; ++i)
          if (std::abs(pts_[idx][i] - q[i]) > tol) { ok = false; break; }
        if (ok) return idx;
      }
    }
    return -1;
  }

 private:
  uint64_t key(const Vec& p) const {
    std::vector<i64> cells(p.size());
    for (size_t i = 0; i < p.size(); ++i) cells[i] = i64(std::floor(p[i] / cell_));
    return key_cells(cells);
  }
  static uint64_t key_cells(const std::vector<i64>& cells) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (i64 v : cells) h ^= uint64_t(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
  const std::vector<Vec>& pts_;
  double cell_;
  std::map<uint64_t, std::vector<int>> grid_;
};

}  // namespace

double min_gap(const std::vector<Vec>& points) {
  if (points.size() < 2) fail(Err::input, "min_gap needs at least two points");
  std::vector<Vec> sorted = points;
  std::sort(sorted.begin(), sorted.end(), lex_less);
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j) {
      double dx = sorted[j][0] - sorted[i][0];
      if (dx * dx > best) break;  // sorted by first coordinate
      best = std::min(best, dist2(sorted[i], sorted[j]));
    }
  return std::sqrt(best);
}

double difference_gap(const std::vector<Vec>& points, double window, double pos_tol) {
  if (points.size() < 2) fail(Err::input, "difference_gap needs at least two points");
  if (points.size() > 3000) fail(Err::capacity, "difference_gap: too many points");
  int d = int(points[0].size());
  std::vector<Vec> diffs;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      Vec v(d);
      for (int k = 0; k < d; ++k) v[k] = points[i][k] - points[j][k];
      if (norm2(v) <= window) diffs.push_back(std::move(v));
    }
  Vec zero(d, 0.0);
  diffs.push_back(zero);
  if (diffs.size() < 2) fail(Err::input, "difference_gap: no differences inside the window");
  std::sort(diffs.begin(), diffs.end(), lex_less);
  // collapse tol-duplicates into cluster representatives
  std::vector<Vec> reps;
  for (const auto& v : diffs) {
    bool dup = false;
    for (auto it = reps.rbegin(); it != reps.rend(); ++it) {
      if (v[0] - (*it)[0] > pos_tol) break;
      bool close = true;
      for (int k = 0; k < d; ++k)
        if (std::abs(v[k] - (*it)[k]) > pos_tol) { close = false; break; }
      if (close) { dup = true; break; }
    }
    if (!dup) reps.push_back(v);
  }
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j) {
      double dx = reps[j][0] - reps[i][0];
      if (dx * dx > best) break;
      best = std::min(best, dist2(reps[i], reps[j]));
    }
  return std::sqrt(best);
}

double relative_density(const std::vector<Vec>& points) {
  if (points.empty()) fail(Err::input, "relative_density needs points");
  int d = int(points[0].size());
  Vec lo(points[0]), hi(points[0]);
  for (const auto& p : points)
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  int steps = d == 1 ? 2000 : (d == 2 ? 160 : 40);
  std::vector<int> idx(d, 0);
  double worst = 0;
  for (;;) {
    Vec x(d);
    for (int i = 0; i < d; ++i)
      x[i] = lo[i] + (hi[i] - lo[i]) * (steps == 0 ? 0.5 : double(idx[i]) / steps);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points) best = std::min(best, dist2(p, x));
    worst = std::max(worst, std::sqrt(best));
    int pos = 0;
    while (pos < d) {
      if (++idx[pos] <= steps) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == d) break;
  }
  return worst;
}

namespace {

// exact count of (t + L) inside the closed ball of radius window
size_t coset_count_in_window(const Lattice& lat, const Vec& t, double window) {
  return lattice_comb(lat, {t}, {Complex(1, 0)}, window).size();
}

struct PeriodTester {
  const std::vector<Vec>& pts;
  const PointIndex& index;
  double window;
  double tol;

  // true when every point whose shift stays inside the window lands on a
  // point, with at least one eligible point
  bool test(const Vec& tau) const {
    double tlen = norm2(tau);
    int eligible = 0;
    int d = int(tau.size());
    Vec q(d);
    for (const auto& p : pts) {
      for (int i = 0; i < d; ++i) q[i] = p[i] + tau[i];
      if (norm2(q) > window - tlen * 1e-12 - 2 * tol) continue;
      ++eligible;
      if (index.find(q, tol) < 0) return false;
    }
    return eligible > 0;
  }
};

}  // namespace

DetectResult detect_lattice(const std::vector<Vec>& points, double window, double tol,
                            const DetectOptions& opts) {
  DetectResult res;
  if (points.size() < 2) {
    res.reason = "fewer than two points";
    return res;
  }
  if (points.size() > opts.max_points) fail(Err::capacity, "detect_lattice: too many points");
  int d = int(points[0].size());
  for (const auto& p : points)
    if (int(p.size()) != d) fail(Err::dimension, "detect_lattice: mixed dimensions");

  double cell = std::max({tol * 8, window * 1e-7, 1e-9});
  PointIndex index(points, cell);
  PeriodTester tester{points, index, window, tol};

  // candidate shifts: differences from the point nearest the origin
  size_t base = 0;
  for (size_t i = 1; i < points.size(); ++i)
    if (norm2(points[i]) < norm2(points[base])) base = i;
  std::vector<Vec> cands;
  for (size_t i = 0; i < points.size(); ++i) {
    if (i == base) continue;
    Vec v(d);
    for (int k = 0; k < d; ++k) v[k] = points[i][k] - points[base][k];
    cands.push_back(std::move(v));
  }
  std::sort(cands.begin(), cands.end(), [](const Vec& a, const Vec& b) {
    double na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return lex_less(a, b);
  });

  std::vector<RatVec> accepted;
  i64 den = 1;
  Lattice span;
  int rank = 0;
  int unsnappable = 0;
  double full_rank_len = 0;

  auto rebuild_span = [&]() {
    den = 1;
    for (const auto& p : accepted)
      for (const auto& r : p) den = lcm64(den, r.den);
    IMat m(d, int(accepted.size()));
    for (size_t j = 0; j < accepted.size(); ++j)
      for (int i = 0; i < d; ++i)
        m.at(i, int(j)) = mul64(accepted[j][i].num, den / accepted[j][i].den);
    span = Lattice::from_columns(d, m, den);
    rank = span.rank();
  };

  auto try_accept = [&](const Vec& tau) -> bool {
    RatVec snapped(d);
    for (int i = 0; i < d; ++i) {
      double scale = std::max(1.0, std::abs(tau[i]));
      if (!snap_rational(tau[i], opts.den_max, std::max(tol, 1e-12) * scale, &snapped[i])) {
        ++unsnappable;
        return false;
      }
    }
    if (rank > 0 && span.contains(snapped)) return false;  // already generated
    if (!tester.test(tau)) return false;
    accepted.push_back(snapped);
    rebuild_span();
    return true;
  };

  int tested = 0;
  for (const auto& tau : cands) {
    if (tested > 3000) break;
    if (rank == d && full_rank_len > 0 && norm2(tau) > 2.0 * full_rank_len) break;
    ++tested;
    if (try_accept(tau) && rank == d && full_rank_len == 0) full_rank_len = norm2(tau);
  }

  if (rank < d) {
    std::ostringstream os;
    os << "only " << rank << " independent periods found (need " << d << ")";
    if (unsnappable > 0) os << "; " << unsnappable << " candidate shifts had no rational snap";
    res.reason = os.str();
    return res;
  }

  // residues modulo the span, with an absorption loop: a translate difference
  // that is itself a period refines the lattice
  for (int round = 0; round < 32; ++round) {
    // coordinates via the exact inverse basis
    IMat adj = adjugate(span.num());
    i64 det = det_bareiss(span.num());
    auto coords = [&](const Vec& p) {
      Vec t(d, 0.0);
      for (int i = 0; i < d; ++i) {
        double acc = 0;
        for (int j = 0; j < d; ++j) acc += double(adj.at(i, j)) * p[j];
        t[i] = acc * double(span.den()) / double(det);
      }
      return t;
    };
    double coord_tol = 0;
    for (int i = 0; i < d; ++i) {
      double rn = 0;
      for (int j = 0; j < d; ++j) {
        double inv = double(adj.at(i, j)) * double(span.den()) / double(det);
        rn += inv * inv;
      }
      coord_tol = std::max(coord_tol, std::sqrt(rn));
    }
    coord_tol *= 4 * std::max(tol, 1e-12);

    res.translates.clear();
    res.partition.clear();
    for (size_t i = 0; i < points.size(); ++i) {
      Vec t = coords(points[i]);
      int hit = -1;
      for (size_t r = 0; r < res.translates.size(); ++r) {
        Vec rt = coords(res.translates[r]);
        bool same = true;
        for (int a = 0; a < d; ++a) {
          double delta = t[a] - rt[a];
          double fr = delta - std::round(delta);
          if (std::abs(fr) > coord_tol) { same = false; break; }
        }
        if (same) { hit = int(r); break; }
      }
      if (hit < 0) {
        res.translates.push_back(points[i]);
        res.partition.push_back({int(i)});
      } else {
        res.partition[hit].push_back(int(i));
      }
    }
    // canonical reps: the member nearest the origin
    for (size_t r = 0; r < res.translates.size(); ++r) {
      int bestIdx = res.partition[r][0];
      for (int i : res.partition[r])
        if (norm2(points[i]) < norm2(points[bestIdx])) bestIdx = i;
      res.translates[r] = points[bestIdx];
    }

    bool refined = false;
    for (size_t i = 0; i < res.translates.size() && !refined; ++i)
      for (size_t j = 0; j < res.translates.size() && !refined; ++j) {
        if (i == j) continue;
        Vec tau(d);
        for (int a = 0; a < d; ++a) tau[a] = res.translates[i][a] - res.translates[j][a];
        if (try_accept(tau)) refined = true;
      }
    if (!refined) break;
  }

  // order translates deterministically and align the partition
  std::vector<size_t> order(res.translates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return lex_less(res.translates[a], res.translates[b]);
  });
  std::vector<Vec> tr;
  std::vector<std::vector<int>> part;
  for (size_t o : order) {
    tr.push_back(res.translates[o]);
    std::sort(res.partition[o].begin(), res.partition[o].end());
    part.push_back(res.partition[o]);
  }
  res.translates = std::move(tr);
  res.partition = std::move(part);

  // verification: per-coset density against the exact lattice point count
  for (size_t r = 0; r < res.translates.size(); ++r) {
    size_t expected = coset_count_in_window(span, res.translates[r], window);
    size_t observed = res.partition[r].size();
    if (double(observed) < opts.density_slack * double(expected)) {
      std::ostringstream os;
      os << "coset " << r << " holds " << observed << " points but the window supports "
         << expected << " (not a complete union of translates at this scale)";
      res.reason = os.str();
      res.translates.clear();
      res.partition.clear();
      return res;
    }
  }

  res.ok = true;
  res.lattice = span;
  return res;
}

AlmostPeriodResult almost_periods(const AtomicMeasure& mu, double epsilon, double rho,
                                  double window) {
  const auto& atoms = mu.atoms();
  if (atoms.size() < 2) fail(Err::input, "almost_periods needs at least two atoms");
  if (atoms.size() > 3000) fail(Err::capacity, "almost_periods: too many atoms");
  std::vector<Vec> pos = mu.positions();
  double gap = min_gap(pos);
  if (!(rho < 0.5 * gap)) fail(Err::input, "almost_periods: rho must be below half the minimal gap");
  int d = mu.dim();

  double cell = std::max(rho, 1e-9);
  PointIndex index(pos, cell);

  // candidates: deduplicated difference vectors within the search window
  std::vector<Vec> cands;
  cands.push_back(Vec(d, 0.0));
  for (size_t i = 0; i < atoms.size(); ++i)
    for (size_t j = 0; j < atoms.size(); ++j) {
      if (i == j) continue;
      Vec v(d);
      for (int k = 0; k < d; ++k) v[k] = atoms[i].pos[k] - atoms[j].pos[k];
      if (norm2(v) <= window) cands.push_back(std::move(v));
    }
  std::sort(cands.begin(), cands.end(), lex_less);
  std::vector<Vec> dedup;
  for (const auto& v : cands) {
    bool dup = false;
    for (auto it = dedup.rbegin(); it != dedup.rend(); ++it) {
      if (v[0] - (*it)[0] > rho * 0.5) break;
      bool close = true;
      for (int k = 0; k < d; ++k)
        if (std::abs(v[k] - (*it)[k]) > rho * 0.5) { close = false; break; }
      if (close) { dup = true; break; }
    }
    if (!dup) dedup.push_back(v);
  }

  AlmostPeriodResult out;
  for (const auto& tau : dedup) {
    double tlen = norm2(tau);
    int eligible = 0;
    bool ok = true;
    Vec q(d);
    for (const auto& a : atoms) {
      if (norm2(a.pos) > mu.window() - tlen - rho) continue;  // boundary band
      ++eligible;
      for (int k = 0; k < d; ++k) q[k] = a.pos[k] + tau[k];
      int hit = index.find(q, rho);
      if (hit < 0 || std::abs(atoms[hit].weight - a.weight) > epsilon) {
        ok = false;
        break;
      }
    }
    if (ok && eligible > 0) out.periods.push_back(tau);
  }
  std::sort(out.periods.begin(), out.periods.end(), lex_less);

  double dens = 0;
  for (int axis = 0; axis < d; ++axis) {
    std::vector<double> vals;
    for (const auto& p : out.periods) vals.push_back(p[axis]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end(),
                           [&](double a, double b) { return std::abs(a - b) < rho * 0.5; }),
               vals.end());
    for (size_t i = 1; i < vals.size(); ++i) dens = std::max(dens, vals[i] - vals[i - 1]);
  }
  out.density_radius = dens;
  return out;
}

}  // namespace qc
