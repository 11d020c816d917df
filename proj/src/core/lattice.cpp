#include "core/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace qc {

namespace {

// rational matrix-vector product (num/den) * t
RatVec apply_basis(const IMat& num, i64 den, const RatVec& t) {
  RatVec r(num.rows, Rat(0));
  for (int i = 0; i < num.rows; ++i) {
    Rat acc(0);
    for (int j = 0; j < num.cols; ++j) acc = acc + Rat(num.at(i, j)) * t[j];
    r[i] = acc / Rat(den);
  }
  return r;
}

RatVec add_vec(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

// integer coordinates t with (outer basis) * T = (inner basis); empty when
// inner is not a sublattice of outer
std::optional<IMat> sublattice_coords(const Lattice& outer, const Lattice& inner) {
  if (outer.dim() != inner.dim() || outer.rank() != inner.rank()) return std::nullopt;
  int k = outer.rank();
  IMat t(k, k);
  for (int j = 0; j < k; ++j) {
    RatVec col = inner.column(j);
    RatVec sol;
    if (outer.full_rank()) {
      RatVec rhs(col.size());
      for (size_t i = 0; i < col.size(); ++i) rhs[i] = col[i];
      sol = solve_rational(outer.num(), outer.den(), rhs);
    } else {
      // Gram system: (num^T num) t = den * num^T col
      const IMat& num = outer.num();
      IMat gram = mat_mul(num.transposed(), num);
      RatVec rhs(k, Rat(0));
      for (int a = 0; a < k; ++a) {
        Rat acc(0);
        for (int i = 0; i < num.rows; ++i) acc = acc + Rat(num.at(i, a)) * col[i];
        rhs[a] = acc * Rat(outer.den());
      }
      sol = solve_rational(gram, 1, rhs);
      // verify col really lies in the span
      RatVec back = apply_basis(num, outer.den(), sol);
      if (!rat_eq(back, col)) return std::nullopt;
    }
    for (int i = 0; i < k; ++i) {
      if (!sol[i].is_integer()) return std::nullopt;
      t.at(i, j) = sol[i].num;
    }
  }
  return t;
}

}  // namespace

Lattice Lattice::from_columns(int dim, IMat num, i64 den) {
  if (dim < 1) fail(Err::input, "lattice dim must be >= 1");
  if (num.rows != dim) fail(Err::dimension, "basis rows != dim");
  if (den == 0) fail(Err::input, "lattice denominator must be nonzero");
  if (den < 0) {
    den = -den;
    for (auto& v : num.a) v = -v;
  }
  HnfResult f = hnf(num);
  Lattice l;
  l.dim_ = dim;
  l.num_ = f.h;
  l.den_ = den;
  // reduce the common factor between entries and denominator
  i64 g = den;
  for (i64 v : l.num_.a) g = std::gcd(g, std::llabs(v));
  if (g > 1) {
    for (auto& v : l.num_.a) v /= g;
    l.den_ /= g;
  }
  return l;
}

Lattice Lattice::integers(int dim) { return from_columns(dim, IMat::identity(dim), 1); }

Lattice Lattice::diagonal(const std::vector<Rat>& steps) {
  int d = int(steps.size());
  i64 den = 1;
  for (const auto& s : steps) den = lcm64(den, s.den);
  IMat num(d, d);
  for (int i = 0; i < d; ++i) num.at(i, i) = mul64(steps[i].num, den / steps[i].den);
  return from_columns(d, num, den);
}

RatVec Lattice::column(int j) const {
  RatVec v(dim_);
  for (int i = 0; i < dim_; ++i) v[i] = Rat(num_.at(i, j), den_);
  return v;
}

Rat Lattice::covolume() const {
  if (!full_rank()) fail(Err::input, "covolume needs a full-rank lattice");
  i64 d = det_bareiss(num_);
  i128 dd = d < 0 ? -i128(d) : i128(d);
  i128 q = 1;
  for (int i = 0; i < dim_; ++i) q *= den_;
  return Rat::make128(dd, q);
}

Lattice Lattice::dual() const {
  if (!full_rank()) fail(Err::input, "dual needs a full-rank lattice");
  // (num/den)^{-T} = den * adj(num^T) / det(num)
  IMat nt = num_.transposed();
  i64 d = det_bareiss(nt);
  IMat adj = adjugate(nt);
  for (auto& v : adj.a) v = mul64(v, den_);
  return from_columns(dim_, adj, d);
}

bool Lattice::contains(const RatVec& v) const {
  if (int(v.size()) != dim_) fail(Err::dimension, "contains: wrong dimension");
  std::vector<i64> c(dim_);
  for (int i = 0; i < dim_; ++i) {
    Rat scaled = v[i] * Rat(den_);
    if (!scaled.is_integer()) return false;
    c[i] = scaled.num;
  }
  if (rank() == 0) {
    return std::all_of(c.begin(), c.end(), [](i64 x) { return x == 0; });
  }
  return solve_integer(num_, c).solvable;
}

i64 Lattice::index_of(const Lattice& sub) const {
  auto t = sublattice_coords(*this, sub);
  if (!t) fail(Err::input, "index_of: not a sublattice of equal rank");
  i64 d = det_bareiss(*t);
  if (d == 0) fail(Err::internal, "index_of: degenerate coordinates");
  return std::llabs(d);
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  RatVec zero(a.dim(), Rat(0));
  auto meet = coset_intersect(Coset(a, zero), Coset(b, zero));
  if (!meet) fail(Err::internal, "lattice intersection cannot be empty");
  return meet->lattice();
}

Coset::Coset(Lattice lat, RatVec offset) : lat_(std::move(lat)), off_(std::move(offset)) {
  if (int(off_.size()) != lat_.dim()) fail(Err::dimension, "coset offset of wrong dimension");
  int k = lat_.rank();
  if (k == 0) return;  // a single point; nothing to reduce
  const IMat& num = lat_.num();
  RatVec t;
  if (lat_.full_rank()) {
    t = solve_rational(num, lat_.den(), off_);
  } else {
    IMat gram = mat_mul(num.transposed(), num);
    RatVec rhs(k, Rat(0));
    for (int a = 0; a < k; ++a) {
      Rat acc(0);
      for (int i = 0; i < num.rows; ++i) acc = acc + Rat(num.at(i, a)) * off_[i];
      rhs[a] = acc * Rat(lat_.den());
    }
    t = solve_rational(gram, 1, rhs);
  }
  RatVec shift(k);
  for (int j = 0; j < k; ++j) shift[j] = Rat(t[j].floor());
  RatVec move = apply_basis(num, lat_.den(), shift);
  for (int i = 0; i < lat_.dim(); ++i) off_[i] = off_[i] - move[i];
}

bool Coset::contains(const RatVec& p) const {
  RatVec rel = rat_sub(p, off_);
  return lat_.contains(rel);
}

std::string Coset::str() const {
  std::ostringstream os;
  os << "coset(offset=[";
  for (size_t i = 0; i < off_.size(); ++i) os << (i ? "," : "") << off_[i].str();
  os << "], basis=";
  os << "1/" << lat_.den() << " * [";
  for (int i = 0; i < lat_.num().rows; ++i) {
    os << (i ? ";" : "");
    for (int j = 0; j < lat_.num().cols; ++j) os << (j ? "," : "") << lat_.num().at(i, j);
  }
  os << "])";
  return os.str();
}

namespace {

// Solution of o1 + B1 a = o2 + B2 b in C1's coordinates: a in t0 + T Z^m.
struct MeetParams {
  bool nonempty = false;
  std::vector<i64> t0;
  IMat t;  // k1 x m
};

MeetParams meet_params(const Coset& c1, const Coset& c2) {
  MeetParams out;
  int d = c1.dim();
  if (d != c2.dim()) fail(Err::dimension, "coset intersect: dimension mismatch");
  int k1 = c1.rank(), k2 = c2.rank();
  RatVec diff = rat_sub(c2.offset(), c1.offset());
  i64 q = lcm64(c1.lattice().den(), c2.lattice().den());
  for (const auto& r : diff) q = lcm64(q, r.den);
  IMat m(d, k1 + k2);
  i64 s1 = q / c1.lattice().den(), s2 = q / c2.lattice().den();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < k1; ++j) m.at(i, j) = mul64(c1.lattice().num().at(i, j), s1);
    for (int j = 0; j < k2; ++j) m.at(i, k1 + j) = narrow(-i128(mul64(c2.lattice().num().at(i, j), s2)));
  }
  std::vector<i64> c(d);
  for (int i = 0; i < d; ++i) {
    Rat scaled = diff[i] * Rat(q);
    if (!scaled.is_integer()) fail(Err::internal, "meet: scaling failed");
    c[i] = scaled.num;
  }
  IntSolve sol = solve_integer(m, c);
  if (!sol.solvable) return out;
  out.nonempty = true;
  out.t0.assign(sol.particular.begin(), sol.particular.begin() + k1);
  out.t = IMat(k1, sol.kernel.cols);
  for (int j = 0; j < sol.kernel.cols; ++j)
    for (int i = 0; i < k1; ++i) out.t.at(i, j) = sol.kernel.at(i, j);
  return out;
}

Coset push_forward(const Coset& c1, const std::vector<i64>& t0, const IMat& t) {
  const Lattice& l1 = c1.lattice();
  RatVec t0r(t0.size());
  for (size_t i = 0; i < t0.size(); ++i) t0r[i] = Rat(t0[i]);
  RatVec x0 = add_vec(c1.offset(), apply_basis(l1.num(), l1.den(), t0r));
  IMat dir = mat_mul(l1.num(), t);
  Lattice meet_lat = Lattice::from_columns(c1.dim(), dir, l1.den());
  return Coset(meet_lat, x0);
}

}  // namespace

std::optional<Coset> coset_intersect(const Coset& a, const Coset& b) {
  MeetParams mp = meet_params(a, b);
  if (!mp.nonempty) return std::nullopt;
  return push_forward(a, mp.t0, mp.t);
}

std::vector<Coset> coset_refine(const Coset& c, const Lattice& sub, size_t max_terms) {
  auto coords = sublattice_coords(c.lattice(), sub);
  if (!coords) fail(Err::input, "refine: not a sublattice");
  HnfResult f = hnf(*coords);
  int k = c.rank();
  if (f.rank != k) fail(Err::internal, "refine: sublattice of lower rank");
  i128 index = 1;
  for (int j = 0; j < k; ++j) index *= f.h.at(f.pivot_rows[j], j);
  if (index > i128(max_terms)) fail(Err::capacity, "coset refinement exceeds the term cap");
  std::vector<Coset> out;
  out.reserve(size_t(index));
  std::vector<i64> counter(k, 0);
  for (;;) {
    RatVec rep(k);
    for (int j = 0; j < k; ++j) rep[j] = Rat(counter[j]);
    RatVec off = add_vec(c.offset(), apply_basis(c.lattice().num(), c.lattice().den(), rep));
    out.emplace_back(sub, off);
    int pos = 0;
    while (pos < k) {
      if (++counter[pos] < f.h.at(f.pivot_rows[pos], pos)) break;
      counter[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return out;
}

namespace {

void merge_signed(SignedCosetSum& acc, const Coset& c, int mult) {
  for (auto& term : acc)
    if (term.coset == c) {
      term.mult += mult;
      return;
    }
  acc.push_back({c, mult});
}

// inclusion-exclusion over a small family of cosets, accumulating the signed
// measure of their union
void union_inclusion_exclusion(const std::vector<Coset>& pieces, SignedCosetSum& acc,
                               size_t max_terms) {
  size_t n = pieces.size();
  if (n > 16) fail(Err::capacity, "too many lower-dimensional remainder pieces");
  std::function<void(size_t, std::optional<Coset>, int)> rec =
      [&](size_t start, std::optional<Coset> cur, int depth) {
        for (size_t i = start; i < n; ++i) {
          std::optional<Coset> next;
          if (!cur)
            next = pieces[i];
          else
            next = coset_intersect(*cur, pieces[i]);
          if (!next) continue;
          merge_signed(acc, *next, (depth % 2 == 0) ? 1 : -1);
          if (acc.size() > max_terms) fail(Err::capacity, "remainder term explosion");
          rec(i + 1, next, depth + 1);
        }
      };
  rec(0, std::nullopt, 0);
}

}  // namespace

namespace {

struct RatVecLess {
  bool operator()(const RatVec& a, const RatVec& b) const {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
  }
};

}  // namespace

NormalizeResult coset_union_normalize(const SignedCosetSum& input, const NormalizeOptions& opts) {
  NormalizeResult res;
  if (input.empty()) {
    res.clean = true;
    return res;
  }
  int d = input.front().coset.dim();
  std::vector<Coset> full, low;
  for (const auto& term : input) {
    if (term.coset.dim() != d) fail(Err::dimension, "normalize: mixed dimensions");
    if (term.mult <= 0)
      fail(Err::input, "normalize expects union members with positive multiplicity");
    if (term.coset.rank() == d)
      full.push_back(term.coset);
    else
      low.push_back(term.coset);
  }

  std::vector<Coset> refined;
  if (!full.empty()) {
    Lattice common = full[0].lattice();
    for (size_t i = 1; i < full.size(); ++i)
      common = lattice_intersect(common, full[i].lattice());
    std::set<RatVec, RatVecLess> seen;
    for (const auto& c : full) {
      auto pieces = coset_refine(c, common, opts.max_terms);
      for (auto& p : pieces)
        if (seen.insert(p.offset()).second) refined.push_back(std::move(p));
      if (refined.size() > opts.max_terms) fail(Err::capacity, "union refinement term explosion");
    }
  }

  // lower-dimensional members must be covered by the full-rank part;
  // whatever is not covered becomes remainder
  std::vector<Coset> slivers;
  for (const auto& b : low) {
    int k = b.rank();
    if (k == 0) {
      bool hit = false;
      for (const auto& ds : refined)
        if (ds.contains(b.offset())) { hit = true; break; }
      if (!hit) slivers.push_back(b);
      continue;
    }
    // pull the meets with the full-rank pieces back to Z^k
    std::vector<Coset> pulled;
    for (const auto& ds : refined) {
      MeetParams mp = meet_params(b, ds);
      if (!mp.nonempty) continue;
      IMat tnum = mp.t;
      RatVec t0(k);
      for (int i = 0; i < k; ++i) t0[i] = Rat(mp.t0[i]);
      pulled.emplace_back(Lattice::from_columns(k, tnum, 1), t0);
    }
    if (pulled.empty()) {
      slivers.push_back(b);
      continue;
    }
    Lattice lpull = pulled[0].lattice();
    for (size_t i = 1; i < pulled.size(); ++i)
      lpull = lattice_intersect(lpull, pulled[i].lattice());
    std::set<RatVec, RatVecLess> covered;
    for (const auto& p : pulled) {
      auto pieces = coset_refine(p, lpull, opts.max_terms);
      for (const auto& q : pieces) covered.insert(q.offset());
    }
    RatVec zero(k, Rat(0));
    auto everything = coset_refine(Coset(Lattice::integers(k), zero), lpull, opts.max_terms);
    for (const auto& cls : everything) {
      if (covered.count(cls.offset())) continue;
      // push the uncovered class forward into ambient space
      const Lattice& bl = b.lattice();
      IMat dir = mat_mul(bl.num(), lpull.num());
      Lattice low_lat = Lattice::from_columns(d, dir, mul64(bl.den(), lpull.den()));
      RatVec off = add_vec(b.offset(), apply_basis(bl.num(), bl.den(), cls.offset()));
      slivers.emplace_back(low_lat, off);
    }
  }

  if (!slivers.empty()) union_inclusion_exclusion(slivers, res.remainder, opts.max_terms);
  // drop cancelled terms (equal cosets were merged during accumulation)
  std::erase_if(res.remainder, [](const SignedCoset& t) { return t.mult == 0; });

  std::sort(refined.begin(), refined.end(), [](const Coset& a, const Coset& b) {
    return RatVecLess{}(a.offset(), b.offset());
  });
  res.disjoint = std::move(refined);
  res.clean = res.remainder.empty();
  if (!res.clean && opts.assert_clean) {
    res.witness = res.remainder.front().coset.str();
    fail(Err::remainder, "nonvanishing lower-dimensional remainder at " + res.witness);
  }
  return res;
}

}  // namespace qc
