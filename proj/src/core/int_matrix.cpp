#include "core/int_matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace qc {

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::transposed() const {
  IMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::vector<i64> IMat::col(int j) const {
  std::vector<i64> v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

std::vector<i64> mat_vec(const IMat& m, const std::vector<i64>& v) {
  std::vector<i64> r(m.rows, 0);
  for (int i = 0; i < m.rows; ++i) {
    i128 acc = 0;
    for (int j = 0; j < m.cols; ++j) acc += i128(m.at(i, j)) * v[j];
    r[i] = narrow(acc);
  }
  return r;
}

IMat mat_mul(const IMat& x, const IMat& y) {
  IMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < y.cols; ++j) {
      i128 acc = 0;
      for (int k = 0; k < x.cols; ++k) acc += i128(x.at(i, k)) * y.at(k, j);
      r.at(i, j) = narrow(acc);
    }
  return r;
}

namespace {

void col_axpy(IMat& m, int dst, int src, i64 q) {
  // col_dst -= q * col_src
  for (int i = 0; i < m.rows; ++i) m.at(i, dst) = narrow(i128(m.at(i, dst)) - i128(q) * m.at(i, src));
}

void col_swap(IMat& m, int a, int b) {
  for (int i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

void col_negate(IMat& m, int j) {
  for (int i = 0; i < m.rows; ++i) m.at(i, j) = -m.at(i, j);
}

// floor division
i64 fdiv(i64 a, i64 b) {
  i64 q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

HnfResult hnf(const IMat& m) {
  HnfResult res;
  IMat w = m;
  IMat u = IMat::identity(m.cols);
  int k = 0;
  for (int i = 0; i < m.rows && k < m.cols; ++i) {
    // gcd-eliminate row i across columns k.. until one nonzero remains in col k
    for (;;) {
      int piv = -1;
      i64 best = 0;
      for (int j = k; j < m.cols; ++j) {
        i64 v = std::llabs(w.at(i, j));
        if (v != 0 && (piv < 0 || v < best)) { piv = j; best = v; }
      }
      if (piv < 0) break;  // row has no pivot among remaining columns
      if (piv != k) { col_swap(w, k, piv); col_swap(u, k, piv); }
      bool done = true;
      for (int j = k + 1; j < m.cols; ++j) {
        if (w.at(i, j) == 0) continue;
        i64 q = w.at(i, j) / w.at(i, k);
        col_axpy(w, j, k, q);
        col_axpy(u, j, k, q);
        if (w.at(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (w.at(i, k) == 0) continue;
    if (w.at(i, k) < 0) { col_negate(w, k); col_negate(u, k); }
    // reduce the entries to the left of this pivot into [0, pivot)
    for (int j = 0; j < k; ++j) {
      i64 q = fdiv(w.at(i, j), w.at(i, k));
      if (q != 0) { col_axpy(w, j, k, q); col_axpy(u, j, k, q); }
    }
    res.pivot_rows.push_back(i);
    ++k;
  }
  res.rank = k;
  res.h = IMat(m.rows, k);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < k; ++j) res.h.at(i, j) = w.at(i, j);
  res.u = u;
  return res;
}

IntSolve solve_integer(const IMat& m, const std::vector<i64>& c) {
  IntSolve out;
  HnfResult f = hnf(m);
  std::vector<i64> w(f.rank, 0);
  std::vector<i64> acc(m.rows, 0);
  for (int j = 0; j < f.rank; ++j) {
    int pr = f.pivot_rows[j];
    i128 rem = i128(c[pr]) - acc[pr];
    i64 piv = f.h.at(pr, j);
    if (rem % piv != 0) return out;  // no integer solution
    w[j] = narrow(rem / piv);
    for (int i = 0; i < m.rows; ++i) acc[i] = narrow(i128(acc[i]) + i128(f.h.at(i, j)) * w[j]);
  }
  for (int i = 0; i < m.rows; ++i)
    if (acc[i] != c[i]) return out;  // inconsistent on a non-pivot row
  out.solvable = true;
  std::vector<i64> padded(m.cols, 0);
  for (int j = 0; j < f.rank; ++j) padded[j] = w[j];
  out.particular = mat_vec(f.u, padded);
  int kdim = m.cols - f.rank;
  out.kernel = IMat(m.cols, kdim);
  for (int j = 0; j < kdim; ++j)
    for (int i = 0; i < m.cols; ++i) out.kernel.at(i, j) = f.u.at(i, f.rank + j);
  return out;
}

i64 det_bareiss(const IMat& m) {
  if (m.rows != m.cols) fail(Err::internal, "det of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  std::vector<i128> w(m.a.begin(), m.a.end());
  auto at = [&](int i, int j) -> i128& { return w[size_t(i) * n + j]; };
  i128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        i128 v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        at(i, j) = v / prev;  // exact by Bareiss
      }
    prev = at(k, k);
  }
  return narrow(sign * at(n - 1, n - 1));
}

IMat adjugate(const IMat& m) {
  if (m.rows != m.cols) fail(Err::internal, "adjugate of non-square matrix");
  int n = m.rows;
  IMat adj(n, n);
  if (n == 0) return adj;
  if (n == 1) { adj.at(0, 0) = 1; return adj; }
  IMat minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int mi = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int mj = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(mi, mj) = m.at(r, c);
          ++mj;
        }
        ++mi;
      }
      i64 d = det_bareiss(minor);
      adj.at(j, i) = ((i + j) % 2 == 0) ? d : narrow(-i128(d));
    }
  return adj;
}

RatVec solve_rational(const IMat& num, i64 den, const RatVec& rhs) {
  // (num/den) x = rhs  =>  x = den * adj(num) * rhs / det(num)
  i64 d = det_bareiss(num);
  if (d == 0) fail(Err::input, "singular matrix in exact solve");
  IMat adj = adjugate(num);
  int n = num.rows;
  RatVec x(n);
  for (int i = 0; i < n; ++i) {
    Rat acc(0);
    for (int j = 0; j < n; ++j) acc = acc + Rat(adj.at(i, j)) * rhs[j];
    x[i] = acc * Rat(den, d);
  }
  return x;
}

}  // namespace qc
