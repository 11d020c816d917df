// Small dense integer matrices and the exact algorithms the lattice layer
// needs: column-style Hermite normal form (with unimodular transform),
// integer linear solves, kernels, determinants and adjugates.
#pragma once

#include <optional>
#include <vector>

#include "core/rational.hpp"

namespace qc {

struct IMat {
  int rows = 0;
  int cols = 0;
  std::vector<i64> a;  // row-major

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}
  i64& at(int i, int j) { return a[size_t(i) * cols + j]; }
  i64 at(int i, int j) const { return a[size_t(i) * cols + j]; }

  static IMat identity(int n);
  IMat transposed() const;
  std::vector<i64> col(int j) const;
  friend bool operator==(const IMat& x, const IMat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

std::vector<i64> mat_vec(const IMat& m, const std::vector<i64>& v);
IMat mat_mul(const IMat& x, const IMat& y);

struct HnfResult {
  IMat h;        // rows x rank, column-style HNF (pivots descend row-wise)
  IMat u;        // cols x cols unimodular with m*u = [h | 0]
  int rank = 0;
  std::vector<int> pivot_rows;  // one per HNF column, strictly increasing
};

// Column-style HNF: pivot entries positive, entries left of a pivot in its
// row reduced into [0, pivot).
HnfResult hnf(const IMat& m);

// Integer solutions of m*z = c.  On success `particular` holds one solution
// and `kernel` an integer basis of the homogeneous solutions (cols of m wide).
struct IntSolve {
  bool solvable = false;
  std::vector<i64> particular;
  IMat kernel;  // cols x k
};
IntSolve solve_integer(const IMat& m, const std::vector<i64>& c);

i64 det_bareiss(const IMat& m);      // square
IMat adjugate(const IMat& m);        // square; m * adj = det * I

// Exact solve of square rational system (num/den) * x = rhs.
RatVec solve_rational(const IMat& num, i64 den, const RatVec& rhs);

}  // namespace qc
