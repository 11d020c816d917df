// Exact lattices and cosets over the rationals, plus the rewriting of a
// finite union of cosets into pairwise disjoint full-rank cosets (with a
// signed lower-dimensional remainder that must cancel for genuine point
// sets).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/int_matrix.hpp"

namespace qc {

class Lattice {
 public:
  Lattice() = default;

  // Lattice generated by the columns of num/den; canonicalized to
  // column HNF with minimal positive denominator.  Rank may be < dim.
  static Lattice from_columns(int dim, IMat num, i64 den);
  static Lattice integers(int dim);
  static Lattice diagonal(const std::vector<Rat>& steps);

  int dim() const { return dim_; }
  int rank() const { return num_.cols; }
  bool full_rank() const { return rank() == dim_; }
  const IMat& num() const { return num_; }
  i64 den() const { return den_; }

  RatVec column(int j) const;
  Rat covolume() const;            // full rank only
  Lattice dual() const;            // full rank only: transpose-inverse basis
  bool contains(const RatVec& v) const;
  // index [this : sub] for a full-rank sublattice of equal rank
  i64 index_of(const Lattice& sub) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim_ == b.dim_ && a.den_ == b.den_ && a.num_ == b.num_;
  }

 private:
  int dim_ = 0;
  IMat num_;     // dim x rank
  i64 den_ = 1;
};

Lattice lattice_intersect(const Lattice& a, const Lattice& b);

class Coset {
 public:
  Coset(Lattice lat, RatVec offset);  // reduces offset to the canonical rep

  const Lattice& lattice() const { return lat_; }
  const RatVec& offset() const { return off_; }
  int dim() const { return lat_.dim(); }
  int rank() const { return lat_.rank(); }
  bool contains(const RatVec& p) const;
  std::string str() const;

  friend bool operator==(const Coset& a, const Coset& b) {
    return a.lat_ == b.lat_ && rat_eq(a.off_, b.off_);
  }

 private:
  Lattice lat_;
  RatVec off_;
};

// Exact intersection of two cosets; empty optional when the congruence
// system has no solution.
std::optional<Coset> coset_intersect(const Coset& a, const Coset& b);

// Decomposition of a full-rank coset into cosets of a full-rank sublattice.
std::vector<Coset> coset_refine(const Coset& c, const Lattice& sub, size_t max_terms);

struct SignedCoset {
  Coset coset;
  int mult;
};
using SignedCosetSum = std::vector<SignedCoset>;

struct NormalizeOptions {
  bool assert_clean = true;   // demand a vanishing lower-dimensional remainder
  size_t max_terms = 4096;
};

struct NormalizeResult {
  std::vector<Coset> disjoint;  // full-rank, multiplicity 1, pairwise disjoint
  SignedCosetSum remainder;     // signed lower-dimensional leftover
  bool clean = false;
  std::string witness;          // offending coset when clean assertion fails
};

// Rewrites the union of the input cosets (multiplicities must be positive;
// the union of supports is taken) as disjoint full-rank cosets of the common
// intersection lattice.  Lower-dimensional members must be covered by the
// full-rank part, otherwise they surface in `remainder`.
NormalizeResult coset_union_normalize(const SignedCosetSum& input,
                                      const NormalizeOptions& opts = {});

}  // namespace qc
