// Absolutely convergent exponential sums f(x) = sum_n c_n e^{2 pi i <x, g_n>}
// with finitely many terms.  Values are immutable after construction; all
// operations return fresh sums.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "core/error.hpp"

namespace qc {

using Complex = std::complex<double>;
using Vec = std::vector<double>;

struct SumTerm {
  Vec freq;
  Complex coeff;
};

class ExponentialSum {
 public:
  static constexpr double default_freq_tol = 1e-9;

  ExponentialSum() = default;

  // Merges frequencies within freq_tol (max-norm), drops zero coefficients,
  // sorts terms lexicographically by frequency.
  static ExponentialSum make(int dim, std::vector<SumTerm> raw,
                             double freq_tol = default_freq_tol);
  static ExponentialSum constant(int dim, Complex c,
                                 double freq_tol = default_freq_tol);

  int dim() const { return dim_; }
  double freq_tol() const { return freq_tol_; }
  const std::vector<SumTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  double norm_w() const;
  Complex evaluate(std::span<const double> x) const;
  Complex evaluate(double x) const;  // dim-1 convenience

  // Stored coefficient at the unique frequency within freq_tol of gamma,
  // zero otherwise.
  Complex fourier_coefficient(std::span<const double> gamma) const;
  Complex mean() const;  // coefficient at frequency zero

 private:
  int dim_ = 1;
  double freq_tol_ = default_freq_tol;
  std::vector<SumTerm> terms_;
};

ExponentialSum add(const ExponentialSum& f, const ExponentialSum& g);
ExponentialSum scale(const ExponentialSum& f, Complex a);
ExponentialSum multiply(const ExponentialSum& f, const ExponentialSum& g);
ExponentialSum sub(const ExponentialSum& f, const ExponentialSum& g);

struct Truncation {
  ExponentialSum head;  // S
  double tail = 0;      // norm_w(f) - norm_w(S), exact
};

// Keeps the minimal number of largest-|coeff| terms with tail < eta.
// Ties keep the earlier canonical term.
Truncation truncate(const ExponentialSum& f, double eta);

// Ball average of f(x) e^{-2 pi i <x,gamma>} over B(0,R) on a deterministic
// low-discrepancy point set; independent estimator of fourier_coefficient.
Complex numeric_mean(const ExponentialSum& f, std::span<const double> gamma,
                     double R, int samples);

}  // namespace qc
