#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "core/exp_sum.hpp"

using namespace qc;

namespace {

ExponentialSum three_plus_wave() {
  return ExponentialSum::make(1, {{Vec{0.0}, Complex(3, 0)}, {Vec{1.0}, Complex(1, 0)}});
}

ExponentialSum random_sum(std::mt19937& rng, int dim, int terms) {
  std::uniform_real_distribution<double> freq(-3.0, 3.0), coeff(-1.0, 1.0);
  std::vector<SumTerm> raw;
  for (int t = 0; t < terms; ++t) {
    Vec f(dim);
    for (int i = 0; i < dim; ++i) f[i] = freq(rng);
    raw.push_back({f, Complex(coeff(rng), coeff(rng))});
  }
  return ExponentialSum::make(dim, std::move(raw));
}

}  // namespace

TEST_CASE("make merges, cancels and orders") {
  ExponentialSum f = three_plus_wave();
  CHECK(f.size() == 2);
  CHECK(f.norm_w() == doctest::Approx(4.0));

  ExponentialSum merged = ExponentialSum::make(
      1, {{Vec{1.0}, Complex(1, 0)}, {Vec{1.0 + 1e-12}, Complex(2, 0)}}, 1e-9);
  CHECK(merged.size() == 1);
  CHECK(merged.terms()[0].coeff == Complex(3, 0));

  ExponentialSum zero = ExponentialSum::make(
      1, {{Vec{0.0}, Complex(1, 0)}, {Vec{0.0}, Complex(-1, 0)}});
  CHECK(zero.empty());
  CHECK(zero.norm_w() == 0.0);

  CHECK_THROWS_AS(ExponentialSum::make(1, {{Vec{0.0}, Complex(NAN, 0)}}), Error);
  CHECK_THROWS_AS(ExponentialSum::make(0, {}), Error);
}

TEST_CASE("canonicalization is idempotent") {
  std::mt19937 rng(7);
  for (int it = 0; it < 20; ++it) {
    ExponentialSum f = random_sum(rng, 2, 12);
    ExponentialSum again = ExponentialSum::make(f.dim(), f.terms(), f.freq_tol());
    CHECK(again.size() == f.size());
    for (size_t i = 0; i < f.size(); ++i) {
      CHECK(again.terms()[i].freq == f.terms()[i].freq);
      CHECK(again.terms()[i].coeff == f.terms()[i].coeff);
    }
  }
}

TEST_CASE("evaluate matches closed forms") {
  ExponentialSum f = three_plus_wave();
  CHECK(std::abs(f.evaluate(0.0) - Complex(4, 0)) < 1e-12);
  CHECK(std::abs(f.evaluate(0.5) - Complex(2, 0)) < 1e-12);
  CHECK(ExponentialSum().empty());
  CHECK(ExponentialSum::make(1, {}).evaluate(0.3) == Complex(0, 0));
  CHECK_THROWS_AS(f.evaluate(std::span<const double>()), Error);
}

TEST_CASE("ring operations and norm inequalities") {
  ExponentialSum one_plus = ExponentialSum::make(
      1, {{Vec{0.0}, Complex(1, 0)}, {Vec{1.0}, Complex(1, 0)}});
  ExponentialSum sq = multiply(one_plus, one_plus);
  REQUIRE(sq.size() == 3);
  CHECK(sq.terms()[0].coeff == Complex(1, 0));
  CHECK(sq.terms()[1].coeff == Complex(2, 0));
  CHECK(sq.terms()[2].coeff == Complex(1, 0));
  CHECK(sq.norm_w() == doctest::Approx(4.0));

  CHECK(scale(three_plus_wave(), Complex(0, 0)).empty());
  ExponentialSum wave = ExponentialSum::make(1, {{Vec{1.0}, Complex(1, 0)}});
  CHECK(add(wave, scale(wave, Complex(-1, 0))).empty());

  std::mt19937 rng(42);
  for (int it = 0; it < 30; ++it) {
    ExponentialSum f = random_sum(rng, 1, 6), g = random_sum(rng, 1, 5);
    CHECK(add(f, g).norm_w() <= f.norm_w() + g.norm_w() + 1e-12);
    CHECK(multiply(f, g).norm_w() <= f.norm_w() * g.norm_w() + 1e-12);
    // evaluation bound and product consistency
    std::uniform_real_distribution<double> xs(-10.0, 10.0);
    for (int k = 0; k < 20; ++k) {
      double x = xs(rng);
      CHECK(std::abs(f.evaluate(x)) <= f.norm_w() + 1e-12);
      Complex lhs = multiply(f, g).evaluate(x);
      Complex rhs = f.evaluate(x) * g.evaluate(x);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST_CASE("truncate keeps the largest coefficients") {
  ExponentialSum f = ExponentialSum::make(1, {{Vec{0.0}, Complex(2, 0)},
                                              {Vec{1.0}, Complex(0.5, 0)},
                                              {Vec{2.0}, Complex(0.3, 0)},
                                              {Vec{3.0}, Complex(0.1, 0)}});
  Truncation t = truncate(f, 0.5);
  CHECK(t.head.size() == 2);
  CHECK(t.tail == doctest::Approx(0.4));
  CHECK(std::abs(t.head.fourier_coefficient(Vec{0.0}) - Complex(2, 0)) < 1e-15);

  Truncation all = truncate(f, 10.0);
  CHECK(all.head.empty());
  CHECK(all.tail == doctest::Approx(f.norm_w()));

  Truncation none = truncate(f, 0.05);
  CHECK(none.head.size() == 4);
  CHECK(none.tail == 0.0);
}

TEST_CASE("fourier coefficients and means") {
  ExponentialSum f = three_plus_wave();
  CHECK(f.fourier_coefficient(Vec{1.0}) == Complex(1, 0));
  CHECK(f.fourier_coefficient(Vec{0.5}) == Complex(0, 0));
  CHECK(f.fourier_coefficient(Vec{0.0}) == Complex(3, 0));
  CHECK(f.mean() == Complex(3, 0));
  CHECK(ExponentialSum::make(1, {{Vec{1.0}, Complex(1, 0)}}).mean() == Complex(0, 0));
  CHECK(ExponentialSum::make(1, {}).mean() == Complex(0, 0));
  // stored coefficients come back exactly
  std::mt19937 rng(3);
  ExponentialSum g = random_sum(rng, 2, 10);
  for (const auto& term : g.terms())
    CHECK(g.fourier_coefficient(term.freq) == term.coeff);
}

TEST_CASE("numeric mean approximates the ball average") {
  ExponentialSum f = three_plus_wave();
  Complex m0 = numeric_mean(f, Vec{0.0}, 50.0, 4096);
  CHECK(std::abs(m0 - Complex(3, 0)) < 0.1);
  Complex m1 = numeric_mean(f, Vec{1.0}, 50.0, 4096);
  CHECK(std::abs(m1 - Complex(1, 0)) < 0.1);
  ExponentialSum c = ExponentialSum::constant(1, Complex(2.5, -1));
  CHECK(std::abs(numeric_mean(c, Vec{0.0}, 10.0, 512) - Complex(2.5, -1)) < 1e-12);
  // deterministic: same call, same value
  CHECK(numeric_mean(f, Vec{0.0}, 50.0, 4096) == m0);
}
