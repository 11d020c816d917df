#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "core/measure.hpp"

using namespace qc;

namespace {

constexpr double pi = std::numbers::pi;

AtomicMeasure integer_comb(double window) {
  return lattice_comb(Lattice::integers(1), {Vec{0.0}}, {Complex(1, 0)}, window);
}

// weights 3 + (-1)^k on the integers, as the comb (2Z) + (2Z+1)
AtomicMeasure alternating_comb(double window) {
  return lattice_comb(Lattice::diagonal({Rat(2)}), {Vec{0.0}, Vec{1.0}},
                      {Complex(4, 0), Complex(2, 0)}, window);
}

AtomicMeasure alternating_spectrum(double window) {
  return poisson_transform(Lattice::diagonal({Rat(2)}), {Vec{0.0}, Vec{1.0}},
                           {Complex(4, 0), Complex(2, 0)}, window);
}

}  // namespace

TEST_CASE("combs enumerate lattice translates") {
  AtomicMeasure mu0 = integer_comb(10.0);
  CHECK(mu0.size() == 21);
  CHECK(mu0.atoms().front().pos[0] == doctest::Approx(-10.0));
  CHECK(mu0.atoms().back().pos[0] == doctest::Approx(10.0));

  AtomicMeasure two = lattice_comb(Lattice::diagonal({Rat(2)}), {Vec{0.0}, Vec{0.5}},
                                   {Complex(1, 0), Complex(1, 0)}, 5.0);
  CHECK(two.size() == 10);  // {-4,-2,0,2,4} and {-3.5,...,4.5}

  AtomicMeasure merged = lattice_comb(Lattice::integers(1), {Vec{0.0}, Vec{0.0}},
                                      {Complex(3, 0), Complex(-1, 0)}, 3.0);
  for (const auto& a : merged.atoms()) CHECK(a.weight == Complex(2, 0));

  AtomicMeasure grid = lattice_comb(Lattice::integers(2), {Vec{0.0, 0.0}},
                                    {Complex(1, 0)}, 5.0);
  int count = 0;
  for (int x = -5; x <= 5; ++x)
    for (int y = -5; y <= 5; ++y)
      if (x * x + y * y <= 25) ++count;
  CHECK(int(grid.size()) == count);
}

TEST_CASE("poisson transform fixed point and dilation") {
  AtomicMeasure hat = poisson_transform(Lattice::integers(1), {Vec{0.0}}, {Complex(1, 0)}, 10.0);
  AtomicMeasure mu0 = integer_comb(10.0);
  REQUIRE(hat.size() == mu0.size());
  for (size_t i = 0; i < hat.size(); ++i) {
    CHECK(hat.atoms()[i].pos[0] == doctest::Approx(mu0.atoms()[i].pos[0]).epsilon(1e-14));
    CHECK(std::abs(hat.atoms()[i].weight - Complex(1, 0)) < 1e-14);
  }

  AtomicMeasure half = poisson_transform(Lattice::diagonal({Rat(2)}), {Vec{0.0}},
                                         {Complex(1, 0)}, 3.0);
  CHECK(half.size() == 13);  // multiples of 1/2 within |x| <= 3
  for (const auto& a : half.atoms()) {
    CHECK(std::abs(a.weight - Complex(0.5, 0)) < 1e-14);
    CHECK(std::abs(a.pos[0] * 2 - std::round(a.pos[0] * 2)) < 1e-12);
  }
}

TEST_CASE("poisson transform character sums") {
  AtomicMeasure sp = alternating_spectrum(4.0);
  for (const auto& a : sp.atoms()) {
    double frac = std::abs(a.pos[0] - std::round(a.pos[0]));
    if (frac < 1e-9)
      CHECK(std::abs(a.weight - Complex(3, 0)) < 1e-13);
    else
      CHECK(std::abs(a.weight - Complex(1, 0)) < 1e-13);
  }
  CHECK(sp.size() == 17);  // 9 integers + 8 half-integers within |x| <= 4
}

TEST_CASE("poisson round trip with reflection") {
  // mu = 2 * delta on (Z + 1/4): spectrum has weights 2(-i)^gamma on Z,
  // which is the comb of 4Z with shifts 0..3
  std::vector<Vec> shifts{{0.0}, {1.0}, {2.0}, {3.0}};
  std::vector<Complex> weights{{2, 0}, {0, -2}, {-2, 0}, {0, 2}};
  AtomicMeasure spectrum = poisson_transform(Lattice::integers(1), {Vec{0.25}},
                                             {Complex(2, 0)}, 6.0);
  for (const auto& a : spectrum.atoms()) {
    int k = int(std::round(a.pos[0]));
    Complex want = Complex(2, 0) * std::pow(Complex(0, -1), k);
    CHECK(std::abs(a.weight - want) < 1e-12);
  }
  // second transform of that spectrum structure: atoms at Z + 3/4 = -(Z + 1/4)
  AtomicMeasure back = poisson_transform(Lattice::diagonal({Rat(4)}), shifts, weights, 6.0);
  for (const auto& a : back.atoms()) {
    double frac = a.pos[0] - std::floor(a.pos[0]);
    CHECK(frac == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::abs(a.weight - Complex(2, 0)) < 1e-12);
  }
  CHECK(!back.empty());
}

TEST_CASE("gaussian smoothing of the unit comb") {
  AtomicMeasure sp = poisson_transform(Lattice::integers(1), {Vec{0.0}}, {Complex(1, 0)}, 3.0);
  ExponentialSum f = smooth_with(sp, [](double r) { return std::exp(-pi * r * r); });
  REQUIRE(f.size() == 7);
  for (int k = -3; k <= 3; ++k) {
    Complex c = f.fourier_coefficient(Vec{double(k)});
    CHECK(std::abs(c - Complex(std::exp(-pi * k * k), 0)) < 1e-14);
  }

  AtomicMeasure single = AtomicMeasure::make(1, 1.0, {{Vec{0.0}, Complex(5, 0)}});
  ExponentialSum c5 = smooth_with(single, [](double r) { return std::exp(-pi * r * r); });
  CHECK(c5.size() == 1);
  CHECK(std::abs(c5.evaluate(0.33) - Complex(5, 0)) < 1e-14);

  AtomicMeasure empty = AtomicMeasure::make(1, 1.0, {});
  CHECK(smooth_with(empty, [](double r) { return std::exp(-r); }).empty());
}

TEST_CASE("theta functional equation via smoothing") {
  // sum_k e^{-pi t k^2} = t^{-1/2} sum_k e^{-pi k^2 / t} at t = 2
  AtomicMeasure sp = poisson_transform(Lattice::integers(1), {Vec{0.0}}, {Complex(1, 0)}, 12.0);
  double t = 2.0;
  ExponentialSum f = smooth_with(sp, [&](double r) { return std::exp(-pi * t * r * r); });
  double lhs = f.evaluate(0.0).real();
  double rhs = 0;
  for (int k = -80; k <= 80; ++k) rhs += std::exp(-pi * k * k / t);
  rhs /= std::sqrt(t);
  CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("interpolant hits the atom weights") {
  AtomicMeasure direct = integer_comb(240.0);
  AtomicMeasure spectrum = poisson_transform(Lattice::integers(1), {Vec{0.0}},
                                             {Complex(1, 0)}, 240.0);
  QuasicrystalPair pair = QuasicrystalPair::make(direct, spectrum);
  InterpolantResult res = interpolant(pair, 0.4, 1e-6, true);
  CHECK(res.max_deviation <= 1e-6);
  CHECK(std::abs(res.f.evaluate(0.0) - Complex(1, 0)) <= 1e-6);
  CHECK(std::abs(res.f.evaluate(7.0) - Complex(1, 0)) <= 1e-6);

  QuasicrystalPair alt = QuasicrystalPair::make(alternating_comb(240.0),
                                                alternating_spectrum(240.0));
  InterpolantResult res2 = interpolant(alt, 0.45, 1e-5, true);
  CHECK(res2.max_deviation <= 1e-5);
  CHECK(std::abs(res2.f.evaluate(0.0) - Complex(4, 0)) <= 1e-5);
  CHECK(std::abs(res2.f.evaluate(1.0) - Complex(2, 0)) <= 1e-5);

  // eta above half the gap is rejected
  CHECK_THROWS_AS(interpolant(pair, 0.6, 1e-6, true), Error);
}

TEST_CASE("bohr mass estimates spectral point masses") {
  AtomicMeasure mu0 = integer_comb(160.0);
  CHECK(std::abs(bohr_mass(mu0, Vec{0.0}, 100.0) - Complex(1, 0)) <= 0.05);
  CHECK(std::abs(bohr_mass(mu0, Vec{1.0 / 3.0}, 100.0)) <= 0.05);

  AtomicMeasure two = AtomicMeasure::make(1, 160.0, [&] {
    std::vector<MeasureAtom> atoms;
    for (const auto& a : mu0.atoms()) atoms.push_back({a.pos, a.weight * 2.0});
    return atoms;
  }());
  CHECK(std::abs(bohr_mass(two, Vec{0.0}, 100.0) - Complex(2, 0)) <= 0.1);

  // at lambda = 0 the estimator saturates machine precision for all R
  CHECK(std::abs(bohr_mass(mu0, Vec{0.0}, 25.0) - Complex(1, 0)) <= 1e-10);
  // off the spectrum the character sum decays monotonically in R
  double e25 = std::abs(bohr_mass(mu0, Vec{1.0 / 3.0}, 25.0));
  double e50 = std::abs(bohr_mass(mu0, Vec{1.0 / 3.0}, 50.0));
  double e100 = std::abs(bohr_mass(mu0, Vec{1.0 / 3.0}, 100.0));
  CHECK(e50 < e25);
  CHECK(e100 < e50);

  CHECK_THROWS_AS(bohr_mass(mu0, Vec{0.0}, 120.0), Error);  // 1.5 R beyond window
}

TEST_CASE("translation bound and growth exponent") {
  AtomicMeasure mu0 = integer_comb(40.0);
  CHECK(translation_bound(mu0) == doctest::Approx(2.0));

  CHECK(growth_exponent(mu0, {10, 20, 40}) == doctest::Approx(1.0).epsilon(0.05));

  std::vector<MeasureAtom> ramp;
  for (int k = -80; k <= 80; ++k)
    if (k != 0) ramp.push_back({{double(k)}, Complex(std::abs(k), 0)});
  AtomicMeasure weighted = AtomicMeasure::make(1, 80.0, std::move(ramp));
  CHECK(growth_exponent(weighted, {10, 20, 40, 80}) == doctest::Approx(2.0).epsilon(0.05));

  CHECK_THROWS_AS(growth_exponent(mu0, {10}), Error);
}

TEST_CASE("modulation is linear in the multiplier") {
  AtomicMeasure sp = alternating_spectrum(20.0);
  ExponentialSum g1 = ExponentialSum::make(1, {{Vec{0.5}, Complex(2, 0)}});
  ExponentialSum g2 = ExponentialSum::make(1, {{Vec{-1.0}, Complex(0, 1)}, {Vec{0.5}, Complex(1, 0)}});
  AtomicMeasure lhs = modulate(sp, add(g1, g2));
  AtomicMeasure part1 = modulate(sp, g1);
  AtomicMeasure part2 = modulate(sp, g2);
  std::vector<MeasureAtom> joined = part1.atoms();
  joined.insert(joined.end(), part2.atoms().begin(), part2.atoms().end());
  AtomicMeasure sum_parts = AtomicMeasure::make(sp.dim(), lhs.window(), std::move(joined));
  REQUIRE(lhs.size() > 0);
  // compare on the common (smaller) window
  double w = std::min(lhs.window(), sum_parts.window());
  for (const auto& a : lhs.atoms()) {
    if (std::abs(a.pos[0]) > w) continue;
    bool found = false;
    for (const auto& b : sum_parts.atoms())
      if (std::abs(a.pos[0] - b.pos[0]) < 1e-9) {
        CHECK(std::abs(a.weight - b.weight) < 1e-12);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("uniform weight bound from the smoothed spectrum") {
  // max |a| <= sum |b psi_hat| for a bump below half the gap
  AtomicMeasure direct = alternating_comb(60.0);
  AtomicMeasure spectrum = alternating_spectrum(60.0);
  BumpFunction bump(0.45);
  double rhs = 0;
  for (const auto& a : spectrum.atoms())
    rhs += std::abs(a.weight) * std::abs(bump.fourier(1, std::abs(a.pos[0])) / bump.value(0));
  double lhs = 0;
  for (const auto& a : direct.atoms()) lhs = std::max(lhs, std::abs(a.weight));
  CHECK(lhs <= rhs + 1e-9);
}

TEST_CASE("spectrum of a sum lists its term atoms") {
  ExponentialSum f =
      ExponentialSum::make(1, {{Vec{0.0}, Complex(3, 0)}, {Vec{1.0}, Complex(1, 0)}});
  AtomicMeasure sp = spectrum_measure(f);
  REQUIRE(sp.size() == 2);
  CHECK(sp.atoms()[0].pos[0] == 0.0);
  CHECK(sp.atoms()[0].weight == Complex(3, 0));
  CHECK(sp.atoms()[1].pos[0] == 1.0);
  CHECK(sp.atoms()[1].weight == Complex(1, 0));

  ExponentialSum one_plus =
      ExponentialSum::make(1, {{Vec{0.0}, Complex(1, 0)}, {Vec{1.0}, Complex(1, 0)}});
  AtomicMeasure sq = spectrum_measure(multiply(one_plus, one_plus));
  REQUIRE(sq.size() == 3);
  CHECK(sq.atoms()[1].weight == Complex(2, 0));

  CHECK(spectrum_measure(ExponentialSum::make(1, {})).empty());
}

TEST_CASE("atom merging and validation") {
  AtomicMeasure m = AtomicMeasure::make(
      1, 5.0, {{Vec{1.0}, Complex(1, 0)}, {Vec{1.0 + 1e-12}, Complex(2, 0)}});
  CHECK(m.size() == 1);
  CHECK(m.atoms()[0].weight == Complex(3, 0));
  AtomicMeasure cancel = AtomicMeasure::make(
      1, 5.0, {{Vec{0.0}, Complex(1, 0)}, {Vec{0.0}, Complex(-1, 0)}});
  CHECK(cancel.empty());
  CHECK_THROWS_AS(AtomicMeasure::make(1, 5.0, {{Vec{0.0}, Complex(NAN, 0)}}), Error);
}
