#include "core/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "core/analyze.hpp"
#include "core/detect.hpp"
#include "core/qcmap.hpp"

namespace qc {

namespace {

constexpr double pi = std::numbers::pi;

void check(VerifyOutcome& out, const std::string& name, bool ok, const std::string& detail) {
  out.checks.push_back({name, ok, detail});
  if (!ok) out.passed = false;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

AtomicMeasure integer_comb(double window) {
  return lattice_comb(Lattice::integers(1), {Vec{0.0}}, {Complex(1, 0)}, window);
}

VerifyOutcome suite_poisson() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;

  // fixed point: the transform of the unit integer comb is itself
  AtomicMeasure mu0 = integer_comb(10.0);
  AtomicMeasure hat = poisson_transform(Lattice::integers(1), {Vec{0.0}}, {Complex(1, 0)}, 10.0);
  bool fixed = hat.size() == mu0.size();
  for (size_t i = 0; fixed && i < hat.size(); ++i)
    fixed = std::abs(hat.atoms()[i].pos[0] - mu0.atoms()[i].pos[0]) < 1e-12 &&
            std::abs(hat.atoms()[i].weight - mu0.atoms()[i].weight) < 1e-12;
  check(out, "integer comb is a fixed point", fixed, std::to_string(hat.size()) + " atoms");

  // theta functional equation at t = 2 through smoothing + evaluation
  double t = 2.0;
  ExponentialSum f = smooth_with(hat, [&](double r) { return std::exp(-pi * t * r * r); });
  double lhs = f.evaluate(0.0).real();
  double rhs = 0;
  for (int k = -60; k <= 60; ++k) rhs += std::exp(-pi * k * k / t);
  rhs /= std::sqrt(t);
  check(out, "theta identity at t=2", std::abs(lhs - rhs) <= 1e-10,
        "|lhs-rhs|=" + num(std::abs(lhs - rhs)));

  // two-translate comb: spectrum has weight 3 on Z and 1 on Z + 1/2
  Lattice two = Lattice::diagonal({Rat(2)});
  AtomicMeasure sp = poisson_transform(two, {Vec{0.0}, Vec{1.0}},
                                       {Complex(4, 0), Complex(2, 0)}, 5.0);
  bool weights_ok = true;
  for (const auto& a : sp.atoms()) {
    double frac = a.pos[0] - std::round(a.pos[0]);
    double want = std::abs(frac) < 1e-9 ? 3.0 : 1.0;
    if (std::abs(a.weight - Complex(want, 0)) > 1e-12) weights_ok = false;
  }
  check(out, "two-translate character sums", weights_ok && !sp.empty(),
        std::to_string(sp.size()) + " spectrum atoms");
  return out;
}

VerifyOutcome suite_wiener1d() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;
  ExponentialSum f = ExponentialSum::make(1, {{Vec{0.0}, Complex(3, 0)}, {Vec{1.0}, Complex(1, 0)}});
  CompactRegion k = sample_region(f, 1.0, 256);
  ComposeResult res = invert(f, k, 1e-8);

  std::vector<SumTerm> oracle_terms;
  for (int n = 0; n <= 30; ++n)
    oracle_terms.push_back({Vec{double(n)}, Complex((n % 2 ? -1.0 : 1.0) * std::pow(3.0, -n - 1), 0)});
  ExponentialSum oracle = ExponentialSum::make(1, std::move(oracle_terms));
  double dist = sub(res.g, oracle).norm_w();
  check(out, "geometric series coefficients", dist <= 1e-6, "||g-oracle||_W=" + num(dist));

  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    double x = 0.61803398875 * (i + 1);
    Complex v = res.g.evaluate(x) * f.evaluate(x);
    worst = std::max(worst, std::abs(v - Complex(1, 0)));
  }
  check(out, "pointwise inverse", worst <= 1e-6, "max|gf-1|=" + num(worst));
  return out;
}

VerifyOutcome suite_wiener2d() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;
  ExponentialSum f = ExponentialSum::make(1, {{Vec{0.0}, Complex(2, 0)},
                                              {Vec{1.0}, Complex(0.2, 0)},
                                              {Vec{std::sqrt(2.0)}, Complex(0.1, 0)}});
  HolomorphicFn h = h_exp();
  CompactRegion k = sample_region(f, 0.8, 4096);
  ComposeResult res = compose(f, h, k, 3e-6);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    double x = 0.37 * (i + 1);
    Complex fx = f.evaluate(x);
    worst = std::max(worst, std::abs(res.g.evaluate(x) - std::exp(fx)));
  }
  check(out, "exp composition", worst <= 1e-5, "max|g-exp(f)|=" + num(worst));
  // the three kept terms have frequencies {0, 1, sqrt 2}: two generators
  check(out, "torus rank of an irrational pair", res.report.rank == 2,
        "rank=" + std::to_string(res.report.rank));
  return out;
}

VerifyOutcome suite_bohr() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;
  AtomicMeasure mu0 = integer_comb(160.0);
  double e100 = std::abs(bohr_mass(mu0, Vec{0.0}, 100.0) - Complex(1, 0));
  double e25 = std::abs(bohr_mass(mu0, Vec{0.0}, 25.0) - Complex(1, 0));
  double off = std::abs(bohr_mass(mu0, Vec{1.0 / 3.0}, 100.0));
  check(out, "unit mass at 0", e100 <= 0.05, "err=" + num(e100));
  check(out, "no mass at 1/3", off <= 0.05, "val=" + num(off));
  check(out, "error shrinks with R", e100 < e25,
        "err(100)=" + num(e100) + " err(25)=" + num(e25));
  return out;
}

VerifyOutcome suite_theorem7() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;
  double w = 200.0;
  Lattice two = Lattice::diagonal({Rat(2)});
  AtomicMeasure direct = lattice_comb(two, {Vec{0.0}, Vec{1.0}},
                                      {Complex(4, 0), Complex(2, 0)}, w);
  AtomicMeasure spec = poisson_transform(two, {Vec{0.0}, Vec{1.0}},
                                         {Complex(4, 0), Complex(2, 0)}, w);
  QuasicrystalPair pair = QuasicrystalPair::make(direct, spec);
  QuasicrystalMapResult res = quasicrystal_map(pair, h_inverse(), 1.0, 1e-6);
  double wdev = 0;
  for (const auto& a : res.nu.direct.atoms()) wdev = std::max(wdev, std::abs(a.weight - Complex(1, 0)));
  check(out, "direct weights become 1", wdev <= 1e-5, "max dev=" + num(wdev));

  double sdev = 0;
  for (const auto& a : res.nu.spectrum.atoms()) {
    if (std::abs(a.pos[0]) > 10.0) continue;
    double frac = std::abs(a.pos[0] - std::round(a.pos[0]));
    double want = frac < 1e-6 ? 1.0 : 0.0;
    sdev = std::max(sdev, std::abs(a.weight - Complex(want, 0)));
  }
  check(out, "spectrum becomes the unit comb", sdev <= 1e-4, "max dev=" + num(sdev));
  check(out, "g certificate", res.g_deviation <= 1e-5, "max|g-1/a|=" + num(res.g_deviation));
  return out;
}

VerifyOutcome suite_coset() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;

  Lattice z2 = Lattice::diagonal({Rat(2)});
  Lattice z3 = Lattice::diagonal({Rat(3)});
  SignedCosetSum u{{Coset(z2, {Rat(0)}), 1}, {Coset(z3, {Rat(0)}), 1}};
  NormalizeResult nr = coset_union_normalize(u);
  bool four = nr.disjoint.size() == 4 && nr.clean;
  check(out, "2Z union 3Z -> four cosets of 6Z", four,
        std::to_string(nr.disjoint.size()) + " cosets");

  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> entry(-4, 4), off(0, 5), count(2, 4);
  bool all_match = true;
  std::string fail_detail = "20 random unions match brute force on [-20,20]^2";
  for (int trial = 0; trial < 20 && all_match; ++trial) {
    SignedCosetSum input;
    int n = count(rng);
    for (int c = 0; c < n; ++c) {
      IMat m(2, 2);
      do {
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) m.at(i, j) = entry(rng);
      } while (det_bareiss(m) == 0);
      input.push_back({Coset(Lattice::from_columns(2, m, 1),
                             {Rat(off(rng)), Rat(off(rng))}), 1});
    }
    NormalizeResult res = coset_union_normalize(input);
    for (i64 x = -20; x <= 20 && all_match; ++x)
      for (i64 y = -20; y <= 20; ++y) {
        RatVec p{Rat(x), Rat(y)};
        bool want = false;
        for (const auto& t : input)
          if (t.coset.contains(p)) { want = true; break; }
        int got = 0;
        for (const auto& c : res.disjoint)
          if (c.contains(p)) ++got;
        if (got != (want ? 1 : 0)) {
          all_match = false;
          fail_detail = "mismatch at (" + std::to_string(x) + "," + std::to_string(y) + ")";
          break;
        }
      }
  }
  check(out, "random unions match brute force", all_match, fail_detail);
  return out;
}

VerifyOutcome suite_detect() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;

  std::vector<Vec> pts;
  for (int k = -50; k <= 50; ++k) {
    pts.push_back({2.0 * k});
    pts.push_back({2.0 * k + 0.5});
  }
  std::erase_if(pts, [](const Vec& p) { return std::abs(p[0]) > 100.0; });
  DetectResult two = detect_lattice(pts, 100.0, 1e-9);
  check(out, "2Z with two translates", two.ok && two.translates.size() == 2,
        two.ok ? std::to_string(two.translates.size()) + " translates" : two.reason);

  std::vector<Vec> grid;
  for (int x = -12; x <= 12; ++x)
    for (int y = -12; y <= 12; ++y)
      if (x * x + y * y <= 144) grid.push_back({double(x), double(y)});
  DetectResult z2 = detect_lattice(grid, 12.0, 1e-9);
  check(out, "Z^2 single coset", z2.ok && z2.translates.size() == 1,
        z2.ok ? "ok" : z2.reason);

  std::vector<Vec> squares;
  for (int k = 0; k <= 14; ++k) squares.push_back({double(k * k)});
  DetectResult sq = detect_lattice(squares, 196.0, 1e-9);
  check(out, "squares are rejected", !sq.ok, sq.ok ? "unexpected success" : sq.reason);
  return out;
}

VerifyOutcome suite_periods() {
  VerifyOutcome out;
  out.known = true;
  out.passed = true;
  std::vector<MeasureAtom> atoms;
  for (int k = -50; k <= 50; ++k)
    atoms.push_back({{double(k)}, Complex(3.0 + (k % 2 == 0 ? 1.0 : -1.0), 0)});
  AtomicMeasure mu = AtomicMeasure::make(1, 50.0, std::move(atoms));
  AlmostPeriodResult ap = almost_periods(mu, 0.1, 0.1, 40.0);
  bool evens = !ap.periods.empty();
  for (const auto& p : ap.periods) {
    double r = std::round(p[0]);
    if (std::abs(p[0] - r) > 1e-9 || (i64(r) % 2) != 0) evens = false;
  }
  i64 found = i64(ap.periods.size());
  evens = evens && found == 41;  // even integers in [-40, 40]
  check(out, "periods are the even integers", evens,
        std::to_string(found) + " periods, density_radius=" + num(ap.density_radius));
  bool symmetric = true;
  for (const auto& p : ap.periods) {
    bool has_neg = false;
    for (const auto& q : ap.periods)
      if (std::abs(q[0] + p[0]) < 1e-9) { has_neg = true; break; }
    if (!has_neg) symmetric = false;
  }
  check(out, "period set is symmetric", symmetric, "");
  return out;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"poisson", "wiener1d", "wiener2d", "bohr", "theorem7", "coset", "detect", "periods"};
}

VerifyOutcome run_verify_suite(const std::string& name) {
  if (name == "poisson") return suite_poisson();
  if (name == "wiener1d") return suite_wiener1d();
  if (name == "wiener2d") return suite_wiener2d();
  if (name == "bohr") return suite_bohr();
  if (name == "theorem7") return suite_theorem7();
  if (name == "coset") return suite_coset();
  if (name == "detect") return suite_detect();
  if (name == "periods") return suite_periods();
  return {};
}

}  // namespace qc
