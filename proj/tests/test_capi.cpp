// Exercises the shared-library C surface: handles, status codes, JSON round
// trips, and the coarse-grained drivers.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>

#include "qcrystal.h"

namespace {

struct Guard {
  char* s = nullptr;
  ~Guard() { qc_string_free(s); }
};

qc_expsum* make_three_plus_wave() {
  double freqs[2] = {0.0, 1.0};
  double re[2] = {3.0, 1.0};
  double im[2] = {0.0, 0.0};
  qc_expsum* f = nullptr;
  REQUIRE(qc_expsum_create(1, 2, freqs, re, im, 1e-9, &f) == QC_OK);
  return f;
}

}  // namespace

TEST_CASE("version and error text") {
  CHECK(std::string(qc_version()).size() >= 5);
  CHECK(qc_last_error() != nullptr);
}

TEST_CASE("exponential sum lifecycle") {
  qc_expsum* f = make_three_plus_wave();
  CHECK(qc_expsum_dim(f) == 1);
  CHECK(qc_expsum_term_count(f) == 2);
  CHECK(qc_expsum_norm_w(f) == doctest::Approx(4.0));

  double x = 0.5, re = 0, im = 0;
  CHECK(qc_expsum_evaluate(f, &x, &re, &im) == QC_OK);
  CHECK(re == doctest::Approx(2.0));
  CHECK(im == doctest::Approx(0.0));

  double gamma = 1.0;
  CHECK(qc_expsum_coefficient(f, &gamma, &re, &im) == QC_OK);
  CHECK(re == doctest::Approx(1.0));
  CHECK(qc_expsum_mean(f, &re, &im) == QC_OK);
  CHECK(re == doctest::Approx(3.0));

  qc_expsum* sq = nullptr;
  CHECK(qc_expsum_multiply(f, f, &sq) == QC_OK);
  CHECK(qc_expsum_term_count(sq) == 3);
  qc_expsum_free(sq);

  qc_expsum* head = nullptr;
  double tail = 0;
  CHECK(qc_expsum_truncate(f, 2.0, &head, &tail) == QC_OK);
  CHECK(qc_expsum_term_count(head) == 1);
  CHECK(tail == doctest::Approx(1.0));
  qc_expsum_free(head);

  Guard json;
  CHECK(qc_expsum_to_json(f, &json.s) == QC_OK);
  qc_expsum* back = nullptr;
  CHECK(qc_expsum_from_json(json.s, &back) == QC_OK);
  CHECK(qc_expsum_term_count(back) == 2);
  qc_expsum_free(back);

  qc_measure* spec = nullptr;
  CHECK(qc_expsum_spectrum(f, &spec) == QC_OK);
  CHECK(qc_measure_atom_count(spec) == 2);
  qc_measure_free(spec);

  qc_expsum_free(f);
}

TEST_CASE("error paths set codes and messages") {
  qc_expsum* f = nullptr;
  CHECK(qc_expsum_from_json("{not json", &f) == QC_ERR_PARSE);
  CHECK(std::strlen(qc_last_error()) > 0);

  double freqs[1] = {0.0};
  double re[1] = {NAN};
  CHECK(qc_expsum_create(1, 1, freqs, re, nullptr, 1e-9, &f) == QC_ERR_INPUT);

  qc_expsum* a = make_three_plus_wave();
  double freqs2[2] = {0.0, 0.0};
  double re2[1] = {1.0};
  qc_expsum* b = nullptr;
  REQUIRE(qc_expsum_create(2, 1, freqs2, re2, nullptr, 1e-9, &b) == QC_OK);
  qc_expsum* out = nullptr;
  CHECK(qc_expsum_add(a, b, &out) == QC_ERR_DIMENSION);
  qc_expsum_free(a);
  qc_expsum_free(b);
}

TEST_CASE("measure construction and diagnostics") {
  const char* csv = "0,1,0\n1,1,0\n2,1,0\n-1,1,0\n-2,1,0\n";
  qc_measure* mu = nullptr;
  REQUIRE(qc_measure_from_csv(csv, 1, 2.5, &mu) == QC_OK);
  CHECK(qc_measure_dim(mu) == 1);
  CHECK(qc_measure_atom_count(mu) == 5);
  CHECK(qc_measure_window(mu) == doctest::Approx(2.5));

  double tb = 0;
  CHECK(qc_measure_translation_bound(mu, &tb) == QC_OK);
  CHECK(tb == doctest::Approx(2.0));

  Guard json;
  CHECK(qc_measure_to_json(mu, &json.s) == QC_OK);
  qc_measure* back = nullptr;
  CHECK(qc_measure_from_json(json.s, &back) == QC_OK);
  CHECK(qc_measure_atom_count(back) == 5);
  qc_measure_free(back);
  qc_measure_free(mu);
}

TEST_CASE("combs, poisson transform and bohr mass through the C API") {
  int64_t basis[1] = {1};
  double shift[1] = {0.0};
  double wre[1] = {1.0};
  qc_measure* comb = nullptr;
  REQUIRE(qc_lattice_comb(1, basis, 1, 1, shift, wre, nullptr, 160.0, &comb) == QC_OK);
  CHECK(qc_measure_atom_count(comb) == 321);

  qc_measure* hat = nullptr;
  REQUIRE(qc_poisson_transform(1, basis, 1, 1, shift, wre, nullptr, 5.0, &hat) == QC_OK);
  CHECK(qc_measure_atom_count(hat) == 11);
  qc_measure_free(hat);

  double lambda = 0.0, re = 0, im = 0;
  CHECK(qc_measure_bohr_mass(comb, &lambda, 100.0, &re, &im) == QC_OK);
  CHECK(re == doctest::Approx(1.0).epsilon(0.05));
  // window violation
  CHECK(qc_measure_bohr_mass(comb, &lambda, 150.0, &re, &im) == QC_ERR_WINDOW);
  qc_measure_free(comb);
}

TEST_CASE("compose driver through the C API") {
  qc_expsum* f = make_three_plus_wave();
  qc_expsum* g = nullptr;
  Guard report;
  REQUIRE(qc_compose(f, "inv", 1.0, 1e-8, 256, &g, &report.s) == QC_OK);
  double gamma = 0.0, re = 0, im = 0;
  CHECK(qc_expsum_coefficient(g, &gamma, &re, &im) == QC_OK);
  CHECK(re == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
  CHECK(std::string(report.s).find("residual") != std::string::npos);
  qc_expsum_free(g);

  // domain failure: |f| dips below the guard
  double freqs[2] = {0.0, 1.0};
  double re2[2] = {0.5, 1.0};
  qc_expsum* small = nullptr;
  REQUIRE(qc_expsum_create(1, 2, freqs, re2, nullptr, 1e-9, &small) == QC_OK);
  qc_expsum* g2 = nullptr;
  CHECK(qc_invert(small, 1.0, 1e-6, 256, &g2, nullptr) == QC_ERR_DOMAIN);
  qc_expsum_free(small);
  qc_expsum_free(f);
}

TEST_CASE("coset layer through JSON") {
  const char* sum =
      R"({"terms":[{"coset":{"lattice":{"dim":1,"denominator":1,"basis":[[2]]},"offset":[0]},"mult":1},
                   {"coset":{"lattice":{"dim":1,"denominator":1,"basis":[[3]]},"offset":[0]},"mult":1}]})";
  Guard out;
  REQUIRE(qc_coset_normalize(sum, &out.s) == QC_OK);
  std::string text(out.s);
  CHECK(text.find("\"clean\":true") != std::string::npos);

  const char* a = R"({"lattice":{"dim":1,"denominator":1,"basis":[[2]]},"offset":[0]})";
  const char* b = R"({"lattice":{"dim":1,"denominator":1,"basis":[[2]]},"offset":[1]})";
  Guard meet;
  REQUIRE(qc_coset_intersect(a, b, &meet.s) == QC_OK);
  CHECK(std::string(meet.s) == "null");
}

TEST_CASE("detection and analysis drivers") {
  // 2Z union (2Z + 0.5)
  std::string csv;
  for (int k = -40; k <= 40; k += 2) {
    csv += std::to_string(k) + "\n";
    if (k + 0.5 <= 40) csv += std::to_string(k + 0.5) + "\n";
  }
  qc_measure* mu = nullptr;
  REQUIRE(qc_measure_from_csv(csv.c_str(), 1, 40.0, &mu) == QC_OK);

  Guard det;
  REQUIRE(qc_detect_lattice(mu, 40.0, 1e-9, &det.s) == QC_OK);
  CHECK(std::string(det.s).find("\"ok\":true") != std::string::npos);

  Guard report;
  int ok = 0;
  REQUIRE(qc_analyze(mu, 40.0, 1e-9, 0.1, &report.s, &ok) == QC_OK);
  CHECK(ok == 1);
  CHECK(std::string(report.s).find("decomposition") != std::string::npos);

  double lambdas[2] = {0.0, 0.5};
  double radii[2] = {10.0, 20.0};
  Guard table;
  REQUIRE(qc_diffract(mu, lambdas, 2, radii, 2, 0, &table.s) == QC_OK);
  // header + 4 rows
  int lines = 0;
  for (const char* p = table.s; *p; ++p)
    if (*p == '\n') ++lines;
  CHECK(lines == 5);
  qc_measure_free(mu);
}

TEST_CASE("smoothing, interpolation and the quasicrystal map through the C API") {
  int64_t basis[1] = {2};
  double shifts[2] = {0.0, 1.0};
  double wre[2] = {4.0, 2.0};
  qc_measure* direct = nullptr;
  qc_measure* spectrum = nullptr;
  REQUIRE(qc_lattice_comb(1, basis, 1, 2, shifts, wre, nullptr, 140.0, &direct) == QC_OK);
  REQUIRE(qc_poisson_transform(1, basis, 1, 2, shifts, wre, nullptr, 140.0, &spectrum) ==
          QC_OK);

  qc_expsum* smoothed = nullptr;
  REQUIRE(qc_measure_smooth_gaussian(spectrum, 2.0, &smoothed) == QC_OK);
  CHECK(qc_expsum_term_count(smoothed) > 3);
  qc_expsum_free(smoothed);

  qc_expsum* interp = nullptr;
  double dev = 0;
  REQUIRE(qc_interpolant(direct, spectrum, 0.45, 1e-5, &interp, &dev) == QC_OK);
  CHECK(dev <= 1e-5);
  double x = 1.0, re = 0, im = 0;
  CHECK(qc_expsum_evaluate(interp, &x, &re, &im) == QC_OK);
  CHECK(re == doctest::Approx(2.0).epsilon(1e-4));
  qc_expsum_free(interp);

  double gamma = 0.0;
  REQUIRE(qc_expsum_create(1, 0, nullptr, nullptr, nullptr, 1e-9, &interp) == QC_OK);
  double nm_re = 0, nm_im = 0;
  CHECK(qc_expsum_numeric_mean(interp, &gamma, 10.0, 256, &nm_re, &nm_im) == QC_OK);
  CHECK(nm_re == doctest::Approx(0.0));
  qc_expsum_free(interp);

  qc_measure* nu_direct = nullptr;
  qc_measure* nu_spectrum = nullptr;
  Guard report;
  REQUIRE(qc_quasicrystal_map(direct, spectrum, "inv", 1.0, 1e-5, &nu_direct, &nu_spectrum,
                              &report.s) == QC_OK);
  CHECK(qc_measure_atom_count(nu_direct) == qc_measure_atom_count(direct));
  CHECK(std::string(report.s).find("g_deviation") != std::string::npos);
  qc_measure_free(nu_direct);
  qc_measure_free(nu_spectrum);

  Guard periods;
  REQUIRE(qc_almost_periods(direct, 0.1, 0.1, 30.0, &periods.s) == QC_OK);
  CHECK(std::string(periods.s).find("density_radius") != std::string::npos);

  qc_measure_free(direct);
  qc_measure_free(spectrum);
}

TEST_CASE("verify suites report through the C API") {
  Guard summary;
  CHECK(qc_verify_suite("nope", &summary.s) == 1);
  CHECK(std::string(summary.s).find("unknown") != std::string::npos);

  Guard ok;
  CHECK(qc_verify_suite("poisson", &ok.s) == 0);
  CHECK(std::string(ok.s).find("[pass]") != std::string::npos);
}
