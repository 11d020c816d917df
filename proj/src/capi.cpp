// C ABI wrapper around the core library: opaque handles, status codes,
// thread-local error text.
#include "qcrystal.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "core/analyze.hpp"
#include "core/detect.hpp"
#include "core/qcmap.hpp"
#include "core/serialize.hpp"
#include "core/verify.hpp"

struct qc_expsum {
  qc::ExponentialSum value;
};
struct qc_measure {
  qc::AtomicMeasure value;
};

namespace {

thread_local std::string g_last_error;

qc_status status_of(qc::Err code) {
  using qc::Err;
  switch (code) {
    case Err::input: return QC_ERR_INPUT;
    case Err::dimension: return QC_ERR_DIMENSION;
    case Err::domain: return QC_ERR_DOMAIN;
    case Err::capacity: return QC_ERR_CAPACITY;
    case Err::divergence: return QC_ERR_DIVERGENCE;
    case Err::precision: return QC_ERR_PRECISION;
    case Err::window: return QC_ERR_WINDOW;
    case Err::detection: return QC_ERR_DETECTION;
    case Err::remainder: return QC_ERR_REMAINDER;
    case Err::parse: return QC_ERR_PARSE;
    case Err::internal: return QC_ERR_INTERNAL;
  }
  return QC_ERR_INTERNAL;
}

template <typename Fn>
qc_status guarded(Fn&& fn) {
  try {
    fn();
    return QC_OK;
  } catch (const qc::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qc::Lattice lattice_from_arrays(int dim, const int64_t* basis, int64_t den) {
  qc::IMat num(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) num.at(i, j) = basis[size_t(j) * dim + i];
  return qc::Lattice::from_columns(dim, num, den);
}

void comb_args(int dim, size_t nshifts, const double* shifts, const double* wre,
               const double* wim, std::vector<qc::Vec>* sh, std::vector<qc::Complex>* w) {
  for (size_t s = 0; s < nshifts; ++s) {
    sh->emplace_back(shifts + s * dim, shifts + (s + 1) * dim);
    w->emplace_back(wre[s], wim ? wim[s] : 0.0);
  }
}

}  // namespace

extern "C" {

const char* qc_version(void) { return "1.0.0"; }

const char* qc_last_error(void) { return g_last_error.c_str(); }

void qc_string_free(char* s) { delete[] s; }

/* ---- exponential sums ---- */

qc_status qc_expsum_create(int dim, size_t nterms, const double* freqs, const double* re,
                           const double* im, double freq_tol, qc_expsum** out) {
  return guarded([&] {
    std::vector<qc::SumTerm> raw;
    raw.reserve(nterms);
    for (size_t t = 0; t < nterms; ++t) {
      qc::SumTerm term;
      term.freq.assign(freqs + t * dim, freqs + (t + 1) * dim);
      term.coeff = qc::Complex(re[t], im ? im[t] : 0.0);
      raw.push_back(std::move(term));
    }
    *out = new qc_expsum{qc::ExponentialSum::make(dim, std::move(raw), freq_tol)};
  });
}

qc_status qc_expsum_from_json(const char* json, qc_expsum** out) {
  return guarded([&] {
    *out = new qc_expsum{qc::expsum_from_json(qc::parse_json(json))};
  });
}

qc_status qc_expsum_to_json(const qc_expsum* f, char** json_out) {
  return guarded([&] { *json_out = dup_string(qc::expsum_to_json(f->value).dump()); });
}

void qc_expsum_free(qc_expsum* f) { delete f; }

int qc_expsum_dim(const qc_expsum* f) { return f->value.dim(); }

size_t qc_expsum_term_count(const qc_expsum* f) { return f->value.size(); }

double qc_expsum_norm_w(const qc_expsum* f) { return f->value.norm_w(); }

qc_status qc_expsum_evaluate(const qc_expsum* f, const double* x, double* re, double* im) {
  return guarded([&] {
    qc::Complex v = f->value.evaluate(std::span<const double>(x, size_t(f->value.dim())));
    *re = v.real();
    *im = v.imag();
  });
}

qc_status qc_expsum_coefficient(const qc_expsum* f, const double* gamma, double* re,
                                double* im) {
  return guarded([&] {
    qc::Complex v =
        f->value.fourier_coefficient(std::span<const double>(gamma, size_t(f->value.dim())));
    *re = v.real();
    *im = v.imag();
  });
}

qc_status qc_expsum_mean(const qc_expsum* f, double* re, double* im) {
  return guarded([&] {
    qc::Complex v = f->value.mean();
    *re = v.real();
    *im = v.imag();
  });
}

qc_status qc_expsum_numeric_mean(const qc_expsum* f, const double* gamma, double radius,
                                 int samples, double* re, double* im) {
  return guarded([&] {
    qc::Complex v = qc::numeric_mean(
        f->value, std::span<const double>(gamma, size_t(f->value.dim())), radius, samples);
    *re = v.real();
    *im = v.imag();
  });
}

qc_status qc_expsum_add(const qc_expsum* f, const qc_expsum* g, qc_expsum** out) {
  return guarded([&] { *out = new qc_expsum{qc::add(f->value, g->value)}; });
}

qc_status qc_expsum_scale(const qc_expsum* f, double re, double im, qc_expsum** out) {
  return guarded([&] { *out = new qc_expsum{qc::scale(f->value, qc::Complex(re, im))}; });
}

qc_status qc_expsum_multiply(const qc_expsum* f, const qc_expsum* g, qc_expsum** out) {
  return guarded([&] { *out = new qc_expsum{qc::multiply(f->value, g->value)}; });
}

qc_status qc_expsum_truncate(const qc_expsum* f, double eta, qc_expsum** head, double* tail) {
  return guarded([&] {
    qc::Truncation t = qc::truncate(f->value, eta);
    *head = new qc_expsum{std::move(t.head)};
    *tail = t.tail;
  });
}

qc_status qc_expsum_spectrum(const qc_expsum* f, qc_measure** out) {
  return guarded([&] { *out = new qc_measure{qc::spectrum_measure(f->value)}; });
}

/* ---- measures ---- */

qc_status qc_measure_from_json(const char* json, qc_measure** out) {
  return guarded([&] { *out = new qc_measure{qc::measure_from_json(qc::parse_json(json))}; });
}

qc_status qc_measure_from_csv(const char* text, int dim, double window, qc_measure** out) {
  return guarded([&] { *out = new qc_measure{qc::measure_from_csv(text, dim, window)}; });
}

qc_status qc_measure_to_json(const qc_measure* mu, char** json_out) {
  return guarded([&] { *json_out = dup_string(qc::measure_to_json(mu->value).dump()); });
}

qc_status qc_measure_to_csv(const qc_measure* mu, char** csv_out) {
  return guarded([&] { *csv_out = dup_string(qc::measure_to_csv(mu->value)); });
}

void qc_measure_free(qc_measure* mu) { delete mu; }

int qc_measure_dim(const qc_measure* mu) { return mu->value.dim(); }

double qc_measure_window(const qc_measure* mu) { return mu->value.window(); }

size_t qc_measure_atom_count(const qc_measure* mu) { return mu->value.size(); }

qc_status qc_lattice_comb(int dim, const int64_t* basis, int64_t den, size_t nshifts,
                          const double* shifts, const double* wre, const double* wim,
                          double window, qc_measure** out) {
  return guarded([&] {
    std::vector<qc::Vec> sh;
    std::vector<qc::Complex> w;
    comb_args(dim, nshifts, shifts, wre, wim, &sh, &w);
    *out = new qc_measure{qc::lattice_comb(lattice_from_arrays(dim, basis, den), sh, w, window)};
  });
}

qc_status qc_poisson_transform(int dim, const int64_t* basis, int64_t den, size_t nshifts,
                               const double* shifts, const double* wre, const double* wim,
                               double spectrum_window, qc_measure** out) {
  return guarded([&] {
    std::vector<qc::Vec> sh;
    std::vector<qc::Complex> w;
    comb_args(dim, nshifts, shifts, wre, wim, &sh, &w);
    *out = new qc_measure{
        qc::poisson_transform(lattice_from_arrays(dim, basis, den), sh, w, spectrum_window)};
  });
}

qc_status qc_measure_bohr_mass(const qc_measure* mu, const double* lambda, double radius,
                               double* re, double* im) {
  return guarded([&] {
    qc::Complex v = qc::bohr_mass(
        mu->value, std::span<const double>(lambda, size_t(mu->value.dim())), radius);
    *re = v.real();
    *im = v.imag();
  });
}

qc_status qc_measure_translation_bound(const qc_measure* mu, double* out) {
  return guarded([&] { *out = qc::translation_bound(mu->value); });
}

qc_status qc_measure_growth_exponent(const qc_measure* mu, const double* radii,
                                     size_t nradii, double* out) {
  return guarded([&] {
    *out = qc::growth_exponent(mu->value, std::vector<double>(radii, radii + nradii));
  });
}

qc_status qc_measure_smooth_gaussian(const qc_measure* spectrum, double t, qc_expsum** out) {
  return guarded([&] {
    if (!(t > 0)) qc::fail(qc::Err::input, "gaussian width must be positive");
    *out = new qc_expsum{qc::smooth_with(
        spectrum->value, [t](double r) { return std::exp(-std::numbers::pi * t * r * r); })};
  });
}

qc_status qc_interpolant(const qc_measure* direct, const qc_measure* spectrum, double eta,
                         double tol, qc_expsum** out, double* max_deviation) {
  return guarded([&] {
    qc::QuasicrystalPair pair = qc::QuasicrystalPair::make(direct->value, spectrum->value);
    qc::InterpolantResult res = qc::interpolant(pair, eta, tol, true);
    *out = new qc_expsum{std::move(res.f)};
    if (max_deviation) *max_deviation = res.max_deviation;
  });
}

/* ---- pipelines ---- */

qc_status qc_compose(const qc_expsum* f, const char* h_spec, double guard, double eps,
                     int ksamples, qc_expsum** g_out, char** report_json) {
  return guarded([&] {
    qc::ComposeDriverResult res = qc::compose_driver(f->value, h_spec, guard, eps, ksamples);
    *g_out = new qc_expsum{std::move(res.g)};
    if (report_json) *report_json = dup_string(res.report.dump());
  });
}

qc_status qc_invert(const qc_expsum* f, double guard, double eps, int ksamples,
                    qc_expsum** g_out, char** report_json) {
  return qc_compose(f, "inv", guard, eps, ksamples, g_out, report_json);
}

qc_status qc_quasicrystal_map(const qc_measure* direct, const qc_measure* spectrum,
                              const char* h_spec, double guard, double eps,
                              qc_measure** nu_direct, qc_measure** nu_spectrum,
                              char** report_json) {
  return guarded([&] {
    qc::QuasicrystalPair pair = qc::QuasicrystalPair::make(direct->value, spectrum->value);
    qc::QuasicrystalMapResult res =
        qc::quasicrystal_map(pair, qc::parse_h(h_spec), guard, eps);
    *nu_direct = new qc_measure{std::move(res.nu.direct)};
    *nu_spectrum = new qc_measure{std::move(res.nu.spectrum)};
    if (report_json) {
      qc::Json rep = qc::compose_report_to_json(res.compose_report);
      rep["interp_deviation"] = res.interp_deviation;
      rep["g_deviation"] = res.g_deviation;
      rep["crosscheck_deviation"] = res.crosscheck_deviation;
      *report_json = dup_string(rep.dump());
    }
  });
}

/* ---- lattice layer ---- */

qc_status qc_detect_lattice(const qc_measure* mu, double window, double tol,
                            char** result_json) {
  return guarded([&] {
    qc::DetectResult res = qc::detect_lattice(mu->value.positions(), window, tol);
    qc::Json j;
    j["ok"] = res.ok;
    if (res.ok) {
      j["lattice"] = qc::lattice_to_json(res.lattice);
      j["translates"] = res.translates;
      j["partition"] = res.partition;
    } else {
      j["reason"] = res.reason;
    }
    *result_json = dup_string(j.dump());
  });
}

qc_status qc_almost_periods(const qc_measure* mu, double epsilon, double rho, double window,
                            char** result_json) {
  return guarded([&] {
    qc::AlmostPeriodResult res = qc::almost_periods(mu->value, epsilon, rho, window);
    qc::Json j;
    j["periods"] = res.periods;
    j["density_radius"] = res.density_radius;
    *result_json = dup_string(j.dump());
  });
}

qc_status qc_coset_normalize(const char* sum_json, char** result_json) {
  return guarded([&] {
    qc::SignedCosetSum input = qc::signed_sum_from_json(qc::parse_json(sum_json));
    qc::NormalizeOptions opts;
    opts.assert_clean = false;
    qc::NormalizeResult res = qc::coset_union_normalize(input, opts);
    qc::Json j;
    qc::Json disj = qc::Json::array();
    for (const auto& c : res.disjoint) disj.push_back(qc::coset_to_json(c));
    j["disjoint"] = disj;
    j["remainder"] = qc::signed_sum_to_json(res.remainder);
    j["clean"] = res.clean;
    *result_json = dup_string(j.dump());
  });
}

qc_status qc_coset_intersect(const char* coset_a_json, const char* coset_b_json,
                             char** result_json) {
  return guarded([&] {
    qc::Coset a = qc::coset_from_json(qc::parse_json(coset_a_json));
    qc::Coset b = qc::coset_from_json(qc::parse_json(coset_b_json));
    auto meet = qc::coset_intersect(a, b);
    qc::Json j = meet ? qc::coset_to_json(*meet) : qc::Json(nullptr);
    *result_json = dup_string(j.dump());
  });
}

/* ---- drivers ---- */

qc_status qc_analyze(const qc_measure* mu, double window, double tol, double eps,
                     char** report_json, int* detection_ok) {
  return guarded([&] {
    qc::AnalyzeOptions opts;
    opts.window = window;
    opts.tol = tol;
    opts.eps = eps;
    std::string digest = qc::fnv1a_hex(qc::measure_to_csv(mu->value));
    qc::AnalyzeOutcome out = qc::analyze_measure(mu->value, opts, digest);
    *report_json = dup_string(out.report.dump(2));
    if (detection_ok) *detection_ok = out.detection_ok ? 1 : 0;
  });
}

qc_status qc_diffract(const qc_measure* mu, const double* lambdas, size_t nlambdas,
                      const double* radii, size_t nradii, int as_json, char** out) {
  return guarded([&] {
    int d = mu->value.dim();
    std::vector<qc::Vec> ls;
    for (size_t i = 0; i < nlambdas; ++i)
      ls.emplace_back(lambdas + i * d, lambdas + (i + 1) * d);
    std::vector<double> rs(radii, radii + nradii);
    auto rows = qc::diffract_table(mu->value, ls, rs);
    *out = dup_string(as_json ? qc::diffract_json(rows).dump() : qc::diffract_csv(rows));
  });
}

int qc_verify_suite(const char* name, char** summary_out) {
  try {
    qc::VerifyOutcome res = qc::run_verify_suite(name ? name : "");
    std::string text;
    qc::Json j;
    j["suite"] = name ? name : "";
    if (!res.known) {
      j["status"] = "unknown";
      text = "unknown suite; available:";
      for (const auto& n : qc::verify_suite_names()) text += " " + n;
      text += "\n";
      j["available"] = qc::verify_suite_names();
      if (summary_out) *summary_out = dup_string(text + j.dump() + "\n");
      return 1;
    }
    qc::Json checks = qc::Json::array();
    for (const auto& c : res.checks) {
      text += std::string(c.passed ? "[pass] " : "[FAIL] ") + c.name;
      if (!c.detail.empty()) text += " (" + c.detail + ")";
      text += "\n";
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    j["status"] = res.passed ? "pass" : "fail";
    j["checks"] = checks;
    if (summary_out) *summary_out = dup_string(text + j.dump() + "\n");
    return res.passed ? 0 : 2;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    if (summary_out) *summary_out = dup_string(std::string("error: ") + e.what() + "\n");
    return 2;
  }
}

}  // extern "C"
