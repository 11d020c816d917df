/* qcrystal: exponential-sum algebra, Fourier quasicrystal measures, local
 * Wiener composition and lattice/coset structure detection behind a C ABI.
 *
 * Conventions:
 *   - every function returning qc_status reports QC_OK (0) on success;
 *   - on failure, qc_last_error() describes the most recent error in the
 *     calling thread;
 *   - objects are opaque handles freed with their qc_*_free function;
 *   - strings returned through char** are heap-allocated; release them with
 *     qc_string_free.
 */
#ifndef QCRYSTAL_H
#define QCRYSTAL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
  QC_OK = 0,
  QC_ERR_INPUT = 1,
  QC_ERR_DIMENSION = 2,
  QC_ERR_DOMAIN = 3,
  QC_ERR_CAPACITY = 4,
  QC_ERR_DIVERGENCE = 5,
  QC_ERR_PRECISION = 6,
  QC_ERR_WINDOW = 7,
  QC_ERR_DETECTION = 8,
  QC_ERR_REMAINDER = 9,
  QC_ERR_PARSE = 10,
  QC_ERR_INTERNAL = 11
} qc_status;

typedef struct qc_expsum qc_expsum;
typedef struct qc_measure qc_measure;

const char* qc_version(void);
const char* qc_last_error(void);
void qc_string_free(char* s);

/* ---- exponential sums (class W) ---- */

/* freqs is row-major nterms x dim */
qc_status qc_expsum_create(int dim, size_t nterms, const double* freqs, const double* re,
                           const double* im, double freq_tol, qc_expsum** out);
qc_status qc_expsum_from_json(const char* json, qc_expsum** out);
qc_status qc_expsum_to_json(const qc_expsum* f, char** json_out);
void qc_expsum_free(qc_expsum* f);

int qc_expsum_dim(const qc_expsum* f);
size_t qc_expsum_term_count(const qc_expsum* f);
double qc_expsum_norm_w(const qc_expsum* f);
qc_status qc_expsum_evaluate(const qc_expsum* f, const double* x, double* re, double* im);
qc_status qc_expsum_coefficient(const qc_expsum* f, const double* gamma, double* re,
                                double* im);
qc_status qc_expsum_mean(const qc_expsum* f, double* re, double* im);
qc_status qc_expsum_numeric_mean(const qc_expsum* f, const double* gamma, double radius,
                                 int samples, double* re, double* im);

qc_status qc_expsum_add(const qc_expsum* f, const qc_expsum* g, qc_expsum** out);
qc_status qc_expsum_scale(const qc_expsum* f, double re, double im, qc_expsum** out);
qc_status qc_expsum_multiply(const qc_expsum* f, const qc_expsum* g, qc_expsum** out);
qc_status qc_expsum_truncate(const qc_expsum* f, double eta, qc_expsum** head,
                             double* tail);
/* atoms of the spectral measure f_hat */
qc_status qc_expsum_spectrum(const qc_expsum* f, qc_measure** out);

/* ---- atomic measures ---- */

qc_status qc_measure_from_json(const char* json, qc_measure** out);
/* CSV rows "x1,...,xd[,re,im]"; weights default to 1 */
qc_status qc_measure_from_csv(const char* text, int dim, double window, qc_measure** out);
qc_status qc_measure_to_json(const qc_measure* mu, char** json_out);
qc_status qc_measure_to_csv(const qc_measure* mu, char** csv_out);
void qc_measure_free(qc_measure* mu);

int qc_measure_dim(const qc_measure* mu);
double qc_measure_window(const qc_measure* mu);
size_t qc_measure_atom_count(const qc_measure* mu);

/* comb over (basis/den) Z^d + shifts, restricted to the window ball;
 * basis is column-major dim x dim integers, shifts row-major nshifts x dim */
qc_status qc_lattice_comb(int dim, const int64_t* basis, int64_t den, size_t nshifts,
                          const double* shifts, const double* wre, const double* wim,
                          double window, qc_measure** out);
/* exact Fourier transform of the comb above, on the spectrum window */
qc_status qc_poisson_transform(int dim, const int64_t* basis, int64_t den, size_t nshifts,
                               const double* shifts, const double* wre, const double* wim,
                               double spectrum_window, qc_measure** out);

qc_status qc_measure_bohr_mass(const qc_measure* mu, const double* lambda, double radius,
                               double* re, double* im);
qc_status qc_measure_translation_bound(const qc_measure* mu, double* out);
qc_status qc_measure_growth_exponent(const qc_measure* mu, const double* radii,
                                     size_t nradii, double* out);
/* f(s) = sum b psi_hat(gamma) e^{2 pi i <s,gamma>} with a Gaussian weight
 * psi_hat(gamma) = exp(-pi t |gamma|^2) */
qc_status qc_measure_smooth_gaussian(const qc_measure* spectrum, double t,
                                     qc_expsum** out);
/* interpolant through direct atoms; also reports the worst deviation */
qc_status qc_interpolant(const qc_measure* direct, const qc_measure* spectrum, double eta,
                         double tol, qc_expsum** out, double* max_deviation);

/* ---- composition pipelines ---- */

/* h_spec: "inv" | "exp" | "poly:c0,c1,..." */
qc_status qc_compose(const qc_expsum* f, const char* h_spec, double guard, double eps,
                     int ksamples, qc_expsum** g_out, char** report_json);
qc_status qc_invert(const qc_expsum* f, double guard, double eps, int ksamples,
                    qc_expsum** g_out, char** report_json);
qc_status qc_quasicrystal_map(const qc_measure* direct, const qc_measure* spectrum,
                              const char* h_spec, double guard, double eps,
                              qc_measure** nu_direct, qc_measure** nu_spectrum,
                              char** report_json);

/* ---- lattice / coset layer (JSON in, JSON out) ---- */

/* points/measure JSON or CSV already parsed into a measure handle */
qc_status qc_detect_lattice(const qc_measure* mu, double window, double tol,
                            char** result_json);
qc_status qc_almost_periods(const qc_measure* mu, double epsilon, double rho,
                            double window, char** result_json);
/* input: {"terms":[{"coset":{...},"mult":1},...]} */
qc_status qc_coset_normalize(const char* sum_json, char** result_json);
qc_status qc_coset_intersect(const char* coset_a_json, const char* coset_b_json,
                             char** result_json /* null JSON when empty */);

/* ---- batch drivers ---- */

qc_status qc_analyze(const qc_measure* mu, double window, double tol, double eps,
                     char** report_json, int* detection_ok);
qc_status qc_diffract(const qc_measure* mu, const double* lambdas, size_t nlambdas,
                      const double* radii, size_t nradii, int as_json, char** out);

/* returns 0 when every check passes, 1 for an unknown suite, 2 on failure;
 * a human-readable line per check plus a JSON summary goes to summary_out */
int qc_verify_suite(const char* name, char** summary_out);

#ifdef __cplusplus
}
#endif

#endif /* QCRYSTAL_H */
