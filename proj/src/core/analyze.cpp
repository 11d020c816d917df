#include "core/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace qc {

std::string fnv1a_hex(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

AnalyzeOutcome analyze_measure(const AtomicMeasure& mu, const AnalyzeOptions& opts,
                               const std::string& digest) {
  if (mu.empty()) fail(Err::input, "analyze: empty measure");
  double w = opts.window > 0 ? opts.window : mu.window();
  if (!std::isfinite(w)) fail(Err::input, "analyze: measure needs a finite window");
  std::vector<Vec> pts = mu.positions();

  Json report;
  report["input"] = {{"digest", digest},
                     {"atoms", mu.size()},
                     {"dim", mu.dim()},
                     {"window", w}};

  Json diag;
  double gap = 0;
  if (pts.size() >= 2) {
    gap = min_gap(pts);
    diag["min_gap"] = {{"value", gap}, {"window", w}};
    double diff_window = std::min(w, 40.0);
    diag["difference_gap"] = {{"value", difference_gap(pts, diff_window)},
                              {"window", diff_window}};
  }
  diag["translation_bound"] = {{"value", translation_bound(mu)}, {"ball_radius", 1.0}};
  std::vector<double> radii{w / 8, w / 4, w / 2, 0.8 * w};
  diag["growth_exponent"] = {{"value", growth_exponent(mu, radii)}, {"radii", radii}};
  diag["relative_density"] = {{"value", relative_density(pts)}, {"window", w}};
  report["diagnostics"] = diag;

  AnalyzeOutcome out;
  DetectResult det = detect_lattice(pts, w, opts.tol);
  Json dec;
  dec["status"] = det.ok ? "ok" : "failure";
  dec["tol"] = opts.tol;
  if (det.ok) {
    dec["lattice"] = lattice_to_json(det.lattice);
    Json tr = Json::array();
    for (const auto& t : det.translates) tr.push_back(t);
    dec["translates"] = tr;
    dec["coset_sizes"] = Json::array();
    for (const auto& part : det.partition) dec["coset_sizes"].push_back(part.size());
  } else {
    dec["reason"] = det.reason;
  }
  report["decomposition"] = dec;
  out.detection_ok = det.ok;

  if (pts.size() >= 2 && gap > 0) {
    double rho = opts.rho > 0 ? opts.rho : 0.4 * gap;
    double pwindow = 0.4 * w;
    AlmostPeriodResult ap = almost_periods(mu, opts.eps, rho, pwindow);
    report["almost_periods"] = {{"count", ap.periods.size()},
                                {"density_radius", ap.density_radius},
                                {"epsilon", opts.eps},
                                {"rho", rho},
                                {"window", pwindow}};
  }

  // spectral table at a handful of frequencies
  std::vector<Vec> lambdas;
  if (det.ok) {
    Lattice dual = det.lattice.dual();
    std::vector<int> idx(mu.dim(), -2);
    for (;;) {
      Vec l(mu.dim(), 0.0);
      for (int i = 0; i < mu.dim(); ++i)
        for (int j = 0; j < mu.dim(); ++j)
          l[j] += double(idx[i]) * double(dual.num().at(j, i)) / double(dual.den());
      lambdas.push_back(l);
      int pos = 0;
      while (pos < mu.dim()) {
        if (++idx[pos] <= 2) break;
        idx[pos] = -2;
        ++pos;
      }
      if (pos == mu.dim() || lambdas.size() >= 25) break;
    }
  } else {
    for (double v = -1.0; v <= 1.0 + 1e-9; v += 0.5) lambdas.push_back(Vec(mu.dim(), v));
  }
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  std::vector<double> rs{w / 6.0, w / 3.0, w / 1.6};
  Json table = Json::array();
  for (const auto& l : lambdas) {
    Json row{{"lambda", l}};
    Json ests = Json::array();
    for (double r : rs) {
      Complex e = bohr_mass(mu, std::span<const double>(l.data(), l.size()), r);
      ests.push_back({{"R", r}, {"re", e.real()}, {"im", e.imag()}});
    }
    row["estimates"] = ests;
    table.push_back(row);
  }
  report["spectral"] = table;

  out.report = std::move(report);
  return out;
}

std::vector<DiffractRow> diffract_table(const AtomicMeasure& mu,
                                        const std::vector<Vec>& lambdas,
                                        const std::vector<double>& rs) {
  std::vector<DiffractRow> rows;
  for (const auto& l : lambdas)
    for (double r : rs) {
      DiffractRow row;
      row.lambda = l;
      row.r = r;
      row.estimate = bohr_mass(mu, std::span<const double>(l.data(), l.size()), r);
      rows.push_back(std::move(row));
    }
  return rows;
}

std::string diffract_csv(const std::vector<DiffractRow>& rows) {
  std::ostringstream os;
  os.precision(12);
  if (!rows.empty()) {
    for (size_t i = 0; i < rows[0].lambda.size(); ++i) os << "lambda" << (i + 1) << ",";
    os << "R,re,im\n";
  }
  for (const auto& row : rows) {
    for (double v : row.lambda) os << v << ",";
    os << row.r << "," << row.estimate.real() << "," << row.estimate.imag() << "\n";
  }
  return os.str();
}

Json diffract_json(const std::vector<DiffractRow>& rows) {
  Json out = Json::array();
  for (const auto& row : rows)
    out.push_back({{"lambda", row.lambda},
                   {"R", row.r},
                   {"re", row.estimate.real()},
                   {"im", row.estimate.imag()}});
  return out;
}

ComposeDriverResult compose_driver(const ExponentialSum& f, const std::string& h_spec,
                                   double guard, double eps, int ksamples) {
  HolomorphicFn h = parse_h(h_spec);
  CompactRegion k = sample_region(f, guard, ksamples);
  if (h.name == "inv" && !(k.min_abs() > k.guard()))
    fail(Err::domain, "compose: |f| dips below the guard radius, 1/z not holomorphic there");
  ComposeResult res = compose(f, h, k, eps);
  ComposeDriverResult out;
  out.g = std::move(res.g);
  out.report = compose_report_to_json(res.report);
  out.residual = composition_residual(out.g, f, h, k);
  out.report["residual"] = out.residual;
  out.report["ksamples"] = ksamples;
  out.report["guard"] = guard;
  return out;
}

}  // namespace qc
