// qc: batch front end for point-set / measure analysis, diffraction tables,
// Wiener composition and the built-in verification suites.  Talks to the
// shared library exclusively through the C API.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcrystal.h"

namespace {

struct StringDeleter {
  void operator()(char* s) const { qc_string_free(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

struct ExpsumDeleter {
  void operator()(qc_expsum* f) const { qc_expsum_free(f); }
};
using Expsum = std::unique_ptr<qc_expsum, ExpsumDeleter>;

struct MeasureDeleter {
  void operator()(qc_measure* m) const { qc_measure_free(m); }
};
using Measure = std::unique_ptr<qc_measure, MeasureDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
  }
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    return c == '{' || c == '[';
  }
  return false;
}

Measure load_measure(const std::string& path, int dim, double window) {
  std::string text = read_file(path);
  qc_measure* raw = nullptr;
  qc_status st;
  if (looks_like_json(text))
    st = qc_measure_from_json(text.c_str(), &raw);
  else
    st = qc_measure_from_csv(text.c_str(), dim, window, &raw);
  if (st != QC_OK) throw std::runtime_error(qc_last_error());
  return Measure(raw);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  return vals;
}

std::vector<double> parse_list_colon(const std::string& spec) {
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) vals.push_back(std::stod(item));
  return vals;
}

int cmd_analyze(const std::string& file, int dim, double window, bool window_given,
                double tol, double eps, const std::string& out_path) {
  Measure mu = load_measure(file, dim, window);
  // a JSON measure carries its own completeness radius; an explicit flag wins
  double w = window;
  double own = qc_measure_window(mu.get());
  if (!window_given && std::isfinite(own) && own > 0) w = own;
  char* report = nullptr;
  int detection_ok = 0;
  qc_status st = qc_analyze(mu.get(), w, tol, eps, &report, &detection_ok);
  if (st != QC_OK) {
    std::cerr << "error: " << qc_last_error() << "\n";
    return 1;
  }
  CStr guard(report);
  write_output(report, out_path);
  return detection_ok ? 0 : 2;
}

int cmd_diffract(const std::string& file, int dim, double window,
                 const std::string& lambdas_file, const std::string& grid,
                 const std::string& r_list, const std::string& format,
                 const std::string& out_path) {
  Measure mu = load_measure(file, dim, window);
  int d = qc_measure_dim(mu.get());
  std::vector<double> lambdas;
  if (!lambdas_file.empty()) {
    std::string text = read_file(lambdas_file);
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto vals = parse_list(line);
      if (int(vals.size()) != d) throw std::runtime_error("lambda row of wrong dimension");
      lambdas.insert(lambdas.end(), vals.begin(), vals.end());
    }
  } else if (!grid.empty()) {
    auto spec = parse_list_colon(grid);
    if (spec.size() != 3) throw std::runtime_error("--grid wants start:stop:step");
    if (d != 1) throw std::runtime_error("--grid supports dim 1; use --lambdas for higher d");
    for (double v = spec[0]; v <= spec[1] + 1e-12; v += spec[2]) lambdas.push_back(v);
  } else {
    throw std::runtime_error("need --lambdas or --grid");
  }
  std::vector<double> rs = parse_list(r_list);
  char* out = nullptr;
  qc_status st = qc_diffract(mu.get(), lambdas.data(), lambdas.size() / d, rs.data(),
                             rs.size(), format == "json" ? 1 : 0, &out);
  if (st != QC_OK) {
    std::cerr << "error: " << qc_last_error() << "\n";
    return 1;
  }
  CStr guard(out);
  write_output(out, out_path);
  return 0;
}

int cmd_compose(const std::string& file, const std::string& h_spec, double guard,
                double eps, int ksamples, const std::string& out_path,
                const std::string& report_path) {
  std::string text = read_file(file);
  qc_expsum* f_raw = nullptr;
  if (qc_expsum_from_json(text.c_str(), &f_raw) != QC_OK) {
    std::cerr << "error: " << qc_last_error() << "\n";
    return 1;
  }
  Expsum f(f_raw);
  qc_expsum* g_raw = nullptr;
  char* report = nullptr;
  qc_status st = qc_compose(f.get(), h_spec.c_str(), guard, eps, ksamples, &g_raw, &report);
  if (st == QC_ERR_DOMAIN || st == QC_ERR_PRECISION || st == QC_ERR_CAPACITY ||
      st == QC_ERR_DIVERGENCE) {
    std::cerr << "error: " << qc_last_error() << "\n";
    return 2;
  }
  if (st != QC_OK) {
    std::cerr << "error: " << qc_last_error() << "\n";
    return 1;
  }
  Expsum g(g_raw);
  CStr report_guard(report);
  char* g_json = nullptr;
  if (qc_expsum_to_json(g.get(), &g_json) != QC_OK) {
    std::cerr << "error: " << qc_last_error() << "\n";
    return 1;
  }
  CStr g_guard(g_json);
  write_output(g_json, out_path);
  if (!report_path.empty()) write_output(report, report_path);
  // surface the residual on stderr for quick inspection
  std::string rep(report);
  auto pos = rep.find("\"residual\"");
  if (pos != std::string::npos) {
    auto end = rep.find_first_of(",}", pos);
    std::cerr << "compose " << rep.substr(pos + 1, end - pos - 1) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& suite) {
  char* summary = nullptr;
  int rc = qc_verify_suite(suite.c_str(), &summary);
  if (summary) {
    std::cout << summary;
    qc_string_free(summary);
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qc: quasicrystal and exponential-sum toolbox (lib " +
               std::string(qc_version()) + ")"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");
  app.set_config("--config", "", "read defaults from an INI/TOML file");
  app.option_defaults()->always_capture_default();

  std::string file, out_path = "-", report_path, format = "csv";
  std::string lambdas_file, grid, r_list = "25,50,100", h_spec = "inv", suite;
  int dim = 1, ksamples = 256;
  double window = 50.0, tol = 1e-6, eps = 1e-6, guard = 1.0, ap_eps = 0.1;

  auto* analyze = app.add_subcommand("analyze", "diagnostics + lattice decomposition report");
  analyze->add_option("file", file, "points file (CSV x1,..,xd[,re,im] or measure JSON)")
      ->required();
  analyze->add_option("--dim", dim, "point dimension for CSV input (default 1)");
  analyze->add_option("--window", window, "radius within which the input is complete (default 50)");
  analyze->add_option("--tol", tol, "detection tolerance (default 1e-6)");
  analyze->add_option("--eps", ap_eps, "almost-period weight tolerance (default 0.1)");
  analyze->add_option("--out", out_path, "output path (default stdout)");

  auto* diffract = app.add_subcommand("diffract", "Bohr-mean spectral estimates");
  diffract->add_option("file", file, "measure file (CSV or JSON)")->required();
  diffract->add_option("--dim", dim, "dimension for CSV input (default 1)");
  diffract->add_option("--window", window, "completeness radius (default 50)");
  diffract->add_option("--lambdas", lambdas_file, "CSV file with one frequency per row");
  diffract->add_option("--grid", grid, "1D frequency grid start:stop:step");
  diffract->add_option("--R", r_list, "comma list of averaging radii (default 25,50,100)");
  diffract->add_option("--format", format, "csv|json (default csv)");
  diffract->add_option("--out", out_path, "output path (default stdout)");

  auto* compose = app.add_subcommand("compose", "g = h(f) in the exponential-sum algebra");
  compose->set_help_flag("--help", "print help");
  compose->add_option("file", file, "exponential sum JSON")->required();
  compose->add_option("--h", h_spec, "inv | exp | poly:c0,c1,... (default inv)");
  compose->add_option("--guard", guard, "guard radius around the sampled range (default 1)");
  compose->add_option("--eps", eps, "error budget (default 1e-6)");
  compose->add_option("--ksamples", ksamples, "range samples forming K (default 256)");
  compose->add_option("--out", out_path, "output path for g (default stdout)");
  compose->add_option("--report", report_path, "path for the budget report JSON");

  auto* verify = app.add_subcommand("verify", "run a named self-check suite");
  verify->add_option("suite", suite,
                     "poisson|wiener1d|wiener2d|bohr|theorem7|coset|detect|periods")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze))
      return cmd_analyze(file, dim, window, analyze->count("--window") > 0, tol, ap_eps,
                         out_path);
    if (app.got_subcommand(diffract))
      return cmd_diffract(file, dim, window, lambdas_file, grid, r_list, format, out_path);
    if (app.got_subcommand(compose))
      return cmd_compose(file, h_spec, guard, eps, ksamples, out_path, report_path);
    if (app.got_subcommand(verify)) return cmd_verify(suite);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
