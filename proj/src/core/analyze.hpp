// Batch analysis drivers shared by the C API and the command-line tool.
#pragma once

#include <cstdint>
#include <string>

#include "core/detect.hpp"
#include "core/qcmap.hpp"
#include "core/serialize.hpp"

namespace qc {

struct AnalyzeOptions {
  double window = 0;  // 0: take the measure window
  double tol = 1e-6;  // lattice detection tolerance
  double eps = 0.1;   // almost-period weight tolerance
  double rho = 0;     // almost-period position tolerance; 0 picks 0.4 * min gap
};

struct AnalyzeOutcome {
  Json report;
  bool detection_ok = false;
};

AnalyzeOutcome analyze_measure(const AtomicMeasure& mu, const AnalyzeOptions& opts,
                               const std::string& digest = "");

struct DiffractRow {
  Vec lambda;
  double r;
  Complex estimate;
};
std::vector<DiffractRow> diffract_table(const AtomicMeasure& mu,
                                        const std::vector<Vec>& lambdas,
                                        const std::vector<double>& rs);
std::string diffract_csv(const std::vector<DiffractRow>& rows);
Json diffract_json(const std::vector<DiffractRow>& rows);

struct ComposeDriverResult {
  ExponentialSum g;
  Json report;
  double residual = 0;
};
// K auto-sampled from f; h given as "inv" | "exp" | "poly:...".
ComposeDriverResult compose_driver(const ExponentialSum& f, const std::string& h_spec,
                                   double guard, double eps, int ksamples);

std::string fnv1a_hex(const std::string& data);

}  // namespace qc
