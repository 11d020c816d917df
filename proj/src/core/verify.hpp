// Named self-check suites runnable from the CLI ("qc verify <name>").
#pragma once

#include <string>
#include <vector>

namespace qc {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOutcome {
  bool known = false;  // false: no such suite
  bool passed = false;
  std::vector<VerifyCheck> checks;
};

VerifyOutcome run_verify_suite(const std::string& name);
std::vector<std::string> verify_suite_names();

}  // namespace qc
