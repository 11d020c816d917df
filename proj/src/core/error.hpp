// Error taxonomy shared by the core library and the C API.
#pragma once

#include <stdexcept>
#include <string>

namespace qc {

enum class Err {
  input,        // malformed or non-finite input
  dimension,    // dimension mismatch
  domain,       // function not admissible on the requested region
  capacity,     // configured size limits exceeded (grids, ranks, overflow)
  divergence,   // series hypothesis violated (e.g. resolvent ratio >= 1)
  precision,    // error budget infeasible at the configured grids
  window,       // finite window too small for the requested operation
  detection,    // structure detection failed verification
  remainder,    // nonvanishing lower-dimensional remainder
  parse,        // file / string parsing
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline const char* err_name(Err code) {
  switch (code) {
    case Err::input: return "input";
    case Err::dimension: return "dimension";
    case Err::domain: return "domain";
    case Err::capacity: return "capacity";
    case Err::divergence: return "divergence";
    case Err::precision: return "precision";
    case Err::window: return "window";
    case Err::detection: return "detection";
    case Err::remainder: return "remainder";
    case Err::parse: return "parse";
    case Err::internal: return "internal";
  }
  return "unknown";
}

}  // namespace qc
