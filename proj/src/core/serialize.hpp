// JSON / CSV codecs for the public file formats.
#pragma once

#include <string>

#include "core/lattice.hpp"
#include "core/measure.hpp"
#include "core/wiener.hpp"

#include "json.hpp"

namespace qc {

using Json = nlohmann::json;

Json expsum_to_json(const ExponentialSum& f);
ExponentialSum expsum_from_json(const Json& j);

Json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const Json& j);

// CSV atom rows "x1,...,xd,re,im"; the weight columns are optional and
// default to 1.
AtomicMeasure measure_from_csv(const std::string& text, int dim, double window,
                               double pos_tol = AtomicMeasure::default_pos_tol);
std::string measure_to_csv(const AtomicMeasure& mu);

Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

Json coset_to_json(const Coset& c);
Coset coset_from_json(const Json& j);

Json signed_sum_to_json(const SignedCosetSum& s);
SignedCosetSum signed_sum_from_json(const Json& j);

Json compose_report_to_json(const ComposeReport& r);

Json parse_json(const std::string& text);  // wraps parse errors into Err::parse

}  // namespace qc
