#include "core/serialize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qc {

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Err::parse, "malformed JSON");
  return j;
}

Json expsum_to_json(const ExponentialSum& f) {
  Json terms = Json::array();
  for (const auto& t : f.terms()) {
    terms.push_back({{"freq", t.freq}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  return Json{{"dim", f.dim()}, {"terms", terms}};
}

ExponentialSum expsum_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("terms"))
    fail(Err::parse, "exponential sum JSON needs dim and terms");
  int dim = j.at("dim").get<int>();
  std::vector<SumTerm> raw;
  for (const auto& t : j.at("terms")) {
    SumTerm term;
    term.freq = t.at("freq").get<Vec>();
    term.coeff = Complex(t.at("re").get<double>(), t.value("im", 0.0));
    raw.push_back(std::move(term));
  }
  double tol = j.value("freq_tol", ExponentialSum::default_freq_tol);
  return ExponentialSum::make(dim, std::move(raw), tol);
}

Json measure_to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms())
    atoms.push_back({{"pos", a.pos}, {"re", a.weight.real()}, {"im", a.weight.imag()}});
  Json j{{"dim", mu.dim()}, {"atoms", atoms}};
  if (std::isfinite(mu.window()))
    j["window"] = mu.window();
  else
    j["window"] = nullptr;
  return j;
}

AtomicMeasure measure_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("atoms"))
    fail(Err::parse, "measure JSON needs dim and atoms");
  int dim = j.at("dim").get<int>();
  double window = std::numeric_limits<double>::infinity();
  if (j.contains("window") && !j.at("window").is_null()) window = j.at("window").get<double>();
  std::vector<MeasureAtom> atoms;
  for (const auto& a : j.at("atoms")) {
    MeasureAtom atom;
    atom.pos = a.at("pos").get<Vec>();
    atom.weight = Complex(a.at("re").get<double>(), a.value("im", 0.0));
    atoms.push_back(std::move(atom));
  }
  return AtomicMeasure::make(dim, window, std::move(atoms));
}

AtomicMeasure measure_from_csv(const std::string& text, int dim, double window,
                               double pos_tol) {
  std::vector<MeasureAtom> atoms;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(Err::parse, "bad number on line " + std::to_string(lineno));
      }
    }
    MeasureAtom a;
    if (int(vals.size()) == dim) {
      a.pos.assign(vals.begin(), vals.end());
      a.weight = Complex(1, 0);
    } else if (int(vals.size()) == dim + 2) {
      a.pos.assign(vals.begin(), vals.begin() + dim);
      a.weight = Complex(vals[dim], vals[dim + 1]);
    } else {
      fail(Err::parse, "line " + std::to_string(lineno) + " has " +
                           std::to_string(vals.size()) + " columns, want " +
                           std::to_string(dim) + " or " + std::to_string(dim + 2));
    }
    atoms.push_back(std::move(a));
  }
  if (atoms.empty()) fail(Err::parse, "no atoms in CSV input");
  return AtomicMeasure::make(dim, window, std::move(atoms), pos_tol);
}

std::string measure_to_csv(const AtomicMeasure& mu) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& a : mu.atoms()) {
    for (double x : a.pos) os << x << ",";
    os << a.weight.real() << "," << a.weight.imag() << "\n";
  }
  return os.str();
}

Json lattice_to_json(const Lattice& l) {
  Json basis = Json::array();
  for (int j = 0; j < l.rank(); ++j) {
    Json col = Json::array();
    for (int i = 0; i < l.dim(); ++i) col.push_back(l.num().at(i, j));
    basis.push_back(col);
  }
  return Json{{"dim", l.dim()}, {"denominator", l.den()}, {"basis", basis}};
}

Lattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("basis"))
    fail(Err::parse, "lattice JSON needs dim and basis");
  int dim = j.at("dim").get<int>();
  i64 den = j.value("denominator", i64(1));
  const Json& basis = j.at("basis");
  IMat num(dim, int(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    if (int(basis[c].size()) != dim) fail(Err::parse, "lattice basis column of wrong length");
    for (int i = 0; i < dim; ++i) num.at(i, int(c)) = basis[c][i].get<i64>();
  }
  return Lattice::from_columns(dim, num, den);
}

Json coset_to_json(const Coset& c) {
  Json off = Json::array();
  for (const auto& r : c.offset()) off.push_back(Json::array({r.num, r.den}));
  return Json{{"lattice", lattice_to_json(c.lattice())}, {"offset", off}};
}

Coset coset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("lattice") || !j.contains("offset"))
    fail(Err::parse, "coset JSON needs lattice and offset");
  Lattice l = lattice_from_json(j.at("lattice"));
  RatVec off;
  for (const auto& r : j.at("offset")) {
    if (r.is_array()) {
      if (r.size() != 2) fail(Err::parse, "offset entries are [num, den] pairs");
      off.push_back(Rat(r[0].get<i64>(), r[1].get<i64>()));
    } else {
      off.push_back(Rat(r.get<i64>()));
    }
  }
  return Coset(l, off);
}

Json signed_sum_to_json(const SignedCosetSum& s) {
  Json terms = Json::array();
  for (const auto& t : s)
    terms.push_back({{"coset", coset_to_json(t.coset)}, {"mult", t.mult}});
  return Json{{"terms", terms}};
}

SignedCosetSum signed_sum_from_json(const Json& j) {
  SignedCosetSum s;
  const Json& terms = j.is_object() && j.contains("terms") ? j.at("terms") : j;
  if (!terms.is_array()) fail(Err::parse, "signed coset sum JSON needs a terms array");
  for (const auto& t : terms)
    s.push_back({coset_from_json(t.at("coset")), t.value("mult", 1)});
  return s;
}

Json compose_report_to_json(const ComposeReport& r) {
  return Json{{"epsilon", r.epsilon},
              {"eta", r.eta},
              {"tail", r.tail},
              {"terms_kept", r.terms_kept},
              {"rank", r.rank},
              {"torus_grid", r.torus_grid},
              {"tau_grid", r.tau_grid},
              {"k_geo", r.k_geo},
              {"budget",
               {{"geometric_tail", r.geo_tail},
                {"alias_estimate", r.alias_estimate},
                {"floor_dropped", r.floor_dropped},
                {"total_bound", r.total_bound}}},
              {"torus_norm", r.torus_norm},
              {"decay_constant", r.decay_constant}};
}

}  // namespace qc
