#include "sdpi/json_io.hpp"

#include <fstream>
#include <sstream>

#include "sdpi/errors.hpp"

namespace sdpi {

Json to_json(const BigInt& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(j.get<unsigned long>());
    return BigInt(j.get<long>());
  }
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0) {
      throw InvalidInput("not a decimal integer: " + j.get<std::string>());
    }
    return v;
  }
  throw InvalidInput("expected an integer, got " + j.dump());
}

Json to_json(const BigRational& q) { return Json::array({to_json(q.get_num()), to_json(q.get_den())}); }

BigRational rational_from_json(const Json& j) {
  if (j.is_array() && j.size() == 2) return make_rational(big_from_json(j[0]), big_from_json(j[1]));
  if (j.is_number_integer() || j.is_string()) return BigRational(big_from_json(j));
  throw InvalidInput("expected a [numerator, denominator] pair, got " + j.dump());
}

Json to_json(const RadicalSum& r) {
  Json arr = Json::array();
  for (const auto& t : r.terms()) {
    arr.push_back({{"radicand_num", to_json(t.radicand)},
                   {"radicand_den", 1},
                   {"coeff_num", to_json(t.coeff.get_num())},
                   {"coeff_den", to_json(t.coeff.get_den())}});
  }
  return arr;
}

RadicalSum radical_from_json(const Json& j, const FactorBudget& budget) {
  if (!j.is_array()) throw InvalidInput("radical sum must be an array of terms");
  RadicalSum total;
  for (const auto& t : j) {
    const BigRational radicand =
        make_rational(big_from_json(t.at("radicand_num")), big_from_json(t.at("radicand_den")));
    const BigRational coeff =
        make_rational(big_from_json(t.at("coeff_num")), big_from_json(t.at("coeff_den")));
    total += RadicalSum::sqrt_of(radicand, budget) * coeff;
  }
  return total;
}

Json to_json(const OccupationVector& u) {
  Json arr = Json::array();
  for (auto x : u.entries()) arr.push_back(x);
  return arr;
}

OccupationVector occupation_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("occupation vector must be an array");
  std::vector<unsigned> e;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw InvalidInput("occupation entries must be naturals");
    e.push_back(x.get<unsigned>());
  }
  return OccupationVector(e);
}

namespace {

Json surd_json(const RadicalSum& a) {
  auto s = as_surd(a);
  if (!s) throw InvalidInput("amplitude " + a.to_string() + " is not a single surd");
  return {{"sign", s->sign}, {"coeff", to_json(s->coeff)}, {"radicand", to_json(s->radicand)}};
}

struct Header {
  unsigned d, n;
  Residue eta;
};

Header header_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("code must be a JSON object");
  for (const char* key : {"d", "N", "eta", "orbits"})
    if (!j.contains(key)) throw InvalidInput(std::string("code is missing \"") + key + "\"");
  for (const char* key : {"d", "N", "eta"})
    if (!j.at(key).is_number_unsigned()) {
      throw InvalidInput(std::string("\"") + key + "\" must be a natural number");
    }
  if (!j.at("orbits").is_array()) throw InvalidInput("\"orbits\" must be an array");
  return {j.at("d").get<unsigned>(), j.at("N").get<unsigned>(), j.at("eta").get<unsigned>()};
}

bool is_surd_amplitude(const Json& a) { return a.is_object() && a.contains("coeff"); }

}  // namespace

Json to_json(const Code& code) {
  Json orbits = Json::array();
  for (const auto& o : code.orbits) {
    orbits.push_back({{"representative", to_json(o.representative)},
                      {"amplitude", surd_json(o.amplitude)}});
  }
  return {{"d", code.d}, {"N", code.n}, {"eta", code.eta}, {"orbits", orbits}};
}

Code code_from_json(const Json& j, const FactorBudget& budget) {
  const Header h = header_from_json(j);
  Code code{h.d, h.n, h.eta, {}};
  for (const auto& o : j.at("orbits")) {
    const Json& a = o.at("amplitude");
    if (!is_surd_amplitude(a)) throw InvalidInput("amplitude is not of the form sign*coeff*sqrt(radicand)");
    Surd s;
    s.sign = a.value("sign", 1);
    s.coeff = rational_from_json(a.at("coeff"));
    s.radicand = rational_from_json(a.at("radicand"));
    if (s.coeff == 0) throw InvalidInput("zero amplitude in support");
    code.orbits.push_back(
        {canonical_tail(occupation_from_json(o.at("representative"))), to_radical(s, budget)});
  }
  return code;
}

FloatCode float_code_from_json(const Json& j) {
  const Header h = header_from_json(j);
  FloatCode code{h.d, h.n, h.eta, {}};
  for (const auto& o : j.at("orbits")) {
    const Json& a = o.at("amplitude");
    std::complex<double> v;
    if (is_surd_amplitude(a)) {
      const double sign = a.value("sign", 1);
      const double coeff = rational_from_json(a.at("coeff")).get_d();
      const double rad = rational_from_json(a.at("radicand")).get_d();
      if (rad < 0) throw InvalidInput("negative radicand");
      v = sign * coeff * std::sqrt(rad);
    } else if (a.is_number()) {
      v = a.get<double>();
    } else if (a.is_object() && a.contains("re")) {
      v = {a.at("re").get<double>(), a.value("im", 0.0)};
    } else {
      throw InvalidInput("unrecognized amplitude " + a.dump());
    }
    if (v == 0.0) throw InvalidInput("zero amplitude in support");
    code.orbits.push_back({canonical_tail(occupation_from_json(o.at("representative"))), v});
  }
  return code;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

LoadedCode load_code(const std::filesystem::path& path, const FactorBudget& budget) {
  const Json j = read_json_file(path);
  LoadedCode loaded;
  try {
    loaded.approx = float_code_from_json(j);
    bool all_surds = true;
    for (const auto& o : j.at("orbits")) all_surds = all_surds && is_surd_amplitude(o.at("amplitude"));
    if (all_surds) {
      try {
        loaded.exact = code_from_json(j, budget);
      } catch (const Unfactorable& e) {
        loaded.notes.push_back(std::string("warning: ") + e.what() + "; using float mode");
      }
    } else {
      loaded.notes.push_back("amplitudes are not surds; using float mode");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed code file " + path.string() + ": " + e.what());
  }
  return loaded;
}

// Reports

Json to_json(const MatrixValue& v) {
  if (v.exact) return {{"re", to_json(v.exact->re())}, {"im", to_json(v.exact->im())}};
  return {{"re", v.approx.real()}, {"im", v.approx.imag()}};
}

namespace {

Json element_json(const ErrorOperator& e, const ErrorOperator& f, Residue i, Residue j) {
  return {{"e", e.name()}, {"f", f.name()}, {"i", i}, {"j", j}};
}

}  // namespace

Json to_json(const KLReport& r) {
  Json constants = Json::array();
  for (const auto& c : r.constants) {
    Json v = to_json(c.value);
    constants.push_back({{"e", c.e.name()}, {"f", c.f.name()}, {"re", v["re"]}, {"im", v["im"]}});
  }
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json x = element_json(v.e, v.f, v.i, v.j);
    x["value"] = to_json(v.value);
    x["expected"] = to_json(v.expected);
    violations.push_back(x);
  }
  Json out = {{"level", to_string(r.level)},
              {"pass", r.passed()},
              {"constants", constants},
              {"violations", violations},
              {"mode", to_string(r.mode)}};
  if (r.mode == Mode::Float) out["tolerance"] = r.tolerance;
  if (!r.quadratic_forms.empty()) {
    Json qf = Json::array();
    for (const auto& q : r.quadratic_forms)
      qf.push_back({{"name", q.name}, {"lhs", to_json(q.lhs)}, {"rhs", to_json(q.rhs)}, {"pass", q.passed}});
    out["quadratic_forms"] = qf;
  }
  out["elements_checked"] = r.elements_checked;
  out["structural_zeros"] = r.structural_zeros;
  out["arithmetic_zeros"] = r.arithmetic_zeros;
  Json az = Json::array();
  for (const auto& e : r.arithmetic_zero_elements) az.push_back(element_json(e.e, e.f, e.i, e.j));
  out["arithmetic_zero_elements"] = az;
  if (!r.notes.empty()) out["notes"] = r.notes;
  return out;
}

Json to_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json x = {{"name", c.name}, {"pass", c.passed}};
    if (c.informational) x["informational"] = true;
    if (!c.detail.empty()) x["detail"] = c.detail;
    checks.push_back(x);
  }
  return {{"pass", r.passed()}, {"checks", checks}};
}

Json to_json(const QFSystem& sys) {
  Json support = Json::array();
  for (const auto& o : sys.support)
    support.push_back({{"representative", to_json(o.representative)}, {"size", o.size}});
  Json rows = Json::array();
  for (const auto& row : sys.rows) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    rows.push_back(r);
  }
  Json norm = Json::array();
  for (const auto& x : sys.normalization) norm.push_back(to_json(x));
  return {{"d", sys.d}, {"N", sys.n}, {"support", support}, {"rows", rows}, {"normalization", norm}};
}

namespace {

template <class T, std::size_t R, std::size_t C>
Json matrix_json(const std::array<std::array<T, C>, R>& m) {
  Json out = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    out.push_back(r);
  }
  return out;
}

template <class T, std::size_t N>
Json array_json(const std::array<T, N>& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(to_json(x));
  return out;
}

}  // namespace

Json to_json(const DiscrepancyNote& note) {
  Json agrees = Json::array();
  for (bool b : note.closed_form_agrees) agrees.push_back(b);
  Json prop = Json::array();
  for (bool b : note.printed_row_proportional) prop.push_back(b);
  return {{"d", note.d},
          {"orbits", {"a", "b", "c"}},
          {"solved_alpha_sq", array_json(note.solved_alpha_sq)},
          {"closed_form_alpha_sq", array_json(note.closed_form_alpha_sq)},
          {"closed_form_agrees", agrees},
          {"computed_rows", matrix_json(note.computed_rows)},
          {"printed_rows", matrix_json(note.printed_rows)},
          {"printed_row_proportional", prop},
          {"printed_row_terms_at_solution",
           {{"alpha_sq", matrix_json(note.residual_alpha_sq)},
            {"xi", matrix_json(note.residual_xi)},
            {"orbit_xi", matrix_json(note.residual_orbit_xi)}}},
          {"findings", note.findings}};
}

Json to_json(const QFSolution& sol) {
  Json xi = Json::array();
  for (const auto& x : sol.xi) xi.push_back(to_json(x));
  return {{"xi", xi}, {"code", to_json(sol.code)}};
}

Json to_json(const SearchResult& r) {
  Json verified = Json::array();
  for (const auto& s : r.verified) verified.push_back(to_json(s));
  Json rejected = Json::array();
  for (const auto& c : r.rejected) {
    Json support = Json::array();
    for (const auto& u : c.support) support.push_back(to_json(u));
    Json xi = Json::array();
    for (const auto& x : c.xi) xi.push_back(to_json(x));
    rejected.push_back({{"support", support}, {"xi", xi}, {"reason", c.reason}});
  }
  Json out = {{"verified", verified},
              {"rejected", rejected},
              {"orbits", r.orbits},
              {"candidates", r.candidates},
              {"prefiltered", r.prefiltered},
              {"without_solution", r.without_solution},
              {"partial", r.partial}};
  if (r.partial) out["partial_reason"] = r.partial_reason;
  return out;
}

Json to_json(const GateReport& r) {
  Json out = {{"pass", r.passed}, {"cases", r.cases}};
  if (r.witness) out["witness"] = *r.witness;
  return out;
}

}  // namespace sdpi
