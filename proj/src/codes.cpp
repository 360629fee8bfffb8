#include "sdpi/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "sdpi/errors.hpp"

namespace sdpi {

bool operator==(const Code& a, const Code& b) {
  if (a.d != b.d || a.n != b.n || a.eta != b.eta || a.orbits.size() != b.orbits.size()) return false;
  auto sorted = [](std::vector<CodeOrbit> v) {
    std::sort(v.begin(), v.end(),
              [](const CodeOrbit& x, const CodeOrbit& y) { return x.representative < y.representative; });
    return v;
  };
  return sorted(a.orbits) == sorted(b.orbits);
}

FloatCode to_float(const Code& code) {
  FloatCode f{code.d, code.n, code.eta, {}};
  for (const auto& o : code.orbits) f.orbits.push_back({o.representative, o.amplitude.to_double()});
  return f;
}

namespace {

template <class Amp, class C>
BasicStateVector<Amp> build_word(const C& code, Residue k, auto to_amp) {
  BasicStateVector<Amp> psi(code.d, code.n);
  for (const auto& o : code.orbits) {
    if (o.representative.dim() != code.d || o.representative.total() != code.n) {
      throw InvalidInput("orbit representative " + o.representative.to_string() +
                         " does not match d and N");
    }
    const Amp a = to_amp(o.amplitude);
    for (const auto& w : expand_orbit(o.representative)) psi.add(cyclic_shift(w, k % code.d), a);
  }
  return psi;
}

}  // namespace

StateVector codeword(const Code& code, Residue k) {
  return build_word<ExactComplex>(code, k, [](const RadicalSum& a) { return ExactComplex(a); });
}

FloatStateVector codeword(const FloatCode& code, Residue k) {
  return build_word<std::complex<double>>(code, k, [](std::complex<double> a) { return a; });
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckOutcome& c) { return c.informational || c.passed; });
}

bool ValidationReport::structurally_valid() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) {
    return c.informational || c.name == "effective_sparsity" || c.passed;
  });
}

const CheckOutcome& ValidationReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no validation check named " + name);
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.informational && !c.passed) return c.name + ": " + c.detail;
  return {};
}

namespace {

std::string witness_text(const SparsityWitness& w) {
  std::ostringstream os;
  os << w.u.to_string() << " vs " << w.v.to_string() << " at shift " << w.shift << ": distance "
     << w.distance << ", pattern {";
  for (std::size_t i = 0; i < w.pattern.size(); ++i) os << (i ? "," : "") << w.pattern[i];
  os << "}";
  return os.str();
}

template <class C>
std::vector<CheckOutcome> common_checks(const C& code, bool& usable) {
  std::vector<CheckOutcome> out;
  CheckOutcome meta{"metadata", true, false, ""};
  if (code.d < 3 || code.d % 2 == 0 || code.d > OccupationVector::kMaxDim) {
    meta = {"metadata", false, false, "d must be odd and at least 3"};
  } else if (code.n < 1) {
    meta = {"metadata", false, false, "N must be positive"};
  } else if (code.eta >= code.d || std::gcd(code.eta, code.d) != 1) {
    meta = {"metadata", false, false, "eta must be a unit residue mod d"};
  } else if (code.orbits.empty()) {
    meta = {"metadata", false, false, "empty support"};
  } else {
    for (const auto& o : code.orbits) {
      if (o.representative.dim() != code.d || o.representative.total() != code.n) {
        meta = {"metadata", false, false,
                o.representative.to_string() + " is not an occupation vector for this d and N"};
        break;
      }
    }
  }
  usable = meta.passed;
  out.push_back(meta);

  CheckOutcome cong{"congruence", true, false, ""};
  if (code.d > 0 && code.n % code.d != code.eta) {
    cong = {"congruence", false, false,
            "N = " + std::to_string(code.n) + " is " + std::to_string(code.n % code.d) +
                " mod " + std::to_string(code.d) + ", expected eta = " + std::to_string(code.eta)};
  }
  out.push_back(cong);

  CheckOutcome wz{"weight_zero", true, false, ""};
  CheckOutcome dpi{"dpi", true, false, ""};
  if (usable) {
    std::set<OccupationVector> seen;
    for (const auto& o : code.orbits) {
      if (!is_in_w(o.representative)) {
        wz = {"weight_zero", false, false, o.representative.to_string() + " is not in W"};
      }
      if (!seen.insert(canonical_tail(o.representative)).second) {
        dpi = {"dpi", false, false, "duplicate orbit " + o.representative.to_string()};
      }
    }
  }
  out.push_back(wz);
  out.push_back(dpi);
  return out;
}

template <class C>
void sparsity_checks(const C& code, bool usable, std::vector<CheckOutcome>& out) {
  CheckOutcome eff{"effective_sparsity", true, false, ""};
  CheckOutcome lit{"literal_sparsity", true, true, ""};
  if (usable) {
    std::vector<OccupationVector> reps;
    for (const auto& o : code.orbits) reps.push_back(o.representative);
    auto v = is_effectively_sparse(reps);
    if (!v.sparse) eff = {"effective_sparsity", false, false, witness_text(*v.witness)};
    auto l = is_literally_sparse(reps);
    if (!l.sparse) lit = {"literal_sparsity", false, true, witness_text(*l.witness)};
  } else {
    eff = {"effective_sparsity", false, false, "skipped: metadata invalid"};
  }
  out.push_back(eff);
  out.push_back(lit);
}

}  // namespace

ValidationReport validate(const Code& code) {
  bool usable = false;
  ValidationReport r{common_checks(code, usable)};
  CheckOutcome norm{"normalization", true, false, ""};
  if (usable) {
    RadicalSum total;
    bool zero_amp = false;
    for (const auto& o : code.orbits) {
      if (o.amplitude.is_zero()) zero_amp = true;
      auto orbit = tail_orbit(o.representative);
      BigInt weight_factor =
          multinomial(code.n, o.representative.entries()) * BigInt(static_cast<unsigned long>(orbit.size));
      total += (o.amplitude * o.amplitude) * BigRational(weight_factor);
    }
    if (zero_amp) {
      norm = {"normalization", false, false, "zero amplitude in support"};
    } else if (!(total == RadicalSum(1))) {
      norm = {"normalization", false, false, "<0|0> = " + total.to_string()};
    }
  } else {
    norm = {"normalization", false, false, "skipped: metadata invalid"};
  }
  r.checks.push_back(norm);
  sparsity_checks(code, usable, r.checks);
  return r;
}

ValidationReport validate(const FloatCode& code, double tolerance) {
  bool usable = false;
  ValidationReport r{common_checks(code, usable)};
  CheckOutcome norm{"normalization", true, false, ""};
  if (usable) {
    double total = 0;
    bool zero_amp = false;
    for (const auto& o : code.orbits) {
      if (o.amplitude == 0.0) zero_amp = true;
      auto orbit = tail_orbit(o.representative);
      total += std::norm(o.amplitude) * multinomial(code.n, o.representative.entries()).get_d() *
               double(orbit.size);
    }
    if (zero_amp) {
      norm = {"normalization", false, false, "zero amplitude in support"};
    } else if (std::abs(total - 1.0) > tolerance) {
      norm = {"normalization", false, false, "<0|0> = " + std::to_string(total)};
    }
  } else {
    norm = {"normalization", false, false, "skipped: metadata invalid"};
  }
  r.checks.push_back(norm);
  sparsity_checks(code, usable, r.checks);
  return r;
}

}  // namespace sdpi
