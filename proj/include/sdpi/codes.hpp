#pragma once

#include <complex>
#include <string>
#include <vector>

#include "sdpi/arith.hpp"
#include "sdpi/combinatorics.hpp"
#include "sdpi/operators.hpp"

namespace sdpi {

// One tail orbit of the logical-zero support with the amplitude shared by all
// of its members.
struct CodeOrbit {
  OccupationVector representative;
  RadicalSum amplitude;
  friend bool operator==(const CodeOrbit&, const CodeOrbit&) = default;
};

struct Code {
  unsigned d = 0;
  unsigned n = 0;
  Residue eta = 1;
  std::vector<CodeOrbit> orbits;
  // Orbit order is irrelevant.
  friend bool operator==(const Code& a, const Code& b);
};

struct FloatCodeOrbit {
  OccupationVector representative;
  std::complex<double> amplitude;
};

struct FloatCode {
  unsigned d = 0;
  unsigned n = 0;
  Residue eta = 1;
  std::vector<FloatCodeOrbit> orbits;
};

FloatCode to_float(const Code& code);

// |k> = X^k |0>.
StateVector codeword(const Code& code, Residue k);
FloatStateVector codeword(const FloatCode& code, Residue k);

struct CheckOutcome {
  std::string name;
  bool passed = true;
  bool informational = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckOutcome> checks;

  // All non-informational checks.
  bool passed() const;
  // Everything except sparsity: what the KL verifiers need.
  bool structurally_valid() const;
  const CheckOutcome& check(const std::string& name) const;
  std::string first_failure() const;
};

// Checks, in order: metadata, congruence, weight_zero, dpi, normalization,
// effective_sparsity, and the informational literal_sparsity.
ValidationReport validate(const Code& code);
ValidationReport validate(const FloatCode& code, double tolerance = 1e-10);

}  // namespace sdpi
