#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdpi/arith.hpp"
#include "sdpi/codes.hpp"
#include "sdpi/operators.hpp"

namespace sdpi {

enum class Level { Full, Reduced, QF };
enum class Mode { Exact, Float };

std::string to_string(Level level);
std::string to_string(Mode mode);
Level parse_level(const std::string& s);
Mode parse_mode(const std::string& s);

struct VerifierOptions {
  Mode mode = Mode::Exact;
  double tolerance = 1e-10;
  unsigned max_d = 13;
  unsigned max_n = 64;
  unsigned workers = 1;
  bool weight_fast_path = true;
};

// A matrix element: exact when computed in exact mode, always with a double
// approximation.
struct MatrixValue {
  std::optional<ExactComplex> exact;
  std::complex<double> approx;

  bool is_zero(double tolerance) const;
  bool equals(const MatrixValue& other, double tolerance) const;
  std::string to_string() const;
};

struct ConstantEntry {
  ErrorOperator e, f;
  MatrixValue value;
};

struct Violation {
  ErrorOperator e, f;
  Residue i = 0, j = 0;
  MatrixValue value;
  MatrixValue expected;
};

struct ElementRef {
  ErrorOperator e, f;
  Residue i = 0, j = 0;
  friend bool operator==(const ElementRef&, const ElementRef&) = default;
};

// One of the three quadratic-form scalars: lhs must equal rhs.
struct QuadraticForm {
  std::string name;
  MatrixValue lhs;
  MatrixValue rhs;
  bool passed = false;
};

struct KLReport {
  Level level = Level::Full;
  Mode mode = Mode::Exact;
  double tolerance = 1e-10;
  std::vector<ConstantEntry> constants;
  std::vector<Violation> violations;
  std::vector<QuadraticForm> quadratic_forms;
  std::uint64_t elements_checked = 0;
  std::uint64_t structural_zeros = 0;
  std::uint64_t arithmetic_zeros = 0;
  std::vector<ElementRef> arithmetic_zero_elements;
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }
  const ConstantEntry* constant(const ErrorOperator& e, const ErrorOperator& f) const;
};

// <i| E_a E_b |j> for all E_a, E_b in the error basis and all i, j.
KLReport kl_full(const Code& code, const VerifierOptions& options = {});
KLReport kl_full(const FloatCode& code, const VerifierOptions& options = {});

// Only the elements named by the reduced conditions C1-C4.
KLReport kl_reduced(const Code& code, const VerifierOptions& options = {});
KLReport kl_reduced(const FloatCode& code, const VerifierOptions& options = {});

// QF1-QF3; refuses codes that are not sparse and doubly permutation-invariant.
KLReport qf_check(const Code& code, const VerifierOptions& options = {});
KLReport qf_check(const FloatCode& code, const VerifierOptions& options = {});

KLReport verify(const Code& code, Level level, const VerifierOptions& options = {});
KLReport verify(const FloatCode& code, Level level, const VerifierOptions& options = {});

// One evaluated element; `overlap` is false when bra and ket supports are
// disjoint, which makes the value a structural zero.
struct ElementCell {
  bool overlap = false;
  MatrixValue value;
};

// Full-level report from precomputed elements: cells[p][i * d + j] for the
// p-th ordered pair of error_basis(d) (row-major over the basis).
KLReport full_report_from_cells(unsigned d, Mode mode, double tolerance,
                                const std::vector<std::vector<ElementCell>>& cells);

// Elements of the reduced set that sparsity alone forces to vanish:
// C1 off-diagonal elements and C2 elements with distinct index pairs.
std::vector<ElementRef> sparsity_zero_elements(unsigned d);

}  // namespace sdpi
