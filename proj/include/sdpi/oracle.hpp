#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdpi/codes.hpp"
#include "sdpi/combinatorics.hpp"
#include "sdpi/operators.hpp"
#include "sdpi/verifier.hpp"

namespace sdpi {

struct GaussI64 {
  std::int64_t re = 0;
  std::int64_t im = 0;

  GaussI64& operator+=(const GaussI64& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend GaussI64 operator*(const GaussI64& a, const GaussI64& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussI64&, const GaussI64&) = default;
};

// A state over explicit length-N strings, each packed as a base-d integer
// (digit of site s at weight d^s). Terms sorted by key, no zero amplitudes.
template <class Amp>
struct DigitState {
  unsigned d = 0;
  unsigned n = 0;
  std::vector<std::pair<std::uint64_t, Amp>> terms;
  friend bool operator==(const DigitState&, const DigitState&) = default;
};

using DenseState = DigitState<GaussI64>;
using DenseFloatState = DigitState<std::complex<double>>;

inline constexpr std::uint64_t kDefaultOracleTermCap = 200'000;

// Amplitude 1 on every rearrangement of the multiset given by u.
DenseState dense_symmetric_vector(const OccupationVector& u,
                                  std::uint64_t cap = kDefaultOracleTermCap);

// N-fold Leibniz sum of the single-site matrix of op (identity for I).
template <class Amp>
DigitState<Amp> dense_apply(const ErrorOperator& op, const DigitState<Amp>& psi);
// Same with the conjugate-transposed single-site matrix.
template <class Amp>
DigitState<Amp> dense_apply_adjoint(const ErrorOperator& op, const DigitState<Amp>& psi);
// X^a on every site.
template <class Amp>
DigitState<Amp> dense_shift(const DigitState<Amp>& psi, Residue a);
// Z^power on every site.
DenseFloatState dense_clock(const DenseFloatState& psi, long power);
// sum conj(phi) psi
template <class Amp>
Amp dense_inner(const DigitState<Amp>& phi, const DigitState<Amp>& psi);

DenseFloatState to_float(const DenseState& psi);
DenseState scaled_sum(const std::vector<std::pair<GaussI64, DenseState>>& parts);
// Expands a combinatorial state whose amplitudes are Gaussian integers.
DenseState dense_expand(const StateVector& psi, std::uint64_t cap = kDefaultOracleTermCap);

struct GateReport {
  bool passed = true;
  std::size_t cases = 0;
  std::optional<std::string> witness;
};

// Compares apply_generator against dense_apply for every basis operator and
// every composition of n (or `trials` random ones when given).
GateReport run_oracle_gate(unsigned d, unsigned n, std::optional<std::size_t> trials = std::nullopt,
                           std::uint64_t seed = 1, std::uint64_t cap = kDefaultOracleTermCap);

// Dense evaluation of all KL elements; same schema as kl_full in exact mode.
KLReport dense_kl(const Code& code, std::uint64_t cap = kDefaultOracleTermCap);

}  // namespace sdpi
