#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdpi/arith.hpp"
#include "sdpi/combinatorics.hpp"

namespace sdpi {

enum class GeneratorKind { Identity, S, A, D };

// For S and A, (j, k) is an ordered pair of distinct symbols; the basis uses
// j < k but the action is defined for either order (A(k,j) = -A(j,k)).
// For D, j holds l and D(l) = |l><l| - |l+1><l+1| (indices mod d).
struct ErrorOperator {
  GeneratorKind kind = GeneratorKind::Identity;
  unsigned j = 0;
  unsigned k = 0;

  static ErrorOperator identity() { return {}; }
  static ErrorOperator s(unsigned j, unsigned k) { return {GeneratorKind::S, j, k}; }
  static ErrorOperator a(unsigned j, unsigned k) { return {GeneratorKind::A, j, k}; }
  static ErrorOperator d(unsigned l) { return {GeneratorKind::D, l, 0}; }

  std::string name() const;
  friend auto operator<=>(const ErrorOperator&, const ErrorOperator&) = default;
};

// I, S(j,k) for j<k, A(j,k) for j<k, D(0..d-2): d^2 operators.
std::vector<ErrorOperator> error_basis(unsigned d);
ErrorOperator parse_operator(const std::string& name);
bool in_error_basis(const ErrorOperator& op, unsigned d);

struct GaussianInt {
  long re = 0;
  long im = 0;
  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

// Calls f(v, c) for every output term c|S_v> of op|S_u>, dropping vectors
// with a negative entry and zero coefficients.
template <class F>
void for_each_action(const ErrorOperator& op, const OccupationVector& u, F&& f) {
  const std::size_t d = u.dim();
  switch (op.kind) {
    case GeneratorKind::Identity:
      f(u, GaussianInt{1, 0});
      return;
    case GeneratorKind::D: {
      long c = long(u[op.j]) - long(u[(op.j + 1) % d]);
      if (c != 0) f(u, GaussianInt{c, 0});
      return;
    }
    case GeneratorKind::S:
    case GeneratorKind::A: {
      const unsigned p = op.j, q = op.k;
      const bool s = op.kind == GeneratorKind::S;
      if (u[q] > 0) {
        OccupationVector v = u;
        ++v[p];
        --v[q];
        long c = long(u[p]) + 1;
        f(v, s ? GaussianInt{c, 0} : GaussianInt{0, -c});
      }
      if (u[p] > 0) {
        OccupationVector w = u;
        --w[p];
        ++w[q];
        long c = long(u[q]) + 1;
        f(w, s ? GaussianInt{c, 0} : GaussianInt{0, c});
      }
      return;
    }
  }
}

template <class Amp>
struct AmpTraits;

template <>
struct AmpTraits<ExactComplex> {
  static bool is_zero(const ExactComplex& a) { return a.is_zero(); }
  static ExactComplex scale(const ExactComplex& a, GaussianInt g) {
    return a.times_gaussian(g.re, g.im);
  }
  static ExactComplex from_integer(const BigInt& n) { return {RadicalSum(BigRational(n))}; }
  static std::complex<double> approx(const ExactComplex& a) { return a.to_complex(); }
};

template <>
struct AmpTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& a) { return a == 0.0; }
  static std::complex<double> scale(const std::complex<double>& a, GaussianInt g) {
    return a * std::complex<double>(double(g.re), double(g.im));
  }
  static std::complex<double> from_integer(const BigInt& n) { return {n.get_d(), 0.0}; }
  static std::complex<double> approx(const std::complex<double>& a) { return a; }
};

inline ExactComplex conj_of(const ExactComplex& a) { return a.conj(); }
inline std::complex<double> conj_of(const std::complex<double>& a) { return std::conj(a); }

// Vector in Sym^N(C^d) over the unnormalized basis |S_u>.
template <class Amp>
class BasicStateVector {
 public:
  using Terms = std::map<OccupationVector, Amp>;

  BasicStateVector(unsigned d, unsigned n);
  static BasicStateVector basis(const OccupationVector& u);

  unsigned d() const { return d_; }
  unsigned n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // Amplitude at u, zero if absent.
  Amp at(const OccupationVector& u) const;

  void add(const OccupationVector& u, const Amp& a);
  // Common weight of all terms, if there is one.
  std::optional<Residue> homogeneous_weight() const;

  friend bool operator==(const BasicStateVector&, const BasicStateVector&) = default;

 private:
  unsigned d_;
  unsigned n_;
  Terms terms_;
};

using StateVector = BasicStateVector<ExactComplex>;
using FloatStateVector = BasicStateVector<std::complex<double>>;

template <class Amp>
BasicStateVector<Amp> apply_generator(const ErrorOperator& op, const BasicStateVector<Amp>& psi);

// X^a: each |S_u> goes to |S_{shift(u,a)}>.
template <class Amp>
BasicStateVector<Amp> apply_logical_x(const BasicStateVector<Amp>& psi, Residue a);

// Z|S_u> = zeta^{weight(u)} |S_u>.
inline Residue z_eigenexponent(const OccupationVector& u) { return weight(u); }

// sum_u conj(phi_u) psi_u multinomial(N,u). With the fast path, vectors of
// different homogeneous weight return zero without touching the terms.
template <class Amp>
Amp inner_product(const BasicStateVector<Amp>& phi, const BasicStateVector<Amp>& psi,
                  bool weight_fast_path = true);

FloatStateVector to_float(const StateVector& psi);

enum class ConjugationIdentity { XS, XA, XD, ZS };
enum class IdentityCheckMode { Float, Exponent };

struct IdentityCheck {
  bool holds = true;
  std::size_t checked = 0;
  std::string witness;
};

// Applies both sides of the chosen conjugation identity to `trials` random
// basis vectors, for every generator of the relevant family.
IdentityCheck conjugation_identity_check(unsigned d, unsigned n, ConjugationIdentity id,
                                         std::size_t trials, std::uint64_t seed = 1,
                                         IdentityCheckMode mode = IdentityCheckMode::Float,
                                         double tolerance = 1e-10);

// Uniform random composition of n into d parts.
template <class Rng>
OccupationVector random_occupation(unsigned d, unsigned n, Rng& rng);

}  // namespace sdpi

#include "sdpi/detail/random_occupation.hpp"
