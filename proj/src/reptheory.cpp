#include "sdpi/reptheory.hpp"

#include <numeric>

#include "sdpi/errors.hpp"

namespace sdpi {

BigInt sym_dim(unsigned d, unsigned n) {
  if (d < 2) throw InvalidInput("sym_dim needs d >= 2");
  return binomial(n + d - 1, n);
}

CentralCharacterValue central_character(unsigned d, unsigned n, Residue l) {
  if (l >= d) throw InvalidInput("central_character: l must lie in Z_d");
  return {sym_dim(d, n), static_cast<Residue>((std::uint64_t(l) * n) % d)};
}

unsigned root_of_unity_sum(unsigned d, long m) { return m % long(d) == 0 ? d : 0; }

bool is_unit(unsigned d, Residue eta) { return eta < d && std::gcd(eta, d) == 1; }

namespace {

void require_unit(unsigned d, Residue eta) {
  if (!is_unit(d, eta)) {
    throw InvalidInput("eta = " + std::to_string(eta) + " is not a unit mod " + std::to_string(d));
  }
}

}  // namespace

// (1/d^3) sum_l [d zeta^{-l eta}] [dim zeta^{l N}], the d^2 - d non-central
// classes contributing nothing. The phase sum is d [N = eta], so the whole
// thing is dim * (d [N = eta]) / d^2.
BigInt branching_multiplicity(unsigned d, unsigned n, Residue eta) {
  require_qudit_dimension(d);
  require_unit(d, eta);
  if (std::gcd(n, d) != 1) {
    throw HypothesisViolation("branching rule needs gcd(N, d) = 1, got N = " + std::to_string(n) +
                              ", d = " + std::to_string(d));
  }
  BigInt numerator = sym_dim(d, n) * d * root_of_unity_sum(d, long(n) - long(eta));
  BigInt denom = BigInt(d) * d * d;
  if (numerator % denom != 0) {
    throw std::logic_error("branching multiplicity is not an integer");
  }
  return numerator / denom;
}

bool is_valid_code_space(unsigned d, unsigned n, Residue eta) {
  require_unit(d, eta);
  return n % d == eta;
}

}  // namespace sdpi
