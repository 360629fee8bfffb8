#pragma once

#include "sdpi/arith.hpp"
#include "sdpi/combinatorics.hpp"

namespace sdpi {

// magnitude * zeta_d^phase_exponent
struct CentralCharacterValue {
  BigInt magnitude;
  Residue phase_exponent = 0;
  friend bool operator==(const CentralCharacterValue&, const CentralCharacterValue&) = default;
};

// dim Sym^N(C^d) = C(N+d-1, N)
BigInt sym_dim(unsigned d, unsigned n);
CentralCharacterValue central_character(unsigned d, unsigned n, Residue l);

// sum_{l in Z_d} zeta^{l m}: d when m = 0 mod d, else 0.
unsigned root_of_unity_sum(unsigned d, long m);

// Multiplicity of the HW(d) irrep labelled eta in Sym^N(C^d); needs gcd(N, d) = 1.
BigInt branching_multiplicity(unsigned d, unsigned n, Residue eta);
bool is_valid_code_space(unsigned d, unsigned n, Residue eta);
bool is_unit(unsigned d, Residue eta);

}  // namespace sdpi
