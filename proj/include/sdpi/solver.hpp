#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdpi/arith.hpp"
#include "sdpi/codes.hpp"
#include "sdpi/combinatorics.hpp"
#include "sdpi/verifier.hpp"

namespace sdpi {

// Linear system in xi_s = multinomial(N, s) |alpha_s|^2 (one support member of
// orbit s). rows[0..2] are QF1..QF3, each an integer coefficient per orbit.
struct QFSystem {
  unsigned d = 0;
  unsigned n = 0;
  std::vector<TailOrbit> support;
  std::array<std::vector<BigInt>, 3> rows;
  std::vector<BigInt> normalization;  // orbit sizes
};

// Refuses supports outside W, with repeated orbits, or not effectively sparse.
QFSystem build_qf_system(unsigned d, unsigned n, std::span<const OccupationVector> support);

struct QFSolution {
  std::vector<BigRational> xi;  // zero for orbits outside the ray's support
  Code code;                    // orbits with nonzero xi only
  bool full_support() const;
};

// Basis of the rational nullspace of the matrix given by rows.
std::vector<std::vector<BigRational>> rational_nullspace(
    const std::vector<std::vector<BigRational>>& rows, std::size_t columns);

// Nonnegative nullspace solutions, normalized so that sum size_s xi_s = 1: the
// unique ray in dimension one (when strictly positive), all extreme rays in
// higher dimension (when some positive combination exists), else nothing.
std::vector<QFSolution> solve_system(const QFSystem& sys, const FactorBudget& budget = {});

// alpha_s = sqrt(xi_s / multinomial(N, s)), with the multinomial kept factored.
RadicalSum amplitude_from_xi(const BigRational& xi, unsigned n, const OccupationVector& rep,
                             const FactorBudget& budget = {});

// Comparison of the solved family code against the closed forms and the
// printed coefficient rows.
struct DiscrepancyNote {
  unsigned d = 0;
  std::array<BigRational, 3> solved_alpha_sq;
  std::array<BigRational, 3> closed_form_alpha_sq;
  std::array<bool, 3> closed_form_agrees{};
  std::array<std::array<BigInt, 3>, 3> computed_rows;
  std::array<std::array<BigInt, 3>, 3> printed_rows;
  std::array<bool, 3> printed_row_proportional{};
  // Printed rows evaluated at the solution under three readings of the
  // unknowns: |alpha|^2, xi, and orbit-summed xi.
  std::array<std::array<BigRational, 3>, 3> residual_alpha_sq;
  std::array<std::array<BigRational, 3>, 3> residual_xi;
  std::array<std::array<BigRational, 3>, 3> residual_orbit_xi;
  std::vector<std::string> findings;
};

struct FamilyResult {
  QFSystem system;
  QFSolution solution;
  DiscrepancyNote note;
};

// Three-orbit family a = ((d-1)^2, 0, ...), b = (d+1, d(d-3), 0, ...),
// c = (0, d-1, ..., d-1) at N = (d-1)^2, for odd d >= 5.
FamilyResult family_code(unsigned d, const FactorBudget& budget = {});

bool passes_sign_prefilter(std::span<const OccupationVector> support);

struct SearchLimits {
  std::size_t max_orbits = 100'000;
  std::size_t max_candidates = 1'000'000;
  std::chrono::seconds time_limit{600};
  std::size_t max_results = 0;  // 0: unlimited
  unsigned workers = 1;
  VerifierOptions verifier;
  FactorBudget budget;
};

struct RejectedCandidate {
  std::vector<OccupationVector> support;
  std::vector<BigRational> xi;
  std::string reason;
};

struct SearchResult {
  std::vector<QFSolution> verified;
  std::vector<RejectedCandidate> rejected;  // solved but failed verification
  std::size_t orbits = 0;
  std::size_t candidates = 0;          // sparse k-subsets examined
  std::size_t prefiltered = 0;         // dropped by the sign condition
  std::size_t without_solution = 0;    // no strictly positive solution
  bool partial = false;
  std::string partial_reason;
};

SearchResult search(unsigned d, unsigned n, std::size_t k, Residue eta,
                    const SearchLimits& limits = {});

}  // namespace sdpi
