#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>

#include "sdpi/arith.hpp"
#include "sdpi/verifier.hpp"

namespace sdpi {

struct Config {
  Mode mode = Mode::Exact;
  double float_tolerance = 1e-10;
  FactorBudget budget;
  unsigned max_d = 13;
  unsigned max_n = 64;
  std::size_t max_orbits = 100'000;
  std::size_t oracle_terms = 200'000;
  unsigned workers = 1;

  VerifierOptions verifier_options() const;
};

// Missing keys keep their defaults; unknown keys and out-of-range values throw.
Config load_config(const std::filesystem::path& path);
// The file named by QECC_CONFIG, or defaults.
Config config_from_environment();

}  // namespace sdpi
