#pragma once

#include <string>

#include "sdpi/json_io.hpp"

namespace testing {

inline std::string corpus_path(const std::string& name) { return std::string(SDPI_DATA_DIR) + "/" + name; }

inline sdpi::Code corpus_code(const std::string& name) {
  return sdpi::code_from_json(sdpi::read_json_file(corpus_path(name)));
}

inline sdpi::BigRational q(long n, long d = 1) { return sdpi::make_rational(n, d); }

}  // namespace testing
