#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sdpi/combinatorics.hpp"

namespace sdpi {

// "13,0,0;4,9,0;3,5,5" -> canonical representatives; every entry must have d parts.
std::vector<OccupationVector> parse_support(unsigned d, const std::string& text);

// Runs one subcommand; `args` excludes the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdpi
