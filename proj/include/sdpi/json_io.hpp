#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdpi/arith.hpp"
#include "sdpi/codes.hpp"
#include "sdpi/oracle.hpp"
#include "sdpi/solver.hpp"
#include "sdpi/verifier.hpp"

namespace sdpi {

using Json = nlohmann::ordered_json;

// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
Json to_json(const BigInt& v);
BigInt big_from_json(const Json& j);
// [numerator, denominator]
Json to_json(const BigRational& q);
BigRational rational_from_json(const Json& j);

Json to_json(const RadicalSum& r);
RadicalSum radical_from_json(const Json& j, const FactorBudget& budget = {});
Json to_json(const OccupationVector& u);
OccupationVector occupation_from_json(const Json& j);

Json to_json(const Code& code);
Code code_from_json(const Json& j, const FactorBudget& budget = {});
// Accepts surd amplitudes as well as {"re": x, "im": y} or bare numbers.
FloatCode float_code_from_json(const Json& j);

// A code file loaded exactly when possible, always with a float copy.
struct LoadedCode {
  std::optional<Code> exact;
  FloatCode approx;
  std::vector<std::string> notes;
};

LoadedCode load_code(const std::filesystem::path& path, const FactorBudget& budget = {});
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

Json to_json(const MatrixValue& v);
Json to_json(const KLReport& r);
Json to_json(const ValidationReport& r);
Json to_json(const QFSystem& sys);
Json to_json(const DiscrepancyNote& note);
Json to_json(const QFSolution& sol);
Json to_json(const SearchResult& r);
Json to_json(const GateReport& r);

}  // namespace sdpi
