#include "sdpi/config.hpp"

#include <cstdlib>
#include <set>
#include <string>

#include "sdpi/errors.hpp"
#include "sdpi/json_io.hpp"

namespace sdpi {

VerifierOptions Config::verifier_options() const {
  VerifierOptions o;
  o.mode = mode;
  o.tolerance = float_tolerance;
  o.max_d = max_d;
  o.max_n = max_n;
  o.workers = workers;
  return o;
}

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw InvalidInput("unknown config key \"" + where + key + "\"");
}

template <class T>
void read_positive(const Json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_unsigned() || j.at(key).get<std::uint64_t>() == 0) {
    throw InvalidInput(std::string("config \"") + key + "\" must be a positive integer");
  }
  target = j.at(key).get<T>();
}

}  // namespace

Config load_config(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  reject_unknown(j, {"mode", "float_tolerance", "factor_budget", "caps", "workers"}, "");
  Config c;
  if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
  if (j.contains("float_tolerance")) {
    if (!j.at("float_tolerance").is_number()) throw InvalidInput("float_tolerance must be a number");
    c.float_tolerance = j.at("float_tolerance").get<double>();
    if (!(c.float_tolerance > 0 && c.float_tolerance <= 1e-3)) {
      throw InvalidInput("float_tolerance must lie in (0, 1e-3]");
    }
  }
  if (j.contains("factor_budget")) {
    const Json& b = j.at("factor_budget");
    reject_unknown(b, {"trial_bound", "rho_iterations"}, "factor_budget.");
    read_positive(b, "trial_bound", c.budget.trial_bound);
    read_positive(b, "rho_iterations", c.budget.rho_iterations);
  }
  if (j.contains("caps")) {
    const Json& caps = j.at("caps");
    reject_unknown(caps, {"max_d", "max_n", "max_orbits", "oracle_terms"}, "caps.");
    read_positive(caps, "max_d", c.max_d);
    read_positive(caps, "max_n", c.max_n);
    read_positive(caps, "max_orbits", c.max_orbits);
    read_positive(caps, "oracle_terms", c.oracle_terms);
  }
  read_positive(j, "workers", c.workers);
  return c;
}

Config config_from_environment() {
  if (const char* path = std::getenv("QECC_CONFIG"); path && *path) return load_config(path);
  return {};
}

}  // namespace sdpi
