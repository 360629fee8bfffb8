#include "sdpi/cli.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "sdpi/config.hpp"
#include "sdpi/errors.hpp"
#include "sdpi/json_io.hpp"
#include "sdpi/oracle.hpp"
#include "sdpi/reptheory.hpp"
#include "sdpi/solver.hpp"
#include "sdpi/verifier.hpp"

namespace sdpi {

std::vector<OccupationVector> parse_support(unsigned d, const std::string& text) {
  std::vector<OccupationVector> reps;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<unsigned> entries;
    std::stringstream parts(group);
    std::string part;
    while (std::getline(parts, part, ',')) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(part, &used);
      } catch (const std::exception&) {
        throw InvalidInput("bad support entry \"" + part + "\"");
      }
      if (part.find_first_not_of(" \t", used) != std::string::npos || part.find('-') != std::string::npos)
        throw InvalidInput("bad support entry \"" + part + "\"");
      entries.push_back(static_cast<unsigned>(v));
    }
    if (entries.size() != d) {
      throw InvalidInput("support vector \"" + group + "\" has " + std::to_string(entries.size()) +
                         " entries, expected " + std::to_string(d));
    }
    reps.push_back(canonical_tail(OccupationVector(entries)));
  }
  if (reps.empty()) throw InvalidInput("empty support");
  return reps;
}

namespace {

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

// Default eta is N mod d; an explicit eta must be a unit congruent to N.
Residue resolve_eta(unsigned d, unsigned n, std::optional<unsigned> eta) {
  require_qudit_dimension(d);
  const Residue e = eta.value_or(n % d);
  if (e >= d) throw InvalidInput("eta must lie in [0, d)");
  if (!is_unit(d, e)) {
    throw InvalidInput("eta = " + std::to_string(e) + " is not a unit mod " + std::to_string(d));
  }
  if (n % d != e) {
    throw InvalidInput("N = " + std::to_string(n) + " is not congruent to eta = " + std::to_string(e) +
                       " mod " + std::to_string(d));
  }
  return e;
}

void require_caps(const Config& cfg, unsigned d, unsigned n) {
  if (d > cfg.max_d) throw CapExceeded("d = " + std::to_string(d) + " exceeds the cap " + std::to_string(cfg.max_d));
  if (n > cfg.max_n) throw CapExceeded("N = " + std::to_string(n) + " exceeds the cap " + std::to_string(cfg.max_n));
}

void write_codes(const std::filesystem::path& dir, const std::string& stem, const std::vector<QFSolution>& sols,
                 const Json& sidecar) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < sols.size(); ++i)
    write_json_file(dir / (stem + "_" + std::to_string(i) + ".json"), to_json(sols[i].code));
  write_json_file(dir / (stem + "_sidecar.json"), sidecar);
}

struct Options {
  std::string config_path;
  std::optional<unsigned> workers, max_d, max_n;
  std::optional<double> tolerance;

  unsigned d = 0, n = 0, k = 0;
  std::optional<unsigned> eta;
  std::size_t limit = 0;
  std::string code_path, level = "full", mode, support, out_dir;
  std::optional<std::size_t> max_candidates, trials;
  std::optional<unsigned> time_limit;
  std::uint64_t seed = 1;
  bool verify = false;
};

Config effective_config(const Options& o) {
  Config c = o.config_path.empty() ? config_from_environment() : load_config(o.config_path);
  if (o.workers) c.workers = *o.workers;
  if (o.max_d) c.max_d = *o.max_d;
  if (o.max_n) c.max_n = *o.max_n;
  if (o.tolerance) {
    if (!(*o.tolerance > 0 && *o.tolerance <= 1e-3)) throw InvalidInput("tolerance must lie in (0, 1e-3]");
    c.float_tolerance = *o.tolerance;
  }
  if (!o.mode.empty()) c.mode = parse_mode(o.mode);
  if (c.workers == 0) throw InvalidInput("workers must be positive");
  return c;
}

int cmd_branching(const Options& o, std::ostream& out) {
  require_qudit_dimension(o.d);
  if (o.eta && (*o.eta >= o.d || !is_unit(o.d, *o.eta))) {
    throw InvalidInput("eta = " + std::to_string(*o.eta) + " is not a unit mod " + std::to_string(o.d));
  }
  const Residue eta = o.eta.value_or(o.n % o.d);
  out << dump({{"d", o.d},
               {"N", o.n},
               {"dim", to_json(sym_dim(o.d, o.n))},
               {"eta", eta},
               {"multiplicity", to_json(branching_multiplicity(o.d, o.n, eta))}});
  return 0;
}

int cmd_orbits(const Options& o, const Config& cfg, std::ostream& out) {
  require_qudit_dimension(o.d);
  require_caps(cfg, o.d, o.n);
  const std::size_t cap = o.limit ? o.limit : cfg.max_orbits;
  SupportEnumerator en(o.d, o.n);
  Json orbits = Json::array();
  bool truncated = false;
  while (auto orbit = en.next()) {
    if (orbits.size() == cap) {
      truncated = true;
      break;
    }
    orbits.push_back({{"representative", to_json(orbit->representative)}, {"size", orbit->size}});
  }
  const std::size_t count = orbits.size();
  out << dump({{"d", o.d}, {"N", o.n}, {"count", count}, {"truncated", truncated}, {"orbits", std::move(orbits)}});
  return 0;
}

int cmd_check(const Options& o, const Config& cfg, std::ostream& out) {
  const Level level = parse_level(o.level);
  LoadedCode loaded = load_code(o.code_path, cfg.budget);
  VerifierOptions vo = cfg.verifier_options();
  if (!loaded.exact) vo.mode = Mode::Float;
  const KLReport report =
      vo.mode == Mode::Exact ? verify(*loaded.exact, level, vo) : verify(loaded.approx, level, vo);
  Json j = to_json(report);
  if (!loaded.notes.empty()) j["load_notes"] = loaded.notes;
  out << dump(j);
  return report.passed() ? 0 : 1;
}

int cmd_solve(const Options& o, const Config& cfg, std::ostream& out) {
  const Residue eta = resolve_eta(o.d, o.n, o.eta);
  const auto support = parse_support(o.d, o.support);
  const QFSystem sys = build_qf_system(o.d, o.n, support);
  auto sols = solve_system(sys, cfg.budget);
  for (auto& s : sols) s.code.eta = eta;
  Json solutions = Json::array();
  for (const auto& s : sols) solutions.push_back(to_json(s));
  Json j = {{"system", to_json(sys)}, {"solutions", solutions}};
  if (sols.empty()) j["notice"] = "no strictly positive solution on this support; try another support or a larger N";
  if (!o.out_dir.empty()) write_codes(o.out_dir, "solve", sols, j);
  out << dump(j);
  return 0;
}

int cmd_family(const Options& o, const Config& cfg, std::ostream& out) {
  const FamilyResult fam = family_code(o.d, cfg.budget);
  Json j = {{"d", o.d},
            {"N", fam.system.n},
            {"xi", to_json(fam.solution).at("xi")},
            {"code", to_json(fam.solution.code)},
            {"system", to_json(fam.system)},
            {"discrepancy", to_json(fam.note)}};
  if (o.verify) {
    require_caps(cfg, o.d, fam.system.n);
    j["verification"] = to_json(kl_full(fam.solution.code, cfg.verifier_options()));
  }
  if (!o.out_dir.empty()) write_codes(o.out_dir, "family_d" + std::to_string(o.d), {fam.solution}, j);
  out << dump(j);
  return 0;
}

int cmd_search(const Options& o, const Config& cfg, std::ostream& out) {
  const Residue eta = resolve_eta(o.d, o.n, o.eta);
  require_caps(cfg, o.d, o.n);
  SearchLimits limits;
  limits.max_orbits = cfg.max_orbits;
  if (o.max_candidates) limits.max_candidates = *o.max_candidates;
  if (o.time_limit) limits.time_limit = std::chrono::seconds(*o.time_limit);
  limits.workers = cfg.workers;
  limits.verifier = cfg.verifier_options();
  limits.verifier.mode = Mode::Exact;
  limits.budget = cfg.budget;
  const SearchResult r = search(o.d, o.n, o.k, eta, limits);
  Json j = {{"d", o.d}, {"N", o.n}, {"k", o.k}, {"eta", eta}};
  const Json body = to_json(r);
  for (const auto& [key, value] : body.items()) j[key] = value;
  if (!o.out_dir.empty()) write_codes(o.out_dir, "search", r.verified, j);
  out << dump(j);
  return 0;
}

int cmd_oracle(const Options& o, const Config& cfg, std::ostream& out) {
  require_qudit_dimension(o.d);
  const GateReport r = run_oracle_gate(o.d, o.n, o.trials, o.seed, cfg.oracle_terms);
  Json j = {{"d", o.d}, {"N", o.n}};
  const Json body = to_json(r);
  for (const auto& [key, value] : body.items()) j[key] = value;
  out << dump(j);
  return r.passed ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact construction and verification of Heisenberg-Weyl symmetric qudit codes", "qecc"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON config file (overrides QECC_CONFIG)");
  app.add_option("--workers", o.workers, "worker threads");
  app.add_option("--max-d", o.max_d, "cap on d");
  app.add_option("--max-n", o.max_n, "cap on N");
  app.add_option("--tolerance", o.tolerance, "float-mode tolerance");

  auto* branching = app.add_subcommand("branching", "multiplicity of the logical irrep");
  branching->add_option("--d", o.d)->required();
  branching->add_option("--N", o.n)->required();
  branching->add_option("--eta", o.eta);

  auto* orbits = app.add_subcommand("orbits", "orbit representatives of W_{d,N}");
  orbits->add_option("--d", o.d)->required();
  orbits->add_option("--N", o.n)->required();
  orbits->add_option("--limit", o.limit);

  auto* check = app.add_subcommand("check", "verify a code file");
  check->add_option("--code", o.code_path)->required();
  check->add_option("--level", o.level)->check(CLI::IsMember({"full", "reduced", "qf"}));
  check->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "float"}));

  auto* solve = app.add_subcommand("solve", "solve the quadratic-form system on a support");
  solve->add_option("--d", o.d)->required();
  solve->add_option("--N", o.n)->required();
  solve->add_option("--support", o.support)->required();
  solve->add_option("--eta", o.eta);
  solve->add_option("--out-dir", o.out_dir);

  auto* family = app.add_subcommand("family", "three-orbit family code for odd d >= 5");
  family->add_option("--d", o.d)->required();
  family->add_flag("--verify", o.verify, "also run the full KL check");
  family->add_option("--out-dir", o.out_dir);

  auto* search_cmd = app.add_subcommand("search", "search sparse supports of size k");
  search_cmd->add_option("--d", o.d)->required();
  search_cmd->add_option("--N", o.n)->required();
  search_cmd->add_option("--k", o.k)->required();
  search_cmd->add_option("--max", o.max_candidates, "cap on candidate supports");
  search_cmd->add_option("--eta", o.eta);
  search_cmd->add_option("--time-limit", o.time_limit, "seconds");
  search_cmd->add_option("--out-dir", o.out_dir);

  auto* oracle = app.add_subcommand("oracle", "differential test against dense tensor actions");
  oracle->add_option("--d", o.d)->required();
  oracle->add_option("--N", o.n)->required();
  oracle->add_option("--trials", o.trials, "random basis vectors per generator (default: all)");
  oracle->add_option("--seed", o.seed);

  std::vector<const char*> argv{"qecc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << dump(error_json("usage", e.what()));
    return 2;
  }

  try {
    const Config cfg = effective_config(o);
    if (branching->parsed()) return cmd_branching(o, out);
    if (orbits->parsed()) return cmd_orbits(o, cfg, out);
    if (check->parsed()) return cmd_check(o, cfg, out);
    if (solve->parsed()) return cmd_solve(o, cfg, out);
    if (family->parsed()) return cmd_family(o, cfg, out);
    if (search_cmd->parsed()) return cmd_search(o, cfg, out);
    if (oracle->parsed()) return cmd_oracle(o, cfg, out);
  } catch (const InvalidInput& e) {
    out << dump(error_json("invalid_input", e.what()));
  } catch (const HypothesisViolation& e) {
    out << dump(error_json("hypothesis_violation", e.what()));
  } catch (const CapExceeded& e) {
    out << dump(error_json("cap_exceeded", e.what()));
  } catch (const Unfactorable& e) {
    out << dump(error_json("unfactorable", e.what()));
  } catch (const nlohmann::json::exception& e) {
    out << dump(error_json("invalid_input", e.what()));
  } catch (const std::exception& e) {
    err << "qecc: " << e.what() << "\n";
    out << dump(error_json("internal", e.what()));
  }
  return 2;
}

}  // namespace sdpi
