#include "sdpi/solver.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include "sdpi/errors.hpp"
#include "sdpi/parallel.hpp"
#include "sdpi/reptheory.hpp"

namespace sdpi {

namespace {

long diff_last_two(const OccupationVector& w) {
  const std::size_t d = w.dim();
  return long(w[d - 2]) - long(w[d - 1]);
}

long flip_moment(const OccupationVector& w) {
  return (long(w[0]) + 1) * long(w[1]) + long(w[0]) * (long(w[1]) + 1);
}

}  // namespace

QFSystem build_qf_system(unsigned d, unsigned n, std::span<const OccupationVector> support) {
  require_qudit_dimension(d);
  if (support.empty()) throw InvalidInput("empty support");
  QFSystem sys{d, n, {}, {}, {}};
  std::vector<OccupationVector> reps;
  std::set<OccupationVector> seen;
  for (const auto& u : support) {
    if (u.dim() != d || u.total() != n) {
      throw InvalidInput(u.to_string() + " is not an occupation vector for d = " +
                         std::to_string(d) + ", N = " + std::to_string(n));
    }
    if (!is_in_w(u)) throw InvalidInput(u.to_string() + " is not in W");
    auto orbit = tail_orbit(u);
    if (!seen.insert(orbit.representative).second) {
      throw InvalidInput("orbit of " + u.to_string() + " appears twice");
    }
    reps.push_back(orbit.representative);
    sys.support.push_back(orbit);
  }
  auto verdict = is_effectively_sparse(reps);
  if (!verdict.sparse) {
    const auto& w = *verdict.witness;
    throw HypothesisViolation("support is not sparse: " + w.u.to_string() + " vs " +
                              w.v.to_string() + " at shift " + std::to_string(w.shift) +
                              " has distance " + std::to_string(w.distance));
  }
  for (auto& row : sys.rows) row.assign(reps.size(), 0);
  for (std::size_t s = 0; s < reps.size(); ++s) {
    long q1 = 0, q2 = 0, q3 = 0;
    for (const auto& w : expand_orbit(reps[s])) {
      const auto w_last = cyclic_shift(w, d - 1);
      q1 += diff_last_two(w_last);
      q2 += diff_last_two(w) * diff_last_two(w) - diff_last_two(w_last) * diff_last_two(w_last);
      q3 += flip_moment(w) - flip_moment(w_last);
    }
    sys.rows[0][s] = q1;
    sys.rows[1][s] = q2;
    sys.rows[2][s] = q3;
    sys.normalization.push_back(BigInt(static_cast<unsigned long>(sys.support[s].size)));
  }
  return sys;
}

bool QFSolution::full_support() const {
  return std::all_of(xi.begin(), xi.end(), [](const BigRational& x) { return x > 0; });
}

std::vector<std::vector<BigRational>> rational_nullspace(
    const std::vector<std::vector<BigRational>>& rows, std::size_t columns) {
  std::vector<std::vector<BigRational>> a = rows;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    const BigRational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const BigRational f = a[i][c];
      for (std::size_t k = 0; k < columns; ++k) a[i][k] -= f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<std::vector<BigRational>> basis;
  for (std::size_t f = 0; f < columns; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<BigRational> v(columns, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

RadicalSum amplitude_from_xi(const BigRational& xi, unsigned n, const OccupationVector& rep,
                             const FactorBudget& budget) {
  if (xi < 0) throw InvalidInput("negative xi");
  if (xi == 0) return {};
  return RadicalSum::sqrt_of(factorize(xi.get_num(), budget),
                             factorize(xi.get_den(), budget) *
                                 multinomial_factored(n, rep.entries()));
}

namespace {

// Extreme rays of {x >= 0 : A x = 0} are the sign-consistent nullspace vectors
// of minimal support.
std::vector<std::vector<BigRational>> extreme_rays(const std::vector<std::vector<BigRational>>& a,
                                                   std::size_t m) {
  if (m > 20) throw CapExceeded("too many support orbits for extreme-ray enumeration");
  std::vector<std::uint32_t> masks;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << m); ++mask) masks.push_back(mask);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t x, std::uint32_t y) {
    return std::popcount(x) < std::popcount(y);
  });
  std::vector<std::vector<BigRational>> rays;
  for (std::uint32_t mask : masks) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < m; ++c)
      if (mask & (1u << c)) cols.push_back(c);
    std::vector<std::vector<BigRational>> sub(a.size(), std::vector<BigRational>(cols.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < cols.size(); ++k) sub[i][k] = a[i][cols[k]];
    auto ns = rational_nullspace(sub, cols.size());
    if (ns.size() != 1) continue;
    const auto& v = ns[0];
    bool pos = std::all_of(v.begin(), v.end(), [](const BigRational& x) { return x > 0; });
    bool neg = std::all_of(v.begin(), v.end(), [](const BigRational& x) { return x < 0; });
    if (!pos && !neg) continue;
    std::vector<BigRational> ray(m, 0);
    for (std::size_t k = 0; k < cols.size(); ++k) ray[cols[k]] = pos ? v[k] : BigRational(-v[k]);
    rays.push_back(std::move(ray));
  }
  return rays;
}

}  // namespace

std::vector<QFSolution> solve_system(const QFSystem& sys, const FactorBudget& budget) {
  const std::size_t m = sys.support.size();
  std::vector<std::vector<BigRational>> a;
  for (const auto& row : sys.rows) {
    std::vector<BigRational> r;
    for (const auto& x : row) r.emplace_back(x);
    a.push_back(std::move(r));
  }
  auto ns = rational_nullspace(a, m);
  std::vector<std::vector<BigRational>> rays;
  if (ns.empty()) return {};
  if (ns.size() == 1) {
    const auto& v = ns[0];
    bool pos = std::all_of(v.begin(), v.end(), [](const BigRational& x) { return x > 0; });
    bool neg = std::all_of(v.begin(), v.end(), [](const BigRational& x) { return x < 0; });
    if (!pos && !neg) return {};
    std::vector<BigRational> ray = v;
    if (neg)
      for (auto& x : ray) x = -x;
    rays.push_back(std::move(ray));
  } else {
    rays = extreme_rays(a, m);
    std::vector<bool> covered(m, false);
    for (const auto& r : rays)
      for (std::size_t s = 0; s < m; ++s)
        if (r[s] > 0) covered[s] = true;
    if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) return {};
  }
  std::vector<QFSolution> out;
  for (auto& ray : rays) {
    BigRational total = 0;
    for (std::size_t s = 0; s < m; ++s) total += ray[s] * sys.normalization[s];
    QFSolution sol;
    sol.code.d = sys.d;
    sol.code.n = sys.n;
    sol.code.eta = sys.n % sys.d;
    for (std::size_t s = 0; s < m; ++s) {
      BigRational xi = ray[s] / total;
      sol.xi.push_back(xi);
      if (xi > 0) {
        const auto& rep = sys.support[s].representative;
        sol.code.orbits.push_back({rep, amplitude_from_xi(xi, sys.n, rep, budget)});
      }
    }
    out.push_back(std::move(sol));
  }
  return out;
}

// Family

namespace {

std::array<std::array<BigInt, 3>, 3> printed_rows(unsigned d) {
  const BigInt D(d);
  const BigInt dm1 = D - 1;
  return {{
      {dm1 * dm1, 3 * D - 1, -dm1},
      {dm1 * dm1 * dm1 * dm1, -(D * D * D * D - 5 * D * D * D + 4 * D * D - 5 * D + 1), dm1},
      {dm1 * dm1, 2 * D * D * D - 4 * D * D - 3 * D - 1, -(2 * D * D - 3 * D + 1)},
  }};
}

bool proportional(const std::array<BigInt, 3>& p, const std::vector<BigInt>& q) {
  bool any = false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (p[i] != 0 || q[i] != 0) any = true;
    for (std::size_t j = 0; j < 3; ++j)
      if (p[i] * q[j] != p[j] * q[i]) return false;
  }
  return any;
}

std::string names(const std::vector<std::size_t>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s;
}

}  // namespace

FamilyResult family_code(unsigned d, const FactorBudget& budget) {
  if (d < 5 || d % 2 == 0) throw InvalidInput("family needs odd d >= 5, got " + std::to_string(d));
  require_qudit_dimension(d);
  const unsigned n = (d - 1) * (d - 1);
  std::vector<unsigned> a(d, 0), b(d, 0), c(d, d - 1);
  a[0] = n;
  b[0] = d + 1;
  b[1] = d * (d - 3);
  c[0] = 0;
  const std::vector<OccupationVector> support{OccupationVector(a), OccupationVector(b),
                                              OccupationVector(c)};
  FamilyResult r{build_qf_system(d, n, support), {}, {}};
  auto sols = solve_system(r.system, budget);
  if (sols.size() != 1 || !sols[0].full_support()) {
    throw std::runtime_error("family system has no unique strictly positive solution at d = " +
                             std::to_string(d));
  }
  r.solution = sols[0];

  DiscrepancyNote& note = r.note;
  note.d = d;
  std::array<BigInt, 3> mult;
  std::array<BigInt, 3> size;
  for (std::size_t s = 0; s < 3; ++s) {
    mult[s] = multinomial(n, support[s].entries());
    size[s] = BigInt(static_cast<unsigned long>(r.system.support[s].size));
    note.solved_alpha_sq[s] = r.solution.xi[s] / BigRational(mult[s]);
  }
  const BigRational D(d);
  const BigRational alpha_a = (D * D * D - 5 * D * D + D - 1) / (2 * D * D * D * D - 6 * D * D * D);
  const BigRational alpha_b = (D - 1) * (1 - D * alpha_a) / (D * D + D) / BigRational(mult[1]);
  const BigRational alpha_c =
      (1 - alpha_a + (1 - D) / (D * D + D) * alpha_b) / BigRational(mult[2]);
  note.closed_form_alpha_sq = {alpha_a, alpha_b, alpha_c};
  const char* label[3] = {"a", "b", "c"};
  for (std::size_t s = 0; s < 3; ++s) {
    note.closed_form_agrees[s] = note.closed_form_alpha_sq[s] == note.solved_alpha_sq[s];
    if (!note.closed_form_agrees[s]) {
      note.findings.push_back(std::string("closed-form alpha_") + label[s] + "^2 = " +
                              to_string(note.closed_form_alpha_sq[s]) +
                              " disagrees with the solved value " +
                              to_string(note.solved_alpha_sq[s]));
    }
  }
  note.printed_rows = printed_rows(d);
  std::vector<std::size_t> not_prop;
  for (std::size_t q = 0; q < 3; ++q) {
    for (std::size_t s = 0; s < 3; ++s) note.computed_rows[q][s] = r.system.rows[q][s];
    note.printed_row_proportional[q] = proportional(note.printed_rows[q], r.system.rows[q]);
    if (!note.printed_row_proportional[q]) not_prop.push_back(q);
  }
  if (!not_prop.empty()) {
    note.findings.push_back("printed coefficient rows " + names(not_prop) +
                            " are not proportional to the computed QF rows in the xi unknowns");
  }
  for (std::size_t q = 0; q < 3; ++q) {
    for (std::size_t s = 0; s < 3; ++s) {
      const BigRational p(note.printed_rows[q][s]);
      note.residual_alpha_sq[q][s] = p * note.solved_alpha_sq[s];
      note.residual_xi[q][s] = p * r.solution.xi[s];
      note.residual_orbit_xi[q][s] = p * r.solution.xi[s] * BigRational(size[s]);
    }
  }
  auto vanishing = [](const std::array<std::array<BigRational, 3>, 3>& res) {
    std::vector<std::size_t> rows;
    for (std::size_t q = 0; q < 3; ++q)
      if (res[q][0] + res[q][1] + res[q][2] == 0) rows.push_back(q);
    return rows;
  };
  struct Reading {
    const char* name;
    const std::array<std::array<BigRational, 3>, 3>* res;
  };
  for (const Reading& rd : {Reading{"|alpha|^2", &note.residual_alpha_sq},
                            Reading{"xi", &note.residual_xi},
                            Reading{"orbit-summed xi", &note.residual_orbit_xi}}) {
    auto v = vanishing(*rd.res);
    note.findings.push_back(std::string("reading the unknowns as ") + rd.name +
                            ", printed rows vanishing at the solution: " +
                            (v.empty() ? "none" : names(v)));
  }
  return r;
}

bool passes_sign_prefilter(std::span<const OccupationVector> support) {
  bool above = false, below = false;
  for (const auto& s : support) {
    for (std::size_t i = 1; i < s.dim(); ++i) {
      if (s[i] > s[0]) above = true;
      if (s[i] < s[0]) below = true;
    }
  }
  return above && below;
}

// Search

SearchResult search(unsigned d, unsigned n, std::size_t k, Residue eta,
                    const SearchLimits& limits) {
  require_qudit_dimension(d);
  if (!is_unit(d, eta)) throw InvalidInput("eta must be a unit mod d");
  if (n % d != eta) {
    throw InvalidInput("N = " + std::to_string(n) + " is not congruent to eta = " +
                       std::to_string(eta) + " mod " + std::to_string(d));
  }
  if (k < 2) throw InvalidInput("support size must be at least 2");
  const auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] { return std::chrono::steady_clock::now() - start > limits.time_limit; };

  SearchResult result;
  auto orbits = enumerate_supports(d, n, limits.max_orbits + 1);
  if (orbits.size() > limits.max_orbits) {
    orbits.resize(limits.max_orbits);
    result.partial = true;
    result.partial_reason = "orbit cap reached";
  }
  result.orbits = orbits.size();

  std::vector<OccupationVector> usable;
  for (const auto& o : orbits)
    if (orbits_compatible(o.representative, o.representative).sparse)
      usable.push_back(o.representative);
  const std::size_t u = usable.size();
  std::vector<std::vector<bool>> compatible(u, std::vector<bool>(u, false));
  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t j = i + 1; j < u; ++j)
      compatible[i][j] = compatible[j][i] = orbits_compatible(usable[i], usable[j]).sparse;

  // Sparse k-subsets in lexicographic order of indices.
  std::vector<std::vector<OccupationVector>> candidates;
  std::vector<std::size_t> chosen;
  bool stop = false;
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    if (stop) return;
    if (chosen.size() == k) {
      if (result.candidates >= limits.max_candidates || out_of_time()) {
        stop = true;
        result.partial = true;
        result.partial_reason = out_of_time() ? "time limit reached" : "candidate cap reached";
        return;
      }
      ++result.candidates;
      std::vector<OccupationVector> support;
      for (auto i : chosen) support.push_back(usable[i]);
      if (passes_sign_prefilter(support)) {
        candidates.push_back(std::move(support));
      } else {
        ++result.prefiltered;
      }
      return;
    }
    for (std::size_t i = from; i < u; ++i) {
      bool ok = std::all_of(chosen.begin(), chosen.end(),
                            [&](std::size_t c) { return compatible[c][i]; });
      if (!ok) continue;
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
      if (stop) return;
    }
  };
  dfs(dfs, 0);

  struct Outcome {
    bool solved = false;
    bool skipped = false;
    std::vector<QFSolution> verified;
    std::vector<RejectedCandidate> rejected;
  };
  std::vector<Outcome> outcomes(candidates.size());
  parallel_for(candidates.size(), limits.workers, [&](std::size_t c) {
    Outcome& o = outcomes[c];
    if (out_of_time()) {
      o.skipped = true;
      return;
    }
    auto sys = build_qf_system(d, n, candidates[c]);
    for (auto& sol : solve_system(sys, limits.budget)) {
      if (!sol.full_support()) continue;
      o.solved = true;
      VerifierOptions vo = limits.verifier;
      vo.workers = 1;
      auto report = kl_full(sol.code, vo);
      if (report.passed()) {
        o.verified.push_back(std::move(sol));
      } else {
        const auto& v = report.violations.front();
        std::ostringstream reason;
        reason << "full KL check failed with " << report.violations.size()
               << " violations; first <" << v.i << "|" << v.e.name() << " " << v.f.name() << "|"
               << v.j << "> = " << v.value.to_string();
        o.rejected.push_back({candidates[c], sol.xi, reason.str()});
      }
    }
  });
  for (auto& o : outcomes) {
    if (o.skipped) {
      result.partial = true;
      result.partial_reason = "time limit reached";
      continue;
    }
    if (!o.solved) ++result.without_solution;
    for (auto& v : o.verified) {
      if (limits.max_results == 0 || result.verified.size() < limits.max_results) {
        result.verified.push_back(std::move(v));
      }
    }
    for (auto& r : o.rejected) result.rejected.push_back(std::move(r));
  }
  return result;
}

}  // namespace sdpi
