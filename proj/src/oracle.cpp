#include "sdpi/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>

#include "sdpi/errors.hpp"

namespace sdpi {

namespace {

bool is_zero(const GaussI64& a) { return a.re == 0 && a.im == 0; }
bool is_zero(const std::complex<double>& a) { return a == 0.0; }
GaussI64 conj(const GaussI64& a) { return {a.re, -a.im}; }
std::complex<double> conj(const std::complex<double>& a) { return std::conj(a); }
std::complex<double> as_amp(const GaussI64& g, std::complex<double>*) {
  return {double(g.re), double(g.im)};
}
GaussI64 as_amp(const GaussI64& g, GaussI64*) { return g; }

std::vector<std::uint64_t> powers(unsigned d, unsigned n) {
  std::vector<std::uint64_t> pw(n + 1, 1);
  for (unsigned s = 1; s <= n; ++s) {
    if (pw[s - 1] > (std::uint64_t(1) << 62) / d) {
      throw CapExceeded("d^N does not fit the 64-bit string encoding");
    }
    pw[s] = pw[s - 1] * d;
  }
  return pw;
}

using SiteMatrix = std::array<std::array<GaussI64, OccupationVector::kMaxDim>,
                              OccupationVector::kMaxDim>;

// Single-site matrix straight from the operator definitions.
SiteMatrix site_matrix(const ErrorOperator& op, unsigned d, bool adjoint) {
  SiteMatrix m{};
  switch (op.kind) {
    case GeneratorKind::Identity:
      for (unsigned x = 0; x < d; ++x) m[x][x] = {1, 0};
      break;
    case GeneratorKind::S:  // |j><k| + |k><j|
      m[op.j][op.k] = {1, 0};
      m[op.k][op.j] = {1, 0};
      break;
    case GeneratorKind::A:  // -i|j><k| + i|k><j|
      m[op.j][op.k] = {0, -1};
      m[op.k][op.j] = {0, 1};
      break;
    case GeneratorKind::D:  // |l><l| - |l+1><l+1|
      m[op.j][op.j] = {1, 0};
      m[(op.j + 1) % d][(op.j + 1) % d] = {-1, 0};
      break;
  }
  if (adjoint) {
    SiteMatrix t{};
    for (unsigned r = 0; r < d; ++r)
      for (unsigned c = 0; c < d; ++c) t[r][c] = conj(m[c][r]);
    m = t;
  }
  return m;
}

template <class Amp>
DigitState<Amp> from_map(unsigned d, unsigned n, const std::unordered_map<std::uint64_t, Amp>& m) {
  DigitState<Amp> out{d, n, {}};
  out.terms.reserve(m.size());
  for (const auto& [k, a] : m)
    if (!is_zero(a)) out.terms.emplace_back(k, a);
  std::sort(out.terms.begin(), out.terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

template <class Amp>
DigitState<Amp> apply_site_matrix(const ErrorOperator& op, const DigitState<Amp>& psi,
                                  bool adjoint) {
  const unsigned d = psi.d;
  if (op.kind == GeneratorKind::Identity) return psi;
  const auto pw = powers(d, psi.n);
  const SiteMatrix m = site_matrix(op, d, adjoint);
  std::unordered_map<std::uint64_t, Amp> acc;
  acc.reserve(psi.terms.size() * 4);
  for (const auto& [key, a] : psi.terms) {
    for (unsigned s = 0; s < psi.n; ++s) {
      const unsigned x = static_cast<unsigned>((key / pw[s]) % d);
      for (unsigned r = 0; r < d; ++r) {
        if (is_zero(m[r][x])) continue;
        const std::uint64_t k2 = key - x * pw[s] + r * pw[s];
        acc[k2] += a * as_amp(m[r][x], static_cast<Amp*>(nullptr));
      }
    }
  }
  return from_map(d, psi.n, acc);
}

}  // namespace

DenseState dense_symmetric_vector(const OccupationVector& u, std::uint64_t cap) {
  const unsigned d = static_cast<unsigned>(u.dim());
  const unsigned n = u.total();
  BigInt count = multinomial(n, u.entries());
  if (count > BigInt(static_cast<unsigned long>(cap))) {
    throw CapExceeded("dense vector for " + u.to_string() + " has " + count.get_str() +
                      " strings, above the cap " + std::to_string(cap));
  }
  const auto pw = powers(d, n);
  std::vector<unsigned> digits;
  for (unsigned x = 0; x < d; ++x) digits.insert(digits.end(), u[x], x);
  DenseState out{d, n, {}};
  do {
    std::uint64_t key = 0;
    for (unsigned s = 0; s < n; ++s) key += digits[s] * pw[s];
    out.terms.emplace_back(key, GaussI64{1, 0});
  } while (std::next_permutation(digits.begin(), digits.end()));
  std::sort(out.terms.begin(), out.terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

template <class Amp>
DigitState<Amp> dense_apply(const ErrorOperator& op, const DigitState<Amp>& psi) {
  return apply_site_matrix(op, psi, false);
}

template <class Amp>
DigitState<Amp> dense_apply_adjoint(const ErrorOperator& op, const DigitState<Amp>& psi) {
  return apply_site_matrix(op, psi, true);
}

template <class Amp>
DigitState<Amp> dense_shift(const DigitState<Amp>& psi, Residue a) {
  const unsigned d = psi.d;
  const auto pw = powers(d, psi.n);
  DigitState<Amp> out{d, psi.n, {}};
  for (const auto& [key, amp] : psi.terms) {
    std::uint64_t k2 = 0;
    for (unsigned s = 0; s < psi.n; ++s) k2 += ((key / pw[s]) % d + a) % d * pw[s];
    out.terms.emplace_back(k2, amp);
  }
  std::sort(out.terms.begin(), out.terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

DenseFloatState dense_clock(const DenseFloatState& psi, long power) {
  const unsigned d = psi.d;
  const auto pw = powers(d, psi.n);
  DenseFloatState out = psi;
  for (auto& [key, amp] : out.terms) {
    long digit_sum = 0;
    for (unsigned s = 0; s < psi.n; ++s) digit_sum += long((key / pw[s]) % d);
    long e = ((power * digit_sum) % long(d) + long(d)) % long(d);
    double t = 2.0 * std::numbers::pi * double(e) / double(d);
    amp *= std::complex<double>(std::cos(t), std::sin(t));
  }
  return out;
}

template <class Amp>
Amp dense_inner(const DigitState<Amp>& phi, const DigitState<Amp>& psi) {
  Amp total{};
  const auto& a = phi.terms.size() <= psi.terms.size() ? phi.terms : psi.terms;
  const auto& b = phi.terms.size() <= psi.terms.size() ? psi.terms : phi.terms;
  const bool phi_small = phi.terms.size() <= psi.terms.size();
  auto lo = b.begin();
  for (const auto& [key, x] : a) {
    lo = std::lower_bound(lo, b.end(), key,
                          [](const auto& t, std::uint64_t k) { return t.first < k; });
    if (lo == b.end()) break;
    if (lo->first != key) continue;
    total += phi_small ? conj(x) * lo->second : conj(lo->second) * x;
  }
  return total;
}

template DenseState dense_apply(const ErrorOperator&, const DenseState&);
template DenseFloatState dense_apply(const ErrorOperator&, const DenseFloatState&);
template DenseState dense_apply_adjoint(const ErrorOperator&, const DenseState&);
template DenseFloatState dense_apply_adjoint(const ErrorOperator&, const DenseFloatState&);
template DenseState dense_shift(const DenseState&, Residue);
template DenseFloatState dense_shift(const DenseFloatState&, Residue);
template GaussI64 dense_inner(const DenseState&, const DenseState&);
template std::complex<double> dense_inner(const DenseFloatState&, const DenseFloatState&);

DenseFloatState to_float(const DenseState& psi) {
  DenseFloatState out{psi.d, psi.n, {}};
  for (const auto& [k, a] : psi.terms) out.terms.emplace_back(k, std::complex<double>(a.re, a.im));
  return out;
}

DenseState scaled_sum(const std::vector<std::pair<GaussI64, DenseState>>& parts) {
  if (parts.empty()) return {};
  std::unordered_map<std::uint64_t, GaussI64> acc;
  for (const auto& [c, psi] : parts)
    for (const auto& [k, a] : psi.terms) acc[k] += c * a;
  return from_map(parts.front().second.d, parts.front().second.n, acc);
}

DenseState dense_expand(const StateVector& psi, std::uint64_t cap) {
  std::vector<std::pair<GaussI64, DenseState>> parts;
  for (const auto& [u, a] : psi.terms()) {
    if (!a.re().is_rational() || !a.im().is_rational() ||
        a.re().rational_part().get_den() != 1 || a.im().rational_part().get_den() != 1) {
      throw InvalidInput("dense_expand needs Gaussian-integer amplitudes");
    }
    GaussI64 c{a.re().rational_part().get_num().get_si(),
               a.im().rational_part().get_num().get_si()};
    parts.emplace_back(c, dense_symmetric_vector(u, cap));
  }
  if (parts.empty()) return DenseState{psi.d(), psi.n(), {}};
  return scaled_sum(parts);
}

GateReport run_oracle_gate(unsigned d, unsigned n, std::optional<std::size_t> trials,
                           std::uint64_t seed, std::uint64_t cap) {
  require_qudit_dimension(d);
  std::vector<OccupationVector> inputs;
  if (trials) {
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < *trials; ++t) inputs.push_back(random_occupation(d, n, rng));
  } else {
    inputs = all_compositions(d, n);
  }
  GateReport report;
  const auto basis = error_basis(d);
  for (const auto& u : inputs) {
    const DenseState su = dense_symmetric_vector(u, cap);
    ++report.cases;
    if (dense_inner(su, su) != GaussI64{multinomial(n, u.entries()).get_si(), 0}) {
      report.passed = false;
      report.witness = "<S_u|S_u> differs from the multinomial for u = " + u.to_string();
      return report;
    }
    for (const auto& op : basis) {
      ++report.cases;
      DenseState combinatorial = dense_expand(apply_generator(op, StateVector::basis(u)), cap);
      DenseState dense = dense_apply(op, su);
      if (!(combinatorial == dense)) {
        report.passed = false;
        report.witness = op.name() + " on |S_" + u.to_string() + ">: combinatorial action (" +
                         std::to_string(combinatorial.terms.size()) +
                         " strings) differs from the dense action (" +
                         std::to_string(dense.terms.size()) + " strings)";
        return report;
      }
    }
  }
  return report;
}

namespace {

// Accumulates <bra|ket>, merging linearly for similar sizes and by binary
// search from the smaller side otherwise.
void overlap_into(const DenseState& bra, const DenseState& ket, GaussI64& value, bool& overlap) {
  const auto& x = bra.terms;
  const auto& y = ket.terms;
  if (x.empty() || y.empty() || x.back().first < y.front().first ||
      y.back().first < x.front().first) {
    return;
  }
  auto hit = [&](const GaussI64& bv, const GaussI64& kv) {
    overlap = true;
    value += conj(bv) * kv;
  };
  const std::size_t small = std::min(x.size(), y.size());
  const std::size_t large = std::max(x.size(), y.size());
  if (large / small < 32) {
    auto a = x.begin();
    auto b = y.begin();
    while (a != x.end() && b != y.end()) {
      if (a->first < b->first) {
        ++a;
      } else if (b->first < a->first) {
        ++b;
      } else {
        hit(a->second, b->second);
        ++a;
        ++b;
      }
    }
    return;
  }
  auto key_less = [](const auto& e, std::uint64_t k) { return e.first < k; };
  if (x.size() <= y.size()) {
    auto lo = y.begin();
    for (const auto& [key, v] : x) {
      lo = std::lower_bound(lo, y.end(), key, key_less);
      if (lo == y.end()) break;
      if (lo->first == key) hit(v, lo->second);
    }
  } else {
    auto lo = x.begin();
    for (const auto& [key, v] : y) {
      lo = std::lower_bound(lo, x.end(), key, key_less);
      if (lo == x.end()) break;
      if (lo->first == key) hit(lo->second, v);
    }
  }
}

}  // namespace

// Orbit-level Gram blocks G = <E_a^dag B_{s,i} | E_b B_{t,j}>, with B_{s,k} the
// 0/1 vector over all strings of all members of orbit s shifted by k, then
// <i|E_a E_b|j> = sum_{s,t} a_s a_t G.
KLReport dense_kl(const Code& code, std::uint64_t cap) {
  auto v = validate(code);
  if (!v.structurally_valid()) throw InvalidInput("invalid code: " + v.first_failure());
  const unsigned d = code.d;
  const unsigned m = static_cast<unsigned>(code.orbits.size());
  const auto basis = error_basis(d);
  const std::size_t nb = basis.size();

  std::vector<DenseState> blocks(m * d);  // [s][k]
  for (unsigned s = 0; s < m; ++s) {
    for (unsigned k = 0; k < d; ++k) {
      std::vector<std::pair<GaussI64, DenseState>> parts;
      for (const auto& w : expand_orbit(code.orbits[s].representative)) {
        parts.emplace_back(GaussI64{1, 0}, dense_symmetric_vector(cyclic_shift(w, k), cap));
      }
      blocks[s * d + k] = scaled_sum(parts);
    }
  }
  std::vector<DenseState> bras(nb * m * d);  // [a][s][i]
  for (std::size_t a = 0; a < nb; ++a)
    for (unsigned x = 0; x < m * d; ++x) bras[a * m * d + x] = dense_apply_adjoint(basis[a], blocks[x]);

  struct Gram {
    GaussI64 value;
    bool overlap = false;
  };
  // gram[((a * nb + b) * d * d + i * d + j) * m * m + s * m + t]
  std::vector<Gram> gram(nb * nb * d * d * m * m);
  for (std::size_t b = 0; b < nb; ++b) {
    for (unsigned t = 0; t < m; ++t) {
      for (unsigned j = 0; j < d; ++j) {
        const DenseState ket = dense_apply(basis[b], blocks[t * d + j]);
        for (std::size_t a = 0; a < nb; ++a) {
          for (unsigned s = 0; s < m; ++s) {
            for (unsigned i = 0; i < d; ++i) {
              const DenseState& bra = bras[(a * m + s) * d + i];
              Gram& g = gram[((a * nb + b) * d * d + i * d + j) * m * m + s * m + t];
              overlap_into(bra, ket, g.value, g.overlap);
            }
          }
        }
      }
    }
  }

  std::vector<RadicalSum> products(m * m);
  for (unsigned s = 0; s < m; ++s)
    for (unsigned t = 0; t < m; ++t)
      products[s * m + t] = code.orbits[s].amplitude * code.orbits[t].amplitude;

  std::vector<std::vector<ElementCell>> cells(nb * nb, std::vector<ElementCell>(d * d));
  for (std::size_t p = 0; p < nb * nb; ++p) {
    for (unsigned e = 0; e < d * d; ++e) {
      RadicalSum re, im;
      bool overlap = false;
      for (unsigned st = 0; st < m * m; ++st) {
        const Gram& g = gram[(p * d * d + e) * m * m + st];
        overlap = overlap || g.overlap;
        if (g.value.re != 0) re += products[st] * BigRational(g.value.re);
        if (g.value.im != 0) im += products[st] * BigRational(g.value.im);
      }
      ElementCell& c = cells[p][e];
      c.overlap = overlap;
      c.value.exact = ExactComplex(std::move(re), std::move(im));
      c.value.approx = c.value.exact->to_complex();
    }
  }
  return full_report_from_cells(d, Mode::Exact, 1e-10, cells);
}

}  // namespace sdpi
