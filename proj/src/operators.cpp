#include "sdpi/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "sdpi/errors.hpp"

namespace sdpi {

std::string ErrorOperator::name() const {
  switch (kind) {
    case GeneratorKind::Identity:
      return "I";
    case GeneratorKind::S:
      return "S(" + std::to_string(j) + "," + std::to_string(k) + ")";
    case GeneratorKind::A:
      return "A(" + std::to_string(j) + "," + std::to_string(k) + ")";
    case GeneratorKind::D:
      return "D(" + std::to_string(j) + ")";
  }
  return "?";
}

std::vector<ErrorOperator> error_basis(unsigned d) {
  std::vector<ErrorOperator> out{ErrorOperator::identity()};
  for (unsigned j = 0; j < d; ++j)
    for (unsigned k = j + 1; k < d; ++k) out.push_back(ErrorOperator::s(j, k));
  for (unsigned j = 0; j < d; ++j)
    for (unsigned k = j + 1; k < d; ++k) out.push_back(ErrorOperator::a(j, k));
  for (unsigned l = 0; l + 2 <= d; ++l) out.push_back(ErrorOperator::d(l));
  return out;
}

ErrorOperator parse_operator(const std::string& name) {
  static const std::regex pair_re(R"(([SA])\((\d+),(\d+)\))");
  static const std::regex diag_re(R"(D\((\d+)\))");
  std::smatch m;
  if (name == "I") return ErrorOperator::identity();
  if (std::regex_match(name, m, pair_re)) {
    unsigned j = std::stoul(m[2]), k = std::stoul(m[3]);
    return m[1] == "S" ? ErrorOperator::s(j, k) : ErrorOperator::a(j, k);
  }
  if (std::regex_match(name, m, diag_re)) return ErrorOperator::d(std::stoul(m[1]));
  throw InvalidInput("unrecognized operator name '" + name + "'");
}

bool in_error_basis(const ErrorOperator& op, unsigned d) {
  switch (op.kind) {
    case GeneratorKind::Identity:
      return true;
    case GeneratorKind::D:
      return op.j + 2 <= d;
    default:
      return op.j < op.k && op.k < d;
  }
}

namespace {

void check_operator(const ErrorOperator& op, unsigned d) {
  bool ok = true;
  if (op.kind == GeneratorKind::D) ok = op.j < d;
  if (op.kind == GeneratorKind::S || op.kind == GeneratorKind::A)
    ok = op.j < d && op.k < d && op.j != op.k;
  if (!ok) throw InvalidInput("operator " + op.name() + " does not act on d=" + std::to_string(d));
}

}  // namespace

template <class Amp>
BasicStateVector<Amp>::BasicStateVector(unsigned d, unsigned n) : d_(d), n_(n) {}

template <class Amp>
BasicStateVector<Amp> BasicStateVector<Amp>::basis(const OccupationVector& u) {
  BasicStateVector v(static_cast<unsigned>(u.dim()), u.total());
  v.add(u, AmpTraits<Amp>::from_integer(1));
  return v;
}

template <class Amp>
Amp BasicStateVector<Amp>::at(const OccupationVector& u) const {
  auto it = terms_.find(u);
  return it == terms_.end() ? Amp{} : it->second;
}

template <class Amp>
void BasicStateVector<Amp>::add(const OccupationVector& u, const Amp& a) {
  if (u.dim() != d_ || u.total() != n_) {
    throw InvalidInput("state vector term " + u.to_string() + " does not match d=" +
                       std::to_string(d_) + ", N=" + std::to_string(n_));
  }
  if (AmpTraits<Amp>::is_zero(a)) return;
  auto [it, inserted] = terms_.try_emplace(u, a);
  if (!inserted) {
    it->second += a;
    if (AmpTraits<Amp>::is_zero(it->second)) terms_.erase(it);
  }
}

template <class Amp>
std::optional<Residue> BasicStateVector<Amp>::homogeneous_weight() const {
  std::optional<Residue> w;
  for (const auto& [u, a] : terms_) {
    Residue x = weight(u);
    if (w && *w != x) return std::nullopt;
    w = x;
  }
  return w;
}

template <class Amp>
BasicStateVector<Amp> apply_generator(const ErrorOperator& op, const BasicStateVector<Amp>& psi) {
  check_operator(op, psi.d());
  BasicStateVector<Amp> out(psi.d(), psi.n());
  for (const auto& [u, a] : psi.terms()) {
    for_each_action(op, u, [&](const OccupationVector& v, GaussianInt c) {
      out.add(v, AmpTraits<Amp>::scale(a, c));
    });
  }
  return out;
}

template <class Amp>
BasicStateVector<Amp> apply_logical_x(const BasicStateVector<Amp>& psi, Residue a) {
  BasicStateVector<Amp> out(psi.d(), psi.n());
  for (const auto& [u, amp] : psi.terms()) out.add(cyclic_shift(u, a % psi.d()), amp);
  return out;
}

template <class Amp>
Amp inner_product(const BasicStateVector<Amp>& phi, const BasicStateVector<Amp>& psi,
                  bool weight_fast_path) {
  if (phi.d() != psi.d() || phi.n() != psi.n()) {
    throw InvalidInput("inner_product: states live in different spaces");
  }
  if (weight_fast_path) {
    auto wa = phi.homogeneous_weight();
    auto wb = psi.homogeneous_weight();
    if (wa && wb && *wa != *wb) return Amp{};
  }
  Amp total{};
  const auto& small = phi.size() <= psi.size() ? phi.terms() : psi.terms();
  const auto& large = phi.size() <= psi.size() ? psi.terms() : phi.terms();
  const bool phi_small = phi.size() <= psi.size();
  for (const auto& [u, a] : small) {
    auto it = large.find(u);
    if (it == large.end()) continue;
    const Amp& bra = phi_small ? a : it->second;
    const Amp& ket = phi_small ? it->second : a;
    total += conj_of(bra) * ket * AmpTraits<Amp>::from_integer(multinomial(phi.n(), u.entries()));
  }
  return total;
}

template class BasicStateVector<ExactComplex>;
template class BasicStateVector<std::complex<double>>;
template StateVector apply_generator(const ErrorOperator&, const StateVector&);
template FloatStateVector apply_generator(const ErrorOperator&, const FloatStateVector&);
template StateVector apply_logical_x(const StateVector&, Residue);
template FloatStateVector apply_logical_x(const FloatStateVector&, Residue);
template ExactComplex inner_product(const StateVector&, const StateVector&, bool);
template std::complex<double> inner_product(const FloatStateVector&, const FloatStateVector&,
                                            bool);

FloatStateVector to_float(const StateVector& psi) {
  FloatStateVector out(psi.d(), psi.n());
  for (const auto& [u, a] : psi.terms()) out.add(u, a.to_complex());
  return out;
}

// Conjugation identities

namespace {

std::vector<ErrorOperator> family(unsigned d, ConjugationIdentity id) {
  std::vector<ErrorOperator> ops;
  for (const auto& op : error_basis(d)) {
    bool take = (id == ConjugationIdentity::XS || id == ConjugationIdentity::ZS)
                    ? op.kind == GeneratorKind::S
                    : (id == ConjugationIdentity::XA ? op.kind == GeneratorKind::A
                                               : op.kind == GeneratorKind::D);
    if (take) ops.push_back(op);
  }
  // D(d-1) is not in the basis but is the image of D(0) under conjugation.
  if (id == ConjugationIdentity::XD) ops.push_back(ErrorOperator::d(d - 1));
  return ops;
}

ErrorOperator shifted_down(const ErrorOperator& op, unsigned d) {
  ErrorOperator r = op;
  r.j = (op.j + d - 1) % d;
  if (op.kind != GeneratorKind::D) r.k = (op.k + d - 1) % d;
  return r;
}

std::string describe(const ErrorOperator& op, const OccupationVector& u) {
  return op.name() + " on |S_" + u.to_string() + ">";
}

bool check_x(const ErrorOperator& op, const OccupationVector& u, std::string& witness) {
  const unsigned d = static_cast<unsigned>(u.dim());
  auto psi = StateVector::basis(u);
  auto lhs = apply_logical_x(apply_generator(op, apply_logical_x(psi, 1)), d - 1);
  auto rhs = apply_generator(shifted_down(op, d), psi);
  if (lhs == rhs) return true;
  witness = "X^dag " + describe(op, u) + " X differs from " + shifted_down(op, d).name();
  return false;
}

bool check_z_float(const ErrorOperator& op, const OccupationVector& u, double tol,
                   std::string& witness) {
  const unsigned d = static_cast<unsigned>(u.dim());
  auto zeta = [d](long m) {
    double t = 2.0 * std::numbers::pi * double(((m % long(d)) + long(d)) % long(d)) / double(d);
    return std::complex<double>(std::cos(t), std::sin(t));
  };
  auto psi = FloatStateVector::basis(u);
  FloatStateVector lhs(d, u.total());
  const long wu = weight(u);
  for_each_action(op, u, [&](const OccupationVector& v, GaussianInt c) {
    lhs.add(v, zeta(wu - long(weight(v))) * std::complex<double>(double(c.re), double(c.im)));
  });
  auto z = zeta(long(op.k) - long(op.j));
  auto s_part = apply_generator(op, psi);
  auto a_part = apply_generator(ErrorOperator::a(op.j, op.k), psi);
  FloatStateVector rhs(d, u.total());
  for (const auto& [v, a] : s_part.terms()) rhs.add(v, z.real() * a);
  for (const auto& [v, a] : a_part.terms()) rhs.add(v, -z.imag() * a);
  for (const auto& [v, a] : lhs.terms()) {
    if (std::abs(a - rhs.at(v)) > tol) {
      witness = "Z^dag " + describe(op, u) + " Z mismatch at " + v.to_string();
      return false;
    }
  }
  for (const auto& [v, a] : rhs.terms()) {
    if (std::abs(a - lhs.at(v)) > tol) {
      witness = "Z^dag " + describe(op, u) + " Z mismatch at " + v.to_string();
      return false;
    }
  }
  return true;
}

// Branch-level form: on the branch where A has coefficient -i times that of S
// the conjugated phase must be zeta^{k-j}; where it is +i times, zeta^{j-k}.
bool check_z_exponent(const ErrorOperator& op, const OccupationVector& u, std::string& witness) {
  const unsigned d = static_cast<unsigned>(u.dim());
  std::map<OccupationVector, GaussianInt> s_coeff, a_coeff;
  for_each_action(op, u, [&](const OccupationVector& v, GaussianInt c) { s_coeff[v] = c; });
  for_each_action(ErrorOperator::a(op.j, op.k), u,
                  [&](const OccupationVector& v, GaussianInt c) { a_coeff[v] = c; });
  if (s_coeff.size() != a_coeff.size()) {
    witness = describe(op, u) + ": S and A reach different vectors";
    return false;
  }
  const long m = long(op.k) - long(op.j);
  for (const auto& [v, cs] : s_coeff) {
    auto it = a_coeff.find(v);
    if (it == a_coeff.end()) {
      witness = describe(op, u) + ": A misses " + v.to_string();
      return false;
    }
    const GaussianInt ca = it->second;
    long want;
    if (ca == GaussianInt{cs.im, -cs.re}) {
      want = m;  // A = -i S
    } else if (ca == GaussianInt{-cs.im, cs.re}) {
      want = -m;  // A = +i S
    } else {
      witness = describe(op, u) + ": A branch is not +-i times the S branch";
      return false;
    }
    long got = long(weight(u)) - long(weight(v));
    if (((got - want) % long(d) + long(d)) % long(d) != 0) {
      witness = "Z^dag " + describe(op, u) + " Z: phase exponent " + std::to_string(got) +
                " at " + v.to_string();
      return false;
    }
  }
  return true;
}

}  // namespace

IdentityCheck conjugation_identity_check(unsigned d, unsigned n, ConjugationIdentity id,
                                         std::size_t trials, std::uint64_t seed,
                                         IdentityCheckMode mode, double tolerance) {
  require_qudit_dimension(d);
  IdentityCheck result;
  std::mt19937_64 rng(seed);
  const auto ops = family(d, id);
  for (std::size_t t = 0; t < trials; ++t) {
    auto u = random_occupation(d, n, rng);
    for (const auto& op : ops) {
      bool ok;
      if (id == ConjugationIdentity::ZS) {
        ok = mode == IdentityCheckMode::Float ? check_z_float(op, u, tolerance, result.witness)
                                              : check_z_exponent(op, u, result.witness);
      } else {
        ok = check_x(op, u, result.witness);
      }
      ++result.checked;
      if (!ok) {
        result.holds = false;
        return result;
      }
    }
  }
  return result;
}

}  // namespace sdpi
