#include "sdpi/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sdpi/errors.hpp"

namespace sdpi {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidInput("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const BigRational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

std::vector<unsigned long> primes_up_to(unsigned long n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<unsigned long> out;
  for (unsigned long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

unsigned long legendre(unsigned long n, unsigned long p) {
  unsigned long e = 0;
  for (unsigned long q = n / p; q > 0; q /= p) e += q;
  return e;
}

}  // namespace

FactoredNatural FactoredNatural::prime_power(const BigInt& p, unsigned long e) {
  FactoredNatural f;
  if (e > 0) f.factors_[p] = e;
  return f;
}

FactoredNatural FactoredNatural::factorial(unsigned long n) {
  FactoredNatural f;
  for (unsigned long p : primes_up_to(n)) f.factors_[BigInt(p)] = legendre(n, p);
  return f;
}

FactoredNatural& FactoredNatural::operator*=(const FactoredNatural& rhs) {
  for (const auto& [p, e] : rhs.factors_) factors_[p] += e;
  return *this;
}

FactoredNatural& FactoredNatural::operator/=(const FactoredNatural& rhs) {
  if (!rhs.divides(*this)) throw std::domain_error("FactoredNatural: inexact division");
  for (const auto& [p, e] : rhs.factors_) {
    auto it = factors_.find(p);
    it->second -= e;
    if (it->second == 0) factors_.erase(it);
  }
  return *this;
}

bool FactoredNatural::divides(const FactoredNatural& other) const {
  return std::all_of(factors_.begin(), factors_.end(), [&](const auto& kv) {
    auto it = other.factors_.find(kv.first);
    return it != other.factors_.end() && it->second >= kv.second;
  });
}

BigInt FactoredNatural::value() const {
  BigInt v = 1;
  BigInt t;
  for (const auto& [p, e] : factors_) {
    mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), e);
    v *= t;
  }
  return v;
}

FactoredNatural multinomial_factored(unsigned long n, std::span<const std::uint16_t> parts) {
  unsigned long total = 0;
  for (auto x : parts) total += x;
  if (total != n) {
    throw InvalidInput("multinomial: entries sum to " + std::to_string(total) + ", expected " +
                       std::to_string(n));
  }
  FactoredNatural f;
  for (unsigned long p : primes_up_to(n)) {
    unsigned long e = legendre(n, p);
    for (auto x : parts) e -= legendre(x, p);
    if (e > 0) f *= FactoredNatural::prime_power(BigInt(p), e);
  }
  return f;
}

BigInt multinomial(unsigned long n, std::span<const std::uint16_t> parts) {
  return multinomial_factored(n, parts).value();
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

class Factorizer {
 public:
  explicit Factorizer(const FactorBudget& b) : budget_(b) {}

  void run(BigInt n, FactoredNatural& out) {
    if (n < 1) throw InvalidInput("factorize: argument must be positive");
    for (unsigned long p = 2; p <= budget_.trial_bound; p += (p == 2 ? 1 : 2)) {
      if (BigInt(p) * p > n) break;
      unsigned long e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      if (e > 0) out *= FactoredNatural::prime_power(BigInt(p), e);
    }
    if (n == 1) return;
    BigInt bound_sq = BigInt(budget_.trial_bound) * budget_.trial_bound;
    if (n < bound_sq) {
      out *= FactoredNatural::prime_power(n);
      return;
    }
    split(n, out);
  }

 private:
  void split(const BigInt& n, FactoredNatural& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
      out *= FactoredNatural::prime_power(n);
      return;
    }
    BigInt f = rho(n);
    split(f, out);
    split(BigInt(n / f), out);
  }

  // Brent's variant of Pollard rho.
  BigInt rho(const BigInt& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      BigInt r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      return r;
    }
    for (unsigned long c = 1;; ++c) {
      BigInt y = 2, x, ys, q = 1, g = 1;
      const unsigned long m = 128;
      unsigned long r = 1;
      auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
      while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i) y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
          ys = y;
          unsigned long lim = std::min(m, r - k);
          for (unsigned long i = 0; i < lim; ++i) {
            y = f(y);
            q = (q * abs(x - y)) % n;
          }
          spend(lim);
          mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
          k += m;
        }
        r *= 2;
      }
      if (g == n) {
        do {
          ys = f(ys);
          spend(1);
          BigInt diff = abs(x - ys);
          mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
      }
      if (g != n) return g;
    }
  }

  void spend(std::uint64_t k) {
    used_ += k;
    if (used_ > budget_.rho_iterations) {
      throw Unfactorable("factorization exceeded the rho iteration budget");
    }
  }

  FactorBudget budget_;
  std::uint64_t used_ = 0;
};

}  // namespace

FactoredNatural factorize(const BigInt& n, const FactorBudget& budget) {
  FactoredNatural out;
  Factorizer(budget).run(n, out);
  return out;
}

SquarefreeSplit squarefree_split(const FactoredNatural& n) {
  SquarefreeSplit s{1, 1};
  BigInt t;
  for (const auto& [p, e] : n.factors()) {
    mpz_pow_ui(t.get_mpz_t(), p.get_mpz_t(), e / 2);
    s.square_part *= t;
    if (e % 2 == 1) s.squarefree_part *= p;
  }
  return s;
}

SquarefreeSplit squarefree_split(const BigInt& n, const FactorBudget& budget) {
  return squarefree_split(factorize(n, budget));
}

// RadicalSum

RadicalSum::RadicalSum(const BigRational& q) {
  if (q != 0) terms_.push_back({BigInt(1), q});
}

RadicalSum RadicalSum::surd(const BigRational& coeff, const BigInt& squarefree_radicand) {
  if (squarefree_radicand < 1) throw InvalidInput("radicand must be positive");
  RadicalSum r;
  if (coeff != 0) r.terms_.push_back({squarefree_radicand, coeff});
  return r;
}

RadicalSum RadicalSum::sqrt_of(const FactoredNatural& num, const FactoredNatural& den) {
  auto s = squarefree_split(num * den);
  return surd(make_rational(s.square_part, den.value()), s.squarefree_part);
}

RadicalSum RadicalSum::sqrt_of(const BigRational& q, const FactorBudget& budget) {
  if (q < 0) throw InvalidInput("square root of a negative rational");
  if (q == 0) return {};
  return sqrt_of(factorize(q.get_num(), budget), factorize(q.get_den(), budget));
}

std::vector<RadicalSum::Term> RadicalSum::normalize(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().radicand == t.radicand) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return out;
}

bool RadicalSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

BigRational RadicalSum::rational_part() const {
  if (!terms_.empty() && terms_[0].radicand == 1) return terms_[0].coeff;
  return 0;
}

double RadicalSum::to_double() const {
  double v = 0;
  for (const auto& t : terms_) v += t.coeff.get_d() * std::sqrt(t.radicand.get_d());
  return v;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << sdpi::to_string(t.coeff);
    if (t.radicand != 1) os << "*sqrt(" << t.radicand.get_str() << ")";
  }
  return os.str();
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& rhs) {
  if (rhs.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->radicand < b->radicand)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->radicand < a->radicand) {
      merged.push_back(*b++);
    } else {
      BigRational c = a->coeff + b->coeff;
      if (c != 0) merged.push_back({a->radicand, c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& rhs) { return *this += -rhs; }

RadicalSum& RadicalSum::operator*=(const BigRational& rhs) {
  if (rhs == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= rhs;
  }
  return *this;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
  std::vector<RadicalSum::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  BigInt g;
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      // sqrt(x)*sqrt(y) = g*sqrt((x/g)(y/g)) for squarefree x, y with g = gcd(x, y).
      mpz_gcd(g.get_mpz_t(), x.radicand.get_mpz_t(), y.radicand.get_mpz_t());
      BigInt r = (x.radicand / g) * (y.radicand / g);
      out.push_back({std::move(r), x.coeff * y.coeff * g});
    }
  }
  RadicalSum r;
  r.terms_ = RadicalSum::normalize(std::move(out));
  return r;
}

// ExactComplex

ExactComplex& ExactComplex::operator+=(const ExactComplex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const BigRational& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) return {a.re_ * b.re_};
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

ExactComplex ExactComplex::times_gaussian(long a, long b) const {
  BigRational qa(a), qb(b);
  if (b == 0) return {re_ * qa, im_ * qa};
  if (a == 0) return {-(im_ * qb), re_ * qb};
  return {re_ * qa - im_ * qb, re_ * qb + im_ * qa};
}

std::string ExactComplex::to_string() const {
  if (im_.is_zero()) return re_.to_string();
  if (re_.is_zero()) return "i*(" + im_.to_string() + ")";
  return re_.to_string() + " + i*(" + im_.to_string() + ")";
}

// Surds

RadicalSum to_radical(const Surd& s, const FactorBudget& budget) {
  if (s.sign != 1 && s.sign != -1) throw InvalidInput("amplitude sign must be +1 or -1");
  if (s.coeff <= 0) throw InvalidInput("amplitude coefficient must be positive");
  if (s.radicand <= 0) throw InvalidInput("amplitude radicand must be positive");
  return RadicalSum::sqrt_of(s.radicand, budget) * BigRational(s.coeff * s.sign);
}

std::optional<Surd> as_surd(const RadicalSum& r) {
  if (r.terms().size() != 1) return std::nullopt;
  const auto& t = r.terms()[0];
  BigInt num = abs(t.coeff.get_num());
  const BigInt& den = t.coeff.get_den();
  // Move the part of the radicand shared with the denominator below the root:
  // (n/m)sqrt(r) = (n/(m/g)) sqrt((r/g)/g) with g = gcd(r, m).
  BigInt g;
  mpz_gcd(g.get_mpz_t(), t.radicand.get_mpz_t(), den.get_mpz_t());
  Surd s;
  s.sign = t.coeff < 0 ? -1 : 1;
  s.coeff = make_rational(num, den / g);
  s.radicand = make_rational(t.radicand / g, g);
  return s;
}

}  // namespace sdpi
