#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdpi {

using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational make_rational(const BigInt& num, const BigInt& den);
std::string to_string(const BigInt& v);
std::string to_string(const BigRational& v);

struct FactorBudget {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_iterations = 1'000'000;
};

// A positive integer stored as prime -> exponent. Division is only allowed
// when the result stays integral.
class FactoredNatural {
 public:
  FactoredNatural() = default;

  static FactoredNatural prime_power(const BigInt& p, unsigned long e = 1);
  // n! via Legendre's formula.
  static FactoredNatural factorial(unsigned long n);

  FactoredNatural& operator*=(const FactoredNatural& rhs);
  FactoredNatural& operator/=(const FactoredNatural& rhs);
  friend FactoredNatural operator*(FactoredNatural a, const FactoredNatural& b) { return a *= b; }
  friend FactoredNatural operator/(FactoredNatural a, const FactoredNatural& b) { return a /= b; }
  friend bool operator==(const FactoredNatural&, const FactoredNatural&) = default;

  bool divides(const FactoredNatural& other) const;
  BigInt value() const;
  const std::map<BigInt, unsigned long>& factors() const { return factors_; }

 private:
  std::map<BigInt, unsigned long> factors_;
};

// N! / prod u_i!, never forming the factorials.
FactoredNatural multinomial_factored(unsigned long n, std::span<const std::uint16_t> parts);
BigInt multinomial(unsigned long n, std::span<const std::uint16_t> parts);
BigInt binomial(unsigned long n, unsigned long k);

FactoredNatural factorize(const BigInt& n, const FactorBudget& budget = {});

struct SquarefreeSplit {
  BigInt square_part;
  BigInt squarefree_part;
};

SquarefreeSplit squarefree_split(const BigInt& n, const FactorBudget& budget = {});
SquarefreeSplit squarefree_split(const FactoredNatural& n);

// Finite sum of c_i * sqrt(r_i) with rational c_i and distinct squarefree r_i.
// Kept sorted by radicand with no zero coefficients, so equality is term-wise.
class RadicalSum {
 public:
  struct Term {
    BigInt radicand;
    BigRational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  RadicalSum() = default;
  RadicalSum(const BigRational& q);  // NOLINT: rationals embed implicitly
  RadicalSum(long v) : RadicalSum(BigRational(v)) {}  // NOLINT

  // coeff * sqrt(radicand); radicand must already be squarefree.
  static RadicalSum surd(const BigRational& coeff, const BigInt& squarefree_radicand);
  // sqrt(q) for q >= 0, factoring numerator and denominator.
  static RadicalSum sqrt_of(const BigRational& q, const FactorBudget& budget = {});
  // sqrt(num / den) without any factoring.
  static RadicalSum sqrt_of(const FactoredNatural& num, const FactoredNatural& den);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  BigRational rational_part() const;
  double to_double() const;
  std::string to_string() const;

  RadicalSum& operator+=(const RadicalSum& rhs);
  RadicalSum& operator-=(const RadicalSum& rhs);
  RadicalSum& operator*=(const BigRational& rhs);
  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
  friend RadicalSum operator*(RadicalSum a, const BigRational& b) { return a *= b; }
  friend RadicalSum operator*(const BigRational& b, RadicalSum a) { return a *= b; }
  friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b);
  RadicalSum operator-() const;
  friend bool operator==(const RadicalSum&, const RadicalSum&) = default;

 private:
  static std::vector<Term> normalize(std::vector<Term> terms);
  std::vector<Term> terms_;
};

// re + i*im with radical-sum parts.
class ExactComplex {
 public:
  ExactComplex() = default;
  ExactComplex(RadicalSum re, RadicalSum im = {}) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT

  const RadicalSum& re() const { return re_; }
  const RadicalSum& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  ExactComplex conj() const { return {re_, -im_}; }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }
  std::string to_string() const;

  ExactComplex& operator+=(const ExactComplex& rhs);
  ExactComplex& operator-=(const ExactComplex& rhs);
  ExactComplex& operator*=(const BigRational& rhs);
  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const BigRational& b) { return a *= b; }
  friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b);
  ExactComplex operator-() const { return {-re_, -im_}; }
  friend bool operator==(const ExactComplex&, const ExactComplex&) = default;

  // Multiply by the Gaussian integer (a + b i).
  ExactComplex times_gaussian(long a, long b) const;

 private:
  RadicalSum re_;
  RadicalSum im_;
};

// Paper-style single surd: sign * coeff * sqrt(radicand) with coeff > 0 and
// radicand = p/q, p and q squarefree and coprime.
struct Surd {
  int sign = 1;
  BigRational coeff;
  BigRational radicand;
};

RadicalSum to_radical(const Surd& s, const FactorBudget& budget = {});
// Empty unless the value is a single nonzero term.
std::optional<Surd> as_surd(const RadicalSum& r);

}  // namespace sdpi
