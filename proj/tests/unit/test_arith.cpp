#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "sdpi/arith.hpp"
#include "sdpi/errors.hpp"

using namespace sdpi;
using testing::q;

namespace {

BigInt multi(unsigned n, std::initializer_list<std::uint16_t> parts) {
  std::vector<std::uint16_t> v(parts);
  return multinomial(n, v);
}

RadicalSum random_radical(std::mt19937_64& rng) {
  static const long radicands[] = {1, 2, 3, 5, 6, 7};
  RadicalSum r;
  std::uniform_int_distribution<long> coeff(-9, 9), pick(0, 5);
  for (int t = 0; t < 3; ++t) r += RadicalSum::surd(q(coeff(rng), 1 + pick(rng)), radicands[pick(rng)]);
  return r;
}

}  // namespace

TEST_CASE("multinomial coefficients") {
  CHECK(multi(13, {13, 0, 0}) == 1);
  CHECK(multi(13, {4, 0, 9}) == 715);
  CHECK(multi(13, {3, 5, 5}) == 72072);
  CHECK(multi(36, {0, 6, 6, 6, 6, 6, 6}) == BigInt("2670177736637149247308800"));
  CHECK_THROWS_AS(multi(13, {3, 5, 4}), InvalidInput);
  CHECK(binomial(15, 13) == 105);
}

TEST_CASE("multinomial is symmetric in its parts") {
  std::vector<std::uint16_t> parts{2, 7, 0, 5, 1};
  const BigInt ref = multinomial(15, parts);
  std::sort(parts.begin(), parts.end());
  do {
    CHECK(multinomial(15, parts) == ref);
  } while (std::next_permutation(parts.begin(), parts.end()));
}

TEST_CASE("factored naturals") {
  const auto f10 = FactoredNatural::factorial(10);
  CHECK(f10.value() == 3628800);
  CHECK((f10 / FactoredNatural::factorial(7)).value() == 720);
  CHECK_THROWS((FactoredNatural::factorial(3) / FactoredNatural::prime_power(5)));
  CHECK(FactoredNatural::prime_power(3, 2).divides(f10));
}

TEST_CASE("squarefree split") {
  auto check = [](long n, long square, long free) {
    auto s = squarefree_split(BigInt(n));
    CHECK(s.square_part == square);
    CHECK(s.squarefree_part == free);
  };
  check(18, 3, 2);
  check(1, 1, 1);
  check(72072, 6, 2002);
  for (long n = 1; n < 3000; ++n) {
    auto s = squarefree_split(BigInt(n));
    CHECK(s.square_part * s.square_part * s.squarefree_part == n);
  }
}

TEST_CASE("factorization beyond trial division") {
  const BigInt p("1000000007"), r("998244353");
  const FactoredNatural f = factorize(p * r * r);
  CHECK(f.value() == p * r * r);
  CHECK(f.factors().at(r) == 2);
  FactorBudget tiny{100, 1};
  CHECK_THROWS_AS(factorize(p * r, tiny), Unfactorable);
}

TEST_CASE("radical arithmetic examples") {
  const auto s2 = RadicalSum::sqrt_of(q(2)), s3 = RadicalSum::sqrt_of(q(3)), s8 = RadicalSum::sqrt_of(q(8));
  CHECK(s2 * s8 == RadicalSum(q(4)));
  CHECK((s2 + s3) + (-s2) == s3);
  const auto alpha = RadicalSum::sqrt_of(q(41, 5)) * q(1, 9);
  CHECK(alpha * alpha == RadicalSum(q(41, 405)));
  CHECK((s2 - s2).is_zero());
  CHECK_FALSE((s2 + s3).is_rational());
  CHECK((s2 * s3).to_double() == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("radical sums form a commutative ring") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_radical(rng), b = random_radical(rng), c = random_radical(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("surd conversion") {
  Surd s{1, q(1, 18), q(1, 385)};
  const RadicalSum r = to_radical(s);
  CHECK(r * r == RadicalSum(q(1, 124740)));
  auto back = as_surd(r);
  REQUIRE(back);
  CHECK(back->coeff == q(1, 18));
  CHECK(back->radicand == q(1, 385));
  CHECK(as_surd(RadicalSum::sqrt_of(q(2)) + RadicalSum::sqrt_of(q(3))) == std::nullopt);
  auto neg = as_surd(-RadicalSum::sqrt_of(q(5, 4)));
  REQUIRE(neg);
  CHECK(neg->sign == -1);
  CHECK(neg->coeff == q(1, 2));
  CHECK(neg->radicand == q(5));
}

TEST_CASE("exact complex numbers") {
  const ExactComplex i{RadicalSum(), RadicalSum(q(1))};
  CHECK(i * i == ExactComplex(RadicalSum(q(-1))));
  const ExactComplex z{RadicalSum::sqrt_of(q(2)), RadicalSum(q(3))};
  CHECK(z * z.conj() == ExactComplex(RadicalSum(q(11))));
  CHECK(z.times_gaussian(0, 1) == z * i);
}
