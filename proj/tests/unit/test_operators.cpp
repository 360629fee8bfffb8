#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "sdpi/errors.hpp"
#include "sdpi/operators.hpp"

using namespace sdpi;
using testing::q;

namespace {

ExactComplex integer(long v) { return ExactComplex(RadicalSum(q(v))); }

}  // namespace

TEST_CASE("error basis") {
  const auto basis = error_basis(3);
  CHECK(basis.size() == 9);
  CHECK(basis.front() == ErrorOperator::identity());
  CHECK(error_basis(7).size() == 49);
  CHECK(parse_operator("S(0,2)") == ErrorOperator::s(0, 2));
  CHECK(parse_operator("D(1)") == ErrorOperator::d(1));
  CHECK(ErrorOperator::a(1, 2).name() == "A(1,2)");
  CHECK_THROWS_AS(parse_operator("T(0)"), InvalidInput);
  CHECK_FALSE(in_error_basis(ErrorOperator::d(2), 3));
}

TEST_CASE("generator actions") {
  const auto u = StateVector::basis({4, 0, 9});
  auto s = apply_generator(ErrorOperator::s(0, 1), u);
  CHECK(s.size() == 1);
  CHECK(s.at({3, 1, 9}) == integer(1));
  CHECK(apply_generator(ErrorOperator::d(0), u).at({4, 0, 9}) == integer(4));
  CHECK(apply_generator(ErrorOperator::d(1), StateVector::basis({3, 5, 5})).empty());
  auto a = apply_generator(ErrorOperator::a(0, 2), u);
  CHECK(a.at({5, 0, 8}) == ExactComplex(RadicalSum(), RadicalSum(q(-5))));
  CHECK(a.at({3, 0, 10}) == ExactComplex(RadicalSum(), RadicalSum(q(10))));
}

TEST_CASE("generators shift weight by the flip difference") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto u = random_occupation(5, 9, rng);
    for (const auto& op : error_basis(5)) {
      if (op.kind != GeneratorKind::S) continue;
      for_each_action(op, u, [&](const OccupationVector& v, GaussianInt) {
        const Residue up = (weight(u) + op.k + 5 - op.j) % 5, down = (weight(u) + op.j + 5 - op.k) % 5;
        CHECK((weight(v) == up || weight(v) == down));
      });
    }
  }
}

TEST_CASE("D operators commute") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    StateVector psi(5, 8);
    for (int k = 0; k < 3; ++k) psi.add(random_occupation(5, 8, rng), integer(k + 1));
    for (unsigned p = 0; p < 4; ++p)
      for (unsigned r = 0; r < 4; ++r)
        CHECK(apply_generator(ErrorOperator::d(p), apply_generator(ErrorOperator::d(r), psi)) ==
              apply_generator(ErrorOperator::d(r), apply_generator(ErrorOperator::d(p), psi)));
  }
}

TEST_CASE("logical X") {
  const auto e = StateVector::basis({13, 0, 0});
  CHECK(apply_logical_x(e, 2) == StateVector::basis({0, 0, 13}));
  CHECK(apply_logical_x(e, 3) == e);
  StateVector psi(3, 13);
  psi.add({4, 0, 9}, integer(2));
  psi.add({3, 5, 5}, integer(-1));
  CHECK(inner_product(apply_logical_x(psi, 1), apply_logical_x(psi, 1)) == inner_product(psi, psi));
  CHECK(apply_logical_x(apply_logical_x(psi, 1), 2) == psi);
}

TEST_CASE("Z eigenexponent") {
  CHECK(z_eigenexponent({13, 0, 0}) == 0);
  CHECK(z_eigenexponent({3, 1, 9}) == 1);
  const OccupationVector u{4, 0, 9};
  CHECK(z_eigenexponent(cyclic_shift(u, 1)) == (weight(u) + 13) % 3);
}

TEST_CASE("inner products") {
  const auto a = StateVector::basis({4, 0, 9});
  CHECK(inner_product(a, a) == integer(715));
  CHECK(inner_product(a, StateVector::basis({13, 0, 0})).is_zero());
  std::mt19937_64 rng(9);
  int compared = 0;
  while (compared < 100) {
    const auto u = random_occupation(5, 7, rng), v = random_occupation(5, 7, rng);
    if (weight(u) == weight(v)) continue;
    CHECK(inner_product(StateVector::basis(u), StateVector::basis(v), false).is_zero());
    ++compared;
  }
}

TEST_CASE("conjugation identities") {
  for (auto id : {ConjugationIdentity::XS, ConjugationIdentity::XA, ConjugationIdentity::XD}) {
    auto r = conjugation_identity_check(3, 13, id, 100, 1);
    CHECK_MESSAGE(r.holds, r.witness);
    CHECK(r.checked > 0);
  }
  for (auto mode : {IdentityCheckMode::Float, IdentityCheckMode::Exponent}) {
    auto r = conjugation_identity_check(5, 11, ConjugationIdentity::ZS, 100, 2, mode);
    CHECK_MESSAGE(r.holds, r.witness);
  }
  auto vacuous = conjugation_identity_check(3, 13, ConjugationIdentity::XS, 0);
  CHECK(vacuous.holds);
  CHECK(vacuous.checked == 0);
}
