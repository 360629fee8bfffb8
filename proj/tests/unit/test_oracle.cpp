#include "doctest.h"
#include "helpers.hpp"
#include "sdpi/errors.hpp"
#include "sdpi/oracle.hpp"

using namespace sdpi;
using testing::corpus_code;

namespace {

DenseState digits(unsigned d, unsigned n, std::vector<std::pair<std::uint64_t, GaussI64>> terms) {
  return {d, n, std::move(terms)};
}

}  // namespace

TEST_CASE("dense symmetric vectors") {
  // key = digit(site 0) + 3 * digit(site 1)
  CHECK(dense_symmetric_vector({1, 1, 0}) == digits(3, 2, {{1, {1, 0}}, {3, {1, 0}}}));
  CHECK(dense_symmetric_vector({2, 0, 0}) == digits(3, 2, {{0, {1, 0}}}));
  CHECK(dense_symmetric_vector({3, 5, 5}).terms.size() == 72072);
  CHECK_THROWS_AS(dense_symmetric_vector({3, 5, 5}, 1000), CapExceeded);
}

TEST_CASE("dense generator actions") {
  const auto v = dense_symmetric_vector({1, 1, 0});
  CHECK(dense_apply(ErrorOperator::d(0), v).terms.empty());
  CHECK(dense_apply(ErrorOperator::s(0, 1), dense_symmetric_vector({2, 0, 0})) == v);
  const auto w = dense_symmetric_vector({2, 1, 0});
  CHECK(dense_inner(w, w) == GaussI64{3, 0});
}

TEST_CASE("oracle gate") {
  for (auto [d, n] : {std::pair{3u, 1u}, {3u, 2u}, {3u, 3u}, {3u, 4u}, {5u, 1u}, {5u, 2u}}) {
    const auto r = run_oracle_gate(d, n);
    CHECK_MESSAGE(r.passed, r.witness.value_or(""));
    CHECK(r.cases > 0);
  }
  CHECK(run_oracle_gate(7, 3, 20, 4).passed);
}

TEST_CASE("conjugation identities in the dense picture") {
  const auto psi = dense_symmetric_vector({2, 1, 1});
  for (const auto& op : error_basis(3)) {
    if (op.kind == GeneratorKind::Identity) continue;
    ErrorOperator shifted = op;
    if (op.kind == GeneratorKind::D) {
      shifted.j = (op.j + 2) % 3;
    } else {
      shifted.j = (op.j + 2) % 3;
      shifted.k = (op.k + 2) % 3;
    }
    const auto lhs = dense_shift(dense_apply(op, dense_shift(psi, 1)), 2);
    CHECK(lhs == dense_apply(shifted, psi));
  }
}

TEST_CASE("dense and combinatorial KL reports agree on a small code") {
  Code code = corpus_code("qutrit13.json");
  code.n = 4;
  code.orbits = {{{4, 0, 0}, RadicalSum(testing::q(1))}};
  const auto dense = dense_kl(code);
  const auto fast = kl_full(code);
  CHECK(dense.violations.size() == fast.violations.size());
  REQUIRE(dense.constants.size() == fast.constants.size());
  for (std::size_t i = 0; i < dense.constants.size(); ++i)
    CHECK(dense.constants[i].value.exact == fast.constants[i].value.exact);
}
