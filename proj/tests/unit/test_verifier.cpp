#include "doctest.h"
#include "helpers.hpp"
#include "sdpi/errors.hpp"
#include "sdpi/verifier.hpp"

using namespace sdpi;
using testing::corpus_code;
using testing::q;

namespace {

bool contains(const std::vector<ElementRef>& v, const ElementRef& e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

bool is_violation(const KLReport& r, const ElementRef& e) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) {
    return v.e == e.e && v.f == e.f && v.i == e.i && v.j == e.j;
  });
}

Code single_orbit(unsigned d, unsigned n) {
  const OccupationVector u = canonical_tail([&] {
    std::vector<unsigned> e(d, 0);
    e[0] = n;
    return OccupationVector(e);
  }());
  return {d, n, n % d, {{u, RadicalSum(q(1))}}};
}

}  // namespace

TEST_CASE("element count of the full check") {
  const auto r = kl_full(corpus_code("c2_d5_n16.json"));
  CHECK(r.passed());
  CHECK(r.elements_checked == 5u * 5 * 5 * 5 * 5 * 5);
  CHECK(r.constants.size() == 625);
}

TEST_CASE("qutrit code against the full conditions") {
  const auto r = kl_full(corpus_code("qutrit13.json"));
  CHECK_FALSE(r.passed());
  CHECK(r.violations.size() == 24);
  const auto* c = r.constant(ErrorOperator::identity(), ErrorOperator::d(0));
  REQUIRE(c);
  CHECK(c->value.is_zero(0));
  const Violation& v = r.violations.front();
  CHECK(v.value.exact == ExactComplex(RadicalSum(q(104, 9))));
}

TEST_CASE("float and exact modes agree") {
  VerifierOptions fo;
  fo.mode = Mode::Float;
  for (const char* name : {"qutrit13.json", "c2_d5_n16.json"}) {
    const Code code = corpus_code(name);
    const auto exact = kl_full(code);
    const auto approx = kl_full(to_float(code), fo);
    CHECK(exact.violations.size() == approx.violations.size());
    CHECK(approx.mode == Mode::Float);
  }
}

TEST_CASE("weight fast path does not change results") {
  VerifierOptions slow;
  slow.weight_fast_path = false;
  const Code code = corpus_code("qutrit13.json");
  const auto a = kl_full(code), b = kl_full(code, slow);
  CHECK(a.violations.size() == b.violations.size());
  CHECK(a.elements_checked == b.elements_checked);
  for (std::size_t i = 0; i < a.constants.size(); ++i) CHECK(a.constants[i].value.exact == b.constants[i].value.exact);
}

TEST_CASE("parallel evaluation is deterministic") {
  VerifierOptions par;
  par.workers = 4;
  const Code code = corpus_code("qutrit13.json");
  const auto a = kl_full(code), b = kl_full(code, par);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) {
    CHECK(a.violations[i].e == b.violations[i].e);
    CHECK(a.violations[i].value.exact == b.violations[i].value.exact);
  }
}

TEST_CASE("reduced conditions") {
  CHECK(kl_reduced(corpus_code("c2_d5_n16.json")).passed());
  const auto qutrit = kl_reduced(corpus_code("qutrit13.json"));
  CHECK_FALSE(qutrit.passed());
  const auto* c = qutrit.constant(ErrorOperator::identity(), ErrorOperator::d(1));
  REQUIRE(c);
  CHECK(c->value.is_zero(0));
  const auto single = single_orbit(3, 13);
  const auto reduced = kl_reduced(single), full = kl_full(single);
  CHECK_FALSE(reduced.passed());
  CHECK_FALSE(full.passed());
  for (const auto& v : reduced.violations) CHECK(is_violation(full, {v.e, v.f, v.i, v.j}));
}

TEST_CASE("quadratic forms on the qutrit code") {
  const auto r = qf_check(corpus_code("qutrit13.json"));
  CHECK(r.passed());
  REQUIRE(r.quadratic_forms.size() == 3);
  CHECK(r.quadratic_forms[0].lhs.exact->is_zero());
  CHECK(r.quadratic_forms[1].lhs.exact == ExactComplex(RadicalSum(q(26))));
  CHECK(r.quadratic_forms[1].rhs.exact == ExactComplex(RadicalSum(q(26))));
  CHECK(r.quadratic_forms[2].passed);
}

TEST_CASE("quadratic forms refuse non-sparse codes") {
  CHECK_THROWS_AS(qf_check(corpus_code("c4_d7_n20_eta6.json")), HypothesisViolation);
}

TEST_CASE("sparsity forces the C1 and distinct-pair C2 elements to vanish") {
  for (const char* name : {"c2_d5_n16.json", "c3_d7_n36.json"}) {
    const Code code = corpus_code(name);
    const auto r = kl_full(code);
    REQUIRE(r.passed());
    for (const auto& e : sparsity_zero_elements(code.d)) {
      CHECK_FALSE(contains(r.arithmetic_zero_elements, e));
      if (e.i == e.j) CHECK(r.constant(e.e, e.f)->value.is_zero(0));
    }
  }
}

TEST_CASE("caps and invalid input") {
  VerifierOptions small;
  small.max_n = 10;
  CHECK_THROWS_AS(kl_full(corpus_code("qutrit13.json"), small), CapExceeded);
  Code broken = corpus_code("qutrit13.json");
  broken.n = 14;
  CHECK_THROWS_AS(kl_full(broken), InvalidInput);
  CHECK(parse_level("qf") == Level::QF);
  CHECK_THROWS_AS(parse_mode("fuzzy"), InvalidInput);
}
