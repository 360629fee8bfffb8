#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "sdpi/combinatorics.hpp"
#include "sdpi/errors.hpp"
#include "sdpi/operators.hpp"

using namespace sdpi;

TEST_CASE("qudit dimension") {
  CHECK_NOTHROW(require_qudit_dimension(3));
  CHECK_THROWS_AS(require_qudit_dimension(4), InvalidInput);
  CHECK_THROWS_AS(require_qudit_dimension(1), InvalidInput);
}

TEST_CASE("weight") {
  CHECK(weight({13, 0, 0}) == 0);
  CHECK(weight({4, 0, 9}) == 0);
  CHECK(weight({6, 14, 0, 0, 0, 0, 0}) == 0);
  CHECK(weight({3, 1, 9}) == 1);
}

TEST_CASE("cyclic shift") {
  CHECK(cyclic_shift({4, 0, 9}, 1) == OccupationVector{9, 4, 0});
  CHECK(cyclic_shift({3, 5, 5}, 1) == OccupationVector{5, 3, 5});
  CHECK(cyclic_shift({3, 5, 5}, 0) == OccupationVector{3, 5, 5});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto u = random_occupation(5, 11, rng);
    for (Residue a = 0; a < 5; ++a) {
      CHECK(weight(cyclic_shift(u, a)) == (weight(u) + a * 11) % 5);
      for (Residue b = 0; b < 5; ++b) CHECK(cyclic_shift(cyclic_shift(u, a), b) == cyclic_shift(u, (a + b) % 5));
    }
    CHECK(cyclic_shift(u, 5) == u);
  }
}

TEST_CASE("tail orbits") {
  auto o = tail_orbit({4, 0, 9});
  CHECK(o.representative == OccupationVector{4, 9, 0});
  CHECK(o.size == 2);
  CHECK(expand_orbit(o.representative) == std::vector<OccupationVector>{{4, 0, 9}, {4, 9, 0}});
  CHECK(tail_orbit({3, 5, 5}).size == 1);
  CHECK(tail_orbit({6, 10, 0, 0, 0}).size == 4);
  CHECK(tail_orbit({0, 1, 2, 3, 3, 4, 4}).size == 180);
}

TEST_CASE("supports of W_{d,N}") {
  auto contains = [](const std::vector<TailOrbit>& v, const OccupationVector& u) {
    return std::any_of(v.begin(), v.end(), [&](const TailOrbit& o) { return o.representative == u; });
  };
  const auto w313 = enumerate_supports(3, 13);
  CHECK(contains(w313, {13, 0, 0}));
  CHECK(contains(w313, {4, 9, 0}));
  CHECK(contains(w313, {3, 5, 5}));
  CHECK(std::is_sorted(w313.begin(), w313.end(),
                       [](const TailOrbit& a, const TailOrbit& b) { return a.representative < b.representative; }));
  const auto w516 = enumerate_supports(5, 16);
  CHECK(contains(w516, {16, 0, 0, 0, 0}));
  CHECK(contains(w516, {0, 4, 4, 4, 4}));
  CHECK(contains(enumerate_supports(3, 2), {2, 0, 0}));
}

TEST_CASE("enumeration agrees with brute force") {
  for (unsigned d : {3u, 5u}) {
    for (unsigned n = 1; n <= 12; ++n) {
      std::set<OccupationVector> brute;
      std::uint64_t members = 0;
      for (const auto& u : all_compositions(d, n))
        if (is_in_w(u) && weight(u) == 0) {
          brute.insert(canonical_tail(u));
          ++members;
        }
      const auto listed = enumerate_supports(d, n);
      std::set<OccupationVector> got;
      std::uint64_t total = 0;
      for (const auto& o : listed) {
        got.insert(o.representative);
        total += o.size;
        for (const auto& m : expand_orbit(o.representative)) {
          CHECK(is_in_w(m));
          CHECK(weight(m) == 0);
        }
      }
      CHECK(got == brute);
      CHECK(total == members);
    }
  }
}

TEST_CASE("sparsity distance") {
  auto r = sparsity_distance({13, 0, 0}, {4, 0, 9});
  CHECK(r.distance == 8);
  CHECK(r.shift == 2);
  auto s = sparsity_distance({3, 5, 5}, {3, 5, 5}, true);
  CHECK(s.distance == 4);
  CHECK(s.shift == 1);
  CHECK(s.pattern == std::vector<int>{-2, 2});
  CHECK(sparsity_distance({7, 2, 4}, {7, 2, 4}).distance == 0);
}

TEST_CASE("effective sparsity") {
  const std::vector<OccupationVector> qutrit{{13, 0, 0}, {4, 9, 0}, {3, 5, 5}};
  CHECK(is_effectively_sparse(qutrit).sparse);
  const std::vector<OccupationVector> close{{13, 0, 0}, {12, 1, 0}};
  auto v = is_effectively_sparse(close);
  CHECK_FALSE(v.sparse);
  REQUIRE(v.witness);
  CHECK(v.witness->distance == 2);
  CHECK(is_effectively_sparse(std::vector<OccupationVector>{{13, 0, 0}}).sparse);
  CHECK_FALSE(is_literally_sparse(qutrit).sparse);
  const std::vector<OccupationVector> c4{{20, 0, 0, 0, 0, 0, 0}, {6, 14, 0, 0, 0, 0, 0}, {2, 3, 3, 3, 3, 3, 3}};
  CHECK_FALSE(is_effectively_sparse(c4).sparse);
}
