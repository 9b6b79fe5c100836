#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lfcc/sets.hpp"

using namespace lfcc;

TEST_CASE("binomial values") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(6, 4) == 15);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(12, 6) == 924);
}

TEST_CASE("user set enforces the strictly ascending invariant") {
  CHECK_NOTHROW(UserSet({1, 3, 4}));
  CHECK_THROWS_AS(UserSet({3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(UserSet({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(UserSet({0, 1}), std::invalid_argument);
}

TEST_CASE("user set algebra") {
  UserSet a({1, 2, 4});
  UserSet b({2, 3});
  CHECK(a.union_with(b) == UserSet({1, 2, 3, 4}));
  CHECK(a.difference(b) == UserSet({1, 4}));
  CHECK(a.intersect(b) == UserSet({2}));
  CHECK(a.with(3) == UserSet({1, 2, 3, 4}));
  CHECK(a.without(2) == UserSet({1, 4}));
  CHECK(a.without(9) == a);
  CHECK(a.contains(4));
  CHECK_FALSE(a.contains(3));
  CHECK(a.position_of(4) == 2);
  CHECK(a.position_of(3) == -1);
  CHECK(UserSet({2, 4}).subset_of(a));
  CHECK(UserSet({1, 4}).disjoint_with(b));
  CHECK(UserSet::full(3) == UserSet({1, 2, 3}));
  CHECK(a.str() == "{1,2,4}");
}

TEST_CASE("subset enumeration in lexicographic order") {
  auto subs = enumerate_subsets(UserSet({1, 2, 3}), 2);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0] == UserSet({1, 2}));
  CHECK(subs[1] == UserSet({1, 3}));
  CHECK(subs[2] == UserSet({2, 3}));

  auto empty = enumerate_subsets(UserSet({1, 2, 3, 4}), 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].empty());

  CHECK(enumerate_subsets(UserSet::full(6), 4).size() == 15);
  CHECK_THROWS_AS(enumerate_subsets(UserSet({1, 2}), 3), std::invalid_argument);
}

TEST_CASE("subset enumeration is a bijection onto size-k subsets, n <= 12") {
  for (int n = 0; n <= 12; ++n) {
    UserSet ground = UserSet::full(n);
    for (int k = 0; k <= n; ++k) {
      auto subs = enumerate_subsets(ground, k);
      CHECK(static_cast<long long>(subs.size()) == binomial(n, k));
      for (std::size_t i = 0; i < subs.size(); ++i) {
        CHECK(subs[i].size() == k);
        if (i > 0) CHECK(subs[i - 1] < subs[i]);  // strictly increasing => all distinct
      }
    }
  }
}

TEST_CASE("enumeration over a non-contiguous ground set") {
  auto subs = enumerate_subsets(UserSet({2, 5, 7}), 2);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0] == UserSet({2, 5}));
  CHECK(subs[1] == UserSet({2, 7}));
  CHECK(subs[2] == UserSet({5, 7}));
}
