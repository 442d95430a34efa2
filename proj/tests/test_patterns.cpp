#include "doctest.h"

#include "avo/corpus.hpp"
#include "avo/patterns.hpp"
#include "avo/search.hpp"

using namespace avo;

TEST_CASE("forbidden normalization") {
  auto G = Group::from_key("Z");
  const Pattern p = pattern_of({{{0}, 1}, {{1}, 1}});
  const Pattern shifted = pattern_of({{{5}, 1}, {{6}, 1}});
  const Pattern bigger = pattern_of({{{0}, 1}, {{1}, 1}, {{2}, 0}});
  const auto n = normalize_forbidden(G, {shifted, p, bigger});
  REQUIRE(n.size() == 1);
  CHECK(n[0] == p);
  CHECK(contains_translate(G, p, translate(G, Point({-3}), bigger)));
}

TEST_CASE("window and diameter") {
  auto led = builtin_example("ledrappier").spec;
  CHECK(window_size(led) == 1);
  CHECK(forbidden_diameter(led) == 2);
  auto gm = builtin_example("goldenmean").spec;
  CHECK(window_size(gm) == 1);
  CHECK(forbidden_diameter(gm) == 1);
}

TEST_CASE("local validity and occurrences") {
  auto gm = builtin_example("goldenmean").spec;
  CHECK(locally_valid(gm, pattern_of({{{0}, 1}, {{2}, 1}})));
  const auto bad = pattern_of({{{3}, 1}, {{4}, 1}, {{5}, 0}});
  CHECK_FALSE(locally_valid(gm, bad));
  const auto occ = occurrences(gm, bad, 10);
  REQUIRE(occ.size() == 1);
  CHECK(occ[0].offset == Point({3}));
}

TEST_CASE("pattern algebra") {
  const auto a = pattern_of({{{0}, 1}}), b = pattern_of({{{1}, 0}}), c = pattern_of({{{0}, 0}});
  auto m = merge(a, b);
  REQUIRE(m);
  CHECK(m->size() == 2);
  CHECK_FALSE(merge(a, c));
  CHECK(contained_in(a, *m));
  CHECK(m->restrict_to({Point({1})}) == b);
}

TEST_CASE("extendability search") {
  auto led = builtin_example("ledrappier").spec;
  const auto ok = pattern_of({{{0, 0}, 1}, {{1, 0}, 1}});
  CHECK(extendable_to_radius(led, ok, 2, 100000).status == SearchStatus::Found);
  auto gm = builtin_example("goldenmean").spec;
  CHECK(extendable_to_radius(gm, pattern_of({{{0}, 1}, {{1}, 1}}), 1, 1000).status == SearchStatus::Exhausted);
}
