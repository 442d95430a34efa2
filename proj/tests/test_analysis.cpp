#include "doctest.h"

#include "avo/analysis.hpp"
#include "avo/corpus.hpp"
#include "avo/languages.hpp"

using namespace avo;

TEST_CASE("hull corners") {
  auto P = [](int x, int y) { return Point({x, y}); };
  const auto c = hull_corners(make_shape({P(0, 0), P(1, 0), P(0, 1)}));
  CHECK(c.size() == 3);
  const auto sq = hull_corners(make_shape({P(0, 0), P(1, 0), P(2, 0), P(0, 1), P(1, 1), P(2, 1)}));
  CHECK(sq == std::vector<Point>{P(0, 0), P(0, 1), P(2, 0), P(2, 1)});
  CHECK(hull_corners(make_shape({Point({0}), Point({1}), Point({2})})) == std::vector<Point>{Point({0}), Point({2})});
}

TEST_CASE("k-TEP on parity triples") {
  auto led = builtin_example("ledrappier").spec;
  const Shape S = make_shape({Point({0, 0}), Point({1, 0}), Point({0, 1})});
  auto lv = locally_valid_patterns(led, S, 100, 1000);
  REQUIRE(lv.patterns.size() == 4);
  CHECK(ktep_check(led.group, lv.patterns, 2, 1));
  CHECK_FALSE(ktep_check(led.group, lv.patterns, 2, 2));
  CHECK_THROWS_AS(ktep_check(Group::free(2), lv.patterns, 2, 1), UnsupportedOperation);
}

TEST_CASE("safe symbols") {
  CHECK(safe_symbol_check(builtin_example("hardsquare").spec, 0));
  CHECK_FALSE(safe_symbol_check(builtin_example("hardsquare").spec, 1));
  CHECK(safe_symbol_check(builtin_example("hardsquare-safe").spec, 0));
  CHECK_FALSE(safe_symbol_check(builtin_example("ledrappier").spec, 0));
}

TEST_CASE("avoradius on Z") {
  auto gm = builtin_example("goldenmean").spec;
  TransferOracle t(gm);
  const Shape left = make_shape({Point({-3}), Point({-2}), Point({-1})});
  const auto f = avoradius_for_shape(gm, left, 3, t);
  CHECK(f.status == AvoFinding::Status::Established);
  REQUIRE(f.radius);
  CHECK(*f.radius == 1);
  REQUIRE(f.failures.size() == 1);
  CHECK(f.failures[0].r == 0);
  CHECK_THROWS(avoradius_for_shape(gm, make_shape({Point({0})}), 1, t));
}

TEST_CASE("equal extension counts") {
  auto gm = builtin_example("goldenmean").spec;
  TransferOracle t(gm);
  const auto ec = equal_extension_counts(gm, {make_shape({Point({-1})})}, t);
  REQUIRE(ec.size() == 1);
  CHECK(ec[0].exact);
  CHECK_FALSE(ec[0].constant);
  CHECK(ec[0].count_a != ec[0].count_b);
}

TEST_CASE("tssm gap from a certificate") {
  auto hs = builtin_example("hardsquare-safe").spec;
  auto r = find_certificate(hs, Family::AllSubsets, Budget{});
  REQUIRE(r.certificate);
  CHECK(tssm_gap_from_certificate(*r.certificate) == r.certificate->radius + 1);
}
