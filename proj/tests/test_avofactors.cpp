#include "doctest.h"

#include "avo/avofactors.hpp"
#include "avo/corpus.hpp"

using namespace avo;

TEST_CASE("rule indexing") {
  auto m = LocalMap::from_function({Point({0}), Point({1})}, 2, {"0", "1"},
                                   [](const std::vector<int>& x) { return x[0] ^ x[1]; });
  CHECK(m.rule == std::vector<int>{0, 1, 1, 0});
  CHECK(m.index_of({1, 0}) == 1);
  CHECK(m.apply({1, 1}) == 0);
  LocalMap bad = m;
  bad.rule.pop_back();
  CHECK_THROWS(bad.validate());
}

TEST_CASE("graph relation has two levels") {
  auto gm = builtin_example("goldenmean").spec;
  auto id = LocalMap::from_function({Point({0})}, 2, {"0", "1"}, [](const std::vector<int>& x) { return x[0]; });
  const auto rel = build_graph_sft(gm, id);
  CHECK(rel.levels == 2);
  CHECK_NOTHROW(rel.validate());
  // golden mean pattern on level 1 plus one wrong-image pattern per neighbourhood pattern
  CHECK(rel.forbidden.size() == 1 + 2);
}

TEST_CASE("identity factor of the golden mean") {
  auto gm = builtin_example("goldenmean").spec;
  auto id = LocalMap::from_function({Point({0})}, 2, {"0", "1"}, [](const std::vector<int>& x) { return x[0]; });
  auto r = factor_certificate(build_graph_sft(gm, id), Budget{});
  REQUIRE(r.certificate);
  const auto img = image_forbidden(*r.certificate);
  CHECK(verify_equivalence(img, gm, Budget{}).status == EquivalenceResult::Status::Equivalent);
}

TEST_CASE("apply_map") {
  auto G = Group::from_key("Z");
  auto x = LocalMap::from_function({Point({0}), Point({1})}, 2, {"0", "1"},
                                   [](const std::vector<int>& v) { return v[0] ^ v[1]; });
  const auto y = apply_map(G, x, pattern_of({{{0}, 1}, {{1}, 0}, {{2}, 0}}), {Point({0}), Point({1})});
  CHECK(y == pattern_of({{{0}, 1}, {{1}, 0}}));
  CHECK_THROWS(apply_map(G, x, pattern_of({{{0}, 1}}), {Point({0})}));
}
