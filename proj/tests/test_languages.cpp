#include "doctest.h"

#include "avo/corpus.hpp"
#include "avo/languages.hpp"
#include "oracle_support.hpp"

using namespace avo;

namespace {

Certificate certify(const std::string& name, Family f) {
  auto r = find_certificate(builtin_example(name).spec, f, Budget{});
  REQUIRE(r.certificate);
  return *r.certificate;
}

}  // namespace

TEST_CASE("golden mean language matches the transfer graph") {
  ExactLanguage lang(certify("goldenmean", Family::InductiveIntervals));
  const auto gm = builtin_example("goldenmean").spec;
  for (int n = 0; n <= 6; ++n) {
    auto l = lang.language_on(make_shape([&] {
      std::vector<Point> v;
      for (int i = 0; i <= n; ++i) v.push_back(Point({i}));
      return v;
    }()));
    REQUIRE(l);
    CHECK(*l == z_interval_language(gm, 0, n));
  }
}

TEST_CASE("ledrappier languages against margin stabilization") {
  const auto c = certify("ledrappier", Family::InductiveIntervals);
  ExactLanguage lang(c);
  const auto& G = c.q.group;
  const Shape b1(G.ball(1).members.begin(), G.ball(1).members.end());
  auto l = lang.language_on(b1);
  REQUIRE(l);
  const auto ref = oracle::stabilized_language(c.original, b1, 3);
  CHECK(std::set<Pattern>(l->begin(), l->end()) == ref);
  CHECK(l->size() == 16);  // rows of the parity rule never constrain B_1
  // A translate of a shape gets the translated language.
  const Shape moved = translate_shape(G, Point({4, -2}), b1);
  auto lm = lang.language_on(moved);
  REQUIRE(lm);
  CHECK(lm->size() == l->size());
}

TEST_CASE("completion picks the least symbol") {
  ExactLanguage lang(certify("goldenmean", Family::InductiveIntervals));
  const auto p = complete_pattern(lang, pattern_of({{{0}, 1}}), make_shape({Point({0}), Point({1}), Point({2})}));
  CHECK(p == pattern_of({{{0}, 1}, {{1}, 0}, {{2}, 0}}));
  CHECK_THROWS(complete_pattern(lang, pattern_of({{{0}, 1}, {{1}, 1}}), {}));
}

TEST_CASE("inclusion and emptiness") {
  const auto gm = builtin_example("goldenmean").spec;
  const auto full = make_spec("Z", {"0", "1"}, {});
  auto a = decide_inclusion(full, gm, Budget{});
  CHECK(a.status == InclusionResult::Status::NotSubset);
  CHECK(a.witness == pattern_of({{{0}, 1}, {{1}, 1}}));
  CHECK(decide_inclusion(gm, full, Budget{}).status == InclusionResult::Status::Subset);
  CHECK(decide_emptiness(gm, Budget{}).status == EmptinessResult::Status::Nonempty);
  auto empty = make_spec("Z", {"0"}, {pattern_of({{{0}, 0}, {{1}, 0}})});
  CHECK(decide_emptiness(empty, Budget{}).status == EmptinessResult::Status::Empty);
}

TEST_CASE("projection of the parity rule to the row") {
  const auto c = certify("ledrappier", Family::InductiveIntervals);
  const auto p = project_to_subgroup(c, 1);
  CHECK(p.group.key() == "Z");
  CHECK(p.forbidden.empty());
  CHECK_THROWS_AS(project_to_subgroup(certify("f2-goldenmean", Family::TreeConvexExtensions), 1), UnsupportedOperation);
}
