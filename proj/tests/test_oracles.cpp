#include "doctest.h"

#include "avo/corpus.hpp"
#include "avo/oracles.hpp"
#include "oracle_support.hpp"

using namespace avo;

namespace {

Shape interval(int a, int b) {
  Shape s;
  for (int i = a; i <= b; ++i) s.push_back(Point({i}));
  return s;
}

}  // namespace

TEST_CASE("refutation radii") {
  auto gm = builtin_example("goldenmean").spec;
  auto v = refute_global_validity(gm, pattern_of({{{0}, 1}, {{1}, 1}}), Budget{});
  CHECK(v.kind == ValidityVerdict::Kind::Refuted);
  CHECK(v.radius == 0);
  CHECK_FALSE(refute_global_validity(gm, pattern_of({{{0}, 1}, {{2}, 1}}), Budget{}).refuted());
  // Forbidding 00, 01 and 11 leaves 10 locally valid but nothing extends it.
  auto s = make_spec("Z", {"0", "1"},
                     {pattern_of({{{0}, 0}, {{1}, 0}}), pattern_of({{{0}, 0}, {{1}, 1}}), pattern_of({{{0}, 1}, {{1}, 1}})});
  auto r = refute_global_validity(s, pattern_of({{{0}, 1}, {{1}, 0}}), Budget{});
  CHECK(r.kind == ValidityVerdict::Kind::Refuted);
  CHECK(r.radius == 1);
}

TEST_CASE("golden mean transfer counts are Fibonacci") {
  auto gm = builtin_example("goldenmean").spec;
  std::size_t a = 2, b = 3;
  for (int n = 0; n <= 10; ++n) {
    CHECK(z_interval_language(gm, 0, n).size() == a);
    const std::size_t c = a + b;
    a = b;
    b = c;
  }
}

TEST_CASE("transfer oracle agrees with the margin oracle on random Z-specs") {
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    const SftSpec s = oracle::random_z_spec(rng);
    for (const Shape& D : {interval(0, 0), interval(0, 2), make_shape({Point({0}), Point({3})})}) {
      const auto lib = z_interval_language(s, D);
      CHECK(std::set<Pattern>(lib.begin(), lib.end()) == oracle::z_exact_language(s, D));
    }
    CHECK(z_nonempty(s) == !oracle::z_exact_language(s, interval(0, 0)).empty());
  }
}

TEST_CASE("budgeted oracle is an upper approximation") {
  std::mt19937 rng(11);
  for (int t = 0; t < 30; ++t) {
    const SftSpec s = oracle::random_z_spec(rng);
    const Shape D = interval(0, 2);
    const auto up = BudgetedOracle(s, Budget::small()).language(D);
    CHECK_FALSE(up.exact);
    const auto exact = oracle::z_exact_language(s, D);
    for (const auto& p : exact) CHECK(std::binary_search(up.patterns.begin(), up.patterns.end(), p));
  }
}

TEST_CASE("follower symbols and M-SFT approximation") {
  auto gm = builtin_example("goldenmean").spec;
  TransferOracle t(gm);
  const auto f = follower_symbols(gm, pattern_of({{{0}, 1}}), Point({1}), t);
  CHECK(f.exact);
  CHECK(f.symbols == std::vector<int>{0});
  const auto approx = m_sft_approximation(gm, interval(0, 1), t);
  CHECK(approx.exact);
  CHECK(approx.spec.forbidden.size() == 1);
  CHECK(Budget::named("small").radius_cap < Budget::named("large").radius_cap);
  CHECK_THROWS(Budget::named("huge"));
}
