#include "doctest.h"

#include <set>

#include "avo/shapes.hpp"

using namespace avo;

namespace {

// Direct membership: last nonzero tuple coordinate t_i lies in I_i.
bool in_interval(long t, int sign, int len, int order) {
  if (sign == 0 || t == 0) return false;
  if (order > 0) {
    // t in Z_k: positive interval {1..len}, negative {k-len..k-1}
    return sign > 0 ? t <= len : t >= order - len;
  }
  if ((t > 0) != (sign > 0)) return false;
  return len < 0 || std::labs(t) <= len;
}

std::set<Shape> brute_prefixes(const Group& G, int R) {
  const int n = G.axis_count();
  std::vector<std::pair<int, int>> opts{{0, 0}, {1, -1}, {-1, -1}};
  const int bound = 2 * R * R + 2;
  for (int m = 1; m <= bound; ++m) {
    opts.push_back({1, m});
    opts.push_back({-1, m});
  }
  std::set<Shape> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    Shape s;
    for (const Point& g : G.ball(R).members) {
      const auto t = G.to_tuple(g);
      int last = -1;
      for (int i = 0; i < n; ++i)
        if (t[static_cast<std::size_t>(i)] != 0) last = i;
      if (last < 0) continue;
      const auto [sign, len] = opts[idx[static_cast<std::size_t>(last)]];
      if (in_interval(t[static_cast<std::size_t>(last)], sign, len, G.axis_order(last + 1))) s.push_back(g);
    }
    out.insert(make_shape(s));
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == opts.size()) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("ii membership from the tuple") {
  auto G = Group::from_key("Z^2");
  AxisIntervalSpec s{{AxisInterval::negative(8), AxisInterval::positive(5)}};
  CHECK(ii_contains(G, s, Point({3, 2})));
  CHECK(ii_contains(G, s, Point({-3, 0})));
  CHECK_FALSE(ii_contains(G, s, Point({0, 0})));
  CHECK_FALSE(ii_contains(G, s, Point({3, 6})));
}

TEST_CASE("ii_prefixes match direct enumeration") {
  for (const char* k : {"Z", "Z^2", "ZxZ2", "ZxZ3", "heisenberg"}) {
    auto G = Group::from_key(k);
    for (int R = 1; R <= 2; ++R) {
      CAPTURE(k);
      CAPTURE(R);
      const auto& lib = ii_prefixes(G, R);
      CHECK(std::set<Shape>(lib.begin(), lib.end()) == brute_prefixes(G, R));
    }
  }
  CHECK(ii_prefixes(Group::from_key("Z"), 1).size() == 3);
  CHECK(ii_prefixes(Group::from_key("Z^2"), 1).size() == 9);
}

TEST_CASE("orders on Z") {
  auto Z = Group::from_key("Z");
  auto pts = [](const std::vector<OrderStep>& o) {
    std::vector<int> v;
    for (const auto& s : o) v.push_back(s.point.c[0]);
    return v;
  };
  AxisIntervalSpec s12{{AxisInterval::positive(2)}};
  CHECK(pts(construction_order(Z, s12, 5)) == std::vector<int>{1, 2});
  AxisIntervalSpec s13{{AxisInterval::positive(3)}};
  const auto ext = pts(extension_order(Z, s13, 5));
  CHECK(std::vector<int>(ext.begin(), ext.begin() + 5) == std::vector<int>{0, -1, 4, -2, 5});
  CHECK(check_translated_prefixes(Z, extension_order(Z, s13, 5), ii_truncate(Z, s13, 5), 5).failures == 0);
}

TEST_CASE("tree convex sets") {
  auto F = Group::free(2);
  const Point e = F.identity(), a({1}), b({2}), ab({1, 2});
  CHECK(tree_convex_check(F, {e, a, ab}));
  CHECK_FALSE(tree_convex_check(F, make_shape({e, ab})));
  Shape ball1;
  for (const auto& p : F.ball(1).members)
    if (!(p == e)) ball1.push_back(p);
  CHECK(extension_set_check(F, make_shape(ball1)));
  CHECK(tree_convex_extension_prefixes(F, 1).size() == 16);
}

TEST_CASE("all subsets and cornered prefixes") {
  auto G = Group::from_key("Z");
  CHECK(all_subset_prefixes(G, 1).size() == 4);
  CHECK_THROWS_AS(all_subset_prefixes(Group::from_key("Z^2"), 3, 16), ResourceError);
  const auto cp = cornered_prefixes(G, 1);
  CHECK(cp.size() == 2 * ii_prefixes(G, 1).size());
  CHECK(space_ball(G, 1, 2).size() == 6);
}
