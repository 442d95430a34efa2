#include "doctest.h"

#include "avo/group.hpp"

using namespace avo;

TEST_CASE("catalog keys round-trip") {
  for (const char* k : {"Z", "Z^2", "Z^3", "ZxZ2", "Z^2xZ3", "heisenberg", "F2", "F3"})
    CHECK(Group::from_key(k).key() == k);
  CHECK_THROWS_AS(Group::from_key("Q"), std::invalid_argument);
  CHECK_THROWS_AS(Group::from_key("Z2xZ"), std::invalid_argument);
}

TEST_CASE("ball sizes") {
  // Z^d with unit generators: |B_r| is the number of lattice points of L1 norm <= r.
  auto z2 = Group::from_key("Z^2");
  CHECK(z2.ball(1).members.size() == 5);
  CHECK(z2.ball(2).members.size() == 13);
  // Free group of rank k: 1 + 2k((2k-1)^r - 1)/(2k-2).
  auto f2 = Group::free(2);
  CHECK(f2.ball(1).members.size() == 5);
  CHECK(f2.ball(2).members.size() == 17);
  CHECK(f2.ball(3).members.size() == 53);
  auto zz2 = Group::from_key("ZxZ2");
  CHECK(zz2.ball(1).members.size() == 4);
}

TEST_CASE("group laws on small balls") {
  for (const char* k : {"Z^2", "ZxZ3", "heisenberg", "F2"}) {
    auto G = Group::from_key(k);
    const auto& B = G.ball(2).members;
    for (const auto& g : B) {
      CHECK(G.is_identity(G.compose(g, G.invert(g))));
      CHECK(G.norm(g) == G.norm(G.invert(g)));
      for (const auto& h : B)
        for (const auto& x : G.ball(1).members)
          CHECK(G.compose(G.compose(g, h), x) == G.compose(g, G.compose(h, x)));
    }
  }
}

TEST_CASE("heisenberg product and commutator") {
  auto H = Group::heisenberg();
  const Point a({1, 0, 0}), b({0, 1, 0});
  const Point comm = H.compose(H.compose(a, b), H.invert(H.compose(b, a)));
  CHECK(H.norm(comm) == 4);
  CHECK(comm == Point({0, 0, 1}));
  CHECK(H.to_tuple(comm) == std::vector<long>{1, 0, 0});
}

TEST_CASE("validation") {
  auto G = Group::from_key("ZxZ2");
  CHECK_NOTHROW(G.validate(Point({3, 1})));
  CHECK_THROWS(G.validate(Point({3, 2})));
  CHECK_THROWS(G.validate(Point({3})));
  auto F = Group::free(2);
  CHECK_THROWS(F.validate(Point({1, -1})));
  CHECK_THROWS(F.validate(Point({3})));
}
